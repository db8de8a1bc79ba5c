/// @file  cli.hpp
/// @brief Command-line front end: `solve` and `convert`.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bass/formula.hpp"
#include "bass/semantics.hpp"

namespace bass::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitResourceLimit = 2;
inline constexpr int kExitOracleMismatch = 3;

enum class InputFormat : std::uint8_t { Auto, Adf, Bnet };
enum class Action : std::uint8_t { Count, Enumerate, Sample };

struct RunConfig {
  std::string input = "-";  // "-" reads standard input
  InputFormat format = InputFormat::Auto;
  Semantics semantics = Semantics::Admissible;
  Action action = Action::Count;
  std::optional<std::size_t> limit;
  std::size_t sample_count = 1;
  std::uint64_t seed = 0;
  bool restrict_free_inputs = true;
  bool oracle = false;
  bool timing = false;
  bool json = false;
};

struct ConvertConfig {
  std::string input = "-";
  InputFormat from = InputFormat::Auto;
  InputFormat to = InputFormat::Bnet;
  std::size_t node_budget = kDefaultNodeBudget;
};

/// Resolves Auto by file extension; standard input defaults to .adf.
InputFormat resolve_format(InputFormat format, const std::string& path);

/// Reads and parses the input named by `path` ("-" for `in`).
Adf load_adf(const std::string& path, InputFormat format, std::istream& in);

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int convert(const ConvertConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Node budget for XOR elimination, overridable via BASS_NODE_BUDGET.
std::size_t node_budget_from_env();

/// Parses `args` (without the program name) and dispatches.
int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err);

}  // namespace bass::cli
