#include "bass/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bass/oracle.hpp"
#include "bass/solutions.hpp"

namespace bass::cli {

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::ordered_json to_json(const Interpretation& interpretation, const Adf& adf) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < interpretation.size(); ++i) {
    obj[adf.name(i)] = std::string(1, to_char(interpretation[i]));
  }
  return obj;
}

/// Compares the symbolic answer against the exhaustive reference.
int check_against_oracle(const Adf& adf, const SolutionSet& set, Semantics semantics,
                         std::ostream& err) {
  std::vector<Interpretation> expected = brute_semantics(adf, semantics);
  std::vector<Interpretation> actual = enumerate(set);
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  if (expected == actual) {
    err << "oracle: agree (" << expected.size() << " solutions)\n";
    return kExitOk;
  }
  err << "oracle: MISMATCH (symbolic " << actual.size() << ", oracle " << expected.size() << ")\n";
  for (const Interpretation& i : expected) {
    if (!std::binary_search(actual.begin(), actual.end(), i)) {
      err << "  missing: " << format_interpretation(i, adf) << '\n';
    }
  }
  for (const Interpretation& i : actual) {
    if (!std::binary_search(expected.begin(), expected.end(), i)) {
      err << "  extra:   " << format_interpretation(i, adf) << '\n';
    }
  }
  return kExitOracleMismatch;
}

std::optional<InputFormat> parse_format(const std::string& name) {
  if (name == "adf") return InputFormat::Adf;
  if (name == "bnet") return InputFormat::Bnet;
  if (name == "auto") return InputFormat::Auto;
  return std::nullopt;
}

}  // namespace

InputFormat resolve_format(InputFormat format, const std::string& path) {
  if (format != InputFormat::Auto) return format;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".bnet") == 0) return InputFormat::Bnet;
  return InputFormat::Adf;
}

Adf load_adf(const std::string& path, InputFormat format, std::istream& in) {
  std::string text;
  if (path == "-") {
    text = read_all(in);
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    text = read_all(file);
  }
  return resolve_format(format, path) == InputFormat::Bnet ? parse_bnet(text) : parse_adf(text);
}

std::size_t node_budget_from_env() {
  const char* value = std::getenv("BASS_NODE_BUDGET");
  if (value == nullptr || *value == '\0') return kDefaultNodeBudget;
  try {
    return static_cast<std::size_t>(std::stoull(value));
  } catch (const std::exception&) {
    return kDefaultNodeBudget;
  }
}

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Adf adf;
  try {
    adf = load_adf(config.input, config.format, in);
  } catch (const ParseError& e) {
    err << "error: " << config.input << ":" << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    SymbolicAdf sadf(adf);
    SolveOptions options;
    options.restrict_free_inputs = config.restrict_free_inputs;
    const SolutionSet set = solve(sadf, config.semantics, options);

    nlohmann::ordered_json doc;
    doc["semantics"] = std::string(semantics_tag(config.semantics));
    const BigInt total = count(set);

    switch (config.action) {
      case Action::Count:
        if (config.json) {
          doc["count"] = total.str();
        } else {
          out << total.str() << '\n';
        }
        break;
      case Action::Enumerate: {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for_each_solution(set, config.limit, [&](const Interpretation& i) {
          if (config.json) {
            list.push_back(to_json(i, adf));
          } else {
            out << format_interpretation(i, adf) << '\n';
          }
          return true;
        });
        if (config.json) {
          doc["count"] = total.str();
          doc["solutions"] = std::move(list);
        }
        break;
      }
      case Action::Sample: {
        if (set.set.is_zero()) {
          err << "error: cannot sample from an empty solution set\n";
          return kExitInputError;
        }
        const auto draws = sample_uniform(set, config.sample_count, SampleSeed{config.seed});
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const Interpretation& i : draws) {
          if (config.json) {
            list.push_back(to_json(i, adf));
          } else {
            out << format_interpretation(i, adf) << '\n';
          }
        }
        if (config.json) {
          doc["count"] = total.str();
          doc["solutions"] = std::move(list);
        }
        break;
      }
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    if (config.json) {
      doc["elapsed_ms"] = elapsed;
      out << doc.dump() << '\n';
    }
    if (config.timing) err << "elapsed_ms: " << elapsed << '\n';

    if (config.oracle) return check_against_oracle(adf, set, config.semantics, err);
    return kExitOk;
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResourceLimit;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  }
}

int convert(const ConvertConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  Adf adf;
  try {
    adf = load_adf(config.input, config.from, in);
  } catch (const ParseError& e) {
    err << "error: " << config.input << ":" << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  try {
    if (config.to == InputFormat::Bnet) {
      out << write_bnet(adf, config.node_budget);
    } else {
      out << write_adf(adf);
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  }
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Symbolic solver for abstract dialectical frameworks and Boolean networks", "bass"};
  app.require_subcommand(1);

  RunConfig run_config;
  std::string sem = "adm";
  std::string format = "auto";
  bool count_flag = false;
  bool enumerate_flag = false;
  std::optional<std::size_t> sample;
  bool no_restriction = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one semantics for an input file");
  solve_cmd->add_option("input", run_config.input, "Input file, '-' for standard input");
  solve_cmd->add_option("--sem", sem, "Semantics: adm, com, grd, prf, 2v, stb")
      ->check(CLI::IsMember({"adm", "com", "grd", "prf", "2v", "stb"}));
  auto* count_opt = solve_cmd->add_flag("--count", count_flag, "Print the number of solutions");
  auto* enum_opt = solve_cmd->add_flag("--enumerate", enumerate_flag, "Print every solution");
  auto* sample_opt = solve_cmd->add_option("--sample", sample, "Draw N uniform samples");
  count_opt->excludes(enum_opt)->excludes(sample_opt);
  enum_opt->excludes(sample_opt);
  solve_cmd->add_option("--limit", run_config.limit, "Stop enumeration after N solutions")
      ->needs(enum_opt);
  solve_cmd->add_option("--seed", run_config.seed, "Sampling seed")->needs(sample_opt);
  solve_cmd->add_option("--format", format, "Input format: adf, bnet, auto")
      ->check(CLI::IsMember({"adf", "bnet", "auto"}));
  solve_cmd->add_flag("--json", run_config.json, "Emit a JSON document");
  solve_cmd->add_flag("--no-input-restriction", no_restriction,
                      "Do not pre-restrict free inputs for prf/stb");
  solve_cmd->add_flag("--oracle", run_config.oracle, "Cross-check with the exhaustive oracle")
      ->group("");
  solve_cmd->add_flag("--time", run_config.timing, "Report elapsed time on standard error");

  ConvertConfig convert_config;
  std::string from = "auto";
  std::string to = "bnet";
  CLI::App* convert_cmd = app.add_subcommand("convert", "Translate between .adf and .bnet");
  convert_cmd->add_option("input", convert_config.input, "Input file, '-' for standard input");
  convert_cmd->add_option("--format", from, "Input format: adf, bnet, auto")
      ->check(CLI::IsMember({"adf", "bnet", "auto"}));
  convert_cmd->add_option("--to", to, "Output format: adf, bnet")
      ->check(CLI::IsMember({"adf", "bnet"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*solve_cmd) {
    run_config.semantics = *parse_semantics(sem);
    run_config.format = *parse_format(format);
    run_config.restrict_free_inputs = !no_restriction;
    if (enumerate_flag) {
      run_config.action = Action::Enumerate;
    } else if (sample) {
      if (*sample == 0) {
        err << "error: --sample needs a positive count\n";
        return kExitInputError;
      }
      run_config.action = Action::Sample;
      run_config.sample_count = *sample;
    } else {
      run_config.action = Action::Count;
    }
    return run(run_config, in, out, err);
  }
  convert_config.from = *parse_format(from);
  convert_config.to = *parse_format(to);
  convert_config.node_budget = node_budget_from_env();
  return convert(convert_config, in, out, err);
}

}  // namespace bass::cli
