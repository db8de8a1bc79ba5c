/// @file  encoding.hpp
/// @brief Variable layout, condition compilation and the dual encoding of
///        three-valued interpretations.

#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bass/bdd.hpp"
#include "bass/formula.hpp"

namespace bass {

/// Truth value of a three-valued interpretation.
enum class Value : std::uint8_t { False, True, Undecided };

char to_char(Value v);

/// One value per argument, indexed like Adf::arguments().
using Interpretation = std::vector<Value>;

/// Renders `name:V` pairs separated by spaces, V in {1,0,*}.
std::string format_interpretation(const Interpretation& interpretation, const Adf& adf);

/// Interleaved layout: argument i owns direct(i) = 3i, top(i) = 3i+1 and
/// bot(i) = 3i+2.
class VarLayout {
 public:
  explicit VarLayout(std::size_t num_arguments) : n_(num_arguments) {}

  std::size_t num_arguments() const { return n_; }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(3 * n_); }

  BddVar direct(std::size_t i) const { return BddVar{static_cast<std::uint32_t>(3 * i)}; }
  BddVar top(std::size_t i) const { return BddVar{static_cast<std::uint32_t>(3 * i + 1)}; }
  BddVar bot(std::size_t i) const { return BddVar{static_cast<std::uint32_t>(3 * i + 2)}; }

  bool is_direct(BddVar v) const { return v.index % 3 == 0; }

  std::vector<BddVar> direct_vars() const;
  std::vector<BddVar> dual_vars() const;
  std::vector<BddVar> all_vars() const;

  friend bool operator==(const VarLayout&, const VarLayout&) = default;

 private:
  std::size_t n_;
};

/// Dual encoding of Gamma for one argument: (dual(phi), dual(!phi)).
struct GammaPair {
  Bdd top_fn;
  Bdd bot_fn;
};

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compiles a condition to a BDD over direct variables.
Bdd formula_to_bdd(const Formula& f, const Adf& adf, const VarLayout& layout, BddManager& manager);

/// Maps f over direct variables to the function over dual variables that
/// holds iff some two-valued completion of the encoded interpretation
/// satisfies f. Structural rewrite, linear in |f|.
Bdd dual_transform(const Bdd& f, const VarLayout& layout);

/// One GammaPair per argument.
std::vector<GammaPair> gamma_pairs(const Adf& adf, const VarLayout& layout, BddManager& manager);

/// Conjunction of (top_i | bot_i) over all arguments.
Bdd validity_constraint(const VarLayout& layout, BddManager& manager);

enum class EncodingKind : std::uint8_t { Direct, Dual, Combined };

/// Reads an interpretation back from a valuation. Dual pairs (0,0) throw
/// EncodingError.
Interpretation decode(const Valuation& valuation, const VarLayout& layout, EncodingKind kind);

/// Inverse of decode for two-valued (direct) or three-valued (dual)
/// interpretations. Variables of the other kind are left 0.
Valuation encode(const Interpretation& interpretation, const VarLayout& layout, EncodingKind kind);

/// Singleton set containing exactly `interpretation` over the given kind.
Bdd interpretation_cube(const Interpretation& interpretation, const VarLayout& layout,
                        EncodingKind kind, BddManager& manager);

}  // namespace bass
