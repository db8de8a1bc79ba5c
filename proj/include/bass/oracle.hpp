/// @file  oracle.hpp
/// @brief Exhaustive reference semantics for small ADFs. Works directly on
///        formulas and truth tables; shares no code with the symbolic path.

#pragma once

#include <stdexcept>
#include <vector>

#include "bass/encoding.hpp"
#include "bass/formula.hpp"
#include "bass/semantics.hpp"

namespace bass {

inline constexpr std::size_t kOracleCap = 12;

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// D^I: the arguments true in I, with every false argument replaced by 0.
struct ReducedAdf {
  std::vector<std::size_t> surviving;  // indices into the original ADF
  Adf adf;
};

/// a <=_i b: b agrees with a wherever a is decided.
bool information_leq(const Interpretation& a, const Interpretation& b);

/// Substitutes constants and folds the result.
Formula simplify(const Formula& f);

Interpretation brute_gamma(const Adf& adf, const Interpretation& interpretation,
                           std::size_t cap = kOracleCap);

/// Members of the semantics in lexicographic order (0 < 1 < *).
std::vector<Interpretation> brute_semantics(const Adf& adf, Semantics semantics,
                                            std::size_t cap = kOracleCap);

/// Throws std::invalid_argument if `interpretation` contains undecided values.
ReducedAdf build_reduced(const Adf& adf, const Interpretation& interpretation);

}  // namespace bass
