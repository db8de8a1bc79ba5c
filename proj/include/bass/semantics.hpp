/// @file  semantics.hpp
/// @brief Symbolic solution sets for the admissible, complete, grounded,
///        preferred, two-valued and stable semantics of an ADF.

#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "bass/bdd.hpp"
#include "bass/encoding.hpp"
#include "bass/formula.hpp"

namespace bass {

enum class Semantics : std::uint8_t { Admissible, Complete, Grounded, Preferred, TwoValued, Stable };

/// Short tag used on the command line: adm, com, grd, prf, 2v, stb.
std::string_view semantics_tag(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view tag);

/// Symbolic result of a semantics query.
struct SolutionSet {
  Bdd set;
  VarLayout layout;
  EncodingKind kind;
  Semantics semantics;
};

/// An ADF bound to its own BDD manager and layout. Condition BDDs, the
/// gamma pairs and the validity constraint are built on first use.
class SymbolicAdf {
 public:
  explicit SymbolicAdf(Adf adf);

  const Adf& adf() const { return adf_; }
  const VarLayout& layout() const { return layout_; }
  BddManager& manager() { return *manager_; }

  /// phi_i over direct variables.
  const std::vector<Bdd>& conditions();
  const std::vector<GammaPair>& gamma();
  const Bdd& validity();
  /// /\ (s <=> phi_s) over direct variables.
  const Bdd& model_constraint();

 private:
  Adf adf_;
  VarLayout layout_;
  std::unique_ptr<BddManager> manager_;
  std::vector<Bdd> conditions_;
  std::vector<GammaPair> gamma_;
  std::optional<Bdd> validity_;
  std::optional<Bdd> models_;
};

/// Loop counters of the minimization procedures.
struct LoopStats {
  std::size_t iterations = 0;
};

/// /\ (s <=> phi_s) over direct variables.
SolutionSet two_valued_models(SymbolicAdf& sadf);

/// Interpretations I with I <=_i Gamma(I), validity included.
SolutionSet admissible(SymbolicAdf& sadf);

/// Fixed points of Gamma, validity included.
SolutionSet complete(SymbolicAdf& sadf);

/// Least fixed point of Gamma by Kleene iteration from all-undecided,
/// evaluated pointwise on the gamma pairs.
Interpretation grounded(SymbolicAdf& sadf);
SolutionSet grounded_set(SymbolicAdf& sadf);

/// <=_i-maximal members of a complete set, one star-count layer per iteration.
SolutionSet preferred(SymbolicAdf& sadf, const SolutionSet& complete_set, LoopStats* stats = nullptr);

/// Stable models among a set of two-valued models: <=_t-minimal candidates
/// are grounded in their reduced ADF on a joint direct/dual relation.
SolutionSet stable(SymbolicAdf& sadf, const SolutionSet& two_valued_set,
                   LoopStats* minimization_stats = nullptr, LoopStats* grounding_stats = nullptr);

enum class RestrictionMode : std::uint8_t { Preferred, Stable };

/// Free inputs (phi_s = s) can never be undecided in a preferred
/// interpretation nor true in a stable model. Shrinks the search space of
/// the corresponding input set without changing the final answer.
SolutionSet restrict_free_inputs(SymbolicAdf& sadf, const SolutionSet& set, RestrictionMode mode);

/// Re-encodes a direct set of two-valued interpretations in the dual encoding.
SolutionSet embed_two_valued(SymbolicAdf& sadf, const SolutionSet& direct_set);

struct SolveOptions {
  bool restrict_free_inputs = true;
};

struct SolveStats {
  LoopStats preferred;
  LoopStats stable_minimization;
  LoopStats stable_grounding;
};

/// Full pipeline for one semantics.
SolutionSet solve(SymbolicAdf& sadf, Semantics semantics, const SolveOptions& options = {},
                  SolveStats* stats = nullptr);

}  // namespace bass
