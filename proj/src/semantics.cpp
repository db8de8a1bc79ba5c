#include "bass/semantics.hpp"

#include <algorithm>

namespace bass {

std::string_view semantics_tag(Semantics s) {
  switch (s) {
    case Semantics::Admissible: return "adm";
    case Semantics::Complete: return "com";
    case Semantics::Grounded: return "grd";
    case Semantics::Preferred: return "prf";
    case Semantics::TwoValued: return "2v";
    case Semantics::Stable: return "stb";
  }
  return "?";
}

std::optional<Semantics> parse_semantics(std::string_view tag) {
  for (Semantics s : {Semantics::Admissible, Semantics::Complete, Semantics::Grounded,
                      Semantics::Preferred, Semantics::TwoValued, Semantics::Stable}) {
    if (semantics_tag(s) == tag) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SymbolicAdf

SymbolicAdf::SymbolicAdf(Adf adf)
    : adf_(std::move(adf)),
      layout_(adf_.size()),
      manager_(std::make_unique<BddManager>(layout_.num_vars())) {}

const std::vector<Bdd>& SymbolicAdf::conditions() {
  if (conditions_.size() != adf_.size()) {
    conditions_.clear();
    for (const Formula& f : adf_.conditions()) {
      conditions_.push_back(formula_to_bdd(f, adf_, layout_, *manager_));
    }
  }
  return conditions_;
}

const std::vector<GammaPair>& SymbolicAdf::gamma() {
  if (gamma_.size() != adf_.size()) {
    gamma_.clear();
    for (const Bdd& phi : conditions()) {
      gamma_.push_back(GammaPair{dual_transform(phi, layout_), dual_transform(!phi, layout_)});
    }
  }
  return gamma_;
}

const Bdd& SymbolicAdf::validity() {
  if (!validity_) validity_ = validity_constraint(layout_, *manager_);
  return *validity_;
}

const Bdd& SymbolicAdf::model_constraint() {
  if (!models_) {
    std::vector<Bdd> clauses;
    const auto& phi = conditions();
    for (std::size_t i = 0; i < phi.size(); ++i) {
      clauses.push_back(iff(manager_->var(layout_.direct(i)), phi[i]));
    }
    models_ = greedy_conjunction(clauses, *manager_);
  }
  return *models_;
}

// ---------------------------------------------------------------------------
// Semantics

SolutionSet two_valued_models(SymbolicAdf& sadf) {
  return {sadf.model_constraint(), sadf.layout(), EncodingKind::Direct, Semantics::TwoValued};
}

namespace {

/// Per argument: validity, (phi_top => s_top) and (phi_bot => s_bot), plus
/// (s_top & s_bot) => (phi_top & phi_bot) when `complete`.
std::vector<Bdd> dual_clauses(SymbolicAdf& sadf, bool complete) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  const auto& gamma = sadf.gamma();
  std::vector<Bdd> clauses;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const Bdd top = m.var(layout.top(i));
    const Bdd bot = m.var(layout.bot(i));
    Bdd clause = (top | bot) & implies(gamma[i].top_fn, top) & implies(gamma[i].bot_fn, bot);
    if (complete) clause = clause & implies(top & bot, gamma[i].top_fn & gamma[i].bot_fn);
    clauses.push_back(clause);
  }
  return clauses;
}

std::vector<Bdd> undecided_indicators(SymbolicAdf& sadf) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  std::vector<Bdd> out;
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    out.push_back(m.var(layout.top(i)) & m.var(layout.bot(i)));
  }
  return out;
}

}  // namespace

SolutionSet admissible(SymbolicAdf& sadf) {
  const auto clauses = dual_clauses(sadf, false);
  return {greedy_conjunction(clauses, sadf.manager()), sadf.layout(), EncodingKind::Dual,
          Semantics::Admissible};
}

SolutionSet complete(SymbolicAdf& sadf) {
  const auto clauses = dual_clauses(sadf, true);
  return {greedy_conjunction(clauses, sadf.manager()), sadf.layout(), EncodingKind::Dual,
          Semantics::Complete};
}

Interpretation grounded(SymbolicAdf& sadf) {
  const VarLayout& layout = sadf.layout();
  const auto& gamma = sadf.gamma();
  Interpretation current(layout.num_arguments(), Value::Undecided);
  while (true) {
    const Valuation point = encode(current, layout, EncodingKind::Dual);
    Interpretation next(current.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      const bool top = eval(gamma[i].top_fn, point);
      const bool bot = eval(gamma[i].bot_fn, point);
      next[i] = top && bot ? Value::Undecided : top ? Value::True : Value::False;
    }
    if (next == current) return current;
    current = std::move(next);
  }
}

SolutionSet grounded_set(SymbolicAdf& sadf) {
  const Interpretation g = grounded(sadf);
  return {interpretation_cube(g, sadf.layout(), EncodingKind::Dual, sadf.manager()), sadf.layout(),
          EncodingKind::Dual, Semantics::Grounded};
}

SolutionSet preferred(SymbolicAdf& sadf, const SolutionSet& complete_set, LoopStats* stats) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  const std::vector<BddVar> dual = layout.dual_vars();
  const std::vector<Bdd> undecided = undecided_indicators(sadf);

  Bdd remaining = complete_set.set;
  Bdd result = m.zero();
  std::size_t iterations = 0;
  while (!remaining.is_zero()) {
    ++iterations;
    // Fewest positive dual literals == fewest undecided arguments.
    const Valuation least = *least_positive_valuation(remaining, dual);
    std::size_t k = 0;
    for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
      if (least[layout.top(i).index] && least[layout.bot(i).index]) ++k;
    }
    const Bdd layer = remaining & exact_count_constraint(undecided, k, m);
    result = result | layer;
    remaining = remove_supersets(remaining, layer, dual);
  }
  if (stats != nullptr) stats->iterations = iterations;
  return {result, layout, EncodingKind::Dual, Semantics::Preferred};
}

SolutionSet stable(SymbolicAdf& sadf, const SolutionSet& two_valued_set,
                   LoopStats* minimization_stats, LoopStats* grounding_stats) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  const std::size_t n = layout.num_arguments();
  const std::vector<BddVar> direct = layout.direct_vars();

  std::vector<Bdd> literals;
  for (std::size_t i = 0; i < n; ++i) literals.push_back(m.var(layout.direct(i)));

  // <=_t-minimal two-valued models, one true-count layer per iteration.
  Bdd remaining = two_valued_set.set;
  Bdd candidates = m.zero();
  std::size_t iterations = 0;
  while (!remaining.is_zero()) {
    ++iterations;
    const Valuation least = *least_positive_valuation(remaining, direct);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += least[layout.direct(i).index] ? 1 : 0;
    const Bdd layer = remaining & exact_count_constraint(literals, k, m);
    candidates = candidates | layer;
    remaining = remove_supersets(remaining, layer, direct);
  }
  if (minimization_stats != nullptr) minimization_stats->iterations = iterations;

  // Pair every candidate with the start state of its reduced ADF: true
  // arguments undecided, false arguments fixed to 0.
  Bdd relation = candidates;
  for (std::size_t i = n; i-- > 0;) {
    const Bdd s = m.var(layout.direct(i));
    const Bdd top = m.var(layout.top(i));
    const Bdd bot = m.var(layout.bot(i));
    relation = relation & implies(s, top & bot) & implies(!s, (!top) & bot);
  }

  // Ground all candidates at once. Arguments only move from undecided to 1.
  const auto& gamma = sadf.gamma();
  std::vector<Bdd> step;
  for (std::size_t i = 0; i < n; ++i) {
    step.push_back(m.var(layout.top(i)) & m.var(layout.bot(i)) & gamma[i].top_fn & !gamma[i].bot_fn);
  }
  std::size_t sweeps = 0;
  Bdd before;
  do {
    ++sweeps;
    before = relation;
    for (std::size_t i = 0; i < n; ++i) {
      const Bdd set_to_one = relation & step[i];
      if (set_to_one.is_zero()) continue;
      relation = (relation & !step[i]) | flip_var(set_to_one, layout.bot(i));
    }
  } while (relation != before);
  if (grounding_stats != nullptr) grounding_stats->iterations = sweeps;

  for (std::size_t i = n; i-- > 0;) {
    relation = relation & implies(m.var(layout.direct(i)), m.var(layout.top(i)) & !m.var(layout.bot(i)));
  }
  const std::vector<BddVar> dual = layout.dual_vars();
  const Bdd result = exists(relation, dual);
  return {result, layout, EncodingKind::Direct, Semantics::Stable};
}

SolutionSet restrict_free_inputs(SymbolicAdf& sadf, const SolutionSet& set, RestrictionMode mode) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  Bdd restricted = set.set;
  for (std::size_t i : sadf.adf().free_inputs()) {
    if (mode == RestrictionMode::Preferred) {
      restricted = restricted & !(m.var(layout.top(i)) & m.var(layout.bot(i)));
    } else {
      restricted = restricted & !m.var(layout.direct(i));
    }
  }
  SolutionSet out = set;
  out.set = restricted;
  return out;
}

SolutionSet embed_two_valued(SymbolicAdf& sadf, const SolutionSet& direct_set) {
  BddManager& m = sadf.manager();
  const VarLayout& layout = sadf.layout();
  std::vector<Bdd> clauses{direct_set.set};
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    const Bdd s = m.var(layout.direct(i));
    const Bdd top = m.var(layout.top(i));
    const Bdd bot = m.var(layout.bot(i));
    clauses.push_back(iff(s, top) & iff(!s, bot));
  }
  const std::vector<BddVar> direct = layout.direct_vars();
  SolutionSet out = direct_set;
  out.set = exists(greedy_conjunction(clauses, m), direct);
  out.kind = EncodingKind::Dual;
  return out;
}

SolutionSet solve(SymbolicAdf& sadf, Semantics semantics, const SolveOptions& options,
                  SolveStats* stats) {
  switch (semantics) {
    case Semantics::Admissible: return admissible(sadf);
    case Semantics::Complete: return complete(sadf);
    case Semantics::Grounded: return grounded_set(sadf);
    case Semantics::TwoValued: return two_valued_models(sadf);
    case Semantics::Preferred: {
      SolutionSet co = complete(sadf);
      if (options.restrict_free_inputs) co = restrict_free_inputs(sadf, co, RestrictionMode::Preferred);
      return preferred(sadf, co, stats != nullptr ? &stats->preferred : nullptr);
    }
    case Semantics::Stable: {
      SolutionSet tv = two_valued_models(sadf);
      if (options.restrict_free_inputs) tv = restrict_free_inputs(sadf, tv, RestrictionMode::Stable);
      return stable(sadf, tv, stats != nullptr ? &stats->stable_minimization : nullptr,
                    stats != nullptr ? &stats->stable_grounding : nullptr);
    }
  }
  throw std::invalid_argument("unknown semantics");
}

}  // namespace bass
