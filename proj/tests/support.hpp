// Shared helpers for the test suites: random instances and brute-force
// reference computations that do not go through the code under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bass/bdd.hpp"
#include "bass/encoding.hpp"
#include "bass/formula.hpp"

namespace bass::testing {

using Rng = std::mt19937_64;
using Table = std::vector<bool>;

inline const char* kSmallAdf = "s(a). s(b). s(c). ac(a,c(v)). ac(b,or(neg(a),c)). ac(c,b).";

/// Builds the BDD of an arbitrary truth table over variables 0..k-1 as a
/// disjunction of minterm cubes.
inline Bdd from_table(const Table& table, std::uint32_t k, BddManager& m) {
  Bdd r = m.zero();
  std::vector<BddVar> vars;
  for (std::uint32_t v = 0; v < k; ++v) vars.push_back(BddVar{v});
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (!table[x]) continue;
    std::vector<bool> values;
    for (std::uint32_t v = 0; v < k; ++v) values.push_back(((x >> v) & 1u) != 0);
    r = r | m.cube(vars, values);
  }
  return r;
}

inline Valuation point(std::size_t x, std::uint32_t num_vars) {
  Valuation v(num_vars, false);
  for (std::uint32_t i = 0; i < num_vars && i < 64; ++i) v[i] = ((x >> i) & 1u) != 0;
  return v;
}

/// Truth table of f over variables 0..k-1 (bit i of the row index = var i).
inline Table table_of(const Bdd& f, std::uint32_t k) {
  Table t(std::size_t{1} << k);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = eval(f, point(x, f.manager()->num_vars()));
  return t;
}

inline Table random_table(Rng& rng, std::uint32_t k, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  Table t(std::size_t{1} << k);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = coin(rng);
  return t;
}

inline std::size_t popcount(std::size_t x) { return static_cast<std::size_t>(__builtin_popcountll(x)); }

inline std::vector<std::string> argument_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return names;
}

/// Random formula over `names` using every connective including Xor.
inline Formula random_formula(Rng& rng, const std::vector<std::string>& names, int depth,
                              bool allow_derived = true) {
  std::uniform_int_distribution<int> leaf_pick(0, 9);
  if (names.empty() || depth <= 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    if (names.empty() || leaf_pick(rng) == 0) {
      return Formula::constant(std::uniform_int_distribution<int>(0, 1)(rng) == 1);
    }
    return Formula::var(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
  }
  const int max_kind = allow_derived ? 5 : 2;
  switch (std::uniform_int_distribution<int>(0, max_kind)(rng)) {
    case 0: return !random_formula(rng, names, depth - 1, allow_derived);
    case 1:
      return random_formula(rng, names, depth - 1, allow_derived) &
             random_formula(rng, names, depth - 1, allow_derived);
    case 2:
      return random_formula(rng, names, depth - 1, allow_derived) |
             random_formula(rng, names, depth - 1, allow_derived);
    case 3:
      return Formula::binary(FormulaKind::Imp, random_formula(rng, names, depth - 1, allow_derived),
                             random_formula(rng, names, depth - 1, allow_derived));
    case 4:
      return Formula::binary(FormulaKind::Iff, random_formula(rng, names, depth - 1, allow_derived),
                             random_formula(rng, names, depth - 1, allow_derived));
    default:
      return Formula::binary(FormulaKind::Xor, random_formula(rng, names, depth - 1, allow_derived),
                             random_formula(rng, names, depth - 1, allow_derived));
  }
}

/// Random ADF with n arguments; roughly one in six conditions is a free input.
inline Adf random_adf(Rng& rng, std::size_t n, int depth = 5, bool allow_derived = true) {
  auto names = argument_names(n);
  std::vector<Formula> conditions;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
      conditions.push_back(Formula::var(names[i]));
    } else {
      conditions.push_back(random_formula(rng, names, depth, allow_derived));
    }
  }
  return Adf(names, conditions);
}

/// Random ADF guaranteed to contain at least one free input.
inline Adf random_adf_with_free_input(Rng& rng, std::size_t n, int depth = 5) {
  Adf base = random_adf(rng, n, depth);
  if (!base.free_inputs().empty()) return base;
  std::vector<Formula> conditions = base.conditions();
  const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  conditions[pick] = Formula::var(base.name(pick));
  return Adf(base.arguments(), conditions);
}

/// The quantifier form of the dual: exists s. f(s) & /\ (s => s_top) & (!s => s_bot).
inline Bdd dual_by_quantification(const Bdd& f, const VarLayout& layout) {
  BddManager& m = *f.manager();
  Bdd body = f;
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    const Bdd s = m.var(layout.direct(i));
    body = body & implies(s, m.var(layout.top(i))) & implies(!s, m.var(layout.bot(i)));
  }
  const auto direct = layout.direct_vars();
  return exists(body, direct);
}

/// Evaluates a formula under a two-valued interpretation.
inline bool evaluate(const Formula& f, const Adf& adf, const Interpretation& i) {
  return f.evaluate([&](const std::string& name) { return i[adf.index_of(name)] == Value::True; });
}

inline std::vector<Interpretation> sorted(std::vector<Interpretation> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Every three-valued interpretation of n arguments.
inline std::vector<Interpretation> all_interpretations(std::size_t n, bool two_valued_only = false) {
  std::vector<Interpretation> out{Interpretation{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Interpretation> next;
    for (const auto& prefix : out) {
      for (Value v : {Value::False, Value::True, Value::Undecided}) {
        if (two_valued_only && v == Value::Undecided) continue;
        auto extended = prefix;
        extended.push_back(v);
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline Interpretation parse_values(const std::string& text) {
  Interpretation out;
  for (char c : text) {
    if (c == '1') out.push_back(Value::True);
    if (c == '0') out.push_back(Value::False);
    if (c == '*') out.push_back(Value::Undecided);
  }
  return out;
}

}  // namespace bass::testing
