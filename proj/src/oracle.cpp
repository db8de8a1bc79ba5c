#include "bass/oracle.hpp"

#include <algorithm>

namespace bass {

namespace {

void check_cap(const Adf& adf, std::size_t cap) {
  if (adf.size() > cap) {
    throw OracleCapExceeded("oracle limited to " + std::to_string(cap) + " arguments, got " +
                            std::to_string(adf.size()));
  }
}

/// Truth tables of every condition, bit x of table i is phi_i(x) where bit
/// j of x is the value of argument j.
class TruthTables {
 public:
  explicit TruthTables(const Adf& adf) : n_(adf.size()), tables_(adf.size()) {
    const std::size_t rows = std::size_t{1} << n_;
    for (std::size_t i = 0; i < n_; ++i) {
      tables_[i].resize(rows);
      for (std::size_t x = 0; x < rows; ++x) {
        tables_[i][x] = adf.condition(i).evaluate(
            [&](const std::string& name) { return ((x >> adf.index_of(name)) & 1u) != 0; });
      }
    }
  }

  bool at(std::size_t i, std::size_t x) const { return tables_[i][x]; }

  /// Gamma(I) by scanning every two-valued completion of I.
  Interpretation gamma(const Interpretation& interpretation) const {
    std::size_t base = 0;
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < n_; ++j) {
      if (interpretation[j] == Value::True) base |= std::size_t{1} << j;
      if (interpretation[j] == Value::Undecided) open.push_back(j);
    }
    Interpretation out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      bool seen_true = false;
      bool seen_false = false;
      for (std::size_t c = 0; c < (std::size_t{1} << open.size()); ++c) {
        std::size_t x = base;
        for (std::size_t k = 0; k < open.size(); ++k) {
          if ((c >> k) & 1u) x |= std::size_t{1} << open[k];
        }
        (at(i, x) ? seen_true : seen_false) = true;
        if (seen_true && seen_false) break;
      }
      out[i] = seen_true && seen_false ? Value::Undecided : seen_true ? Value::True : Value::False;
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<bool>> tables_;
};

Interpretation kleene_grounded(const TruthTables& tables, std::size_t n) {
  Interpretation current(n, Value::Undecided);
  while (true) {
    Interpretation next = tables.gamma(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

/// Every three-valued interpretation of n arguments in lexicographic order.
std::vector<Interpretation> all_three_valued(std::size_t n) {
  std::vector<Interpretation> out;
  Interpretation current(n, Value::False);
  while (true) {
    out.push_back(current);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (current[j] == Value::False) {
        current[j] = Value::True;
        break;
      }
      if (current[j] == Value::True) {
        current[j] = Value::Undecided;
        break;
      }
      current[j] = Value::False;
      if (j == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace

bool information_leq(const Interpretation& a, const Interpretation& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != Value::Undecided && a[i] != b[i]) return false;
  }
  return true;
}

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Const: return f;
    case FormulaKind::Not: {
      Formula c = simplify(f.child());
      if (c.kind() == FormulaKind::Const) return Formula::constant(!c.value());
      return !c;
    }
    default: break;
  }
  Formula l = simplify(f.left());
  Formula r = simplify(f.right());
  const bool lc = l.kind() == FormulaKind::Const;
  const bool rc = r.kind() == FormulaKind::Const;
  if (lc && rc) {
    const bool a = l.value();
    const bool b = r.value();
    switch (f.kind()) {
      case FormulaKind::And: return Formula::constant(a && b);
      case FormulaKind::Or: return Formula::constant(a || b);
      case FormulaKind::Imp: return Formula::constant(!a || b);
      case FormulaKind::Iff: return Formula::constant(a == b);
      default: return Formula::constant(a != b);
    }
  }
  if (lc || rc) {
    const bool k = lc ? l.value() : r.value();
    const Formula& other = lc ? r : l;
    switch (f.kind()) {
      case FormulaKind::And: return k ? other : Formula::constant(false);
      case FormulaKind::Or: return k ? Formula::constant(true) : other;
      case FormulaKind::Iff: return k ? other : simplify(!other);
      case FormulaKind::Xor: return k ? simplify(!other) : other;
      case FormulaKind::Imp:
        if (lc) return k ? r : Formula::constant(true);
        return k ? Formula::constant(true) : simplify(!l);
      default: break;
    }
  }
  return Formula::binary(f.kind(), l, r);
}

Interpretation brute_gamma(const Adf& adf, const Interpretation& interpretation, std::size_t cap) {
  check_cap(adf, cap);
  return TruthTables(adf).gamma(interpretation);
}

ReducedAdf build_reduced(const Adf& adf, const Interpretation& interpretation) {
  if (std::find(interpretation.begin(), interpretation.end(), Value::Undecided) !=
      interpretation.end()) {
    throw std::invalid_argument("reduct needs a two-valued interpretation");
  }
  auto substitute = [&](auto&& self, const Formula& f) -> Formula {
    switch (f.kind()) {
      case FormulaKind::Var:
        return interpretation[adf.index_of(f.name())] == Value::False ? Formula::constant(false) : f;
      case FormulaKind::Const: return f;
      case FormulaKind::Not: return !self(self, f.child());
      default: return Formula::binary(f.kind(), self(self, f.left()), self(self, f.right()));
    }
  };
  ReducedAdf out{{}, {}};
  std::vector<std::string> names;
  std::vector<Formula> conditions;
  for (std::size_t i = 0; i < adf.size(); ++i) {
    if (interpretation[i] != Value::True) continue;
    out.surviving.push_back(i);
    names.push_back(adf.name(i));
    conditions.push_back(simplify(substitute(substitute, adf.condition(i))));
  }
  out.adf = Adf(std::move(names), std::move(conditions));
  return out;
}

std::vector<Interpretation> brute_semantics(const Adf& adf, Semantics semantics, std::size_t cap) {
  check_cap(adf, cap);
  const std::size_t n = adf.size();
  const TruthTables tables(adf);

  if (semantics == Semantics::Grounded) return {kleene_grounded(tables, n)};

  if (semantics == Semantics::TwoValued || semantics == Semantics::Stable) {
    std::vector<Interpretation> out;
    for (const Interpretation& candidate : all_three_valued(n)) {
      if (std::find(candidate.begin(), candidate.end(), Value::Undecided) != candidate.end()) {
        continue;
      }
      std::size_t x = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (candidate[j] == Value::True) x |= std::size_t{1} << j;
      }
      bool model = true;
      for (std::size_t i = 0; i < n && model; ++i) model = tables.at(i, x) == (candidate[i] == Value::True);
      if (!model) continue;
      if (semantics == Semantics::Stable) {
        const ReducedAdf reduced = build_reduced(adf, candidate);
        const Interpretation g = kleene_grounded(TruthTables(reduced.adf), reduced.adf.size());
        if (std::find(g.begin(), g.end(), Value::Undecided) != g.end() ||
            std::find(g.begin(), g.end(), Value::False) != g.end()) {
          continue;
        }
      }
      out.push_back(candidate);
    }
    return out;
  }

  std::vector<Interpretation> admissible;
  std::vector<Interpretation> complete;
  for (const Interpretation& candidate : all_three_valued(n)) {
    const Interpretation image = tables.gamma(candidate);
    if (!information_leq(candidate, image)) continue;
    admissible.push_back(candidate);
    if (candidate == image) complete.push_back(candidate);
  }
  if (semantics == Semantics::Admissible) return admissible;
  if (semantics == Semantics::Complete) return complete;

  std::vector<Interpretation> maximal;
  for (const Interpretation& a : admissible) {
    const bool dominated = std::any_of(admissible.begin(), admissible.end(), [&](const auto& b) {
      return a != b && information_leq(a, b);
    });
    if (!dominated) maximal.push_back(a);
  }
  return maximal;
}

}  // namespace bass
