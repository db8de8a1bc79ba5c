#include "bass/encoding.hpp"

#include <unordered_map>

namespace bass {

char to_char(Value v) {
  switch (v) {
    case Value::False: return '0';
    case Value::True: return '1';
    case Value::Undecided: return '*';
  }
  return '?';
}

std::string format_interpretation(const Interpretation& interpretation, const Adf& adf) {
  std::string out;
  for (std::size_t i = 0; i < interpretation.size(); ++i) {
    if (i > 0) out += ' ';
    out += adf.name(i);
    out += ':';
    out += to_char(interpretation[i]);
  }
  return out;
}

std::vector<BddVar> VarLayout::direct_vars() const {
  std::vector<BddVar> out;
  for (std::size_t i = 0; i < n_; ++i) out.push_back(direct(i));
  return out;
}

std::vector<BddVar> VarLayout::dual_vars() const {
  std::vector<BddVar> out;
  for (std::size_t i = 0; i < n_; ++i) {
    out.push_back(top(i));
    out.push_back(bot(i));
  }
  return out;
}

std::vector<BddVar> VarLayout::all_vars() const {
  std::vector<BddVar> out;
  for (std::uint32_t v = 0; v < num_vars(); ++v) out.push_back(BddVar{v});
  return out;
}

namespace {

Bdd compile(const Formula& f, const Adf& adf, const VarLayout& layout, BddManager& m,
            std::unordered_map<const void*, Bdd>& memo) {
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  Bdd r;
  switch (f.kind()) {
    case FormulaKind::Var: {
      const std::size_t i = adf.index_of(f.name());
      if (i == Adf::npos) throw EncodingError("unknown argument '" + f.name() + "'");
      r = m.var(layout.direct(i));
      break;
    }
    case FormulaKind::Const: r = m.constant(f.value()); break;
    case FormulaKind::Not: r = !compile(f.child(), adf, layout, m, memo); break;
    default: {
      const Bdd a = compile(f.left(), adf, layout, m, memo);
      const Bdd b = compile(f.right(), adf, layout, m, memo);
      switch (f.kind()) {
        case FormulaKind::And: r = a & b; break;
        case FormulaKind::Or: r = a | b; break;
        case FormulaKind::Imp: r = implies(a, b); break;
        case FormulaKind::Iff: r = iff(a, b); break;
        default: r = a ^ b; break;
      }
    }
  }
  memo.emplace(f.identity(), r);
  return r;
}

}  // namespace

Bdd formula_to_bdd(const Formula& f, const Adf& adf, const VarLayout& layout, BddManager& manager) {
  std::unordered_map<const void*, Bdd> memo;
  return compile(f, adf, layout, manager, memo);
}

Bdd dual_transform(const Bdd& f, const VarLayout& layout) {
  BddManager& m = *f.manager();
  for (const BddVar& v : f.support()) {
    if (!layout.is_direct(v)) {
      throw BddUsageError("dual_transform input depends on a dual variable");
    }
  }
  std::unordered_map<NodeId, Bdd> memo;
  auto rewrite = [&](auto&& self, NodeId u) -> Bdd {
    if (u <= kTrueNode) return Bdd{&m, u};
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    const std::size_t arg = m.node_var(u) / 3;
    const Bdd high = self(self, m.node_high(u));
    const Bdd low = self(self, m.node_low(u));
    // high & low holds on every valid encoding.
    Bdd r = (m.var(layout.top(arg)) & high) | (m.var(layout.bot(arg)) & low) | (high & low);
    memo.emplace(u, r);
    return r;
  };
  return rewrite(rewrite, f.root());
}

std::vector<GammaPair> gamma_pairs(const Adf& adf, const VarLayout& layout, BddManager& manager) {
  std::vector<GammaPair> out;
  out.reserve(adf.size());
  for (std::size_t i = 0; i < adf.size(); ++i) {
    const Bdd phi = formula_to_bdd(adf.condition(i), adf, layout, manager);
    out.push_back(GammaPair{dual_transform(phi, layout), dual_transform(!phi, layout)});
  }
  return out;
}

Bdd validity_constraint(const VarLayout& layout, BddManager& manager) {
  std::vector<Bdd> clauses;
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    clauses.push_back(manager.var(layout.top(i)) | manager.var(layout.bot(i)));
  }
  return greedy_conjunction(clauses, manager);
}

Interpretation decode(const Valuation& valuation, const VarLayout& layout, EncodingKind kind) {
  Interpretation out(layout.num_arguments(), Value::False);
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    if (kind == EncodingKind::Direct) {
      out[i] = valuation.at(layout.direct(i).index) ? Value::True : Value::False;
      continue;
    }
    const bool t = valuation.at(layout.top(i).index);
    const bool b = valuation.at(layout.bot(i).index);
    if (t && b) {
      out[i] = Value::Undecided;
    } else if (t) {
      out[i] = Value::True;
    } else if (b) {
      out[i] = Value::False;
    } else {
      throw EncodingError("invalid dual encoding (0,0) for argument " + std::to_string(i));
    }
  }
  return out;
}

Valuation encode(const Interpretation& interpretation, const VarLayout& layout, EncodingKind kind) {
  Valuation out(layout.num_vars(), false);
  for (std::size_t i = 0; i < layout.num_arguments(); ++i) {
    const Value v = interpretation.at(i);
    if (kind == EncodingKind::Direct) {
      if (v == Value::Undecided) throw EncodingError("direct encoding needs a two-valued interpretation");
      out[layout.direct(i).index] = v == Value::True;
    } else {
      out[layout.top(i).index] = v != Value::False;
      out[layout.bot(i).index] = v != Value::True;
    }
  }
  return out;
}

Bdd interpretation_cube(const Interpretation& interpretation, const VarLayout& layout,
                        EncodingKind kind, BddManager& manager) {
  const Valuation v = encode(interpretation, layout, kind);
  const std::vector<BddVar> vars =
      kind == EncodingKind::Direct ? layout.direct_vars() : layout.dual_vars();
  std::vector<bool> values;
  for (const BddVar& x : vars) values.push_back(v[x.index]);
  return manager.cube(vars, values);
}

}  // namespace bass
