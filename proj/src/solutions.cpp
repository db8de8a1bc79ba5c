#include "bass/solutions.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace bass {

std::vector<BddVar> kind_vars(const VarLayout& layout, EncodingKind kind) {
  switch (kind) {
    case EncodingKind::Direct: return layout.direct_vars();
    case EncodingKind::Dual: return layout.dual_vars();
    case EncodingKind::Combined: return layout.all_vars();
  }
  return {};
}

BigInt count(const SolutionSet& set) {
  return sat_count(set.set, kind_vars(set.layout, set.kind));
}

namespace {

void require_decodable(const SolutionSet& set, const std::vector<BddVar>& vars) {
  if (set.kind == EncodingKind::Combined) {
    throw std::invalid_argument("combined relations cannot be decoded to interpretations");
  }
  const auto support = set.set.support();
  if (!std::includes(vars.begin(), vars.end(), support.begin(), support.end())) {
    throw BddUsageError("solution set depends on variables outside its encoding");
  }
}

}  // namespace

void for_each_solution(const SolutionSet& set, std::optional<std::size_t> limit,
                       const std::function<bool(const Interpretation&)>& visit) {
  const std::vector<BddVar> vars = kind_vars(set.layout, set.kind);
  require_decodable(set, vars);
  const BddManager& m = *set.set.manager();
  Valuation point(set.layout.num_vars(), false);
  std::size_t emitted = 0;
  bool stop = false;

  auto walk = [&](auto&& self, std::size_t p, NodeId u) -> void {
    if (stop || u == kFalseNode) return;
    if (p == vars.size()) {
      if (limit && emitted >= *limit) {
        stop = true;
        return;
      }
      ++emitted;
      if (!visit(decode(point, set.layout, set.kind))) stop = true;
      return;
    }
    const std::uint32_t v = vars[p].index;
    const bool decides = m.node_var(u) == v;
    point[v] = false;
    self(self, p + 1, decides ? m.node_low(u) : u);
    point[v] = true;
    self(self, p + 1, decides ? m.node_high(u) : u);
    point[v] = false;
  };
  if (limit && *limit == 0) return;
  walk(walk, 0, set.set.root());
}

std::vector<Interpretation> enumerate(const SolutionSet& set, std::optional<std::size_t> limit) {
  std::vector<Interpretation> out;
  for_each_solution(set, limit, [&](const Interpretation& i) {
    out.push_back(i);
    return true;
  });
  return out;
}

namespace {

/// Uniform integer in [0, bound) by rejection over whole 64-bit words.
BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;
  while (true) {
    BigInt r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      if (w == 0 && spare > 0) word >>= spare;
      r = (r << 64) | word;
    }
    if (r < bound) return r;
  }
}

}  // namespace

std::vector<Interpretation> sample_uniform(const SolutionSet& set, std::size_t n, SampleSeed seed) {
  const std::vector<BddVar> vars = kind_vars(set.layout, set.kind);
  require_decodable(set, vars);
  if (set.set.is_zero()) throw EmptySetError("cannot sample from an empty solution set");
  const BddManager& m = *set.set.manager();

  std::vector<std::size_t> rank(set.layout.num_vars() + 1, vars.size());
  for (std::size_t p = 0; p < vars.size(); ++p) rank[vars[p].index] = p;
  auto level = [&](NodeId u) { return rank[m.node_var(u)]; };

  // Satisfying assignments of the variables from level(u) downwards.
  std::unordered_map<NodeId, BigInt> counts;
  auto node_count = [&](auto&& self, NodeId u) -> BigInt {
    if (u == kFalseNode) return 0;
    if (u == kTrueNode) return 1;
    if (auto it = counts.find(u); it != counts.end()) return it->second;
    const NodeId lo = m.node_low(u);
    const NodeId hi = m.node_high(u);
    BigInt r = (self(self, lo) << static_cast<unsigned>(level(lo) - level(u) - 1)) +
               (self(self, hi) << static_cast<unsigned>(level(hi) - level(u) - 1));
    counts.emplace(u, r);
    return r;
  };
  node_count(node_count, set.set.root());
  auto weight = [&](NodeId child, std::size_t p) {
    const BigInt c = child <= kTrueNode ? BigInt(child == kTrueNode ? 1 : 0) : counts.at(child);
    return BigInt(c << static_cast<unsigned>(level(child) - p - 1));
  };

  std::mt19937_64 rng(seed.value);
  std::vector<Interpretation> out;
  out.reserve(n);
  for (std::size_t draw = 0; draw < n; ++draw) {
    Valuation point(set.layout.num_vars(), false);
    NodeId u = set.set.root();
    for (std::size_t p = 0; p < vars.size(); ++p) {
      const std::uint32_t v = vars[p].index;
      bool take_high;
      if (m.node_var(u) == v) {
        const BigInt w0 = weight(m.node_low(u), p);
        const BigInt w1 = weight(m.node_high(u), p);
        take_high = uniform_below(w0 + w1, rng) >= w0;
        u = take_high ? m.node_high(u) : m.node_low(u);
      } else {
        take_high = (rng() & 1u) != 0;
      }
      point[v] = take_high;
    }
    out.push_back(decode(point, set.layout, set.kind));
  }
  return out;
}

}  // namespace bass
