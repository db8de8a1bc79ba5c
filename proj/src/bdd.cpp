#include "bass/bdd.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace bass {

namespace {

constexpr std::size_t kInitialUniqueSlots = 1u << 12;
constexpr std::size_t kInitialCacheSlots = 1u << 14;
constexpr std::size_t kMaxCacheSlots = 1u << 22;

BddManager& shared_manager(const Bdd& a, const Bdd& b) {
  if (a.manager() == nullptr || a.manager() != b.manager()) {
    throw BddUsageError("operands belong to different BDD managers");
  }
  return *a.manager();
}

BddManager& owning_manager(const Bdd& a) {
  if (a.manager() == nullptr) {
    throw BddUsageError("BDD handle has no manager");
  }
  return *a.manager();
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bdd handle

BddVar Bdd::top_var() const {
  return BddVar{owning_manager(*this).node_var(root_)};
}

Bdd Bdd::low() const { return {manager_, owning_manager(*this).node_low(root_)}; }

Bdd Bdd::high() const { return {manager_, owning_manager(*this).node_high(root_)}; }

std::size_t Bdd::size() const {
  const BddManager& m = owning_manager(*this);
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (!seen.insert(u).second || u <= kTrueNode) continue;
    stack.push_back(m.node_low(u));
    stack.push_back(m.node_high(u));
  }
  return seen.size();
}

std::vector<BddVar> Bdd::support() const {
  const BddManager& m = owning_manager(*this);
  std::unordered_set<NodeId> seen;
  std::vector<bool> used(m.num_vars(), false);
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (u <= kTrueNode || !seen.insert(u).second) continue;
    used[m.node_var(u)] = true;
    stack.push_back(m.node_low(u));
    stack.push_back(m.node_high(u));
  }
  std::vector<BddVar> out;
  for (std::uint32_t v = 0; v < used.size(); ++v) {
    if (used[v]) out.push_back(BddVar{v});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manager

BddManager::BddManager(std::uint32_t num_vars)
    : num_vars_(num_vars), unique_(kInitialUniqueSlots, 0), cache_(kInitialCacheSlots) {
  // Terminals carry var = num_vars so they sort below every decision node.
  nodes_.push_back(Node{num_vars_, kFalseNode, kFalseNode});
  nodes_.push_back(Node{num_vars_, kTrueNode, kTrueNode});
}

Bdd BddManager::var(BddVar v) { return literal(v, true); }

Bdd BddManager::literal(BddVar v, bool positive) {
  if (v.index >= num_vars_) {
    throw BddUsageError("variable " + std::to_string(v.index) + " out of range");
  }
  return positive ? Bdd{this, make_node(v.index, kFalseNode, kTrueNode)}
                  : Bdd{this, make_node(v.index, kTrueNode, kFalseNode)};
}

Bdd BddManager::cube(std::span<const BddVar> vars, const std::vector<bool>& values) {
  std::vector<std::pair<BddVar, bool>> lits;
  for (std::size_t i = 0; i < vars.size(); ++i) lits.emplace_back(vars[i], values.at(i));
  std::sort(lits.begin(), lits.end(), [](auto& x, auto& y) { return x.first > y.first; });
  NodeId r = kTrueNode;
  for (auto [v, positive] : lits) {
    if (v.index >= num_vars_) throw BddUsageError("variable out of range");
    r = positive ? make_node(v.index, kFalseNode, r) : make_node(v.index, r, kFalseNode);
  }
  return {this, r};
}

std::size_t BddManager::node_hash(std::uint32_t var, NodeId low, NodeId high) {
  return mix((static_cast<std::uint64_t>(low) << 32 | high) ^ (static_cast<std::uint64_t>(var) * 0x9e3779b97f4a7c15ULL));
}

void BddManager::grow_unique_table() {
  std::vector<NodeId> table(unique_.size() * 2, 0);
  const std::size_t mask = table.size() - 1;
  for (NodeId id = 2; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    std::size_t slot = node_hash(n.var, n.low, n.high) & mask;
    while (table[slot] != 0) slot = (slot + 1) & mask;
    table[slot] = id;
  }
  unique_.swap(table);
}

NodeId BddManager::make_node(std::uint32_t var, NodeId low, NodeId high) {
  if (low == high) return low;
  const std::size_t mask = unique_.size() - 1;
  std::size_t slot = node_hash(var, low, high) & mask;
  while (unique_[slot] != 0) {
    const Node& n = nodes_[unique_[slot]];
    if (n.var == var && n.low == low && n.high == high) return unique_[slot];
    slot = (slot + 1) & mask;
  }
  if (nodes_.size() >= std::numeric_limits<NodeId>::max()) {
    throw std::length_error("BDD node store exhausted");
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{var, low, high});
  unique_[slot] = id;
  if (nodes_.size() * 2 > unique_.size()) grow_unique_table();
  if (nodes_.size() > cache_.size() && cache_.size() < kMaxCacheSlots) {
    // Entries are dropped on resize; the table is only a memo.
    cache_.assign(cache_.size() * 2, CacheEntry{});
  }
  return id;
}

std::size_t BddManager::cache_slot(CacheOp op, NodeId a, NodeId b) const {
  std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | b;
  return mix(key + static_cast<std::uint64_t>(op) * 0x632be59bd9b4e019ULL) & (cache_.size() - 1);
}

std::optional<NodeId> BddManager::cache_lookup(CacheOp op, NodeId a, NodeId b) const {
  const CacheEntry& e = cache_[cache_slot(op, a, b)];
  if (e.op == op && e.a == a && e.b == b) return e.result;
  return std::nullopt;
}

void BddManager::cache_insert(CacheOp op, NodeId a, NodeId b, NodeId result) {
  cache_[cache_slot(op, a, b)] = CacheEntry{op, a, b, result};
}

NodeId BddManager::apply(BoolOp op, NodeId a, NodeId b) {
  switch (op) {
    case BoolOp::And: return apply_rec(CacheOp::And, a, b);
    case BoolOp::Or: return apply_rec(CacheOp::Or, a, b);
    case BoolOp::Xor: return apply_rec(CacheOp::Xor, a, b);
    case BoolOp::Imp: return apply_rec(CacheOp::Imp, a, b);
    case BoolOp::Iff: return apply_rec(CacheOp::Iff, a, b);
  }
  throw BddUsageError("unknown operator");
}

NodeId BddManager::apply_rec(CacheOp op, NodeId a, NodeId b) {
  switch (op) {
    case CacheOp::And:
      if (a == kFalseNode || b == kFalseNode) return kFalseNode;
      if (a == kTrueNode || a == b) return b;
      if (b == kTrueNode) return a;
      if (a > b) std::swap(a, b);
      break;
    case CacheOp::Or:
      if (a == kTrueNode || b == kTrueNode) return kTrueNode;
      if (a == kFalseNode || a == b) return b;
      if (b == kFalseNode) return a;
      if (a > b) std::swap(a, b);
      break;
    case CacheOp::Xor:
      if (a == b) return kFalseNode;
      if (a == kFalseNode) return b;
      if (b == kFalseNode) return a;
      if (a == kTrueNode) return negate(b);
      if (b == kTrueNode) return negate(a);
      if (a > b) std::swap(a, b);
      break;
    case CacheOp::Imp:
      if (a == kFalseNode || b == kTrueNode || a == b) return kTrueNode;
      if (a == kTrueNode) return b;
      if (b == kFalseNode) return negate(a);
      break;
    case CacheOp::Iff:
      if (a == b) return kTrueNode;
      if (a == kTrueNode) return b;
      if (b == kTrueNode) return a;
      if (a == kFalseNode) return negate(b);
      if (b == kFalseNode) return negate(a);
      if (a > b) std::swap(a, b);
      break;
    default:
      throw BddUsageError("not a binary operator");
  }
  if (auto hit = cache_lookup(op, a, b)) return *hit;

  const std::uint32_t va = nodes_[a].var;
  const std::uint32_t vb = nodes_[b].var;
  const std::uint32_t v = std::min(va, vb);
  const NodeId a0 = va == v ? nodes_[a].low : a;
  const NodeId a1 = va == v ? nodes_[a].high : a;
  const NodeId b0 = vb == v ? nodes_[b].low : b;
  const NodeId b1 = vb == v ? nodes_[b].high : b;
  const NodeId low = apply_rec(op, a0, b0);
  const NodeId high = apply_rec(op, a1, b1);
  const NodeId r = make_node(v, low, high);
  cache_insert(op, a, b, r);
  return r;
}

NodeId BddManager::negate(NodeId a) {
  if (a == kFalseNode) return kTrueNode;
  if (a == kTrueNode) return kFalseNode;
  if (auto hit = cache_lookup(CacheOp::Not, a, 0)) return *hit;
  const Node n = nodes_[a];
  const NodeId low = negate(n.low);
  const NodeId high = negate(n.high);
  const NodeId r = make_node(n.var, low, high);
  cache_insert(CacheOp::Not, a, 0, r);
  return r;
}

NodeId BddManager::exists(NodeId f, NodeId cube) { return exists_rec(f, cube); }

NodeId BddManager::exists_rec(NodeId f, NodeId cube) {
  if (f <= kTrueNode) return f;
  const std::uint32_t vf = nodes_[f].var;
  while (cube > kTrueNode && nodes_[cube].var < vf) cube = nodes_[cube].high;
  if (cube <= kTrueNode) return f;
  if (auto hit = cache_lookup(CacheOp::Exists, f, cube)) return *hit;
  const Node n = nodes_[f];
  NodeId r;
  if (nodes_[cube].var == vf) {
    const NodeId rest = nodes_[cube].high;
    const NodeId low = exists_rec(n.low, rest);
    r = low == kTrueNode ? kTrueNode : apply_rec(CacheOp::Or, low, exists_rec(n.high, rest));
  } else {
    const NodeId low = exists_rec(n.low, cube);
    const NodeId high = exists_rec(n.high, cube);
    r = make_node(vf, low, high);
  }
  cache_insert(CacheOp::Exists, f, cube, r);
  return r;
}

NodeId BddManager::restrict(NodeId f, std::uint32_t var, bool value) {
  return restrict_rec(f, var, var << 1 | (value ? 1u : 0u));
}

NodeId BddManager::restrict_rec(NodeId f, std::uint32_t var, NodeId key) {
  const Node n = nodes_[f];
  if (n.var > var) return f;
  if (n.var == var) return (key & 1u) ? n.high : n.low;
  if (auto hit = cache_lookup(CacheOp::Restrict, f, key)) return *hit;
  const NodeId low = restrict_rec(n.low, var, key);
  const NodeId high = restrict_rec(n.high, var, key);
  const NodeId r = make_node(n.var, low, high);
  cache_insert(CacheOp::Restrict, f, key, r);
  return r;
}

NodeId BddManager::flip(NodeId f, std::uint32_t var) { return flip_rec(f, var); }

NodeId BddManager::flip_rec(NodeId f, std::uint32_t var) {
  const Node n = nodes_[f];
  if (n.var > var) return f;
  if (n.var == var) return make_node(var, n.high, n.low);
  if (auto hit = cache_lookup(CacheOp::Flip, f, var)) return *hit;
  const NodeId low = flip_rec(n.low, var);
  const NodeId high = flip_rec(n.high, var);
  const NodeId r = make_node(n.var, low, high);
  cache_insert(CacheOp::Flip, f, var, r);
  return r;
}

bool BddManager::check_invariants() const {
  struct TripleHash {
    std::size_t operator()(const std::tuple<std::uint32_t, NodeId, NodeId>& t) const {
      return node_hash(std::get<0>(t), std::get<1>(t), std::get<2>(t));
    }
  };
  std::unordered_set<std::tuple<std::uint32_t, NodeId, NodeId>, TripleHash> seen;
  for (NodeId id = 2; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.low == n.high) return false;
    if (n.var >= num_vars_) return false;
    if (nodes_[n.low].var <= n.var || nodes_[n.high].var <= n.var) return false;
    if (!seen.emplace(n.var, n.low, n.high).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free functions

Bdd apply(BoolOp op, const Bdd& a, const Bdd& b) {
  BddManager& m = shared_manager(a, b);
  return {&m, m.apply(op, a.root(), b.root())};
}

Bdd negate(const Bdd& a) {
  BddManager& m = owning_manager(a);
  return {&m, m.negate(a.root())};
}

Bdd ite(const Bdd& cond, const Bdd& then_branch, const Bdd& else_branch) {
  return (cond & then_branch) | ((!cond) & else_branch);
}

namespace {

NodeId make_positive_cube(BddManager& m, std::span<const BddVar> vars) {
  std::vector<BddVar> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  NodeId r = kTrueNode;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (it->index >= m.num_vars()) throw BddUsageError("variable out of range");
    r = m.make_node(it->index, kFalseNode, r);
  }
  return r;
}

}  // namespace

Bdd exists(const Bdd& f, std::span<const BddVar> vars) {
  BddManager& m = owning_manager(f);
  const NodeId cube = make_positive_cube(m, vars);
  return {&m, m.exists(f.root(), cube)};
}

Bdd forall(const Bdd& f, std::span<const BddVar> vars) { return !exists(!f, vars); }

Bdd restrict(const Bdd& f, BddVar v, bool value) {
  BddManager& m = owning_manager(f);
  return {&m, m.restrict(f.root(), v.index, value)};
}

Bdd flip_var(const Bdd& f, BddVar v) {
  BddManager& m = owning_manager(f);
  return {&m, m.flip(f.root(), v.index)};
}

bool eval(const Bdd& f, const Valuation& valuation) {
  const BddManager& m = owning_manager(f);
  if (valuation.size() < m.num_vars()) {
    throw BddUsageError("valuation does not cover all manager variables");
  }
  NodeId u = f.root();
  while (u > kTrueNode) {
    u = valuation[m.node_var(u)] ? m.node_high(u) : m.node_low(u);
  }
  return u == kTrueNode;
}

namespace {

/// Maps manager variables to their rank within a sorted, duplicate-free
/// variable list; variables outside the list map to -1.
struct Levels {
  std::vector<std::int64_t> rank;
  std::size_t count = 0;

  Levels(const BddManager& m, std::span<const BddVar> over) : rank(m.num_vars() + 1, -1) {
    std::vector<BddVar> sorted(over.begin(), over.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const BddVar& v : sorted) {
      if (v.index >= m.num_vars()) throw BddUsageError("variable out of range");
      rank[v.index] = static_cast<std::int64_t>(count++);
    }
    rank[m.num_vars()] = static_cast<std::int64_t>(count);
  }
};

}  // namespace

BigInt sat_count(const Bdd& f, std::span<const BddVar> over) {
  const BddManager& m = owning_manager(f);
  const Levels levels(m, over);
  for (const BddVar& v : f.support()) {
    if (levels.rank[v.index] < 0) {
      throw BddUsageError("function depends on variable " + std::to_string(v.index) +
                          " outside the counting set");
    }
  }
  auto level = [&](NodeId u) { return levels.rank[m.node_var(u)]; };

  // Count of satisfying assignments to the variables at or below level(u).
  std::unordered_map<NodeId, BigInt> memo;
  auto count = [&](auto&& self, NodeId u) -> BigInt {
    if (u == kFalseNode) return 0;
    if (u == kTrueNode) return 1;
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    const NodeId lo = m.node_low(u);
    const NodeId hi = m.node_high(u);
    BigInt r = (self(self, lo) << static_cast<unsigned>(level(lo) - level(u) - 1)) +
               (self(self, hi) << static_cast<unsigned>(level(hi) - level(u) - 1));
    memo.emplace(u, r);
    return r;
  };
  return count(count, f.root()) << static_cast<unsigned>(level(f.root()));
}

std::optional<Valuation> least_positive_valuation(const Bdd& f, std::span<const BddVar> over) {
  const BddManager& m = owning_manager(f);
  if (f.is_zero()) return std::nullopt;
  const Levels levels(m, over);

  constexpr std::size_t kUnsat = std::numeric_limits<std::size_t>::max();
  std::unordered_map<NodeId, std::size_t> cost;
  auto min_cost = [&](auto&& self, NodeId u) -> std::size_t {
    if (u == kFalseNode) return kUnsat;
    if (u == kTrueNode) return 0;
    if (auto it = cost.find(u); it != cost.end()) return it->second;
    const std::size_t lo = self(self, m.node_low(u));
    std::size_t hi = self(self, m.node_high(u));
    if (hi != kUnsat && levels.rank[m.node_var(u)] >= 0) ++hi;
    const std::size_t r = std::min(lo, hi);
    cost.emplace(u, r);
    return r;
  };
  min_cost(min_cost, f.root());

  Valuation out(m.num_vars(), false);
  NodeId u = f.root();
  while (u > kTrueNode) {
    const NodeId lo = m.node_low(u);
    const NodeId hi = m.node_high(u);
    const std::size_t lo_cost = lo == kTrueNode ? 0 : lo == kFalseNode ? kUnsat : cost.at(lo);
    std::size_t hi_cost = hi == kTrueNode ? 0 : hi == kFalseNode ? kUnsat : cost.at(hi);
    if (hi_cost != kUnsat && levels.rank[m.node_var(u)] >= 0) ++hi_cost;
    if (lo_cost <= hi_cost) {
      u = lo;
    } else {
      out[m.node_var(u)] = true;
      u = hi;
    }
  }
  return out;
}

Bdd exact_count_constraint(std::span<const Bdd> indicators, std::size_t k, BddManager& manager) {
  if (k > indicators.size()) return manager.zero();
  std::int64_t previous_max = -1;
  for (const Bdd& f : indicators) {
    if (f.manager() != &manager) throw BddUsageError("indicator belongs to a different manager");
    const auto support = f.support();
    if (support.empty()) continue;
    if (static_cast<std::int64_t>(support.front().index) <= previous_max) {
      throw BddUsageError("indicator blocks must be disjoint and in variable order");
    }
    previous_max = support.back().index;
  }

  // states[c]: exactly c of the remaining (suffix) indicators hold.
  // Counts above k fall into the implicit overflow state, which is 0.
  std::vector<Bdd> states(k + 1, manager.zero());
  states[0] = manager.one();
  for (auto it = indicators.rbegin(); it != indicators.rend(); ++it) {
    std::vector<Bdd> next(k + 1, manager.zero());
    for (std::size_t c = 0; c <= k; ++c) {
      const Bdd when_true = c == 0 ? manager.zero() : states[c - 1];
      next[c] = ite(*it, when_true, states[c]);
    }
    states.swap(next);
  }
  return states[k];
}

Bdd upward_closure(const Bdd& f, std::span<const BddVar> over) {
  BddManager& m = owning_manager(f);
  Bdd g = f;
  for (const BddVar& v : over) {
    g = g | (m.var(v) & restrict(g, v, false));
  }
  return g;
}

Bdd remove_supersets(const Bdd& r, const Bdd& l, std::span<const BddVar> over) {
  BddManager& m = owning_manager(r);
  if (l.manager() != &m) throw BddUsageError("operands belong to different managers");
  std::vector<bool> ordered(m.num_vars(), false);
  for (const BddVar& v : over) ordered.at(v.index) = true;
  std::unordered_map<std::uint64_t, NodeId> memo;

  auto rec = [&](auto&& self, NodeId a, NodeId b) -> NodeId {
    if (a == kFalseNode || b == kTrueNode) return kFalseNode;
    if (b == kFalseNode) return a;
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::uint32_t va = m.node_var(a);
    const std::uint32_t vb = m.node_var(b);
    const std::uint32_t v = std::min(va, vb);
    const NodeId a0 = va == v ? m.node_low(a) : a;
    const NodeId a1 = va == v ? m.node_high(a) : a;
    const NodeId b0 = vb == v ? m.node_low(b) : b;
    const NodeId b1 = vb == v ? m.node_high(b) : b;
    const NodeId low = self(self, a0, b0);
    // With x_v = 1 on an ordered variable, members of b with y_v = 0 are below x too.
    NodeId high = self(self, a1, b1);
    if (ordered[v]) high = self(self, high, b0);
    const NodeId r = m.make_node(v, low, high);
    memo.emplace(key, r);
    return r;
  };
  return {&m, rec(rec, r.root(), l.root())};
}

Bdd greedy_conjunction(std::span<const Bdd> clauses, BddManager& manager) {
  std::vector<Bdd> pending(clauses.begin(), clauses.end());
  for (const Bdd& c : pending) {
    if (c.manager() != &manager) throw BddUsageError("clause belongs to a different manager");
  }
  Bdd result = manager.one();
  while (!pending.empty()) {
    std::size_t best = 0;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    Bdd best_product;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      Bdd product = result & pending[i];
      const std::size_t size = product.size();
      if (size < best_size) {
        best = i;
        best_size = size;
        best_product = product;
      }
    }
    result = best_product;
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return result;
}

}  // namespace bass
