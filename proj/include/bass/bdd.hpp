/// @file  bdd.hpp
/// @brief Reduced ordered binary decision diagrams over a fixed variable order

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bass {

using BigInt = boost::multiprecision::cpp_int;

/// Index into the node store. Ids 0 and 1 are the terminals.
using NodeId = std::uint32_t;

inline constexpr NodeId kFalseNode = 0;
inline constexpr NodeId kTrueNode = 1;

/// Position of a decision variable in the global order.
struct BddVar {
  std::uint32_t index = 0;

  friend auto operator<=>(const BddVar&, const BddVar&) = default;
};

/// One Boolean per manager variable.
using Valuation = std::vector<bool>;

/// Raised when operands come from different managers or a documented
/// precondition on variable support is violated.
class BddUsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class BoolOp : std::uint8_t { And, Or, Xor, Imp, Iff };

class BddManager;

/// Handle to a function owned by a BddManager. Cheap to copy; equality is
/// function equality because the store is canonical.
class Bdd {
 public:
  Bdd() = default;
  Bdd(BddManager* manager, NodeId root) : manager_(manager), root_(root) {}

  BddManager* manager() const { return manager_; }
  NodeId root() const { return root_; }

  bool is_zero() const { return root_ == kFalseNode; }
  bool is_one() const { return root_ == kTrueNode; }
  bool is_terminal() const { return root_ <= kTrueNode; }

  /// Decision variable at the root. Terminals report num_vars().
  BddVar top_var() const;
  Bdd low() const;
  Bdd high() const;

  /// Number of distinct nodes reachable from the root, terminals included.
  std::size_t size() const;

  /// Sorted list of variables the function depends on.
  std::vector<BddVar> support() const;

  friend bool operator==(const Bdd& a, const Bdd& b) {
    return a.manager_ == b.manager_ && a.root_ == b.root_;
  }

 private:
  BddManager* manager_ = nullptr;
  NodeId root_ = kFalseNode;
};

/// Owns the hash-consed node store, the unique table and the computed
/// table. Not thread-safe; separate managers are independent.
class BddManager {
 public:
  explicit BddManager(std::uint32_t num_vars);
  BddManager(const BddManager&) = delete;
  BddManager& operator=(const BddManager&) = delete;

  std::uint32_t num_vars() const { return num_vars_; }

  Bdd zero() { return {this, kFalseNode}; }
  Bdd one() { return {this, kTrueNode}; }
  Bdd constant(bool value) { return value ? one() : zero(); }
  Bdd var(BddVar v);
  Bdd literal(BddVar v, bool positive);
  /// Conjunction of the given literals; `values[i]` is the polarity of `vars[i]`.
  Bdd cube(std::span<const BddVar> vars, const std::vector<bool>& values);

  /// Total nodes in the store, terminals included.
  std::size_t store_size() const { return nodes_.size(); }

  // Node access, used by algorithms that walk the graph directly.
  std::uint32_t node_var(NodeId id) const { return nodes_[id].var; }
  NodeId node_low(NodeId id) const { return nodes_[id].low; }
  NodeId node_high(NodeId id) const { return nodes_[id].high; }

  /// Returns the unique node for (var, low, high), applying the reduction rule.
  NodeId make_node(std::uint32_t var, NodeId low, NodeId high);

  NodeId apply(BoolOp op, NodeId a, NodeId b);
  NodeId negate(NodeId a);
  NodeId exists(NodeId f, NodeId cube);
  NodeId restrict(NodeId f, std::uint32_t var, bool value);
  NodeId flip(NodeId f, std::uint32_t var);

  /// Exhaustively scans the store for reduction violations. Test hook.
  bool check_invariants() const;

 private:
  struct Node {
    std::uint32_t var;
    NodeId low;
    NodeId high;
  };

  enum class CacheOp : std::uint32_t {
    Empty = 0,
    And,
    Or,
    Xor,
    Imp,
    Iff,
    Not,
    Exists,
    Restrict,
    Flip,
  };

  struct CacheEntry {
    CacheOp op = CacheOp::Empty;
    NodeId a = 0;
    NodeId b = 0;
    NodeId result = 0;
  };

  NodeId apply_rec(CacheOp op, NodeId a, NodeId b);
  NodeId exists_rec(NodeId f, NodeId cube);
  NodeId restrict_rec(NodeId f, std::uint32_t var, NodeId key);
  NodeId flip_rec(NodeId f, std::uint32_t var);

  std::optional<NodeId> cache_lookup(CacheOp op, NodeId a, NodeId b) const;
  void cache_insert(CacheOp op, NodeId a, NodeId b, NodeId result);
  std::size_t cache_slot(CacheOp op, NodeId a, NodeId b) const;

  static std::size_t node_hash(std::uint32_t var, NodeId low, NodeId high);
  void grow_unique_table();

  std::uint32_t num_vars_;
  std::vector<Node> nodes_;
  std::vector<NodeId> unique_;  // open addressing, 0 marks a free slot
  std::vector<CacheEntry> cache_;
};

/// f_a op f_b. Operands must share a manager.
Bdd apply(BoolOp op, const Bdd& a, const Bdd& b);
Bdd negate(const Bdd& a);
Bdd ite(const Bdd& cond, const Bdd& then_branch, const Bdd& else_branch);

inline Bdd operator&(const Bdd& a, const Bdd& b) { return apply(BoolOp::And, a, b); }
inline Bdd operator|(const Bdd& a, const Bdd& b) { return apply(BoolOp::Or, a, b); }
inline Bdd operator^(const Bdd& a, const Bdd& b) { return apply(BoolOp::Xor, a, b); }
inline Bdd operator!(const Bdd& a) { return negate(a); }
inline Bdd implies(const Bdd& a, const Bdd& b) { return apply(BoolOp::Imp, a, b); }
inline Bdd iff(const Bdd& a, const Bdd& b) { return apply(BoolOp::Iff, a, b); }

Bdd exists(const Bdd& f, std::span<const BddVar> vars);
Bdd forall(const Bdd& f, std::span<const BddVar> vars);
/// Cofactor f|_{v=value}.
Bdd restrict(const Bdd& f, BddVar v, bool value);
/// g(x) = f(x with position v negated).
Bdd flip_var(const Bdd& f, BddVar v);

bool eval(const Bdd& f, const Valuation& valuation);

/// Number of assignments to `over` satisfying f. f must not depend on any
/// variable outside `over`.
BigInt sat_count(const Bdd& f, std::span<const BddVar> over);

/// Satisfying assignment minimizing the number of positive variables from
/// `over`. Variables not fixed by the chosen path are 0. Linear in |f|.
std::optional<Valuation> least_positive_valuation(const Bdd& f, std::span<const BddVar> over);

/// Satisfied iff exactly k of the indicators hold. Indicator supports must be
/// pairwise disjoint and appear in manager order.
Bdd exact_count_constraint(std::span<const Bdd> indicators, std::size_t k, BddManager& manager);

/// Superset closure of f with respect to the variables in `over`.
Bdd upward_closure(const Bdd& f, std::span<const BddVar> over);

/// r & !upward_closure(l, over), computed without building the closure.
Bdd remove_supersets(const Bdd& r, const Bdd& l, std::span<const BddVar> over);

/// n-ary conjunction that always conjoins the clause giving the smallest
/// intermediate result next. Empty input yields 1.
Bdd greedy_conjunction(std::span<const Bdd> clauses, BddManager& manager);

}  // namespace bass
