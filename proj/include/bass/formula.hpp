/// @file  formula.hpp
/// @brief Acceptance-condition formulas, ADFs, and the .adf / .bnet formats

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bass {

enum class FormulaKind : std::uint8_t { Var, Const, Not, And, Or, Imp, Iff, Xor };

/// Immutable propositional formula over argument names. Subtrees are shared,
/// so copies are cheap.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula constant(bool value);
  static Formula negation(Formula child);
  static Formula binary(FormulaKind kind, Formula left, Formula right);

  FormulaKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  bool value() const { return node_->value; }
  const Formula& child() const { return node_->children[0]; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }

  bool is_binary() const { return kind() >= FormulaKind::And; }

  /// Stable address of the shared node; equal for copies of one formula.
  const void* identity() const { return node_.get(); }

  /// Number of nodes when expanded as a tree.
  std::size_t tree_size() const;

  /// Evaluates with `lookup(name)` supplying variable values.
  bool evaluate(const std::function<bool(const std::string&)>& lookup) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string name;
    bool value = false;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&(Formula a, Formula b) {
  return Formula::binary(FormulaKind::And, std::move(a), std::move(b));
}
inline Formula operator|(Formula a, Formula b) {
  return Formula::binary(FormulaKind::Or, std::move(a), std::move(b));
}

/// Abstract dialectical framework: an ordered list of arguments, one
/// acceptance condition each. The order is the input-file order.
class Adf {
 public:
  Adf() = default;
  /// Validates that names are unique and every condition only mentions
  /// declared arguments. Throws AdfError otherwise.
  Adf(std::vector<std::string> arguments, std::vector<Formula> conditions);

  std::size_t size() const { return arguments_.size(); }
  const std::vector<std::string>& arguments() const { return arguments_; }
  const std::vector<Formula>& conditions() const { return conditions_; }
  const std::string& name(std::size_t i) const { return arguments_[i]; }
  const Formula& condition(std::size_t i) const { return conditions_[i]; }

  /// Index of the named argument, or npos.
  std::size_t index_of(std::string_view name) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Arguments whose condition is exactly the argument itself.
  std::vector<std::size_t> free_inputs() const;

  friend bool operator==(const Adf& a, const Adf& b) {
    return a.arguments_ == b.arguments_ && a.conditions_ == b.conditions_;
  }

 private:
  std::vector<std::string> arguments_;
  std::vector<Formula> conditions_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Structural problem with an ADF (unknown or duplicate argument, ...).
class AdfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error carrying a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A rewritten condition grew past the AST node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& argument, std::size_t size, std::size_t budget);

  const std::string& argument() const { return argument_; }

 private:
  std::string argument_;
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// Reads `s(NAME).` / `ac(NAME, EXPR).` statements. `%` starts a comment.
Adf parse_adf(std::string_view text);
std::string write_adf(const Adf& adf);

/// Reads the `targets, factors` Boolean-network dialect. Names that only
/// occur on right-hand sides become free inputs, appended after the targets.
Adf parse_bnet(std::string_view text);

/// Writes .bnet using only `&`, `|`, `!`, parentheses and constants.
/// Xor, Iff and Imp are expanded; throws BudgetExceeded when an expanded
/// condition would exceed `node_budget` AST nodes.
std::string write_bnet(const Adf& adf, std::size_t node_budget = kDefaultNodeBudget);

/// Rewrites Xor, Iff and Imp into And/Or/Not.
Formula eliminate_derived_connectives(const Formula& f);

/// Tree size of eliminate_derived_connectives(f), saturating at SIZE_MAX.
std::size_t expanded_size(const Formula& f);

}  // namespace bass
