#include "bass/formula.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace bass {

// ---------------------------------------------------------------------------
// Formula

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Var, std::move(name), false, {}}));
}

Formula Formula::constant(bool value) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Const, {}, value, {}}));
}

Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, {}, false, {std::move(child)}}));
}

Formula Formula::binary(FormulaKind kind, Formula left, Formula right) {
  if (kind < FormulaKind::And) throw std::invalid_argument("not a binary connective");
  return Formula(
      std::make_shared<const Node>(Node{kind, {}, false, {std::move(left), std::move(right)}}));
}

std::size_t Formula::tree_size() const {
  std::size_t n = 1;
  for (const Formula& c : node_->children) n += c.tree_size();
  return n;
}

bool Formula::evaluate(const std::function<bool(const std::string&)>& lookup) const {
  switch (kind()) {
    case FormulaKind::Var: return lookup(name());
    case FormulaKind::Const: return value();
    case FormulaKind::Not: return !child().evaluate(lookup);
    case FormulaKind::And: return left().evaluate(lookup) && right().evaluate(lookup);
    case FormulaKind::Or: return left().evaluate(lookup) || right().evaluate(lookup);
    case FormulaKind::Imp: return !left().evaluate(lookup) || right().evaluate(lookup);
    case FormulaKind::Iff: return left().evaluate(lookup) == right().evaluate(lookup);
    case FormulaKind::Xor: return left().evaluate(lookup) != right().evaluate(lookup);
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Var: return a.name() == b.name();
    case FormulaKind::Const: return a.value() == b.value();
    default: return a.node_->children == b.node_->children;
  }
}

// ---------------------------------------------------------------------------
// Adf

Adf::Adf(std::vector<std::string> arguments, std::vector<Formula> conditions)
    : arguments_(std::move(arguments)), conditions_(std::move(conditions)) {
  if (arguments_.size() != conditions_.size()) {
    throw AdfError("argument and condition counts differ");
  }
  for (std::size_t i = 0; i < arguments_.size(); ++i) {
    if (!index_.emplace(arguments_[i], i).second) {
      throw AdfError("duplicate argument '" + arguments_[i] + "'");
    }
  }
  for (std::size_t i = 0; i < conditions_.size(); ++i) {
    std::vector<const Formula*> stack{&conditions_[i]};
    while (!stack.empty()) {
      const Formula* f = stack.back();
      stack.pop_back();
      if (f->kind() == FormulaKind::Var) {
        if (!index_.contains(f->name())) {
          throw AdfError("condition of '" + arguments_[i] + "' mentions undeclared argument '" +
                         f->name() + "'");
        }
      } else if (f->kind() == FormulaKind::Not) {
        stack.push_back(&f->child());
      } else if (f->is_binary()) {
        stack.push_back(&f->left());
        stack.push_back(&f->right());
      }
    }
  }
}

std::size_t Adf::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? npos : it->second;
}

std::vector<std::size_t> Adf::free_inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    const Formula& c = conditions_[i];
    if (c.kind() == FormulaKind::Var && c.name() == arguments_[i]) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Errors

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

BudgetExceeded::BudgetExceeded(const std::string& argument, std::size_t size, std::size_t budget)
    : std::runtime_error("condition of '" + argument + "' expands to " +
                         (size == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                          : std::to_string(size)) +
                         " AST nodes, budget is " + std::to_string(budget)),
      argument_(argument) {}

// ---------------------------------------------------------------------------
// Lexing helpers

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

/// Character cursor with line/column tracking and comment skipping.
class Cursor {
 public:
  Cursor(std::string_view text, char comment) : text_(text), comment_(comment) {}

  void skip_space(bool stop_at_newline = false) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == comment_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '\n' && stop_at_newline) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
      fail(std::string("expected '") + c + "', found " + found);
    }
  }

  std::string name() {
    if (!is_name_start(peek())) {
      fail(at_end() ? "expected a name, found end of input"
                    : std::string("expected a name, found '") + peek() + "'");
    }
    std::string out;
    while (!at_end() && is_name_char(peek())) {
      out.push_back(peek());
      advance();
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string_view text_;
  char comment_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct NameUse {
  std::string name;
  std::size_t line;
  std::size_t column;
};

// ---------------------------------------------------------------------------
// .adf

class AdfParser {
 public:
  explicit AdfParser(std::string_view text) : in_(text, '%') {}

  Adf parse() {
    std::vector<std::string> arguments;
    std::unordered_map<std::string, std::size_t> declared;
    std::unordered_map<std::string, Formula> conditions;
    std::unordered_map<std::string, NameUse> ac_location;

    in_.skip_space();
    while (!in_.at_end()) {
      const std::size_t line = in_.line();
      const std::size_t column = in_.column();
      const std::string keyword = in_.name();
      in_.skip_space();
      in_.expect('(');
      in_.skip_space();
      if (keyword == "s") {
        const std::size_t name_line = in_.line();
        const std::size_t name_column = in_.column();
        std::string name = in_.name();
        if (declared.contains(name)) {
          throw ParseError("argument '" + name + "' declared twice", name_line, name_column);
        }
        declared.emplace(name, arguments.size());
        arguments.push_back(std::move(name));
      } else if (keyword == "ac") {
        const std::size_t name_line = in_.line();
        const std::size_t name_column = in_.column();
        std::string name = in_.name();
        in_.skip_space();
        in_.expect(',');
        in_.skip_space();
        Formula f = expression();
        if (conditions.contains(name)) {
          throw ParseError("duplicate acceptance condition for '" + name + "'", name_line,
                           name_column);
        }
        conditions.emplace(name, std::move(f));
        ac_location.emplace(name, NameUse{name, name_line, name_column});
      } else {
        throw ParseError("unknown statement '" + keyword + "'", line, column);
      }
      in_.skip_space();
      in_.expect(')');
      in_.skip_space();
      in_.expect('.');
      in_.skip_space();
    }

    for (const auto& [name, use] : ac_location) {
      if (!declared.contains(name)) {
        throw ParseError("acceptance condition for undeclared argument '" + name + "'", use.line,
                         use.column);
      }
    }
    for (const NameUse& use : uses_) {
      if (!declared.contains(use.name)) {
        throw ParseError("undeclared argument '" + use.name + "' in acceptance condition", use.line,
                         use.column);
      }
    }
    std::vector<Formula> ordered;
    ordered.reserve(arguments.size());
    for (const std::string& a : arguments) {
      auto it = conditions.find(a);
      if (it == conditions.end()) {
        throw ParseError("missing acceptance condition for '" + a + "'", in_.line(), in_.column());
      }
      ordered.push_back(it->second);
    }
    return Adf(std::move(arguments), std::move(ordered));
  }

 private:
  Formula expression() {
    const std::size_t line = in_.line();
    const std::size_t column = in_.column();
    std::string word = in_.name();
    in_.skip_space();
    if (in_.peek() != '(') {
      uses_.push_back(NameUse{word, line, column});
      return Formula::var(std::move(word));
    }
    in_.advance();
    in_.skip_space();
    Formula result = Formula::constant(false);
    if (word == "c") {
      const std::string v = in_.name();
      if (v == "v") {
        result = Formula::constant(true);
      } else if (v == "f") {
        result = Formula::constant(false);
      } else {
        throw ParseError("constant must be c(v) or c(f)", line, column);
      }
    } else if (word == "neg") {
      result = Formula::negation(expression());
    } else {
      FormulaKind kind;
      if (word == "and") {
        kind = FormulaKind::And;
      } else if (word == "or") {
        kind = FormulaKind::Or;
      } else if (word == "imp") {
        kind = FormulaKind::Imp;
      } else if (word == "iff") {
        kind = FormulaKind::Iff;
      } else if (word == "xor") {
        kind = FormulaKind::Xor;
      } else {
        throw ParseError("unknown connective '" + word + "'", line, column);
      }
      result = expression();
      in_.skip_space();
      in_.expect(',');
      in_.skip_space();
      result = Formula::binary(kind, std::move(result), expression());
      in_.skip_space();
      // and/or may list more than two operands; fold them to the left.
      while ((kind == FormulaKind::And || kind == FormulaKind::Or) && in_.accept(',')) {
        in_.skip_space();
        result = Formula::binary(kind, std::move(result), expression());
        in_.skip_space();
      }
    }
    in_.skip_space();
    in_.expect(')');
    return result;
  }

  Cursor in_;
  std::vector<NameUse> uses_;
};

void write_adf_expression(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Var: out += f.name(); return;
    case FormulaKind::Const: out += f.value() ? "c(v)" : "c(f)"; return;
    case FormulaKind::Not:
      out += "neg(";
      write_adf_expression(f.child(), out);
      out += ')';
      return;
    default: break;
  }
  switch (f.kind()) {
    case FormulaKind::And: out += "and("; break;
    case FormulaKind::Or: out += "or("; break;
    case FormulaKind::Imp: out += "imp("; break;
    case FormulaKind::Iff: out += "iff("; break;
    default: out += "xor("; break;
  }
  write_adf_expression(f.left(), out);
  out += ',';
  write_adf_expression(f.right(), out);
  out += ')';
}

// ---------------------------------------------------------------------------
// .bnet

class BnetParser {
 public:
  explicit BnetParser(std::string_view text) : in_(text, '#') {}

  Adf parse() {
    std::vector<std::string> targets;
    std::vector<Formula> conditions;
    std::unordered_set<std::string> seen_targets;

    in_.skip_space();
    bool first = true;
    while (!in_.at_end()) {
      const std::size_t line = in_.line();
      const std::size_t column = in_.column();
      std::string name = in_.name();
      in_.skip_space(true);
      in_.expect(',');
      in_.skip_space(true);
      if (first && name == "targets" && is_name_start(in_.peek())) {
        // Header line: "targets, factors".
        const std::size_t hl = in_.line();
        const std::size_t hc = in_.column();
        if (in_.name() != "factors") throw ParseError("malformed header", hl, hc);
        first = false;
        end_line();
        continue;
      }
      first = false;
      if (!seen_targets.insert(name).second) {
        throw ParseError("duplicate target '" + name + "'", line, column);
      }
      targets.push_back(std::move(name));
      conditions.push_back(disjunction());
      end_line();
    }

    std::vector<std::string> arguments = targets;
    for (const std::string& input : rhs_order_) {
      if (!seen_targets.contains(input)) {
        seen_targets.insert(input);
        arguments.push_back(input);
        conditions.push_back(Formula::var(input));
      }
    }
    return Adf(std::move(arguments), std::move(conditions));
  }

 private:
  void end_line() {
    in_.skip_space(true);
    if (!in_.at_end() && !in_.accept('\n')) {
      in_.fail(std::string("unexpected '") + in_.peek() + "'");
    }
    in_.skip_space();
  }

  Formula disjunction() {
    Formula f = conjunction();
    in_.skip_space(true);
    while (in_.accept('|')) {
      in_.skip_space(true);
      f = f | conjunction();
      in_.skip_space(true);
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    in_.skip_space(true);
    while (in_.accept('&')) {
      in_.skip_space(true);
      f = f & unary();
      in_.skip_space(true);
    }
    return f;
  }

  Formula unary() {
    in_.skip_space(true);
    if (in_.accept('!')) return !unary();
    if (in_.accept('(')) {
      in_.skip_space();
      Formula f = disjunction();
      in_.skip_space();
      in_.expect(')');
      return f;
    }
    if (in_.accept('0')) return Formula::constant(false);
    if (in_.accept('1')) return Formula::constant(true);
    std::string name = in_.name();
    if (rhs_seen_.insert(name).second) rhs_order_.push_back(name);
    return Formula::var(std::move(name));
  }

  Cursor in_;
  std::unordered_set<std::string> rhs_seen_;
  std::vector<std::string> rhs_order_;
};

void write_bnet_expression(const Formula& f, std::string& out) {
  auto operand = [&](const Formula& child, FormulaKind parent) {
    const bool wrap = child.is_binary() && child.kind() != parent;
    if (wrap) out += '(';
    write_bnet_expression(child, out);
    if (wrap) out += ')';
  };
  switch (f.kind()) {
    case FormulaKind::Var: out += f.name(); break;
    case FormulaKind::Const: out += f.value() ? '1' : '0'; break;
    case FormulaKind::Not:
      out += '!';
      if (f.child().is_binary()) {
        out += '(';
        write_bnet_expression(f.child(), out);
        out += ')';
      } else {
        write_bnet_expression(f.child(), out);
      }
      break;
    case FormulaKind::And:
      operand(f.left(), FormulaKind::And);
      out += " & ";
      operand(f.right(), FormulaKind::And);
      break;
    case FormulaKind::Or:
      operand(f.left(), FormulaKind::Or);
      out += " | ";
      operand(f.right(), FormulaKind::Or);
      break;
    default: throw std::logic_error("derived connective left in .bnet output");
  }
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

std::size_t expanded_size_memo(const Formula& f,
                               std::unordered_map<const void*, std::size_t>& memo) {
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  std::size_t r = 1;
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Const: break;
    case FormulaKind::Not: r = saturating_add(1, expanded_size_memo(f.child(), memo)); break;
    case FormulaKind::And:
    case FormulaKind::Or:
      r = saturating_add(1, saturating_add(expanded_size_memo(f.left(), memo),
                                           expanded_size_memo(f.right(), memo)));
      break;
    case FormulaKind::Imp:
      // !l | r
      r = saturating_add(2, saturating_add(expanded_size_memo(f.left(), memo),
                                           expanded_size_memo(f.right(), memo)));
      break;
    case FormulaKind::Iff:
    case FormulaKind::Xor: {
      // (l & r) | (!l & !r)  and  (l & !r) | (!l & r): both operands twice.
      const std::size_t both = saturating_add(expanded_size_memo(f.left(), memo),
                                              expanded_size_memo(f.right(), memo));
      r = saturating_add(5, saturating_add(both, both));
      break;
    }
  }
  memo.emplace(f.identity(), r);
  return r;
}

Formula eliminate_memo(const Formula& f, std::unordered_map<const void*, Formula>& memo) {
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  Formula r = f;
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Const: break;
    case FormulaKind::Not: r = !eliminate_memo(f.child(), memo); break;
    default: {
      Formula l = eliminate_memo(f.left(), memo);
      Formula rr = eliminate_memo(f.right(), memo);
      switch (f.kind()) {
        case FormulaKind::And: r = l & rr; break;
        case FormulaKind::Or: r = l | rr; break;
        case FormulaKind::Imp: r = (!l) | rr; break;
        case FormulaKind::Iff: r = (l & rr) | ((!l) & (!rr)); break;
        default: r = (l & (!rr)) | ((!l) & rr); break;
      }
    }
  }
  memo.emplace(f.identity(), r);
  return r;
}

}  // namespace

Adf parse_adf(std::string_view text) { return AdfParser(text).parse(); }

std::string write_adf(const Adf& adf) {
  std::string out;
  for (const std::string& name : adf.arguments()) out += "s(" + name + ").\n";
  for (std::size_t i = 0; i < adf.size(); ++i) {
    out += "ac(" + adf.name(i) + ",";
    write_adf_expression(adf.condition(i), out);
    out += ").\n";
  }
  return out;
}

Adf parse_bnet(std::string_view text) { return BnetParser(text).parse(); }

std::size_t expanded_size(const Formula& f) {
  std::unordered_map<const void*, std::size_t> memo;
  return expanded_size_memo(f, memo);
}

Formula eliminate_derived_connectives(const Formula& f) {
  std::unordered_map<const void*, Formula> memo;
  return eliminate_memo(f, memo);
}

std::string write_bnet(const Adf& adf, std::size_t node_budget) {
  std::string out = "targets, factors\n";
  for (std::size_t i = 0; i < adf.size(); ++i) {
    const std::size_t size = expanded_size(adf.condition(i));
    if (size > node_budget) throw BudgetExceeded(adf.name(i), size, node_budget);
    out += adf.name(i) + ", ";
    write_bnet_expression(eliminate_derived_connectives(adf.condition(i)), out);
    out += '\n';
  }
  return out;
}

}  // namespace bass
