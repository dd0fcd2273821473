#pragma once

// Content-MathML subset used by SBML kinetic laws and assignment rules:
// <apply> with plus/times/minus/divide/power, <ci> identifiers and <cn>
// numbers.

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pathweave/xml.hpp"

namespace pathweave::mathml {

inline constexpr std::string_view kNamespace = "http://www.w3.org/1998/Math/MathML";

enum class Operator { plus, times, minus, divide, power };
enum class NumberKind { integer, real };

const char* to_string(Operator op);

class MathExpr;

struct Constant {
  double value = 0.0;
  NumberKind kind = NumberKind::real;
  bool operator==(const Constant&) const = default;
};

struct Variable {
  std::string name;
  bool operator==(const Variable&) const = default;
};

struct Apply {
  Operator op = Operator::plus;
  std::vector<MathExpr> args;
  bool operator==(const Apply&) const;
};

/// Immutable expression tree. Construct through the factories, which
/// enforce operator arity and identifier rules.
class MathExpr {
 public:
  using Node = std::variant<Constant, Variable, Apply>;

  static MathExpr constant(double value, NumberKind kind = NumberKind::real);
  static MathExpr integer(long long value) { return constant(static_cast<double>(value), NumberKind::integer); }
  static MathExpr variable(std::string name);
  static MathExpr apply(Operator op, std::vector<MathExpr> args);

  const Node& node() const noexcept { return node_; }

  bool is_constant() const noexcept { return std::holds_alternative<Constant>(node_); }
  bool is_variable() const noexcept { return std::holds_alternative<Variable>(node_); }
  bool is_apply() const noexcept { return std::holds_alternative<Apply>(node_); }

  const Constant& as_constant() const { return std::get<Constant>(node_); }
  const Variable& as_variable() const { return std::get<Variable>(node_); }
  const Apply& as_apply() const { return std::get<Apply>(node_); }

  bool operator==(const MathExpr& other) const { return node_ == other.node_; }

 private:
  explicit MathExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

inline bool Apply::operator==(const Apply& other) const {
  return op == other.op && args == other.args;
}

/// Checks arity for `op` with `count` arguments; throws ArityError.
void check_arity(Operator op, std::size_t count);

/// Parses a `math`, `apply`, `ci` or `cn` element. Elements must be in the
/// MathML namespace or unqualified.
MathExpr parse_mathml(const xml::Element& element);

/// Convenience: parses an XML snippet such as "<apply>...</apply>".
MathExpr parse_mathml(std::string_view xml_text);

/// Compact content markup without a namespace, e.g.
/// `<apply><times/><ci>C</ci><ci>kd</ci></apply>`.
std::string serialize_mathml(const MathExpr& expr);

/// `<math xmlns="http://www.w3.org/1998/Math/MathML">...</math>`
std::string serialize_math_element(const MathExpr& expr);

using Environment = std::map<std::string, double, std::less<>>;

/// Evaluates with IEEE double arithmetic; n-ary plus/times fold left to
/// right. Throws UnboundVariableError and NumericDomainError.
double evaluate(const MathExpr& expr, const Environment& env);

std::set<std::string> free_variables(const MathExpr& expr);

/// An expression whose identifiers have been resolved to slots of a flat
/// value array. Evaluation is bit-identical to `evaluate` over an
/// environment holding the same values.
class BoundExpr {
 public:
  /// `resolve` maps an identifier to its slot; it should throw for
  /// unknown names.
  BoundExpr(const MathExpr& expr, const std::function<std::size_t(const std::string&)>& resolve);

  double evaluate(std::span<const double> slots) const;

  const MathExpr& source() const noexcept { return source_; }

 private:
  struct Node {
    enum class Kind { constant, slot, apply } kind;
    Operator op = Operator::plus;
    double value = 0.0;
    std::size_t slot = 0;
    std::size_t first_child = 0;  // children are contiguous in `children_`
    std::size_t child_count = 0;
    NumberKind number_kind = NumberKind::real;
  };

  std::size_t compile(const MathExpr& expr, const std::function<std::size_t(const std::string&)>& resolve);
  double eval(std::size_t index, std::span<const double> slots) const;
  MathExpr rebuild(std::size_t index) const;

  MathExpr source_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> children_;
  std::vector<std::string> slot_names_;  // parallel to nodes_, set for slot nodes
  std::size_t root_ = 0;
};

}  // namespace pathweave::mathml
