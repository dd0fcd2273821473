#include "pathweave/mathml.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "pathweave/errors.hpp"

namespace pathweave::mathml {

namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

bool has_whitespace(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_integer(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(value));
  return std::string(buf, res.ptr);
}

bool operator_from_name(std::string_view name, Operator& op) {
  if (name == "plus") op = Operator::plus;
  else if (name == "times") op = Operator::times;
  else if (name == "minus") op = Operator::minus;
  else if (name == "divide") op = Operator::divide;
  else if (name == "power") op = Operator::power;
  else return false;
  return true;
}

void require_mathml_namespace(const xml::Element& el) {
  if (el.unbound_prefix || (!el.ns.empty() && el.ns != kNamespace)) {
    throw MathParseError("element <" + el.qname + "> is not in the MathML namespace", el.qname);
  }
}

const xml::Element& single_child(const xml::Element& el) {
  if (el.children.size() != 1 || !xml::is_blank(el.text)) {
    throw MathParseError("<" + el.local + "> must contain exactly one expression", el.local);
  }
  return el.children.front();
}

MathExpr parse_number(const xml::Element& el) {
  if (!el.children.empty()) {
    throw MathParseError("<cn> must contain only a number", "cn");
  }
  const std::string type = el.attribute("type").value_or("real");
  const std::string_view text = xml::trim(el.text);
  const char* first = text.data();
  const char* last = text.data() + text.size();

  if (type == "integer") {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
      throw MathParseError("invalid integer literal '" + std::string(text) + "'", "cn");
    }
    return MathExpr::integer(v);
  }
  if (type != "real") {
    throw MathParseError("unsupported <cn type=\"" + type + "\">", "cn");
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(v)) {
    throw MathParseError("invalid real literal '" + std::string(text) + "'", "cn");
  }
  return MathExpr::constant(v, NumberKind::real);
}

MathExpr parse_element(const xml::Element& el) {
  require_mathml_namespace(el);
  if (el.local == "math") {
    return parse_element(single_child(el));
  }
  if (el.local == "ci") {
    if (!el.children.empty()) {
      throw MathParseError("<ci> must contain only an identifier", "ci");
    }
    const std::string_view name = xml::trim(el.text);
    if (name.empty() || has_whitespace(name)) {
      throw MathParseError("invalid identifier '" + std::string(name) + "' in <ci>", "ci");
    }
    return MathExpr::variable(std::string(name));
  }
  if (el.local == "cn") {
    return parse_number(el);
  }
  if (el.local == "apply") {
    if (el.children.empty()) {
      throw MathParseError("empty <apply>", "apply");
    }
    if (!xml::is_blank(el.text)) {
      throw MathParseError("unexpected text inside <apply>", "apply");
    }
    const xml::Element& head = el.children.front();
    require_mathml_namespace(head);
    Operator op{};
    if (!operator_from_name(head.local, op)) {
      throw MathParseError("unsupported MathML operator <" + head.local + ">", head.local);
    }
    if (!head.children.empty() || !xml::is_blank(head.text)) {
      throw MathParseError("operator <" + head.local + "> must be empty", head.local);
    }
    std::vector<MathExpr> args;
    args.reserve(el.children.size() - 1);
    for (std::size_t i = 1; i < el.children.size(); ++i) {
      args.push_back(parse_element(el.children[i]));
    }
    return MathExpr::apply(op, std::move(args));
  }
  throw MathParseError("unsupported MathML element <" + el.local + ">", el.local);
}

void serialize_into(const MathExpr& expr, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          if (n.kind == NumberKind::integer) {
            out += "<cn type=\"integer\">" + format_integer(n.value) + "</cn>";
          } else {
            out += "<cn>" + format_real(n.value) + "</cn>";
          }
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += "<ci>" + xml::escape_text(n.name) + "</ci>";
        } else {
          out += "<apply><";
          out += to_string(n.op);
          out += "/>";
          for (const auto& a : n.args) serialize_into(a, out);
          out += "</apply>";
        }
      },
      expr.node());
}

// Shared arithmetic for the tree walker and the bound evaluator; keeping
// a single definition is what makes the two bit-identical.
template <class ArgFn, class SubexprFn>
double apply_operator(Operator op, std::size_t count, ArgFn&& arg, SubexprFn&& subexpr) {
  switch (op) {
    case Operator::plus: {
      double acc = arg(0);
      for (std::size_t i = 1; i < count; ++i) acc += arg(i);
      return acc;
    }
    case Operator::times: {
      double acc = arg(0);
      for (std::size_t i = 1; i < count; ++i) acc *= arg(i);
      return acc;
    }
    case Operator::minus: {
      if (count == 1) return -arg(0);
      const double a = arg(0);
      return a - arg(1);
    }
    case Operator::divide: {
      const double a = arg(0);
      const double b = arg(1);
      if (b == 0.0) throw NumericDomainError("division by zero", subexpr());
      return a / b;
    }
    case Operator::power: {
      const double base = arg(0);
      const double exponent = arg(1);
      if (base == 0.0 && exponent < 0.0) {
        throw NumericDomainError("zero raised to a negative power", subexpr());
      }
      if (base < 0.0 && std::trunc(exponent) != exponent) {
        throw NumericDomainError("negative base with non-integer exponent", subexpr());
      }
      if (exponent == -1.0) return 1.0 / base;
      if (exponent == 1.0) return base;
      return std::pow(base, exponent);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void collect_variables(const MathExpr& expr, std::set<std::string>& out) {
  if (expr.is_variable()) {
    out.insert(expr.as_variable().name);
  } else if (expr.is_apply()) {
    for (const auto& a : expr.as_apply().args) collect_variables(a, out);
  }
}

}  // namespace

const char* to_string(Operator op) {
  switch (op) {
    case Operator::plus: return "plus";
    case Operator::times: return "times";
    case Operator::minus: return "minus";
    case Operator::divide: return "divide";
    case Operator::power: return "power";
  }
  return "?";
}

void check_arity(Operator op, std::size_t count) {
  bool ok = false;
  switch (op) {
    case Operator::plus:
    case Operator::times: ok = count >= 2; break;
    case Operator::minus: ok = count == 1 || count == 2; break;
    case Operator::divide:
    case Operator::power: ok = count == 2; break;
  }
  if (!ok) {
    throw ArityError(std::string("<") + to_string(op) + "/> applied to " + std::to_string(count) +
                     " argument(s)");
  }
}

MathExpr MathExpr::constant(double value, NumberKind kind) {
  if (!std::isfinite(value)) {
    throw Error("MathML constants must be finite");
  }
  if (kind == NumberKind::integer && (std::trunc(value) != value || std::fabs(value) > kMaxExactInteger)) {
    throw Error("integer constant " + format_real(value) + " is not an exact integer");
  }
  return MathExpr(Constant{value, kind});
}

MathExpr MathExpr::variable(std::string name) {
  if (name.empty() || has_whitespace(name)) {
    throw Error("invalid variable name '" + name + "'");
  }
  return MathExpr(Variable{std::move(name)});
}

MathExpr MathExpr::apply(Operator op, std::vector<MathExpr> args) {
  check_arity(op, args.size());
  return MathExpr(Apply{op, std::move(args)});
}

MathExpr parse_mathml(const xml::Element& element) { return parse_element(element); }

MathExpr parse_mathml(std::string_view xml_text) { return parse_element(xml::parse(xml_text)); }

std::string serialize_mathml(const MathExpr& expr) {
  std::string out;
  serialize_into(expr, out);
  return out;
}

std::string serialize_math_element(const MathExpr& expr) {
  return "<math xmlns=\"" + std::string(kNamespace) + "\">" + serialize_mathml(expr) + "</math>";
}

double evaluate(const MathExpr& expr, const Environment& env) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          const auto it = env.find(n.name);
          if (it == env.end()) throw UnboundVariableError(n.name);
          return it->second;
        } else {
          return apply_operator(
              n.op, n.args.size(), [&](std::size_t i) { return evaluate(n.args[i], env); },
              [&] { return serialize_mathml(expr); });
        }
      },
      expr.node());
}

std::set<std::string> free_variables(const MathExpr& expr) {
  std::set<std::string> out;
  collect_variables(expr, out);
  return out;
}

BoundExpr::BoundExpr(const MathExpr& expr, const std::function<std::size_t(const std::string&)>& resolve)
    : source_(expr) {
  root_ = compile(source_, resolve);
}

std::size_t BoundExpr::compile(const MathExpr& expr,
                               const std::function<std::size_t(const std::string&)>& resolve) {
  Node node{};
  std::string name;
  std::vector<std::size_t> kids;
  if (expr.is_constant()) {
    node.kind = Node::Kind::constant;
    node.value = expr.as_constant().value;
    node.number_kind = expr.as_constant().kind;
  } else if (expr.is_variable()) {
    node.kind = Node::Kind::slot;
    name = expr.as_variable().name;
    node.slot = resolve(name);
  } else {
    const Apply& a = expr.as_apply();
    node.kind = Node::Kind::apply;
    node.op = a.op;
    for (const auto& arg : a.args) kids.push_back(compile(arg, resolve));
    node.first_child = children_.size();
    node.child_count = kids.size();
    children_.insert(children_.end(), kids.begin(), kids.end());
  }
  nodes_.push_back(node);
  slot_names_.push_back(std::move(name));
  return nodes_.size() - 1;
}

MathExpr BoundExpr::rebuild(std::size_t index) const {
  const Node& n = nodes_[index];
  switch (n.kind) {
    case Node::Kind::constant: return MathExpr::constant(n.value, n.number_kind);
    case Node::Kind::slot: return MathExpr::variable(slot_names_[index]);
    case Node::Kind::apply: break;
  }
  std::vector<MathExpr> args;
  for (std::size_t i = 0; i < n.child_count; ++i) args.push_back(rebuild(children_[n.first_child + i]));
  return MathExpr::apply(n.op, std::move(args));
}

double BoundExpr::eval(std::size_t index, std::span<const double> slots) const {
  const Node& n = nodes_[index];
  switch (n.kind) {
    case Node::Kind::constant: return n.value;
    case Node::Kind::slot: return slots[n.slot];
    case Node::Kind::apply: break;
  }
  return apply_operator(
      n.op, n.child_count, [&](std::size_t i) { return eval(children_[n.first_child + i], slots); },
      [&] { return serialize_mathml(rebuild(index)); });
}

double BoundExpr::evaluate(std::span<const double> slots) const { return eval(root_, slots); }

}  // namespace pathweave::mathml
