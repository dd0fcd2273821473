#pragma once

// Direct recursive evaluator used as the reference for the library's
// evaluator. Written against the documented semantics only: n-ary plus
// and times fold left to right, x^-1 is 1/x, everything else is std::pow.
// Returns nullopt where the library must raise a domain error.

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "pathweave/mathml.hpp"

namespace testing {

inline std::optional<double> oracle_eval(const pathweave::mathml::MathExpr& e, const std::map<std::string, double>& env) {
  using pathweave::mathml::Operator;
  if (e.is_constant()) return e.as_constant().value;
  if (e.is_variable()) return env.at(e.as_variable().name);
  const auto& a = e.as_apply();
  std::vector<double> v;
  for (const auto& arg : a.args) {
    const auto x = oracle_eval(arg, env);
    if (!x) return std::nullopt;
    v.push_back(*x);
  }
  switch (a.op) {
    case Operator::plus: {
      double s = v[0];
      for (std::size_t i = 1; i < v.size(); ++i) s = s + v[i];
      return s;
    }
    case Operator::times: {
      double p = v[0];
      for (std::size_t i = 1; i < v.size(); ++i) p = p * v[i];
      return p;
    }
    case Operator::minus:
      return v.size() == 1 ? -v[0] : v[0] - v[1];
    case Operator::divide:
      if (v[1] == 0) return std::nullopt;
      return v[0] / v[1];
    case Operator::power:
      if (v[0] == 0 && v[1] < 0) return std::nullopt;
      if (v[0] < 0 && v[1] != std::floor(v[1])) return std::nullopt;
      if (v[1] == -1) return 1 / v[0];
      return std::pow(v[0], v[1]);
  }
  return std::nullopt;
}

}  // namespace testing
