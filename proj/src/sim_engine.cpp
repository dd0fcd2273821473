#include "pathweave/sim_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "pathweave/errors.hpp"

namespace pathweave::sim {

namespace {

constexpr double kMinStep = 1e-12;

std::vector<std::size_t> order_rules(const sbml::SbmlModel& model) {
  const auto& rules = model.rules;
  const std::size_t n = rules.size();
  std::map<std::string, std::size_t, std::less<>> by_target;
  for (std::size_t i = 0; i < n; ++i) by_target.emplace(rules[i].variable, i);

  std::vector<std::vector<std::size_t>> deps(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& name : mathml::free_variables(rules[i].math)) {
      if (const auto it = by_target.find(name); it != by_target.end()) deps[i].push_back(it->second);
    }
  }

  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const bool ready = std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t d) { return done[d]; });
      if (ready) {
        done[i] = true;
        order.push_back(i);
        progressed = true;
        break;  // restart so ties go to the earliest rule in document order
      }
    }
    if (progressed) continue;

    // Every remaining rule waits on another remaining rule: walk the
    // unfinished dependencies until a rule repeats.
    std::size_t cur = 0;
    while (done[cur]) ++cur;
    std::vector<std::size_t> path;
    std::vector<int> seen_at(n, -1);
    while (seen_at[cur] < 0) {
      seen_at[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      cur = *std::find_if(deps[cur].begin(), deps[cur].end(), [&](std::size_t d) { return !done[d]; });
    }
    std::vector<std::string> cycle;
    for (std::size_t k = static_cast<std::size_t>(seen_at[cur]); k < path.size(); ++k) {
      cycle.push_back(rules[path[k]].variable);
    }
    cycle.push_back(rules[cur].variable);
    throw CycleError(std::move(cycle));
  }
  return order;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Fehlberg 4(5) tableau.
namespace rkf {
constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c6 = 1.0 / 2;
constexpr double a21 = 1.0 / 4;
constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104, a65 = -11.0 / 40;
// 5th-order weights (propagated) and 4th-order weights (embedded).
constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430, b5 = -9.0 / 50, b6 = 2.0 / 55;
constexpr double d1 = 25.0 / 216, d3 = 1408.0 / 2565, d4 = 2197.0 / 4104, d5 = -1.0 / 5;
}  // namespace rkf

class Stepper {
 public:
  Stepper(const OdeSystem& sys, std::size_t n) : sys_(sys), ws_(sys.make_workspace()), n_(n) {
    for (auto& k : k_) k.resize(n);
    tmp_.resize(n);
    y5_.resize(n);
  }

  void f(std::span<const double> y, double t, std::vector<double>& out) { sys_.derivatives(y, t, out, ws_); }

  void rk4(std::vector<double>& y, double t, double h) {
    auto& k1 = k_[0];
    auto& k2 = k_[1];
    auto& k3 = k_[2];
    auto& k4 = k_[3];
    f(y, t, k1);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k1[i];
    f(tmp_, t + 0.5 * h, k2);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k2[i];
    f(tmp_, t + 0.5 * h, k3);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * k3[i];
    f(tmp_, t + h, k4);
    for (std::size_t i = 0; i < n_; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

  // One Fehlberg step; leaves the 5th-order candidate in candidate() and
  // returns the scaled error norm (<= 1 means acceptable).
  double rkf45(const std::vector<double>& y, double t, double h, double abs_tol, double rel_tol) {
    using namespace rkf;
    auto& [k1, k2, k3, k4, k5, k6] = k_;
    f(y, t, k1);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    f(tmp_, t + c2 * h, k2);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(tmp_, t + c3 * h, k3);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(tmp_, t + c4 * h, k4);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    f(tmp_, t + h, k5);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    f(tmp_, t + c6 * h, k6);

    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      y5_[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      const double y4 = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i]);
      const double scale = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y5_[i]));
      const double e = std::fabs(y5_[i] - y4) / scale;
      if (!(e <= err)) err = e;  // propagates NaN
    }
    return err;
  }

  const std::vector<double>& candidate() const { return y5_; }

 private:
  const OdeSystem& sys_;
  OdeSystem::Workspace ws_;
  std::size_t n_;
  std::array<std::vector<double>, 6> k_;
  std::vector<double> tmp_;
  std::vector<double> y5_;
};

void record(Trajectory& traj, double t, std::span<const double> y) {
  traj.times.push_back(t);
  traj.states.insert(traj.states.end(), y.begin(), y.end());
}

void integrate_rk4(const OdeSystem& sys, std::vector<double> y, const SimConfig& cfg, Trajectory& traj) {
  Stepper stepper(sys, y.size());
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt * (1.0 - 1e-12)));
  const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.output_interval / cfg.dt)));
  double t = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? cfg.t_end : static_cast<double>(k) * cfg.dt;
    stepper.rk4(y, t, t_next - t);
    t = t_next;
    if (!all_finite(y)) throw DivergenceError("state became non-finite", t);
    if (k % stride == 0 || k == steps) record(traj, t, y);
  }
}

void integrate_rkf45(const OdeSystem& sys, std::vector<double> y, const SimConfig& cfg, Trajectory& traj) {
  Stepper stepper(sys, y.size());
  double t = 0.0;
  double h = cfg.dt;
  std::size_t sample = 1;
  while (t < cfg.t_end) {
    const double target = std::min(static_cast<double>(sample) * cfg.output_interval, cfg.t_end);
    ++sample;
    while (t < target) {
      if (target - t <= 1e-12 * std::max(1.0, std::fabs(target))) {
        t = target;
        break;
      }
      const bool clipped = t + h > target;
      const double step = clipped ? target - t : h;
      const double err = stepper.rkf45(y, t, step, cfg.abs_tol, cfg.rel_tol);
      if (err <= 1.0) {
        y = stepper.candidate();
        t = clipped ? target : t + step;
        if (!all_finite(y)) throw DivergenceError("state became non-finite", t);
        const double grow = err == 0.0 ? 2.0 : std::clamp(0.9 * std::pow(err, -0.2), 1.0, 2.0);
        if (!clipped) h = step * grow;
      } else {
        h = step * 0.5;
        if (h < kMinStep) {
          if (!std::isfinite(err)) throw DivergenceError("state became non-finite", t);
          throw StiffnessError("step size underflow", t);
        }
      }
    }
    record(traj, t, y);
  }
}

}  // namespace

const char* to_string(Method method) {
  return method == Method::rk4_fixed ? "rk4" : "rkf45";
}

void SimConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(dt < t_end)) throw ConfigError("dt must be smaller than t_end");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(output_interval > 0.0) || !std::isfinite(output_interval)) {
    throw ConfigError("output interval must be positive");
  }
}

OdeSystem OdeSystem::assemble(const sbml::SbmlModel& model) {
  if (auto findings = sbml::validate(model); has_errors(findings)) {
    throw ValidationError(std::move(findings));
  }
  for (const auto& r : model.reactions) {
    if (!r.kinetic_law) throw Error("reaction '" + r.id + "' has no kinetic law");
  }
  const auto rule_order = order_rules(model);

  OdeSystem sys;
  std::map<std::string, std::size_t, std::less<>> global_slots;
  auto add_slot = [&](double value) {
    sys.slot_template_.push_back(value);
    return sys.slot_template_.size() - 1;
  };

  for (const auto& c : model.compartments) global_slots.emplace(c.id, add_slot(c.size));
  for (const auto& s : model.species) {
    const std::size_t slot = add_slot(s.initial_concentration);
    global_slots.emplace(s.id, slot);
    if (!s.boundary_condition) {
      sys.state_vars_.push_back(s.id);
      sys.state_slots_.push_back(slot);
      sys.initial_.push_back(s.initial_concentration);
      sys.sizes_.push_back(model.find_compartment(s.compartment)->size);
    }
  }
  for (const auto& p : model.parameters) {
    global_slots.emplace(p.id, add_slot(p.value.value_or(std::numeric_limits<double>::quiet_NaN())));
  }

  auto resolve_global = [&](const std::string& name) -> std::size_t {
    const auto it = global_slots.find(name);
    if (it == global_slots.end()) throw LookupError("unresolved identifier '" + name + "'");
    return it->second;
  };

  for (const std::size_t i : rule_order) {
    const auto& rule = model.rules[i];
    sys.assignment_order_.push_back(rule.variable);
    sys.rules_.push_back(Rule{global_slots.at(rule.variable), mathml::BoundExpr(rule.math, resolve_global)});
  }

  for (const auto& r : model.reactions) {
    sys.reaction_ids_.push_back(r.id);
    std::map<std::string, std::size_t, std::less<>> local_slots;
    for (const auto& p : r.kinetic_law->local_parameters) local_slots.emplace(p.id, add_slot(*p.value));
    sys.flux_exprs_.emplace_back(r.kinetic_law->math, [&](const std::string& name) -> std::size_t {
      if (const auto it = local_slots.find(name); it != local_slots.end()) return it->second;
      return resolve_global(name);
    });
  }

  const std::size_t n = sys.state_vars_.size();
  const std::size_t m = sys.reaction_ids_.size();
  sys.stoich_.assign(n * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& r = model.reactions[j];
    auto accumulate = [&](const sbml::SpeciesRef& ref, double sign) {
      const auto it = std::find(sys.state_vars_.begin(), sys.state_vars_.end(), ref.species);
      if (it == sys.state_vars_.end()) return;  // boundary species
      sys.stoich_[static_cast<std::size_t>(it - sys.state_vars_.begin()) * m + j] += sign * ref.stoichiometry;
    };
    for (const auto& ref : r.reactants) accumulate(ref, -1.0);
    for (const auto& ref : r.products) accumulate(ref, +1.0);
  }

  sys.flux_offset_ = sys.slot_template_.size();
  sys.slot_template_.resize(sys.flux_offset_ + m, 0.0);
  return sys;
}

std::size_t OdeSystem::species_index(std::string_view species) const {
  const auto it = std::find(state_vars_.begin(), state_vars_.end(), species);
  if (it == state_vars_.end()) throw LookupError("'" + std::string(species) + "' is not a state variable");
  return static_cast<std::size_t>(it - state_vars_.begin());
}

double OdeSystem::stoichiometry(std::string_view species, std::string_view reaction) const {
  const auto it = std::find(reaction_ids_.begin(), reaction_ids_.end(), reaction);
  if (it == reaction_ids_.end()) throw LookupError("unknown reaction '" + std::string(reaction) + "'");
  const auto j = static_cast<std::size_t>(it - reaction_ids_.begin());
  return stoich_[species_index(species) * reaction_ids_.size() + j];
}

double OdeSystem::compartment_size(std::string_view species) const { return sizes_[species_index(species)]; }

std::vector<double> OdeSystem::initial_state() const { return initial_; }

void OdeSystem::load_state(std::span<const double> state, Workspace& ws) const {
  if (state.size() != state_vars_.size()) {
    throw Error("state has " + std::to_string(state.size()) + " entries, expected " +
                std::to_string(state_vars_.size()));
  }
  for (std::size_t i = 0; i < state.size(); ++i) ws[state_slots_[i]] = state[i];
  // Rule targets are recomputed on every evaluation, never carried over.
  for (const auto& rule : rules_) ws[rule.target_slot] = rule.math.evaluate(ws);
}

void OdeSystem::eval_fluxes(Workspace& ws, std::span<double> flux) const {
  for (std::size_t j = 0; j < flux_exprs_.size(); ++j) flux[j] = flux_exprs_[j].evaluate(ws);
}

void OdeSystem::derivatives(std::span<const double> state, double /*t*/, std::span<double> out, Workspace& ws) const {
  load_state(state, ws);
  const std::span<double> flux(ws.data() + flux_offset_, reaction_ids_.size());
  eval_fluxes(ws, flux);
  const std::size_t m = reaction_ids_.size();
  for (std::size_t i = 0; i < state_vars_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double s = stoich_[i * m + j];
      if (s != 0.0) acc += s * flux[j];
    }
    out[i] = acc / sizes_[i];
  }
}

std::vector<double> OdeSystem::derivatives(std::span<const double> state, double t) const {
  Workspace ws = make_workspace();
  std::vector<double> out(state_vars_.size());
  derivatives(state, t, out, ws);
  return out;
}

std::vector<double> OdeSystem::fluxes(std::span<const double> state) const {
  Workspace ws = make_workspace();
  load_state(state, ws);
  std::vector<double> out(reaction_ids_.size());
  eval_fluxes(ws, out);
  return out;
}

mathml::Environment OdeSystem::assigned_values(std::span<const double> state) const {
  Workspace ws = make_workspace();
  load_state(state, ws);
  mathml::Environment out;
  for (std::size_t i = 0; i < rules_.size(); ++i) out[assignment_order_[i]] = ws[rules_[i].target_slot];
  return out;
}

std::vector<double> Trajectory::column(std::string_view var) const {
  const auto it = std::find(var_names.begin(), var_names.end(), var);
  if (it == var_names.end()) throw LookupError("unknown variable '" + std::string(var) + "'");
  const auto col = static_cast<std::size_t>(it - var_names.begin());
  std::vector<double> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, col));
  return out;
}

Trajectory integrate(const OdeSystem& system, std::span<const double> initial, const SimConfig& config) {
  config.validate();
  if (initial.size() != system.state_vars().size()) {
    throw Error("initial state has " + std::to_string(initial.size()) + " entries, expected " +
                std::to_string(system.state_vars().size()));
  }
  if (!all_finite(initial)) throw DivergenceError("initial state is not finite", 0.0);

  Trajectory traj;
  traj.var_names = system.state_vars();
  std::vector<double> y(initial.begin(), initial.end());
  record(traj, 0.0, y);
  if (config.method == Method::rk4_fixed) {
    integrate_rk4(system, std::move(y), config, traj);
  } else {
    integrate_rkf45(system, std::move(y), config, traj);
  }
  return traj;
}

std::vector<Peak> detect_peaks(const Trajectory& trajectory, std::string_view variable) {
  const std::vector<double> v = trajectory.column(variable);
  const auto& t = trajectory.times;
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i - 1] < v[i] && v[i] > v[i + 1])) continue;
    // Parabola y1 + c1*x + c2*x^2 in x = t - t[i] through the three samples.
    const double a = t[i - 1] - t[i];
    const double b = t[i + 1] - t[i];
    const double s0 = (v[i - 1] - v[i]) / a;
    const double s2 = (v[i + 1] - v[i]) / b;
    const double c2 = (s2 - s0) / (b - a);
    const double c1 = s0 - c2 * a;
    const double x = -c1 / (2.0 * c2);
    peaks.push_back(Peak{t[i] + x, v[i] - c1 * c1 / (4.0 * c2)});
  }
  return peaks;
}

}  // namespace pathweave::sim
