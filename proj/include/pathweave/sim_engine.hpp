#pragma once

// ODE assembly from an SBML reaction network and fixed-step / adaptive
// Runge-Kutta integration.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathweave/mathml.hpp"
#include "pathweave/sbml_model.hpp"

namespace pathweave::sim {

enum class Method { rk4_fixed, rkf45_adaptive };

const char* to_string(Method method);

struct SimConfig {
  double t_end = 100.0;
  Method method = Method::rk4_fixed;
  double dt = 1e-3;  // fixed step for rk4, initial step for rkf45
  double abs_tol = 1e-9;
  double rel_tol = 1e-6;
  double output_interval = 0.1;  // model time units between output samples

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Compiled rate system d[s]/dt = (1/size(s)) * sum_r N(s,r) * flux_r.
/// Immutable after assembly; evaluation state lives in a caller-owned
/// workspace.
class OdeSystem {
 public:
  /// Scratch values for one evaluation thread.
  using Workspace = std::vector<double>;

  /// Throws ValidationError for an invalid model, CycleError for cyclic
  /// assignment rules and Error for a reaction without a kinetic law.
  static OdeSystem assemble(const sbml::SbmlModel& model);

  /// Non-boundary species ids, document order.
  const std::vector<std::string>& state_vars() const noexcept { return state_vars_; }
  const std::vector<std::string>& reaction_ids() const noexcept { return reaction_ids_; }
  /// Rule target parameters in evaluation order.
  const std::vector<std::string>& assignment_order() const noexcept { return assignment_order_; }

  /// Net stoichiometry of `species` in `reaction` (products minus
  /// reactants; modifiers contribute 0). Throws LookupError.
  double stoichiometry(std::string_view species, std::string_view reaction) const;
  double compartment_size(std::string_view species) const;

  std::vector<double> initial_state() const;

  Workspace make_workspace() const { return slot_template_; }

  void derivatives(std::span<const double> state, double t, std::span<double> out, Workspace& ws) const;
  std::vector<double> derivatives(std::span<const double> state, double t) const;

  /// Per-reaction fluxes at `state`, in reaction_ids() order.
  std::vector<double> fluxes(std::span<const double> state) const;

  /// Values the assignment rules give at `state`, keyed by parameter id.
  mathml::Environment assigned_values(std::span<const double> state) const;

 private:
  struct Rule {
    std::size_t target_slot;
    mathml::BoundExpr math;
  };

  OdeSystem() = default;
  void load_state(std::span<const double> state, Workspace& ws) const;
  void eval_fluxes(Workspace& ws, std::span<double> flux) const;
  std::size_t species_index(std::string_view species) const;

  std::vector<std::string> state_vars_;
  std::vector<std::string> reaction_ids_;
  std::vector<std::string> assignment_order_;
  std::vector<double> initial_;
  std::vector<double> sizes_;             // per state var
  std::vector<double> stoich_;            // state_vars x reactions, row-major
  std::vector<std::size_t> state_slots_;  // slot of each state var
  std::vector<Rule> rules_;
  std::vector<mathml::BoundExpr> flux_exprs_;
  Workspace slot_template_;  // slots for every symbol, constants prefilled; fluxes appended
  std::size_t flux_offset_ = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> var_names;
  std::vector<double> states;  // times.size() x var_names.size(), row-major

  std::size_t rows() const noexcept { return times.size(); }
  std::size_t cols() const noexcept { return var_names.size(); }
  double at(std::size_t row, std::size_t col) const { return states[row * cols() + col]; }
  std::span<const double> row(std::size_t r) const { return {states.data() + r * cols(), cols()}; }
  /// Throws LookupError for an unknown variable.
  std::vector<double> column(std::string_view var) const;

  bool operator==(const Trajectory&) const = default;
};

/// Integrates from t=0 to config.t_end. Output rows are taken every
/// output_interval and always include t=0 and t_end. Throws ConfigError,
/// StiffnessError (adaptive step below 1e-12) and DivergenceError
/// (non-finite state).
Trajectory integrate(const OdeSystem& system, std::span<const double> initial, const SimConfig& config);

struct Peak {
  double time;
  double value;
};

/// Strict local maxima of `variable`, refined by fitting a parabola
/// through each maximum and its two neighbours.
std::vector<Peak> detect_peaks(const Trajectory& trajectory, std::string_view variable);

}  // namespace pathweave::sim
