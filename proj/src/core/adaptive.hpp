#ifndef AADMM_CORE_ADAPTIVE_HPP
#define AADMM_CORE_ADAPTIVE_HPP

#include <optional>
#include <vector>

#include "core/inner_solver.hpp"
#include "core/model.hpp"

namespace aadmm {

struct OuterOptions {
  AdmmOptions admm;
  int max_outer = 0;  // 0 means 4n, resolved at run time
  bool descent_guard = true;
  double stall_tol = 1e-10;

  int resolved_max_outer(Eigen::Index n) const {
    return max_outer > 0 ? max_outer : static_cast<int>(4 * n);
  }
};

enum class MoveKind { add, remove, stop };

struct Move {
  MoveKind kind = MoveKind::stop;
  Eigen::Index index = -1;  // meaningful for add/remove only
};

enum class StopReason { bounds_nonneg, max_outer, descent_stall };

const char* to_string(MoveKind kind);
const char* to_string(StopReason reason);

// Support, restricted solution, residual and objective of one outer
// iterate. delta_s carries the running sum of gamma over the support.
struct OuterState {
  IndexSet support;
  Eigen::VectorXd x_s;       // length |S|
  Eigen::VectorXd residual;  // y - A^S x_S, length m
  double objective = 0.0;    // g_S
  double delta_s = 0.0;
  int iteration = 0;
  bool inner_warning = false;  // some inner solve did not converge
};

struct TraceEntry {
  int iteration = 0;
  std::size_t support_size = 0;
  double objective = 0.0;
  Move move;  // the decision taken at this state
};

struct RecoveryReport {
  SignalEstimate estimate;
  std::vector<TraceEntry> trace;
  int outer_iterations = 0;
  StopReason stop_reason = StopReason::bounds_nonneg;
  bool inner_warning = false;
};

// Indices whose penalty is strictly negative.
IndexSet init_support(const Eigen::VectorXd& gamma);

// Minimum bound and its argmin (lowest index on ties); value is +inf and
// index empty when there is nothing to scan.
struct BoundResult {
  double value = std::numeric_limits<double>::infinity();
  std::optional<Eigen::Index> index;
};

// Best-case objective change from adding one unselected index. For
// t = r_S^T a_i the per-index bound is gamma_i - (|t| - lambda/2)^2
// outside the dead zone |t| <= lambda/2 and gamma_i inside it.
BoundResult bound_add(const OuterState& state, const MeasurementEnsemble& ens,
                      const HyperParams& hp);

// Nonnegative variant: only the positive part of t - lambda/2 counts.
BoundResult bound_add_nonneg(const OuterState& state,
                             const MeasurementEnsemble& ens,
                             const HyperParams& hp);

// Best-case objective change from removing one selected index:
// x_j^2 - lambda*|x_j| + 2 x_j r_S^T a_j - gamma_j.
BoundResult bound_remove(const OuterState& state,
                         const MeasurementEnsemble& ens,
                         const HyperParams& hp);

// Decision rule: stop when min(add, remove) >= 0, add when strictly
// add < remove, remove otherwise (ties go to removal).
Move decide_move(const BoundResult& add, const BoundResult& remove);

// Solves the restricted subproblem on `support` and assembles a state.
OuterState make_state(const MeasurementEnsemble& ens, const HyperParams& hp,
                      IndexSet support, const OuterOptions& opts,
                      const Eigen::VectorXd* warm_start = nullptr);

struct StepResult {
  OuterState state;
  Move move;
  bool stalled = false;  // move rolled back by the descent guard
};

// One outer iteration: evaluate both bounds, apply the decided move,
// re-solve, and (when the descent guard is on) roll back moves that fail
// to decrease the objective by at least stall_tol.
StepResult step(const OuterState& state, const MeasurementEnsemble& ens,
                const HyperParams& hp, const OuterOptions& opts);

// Full adaptive search: initial support from the negative penalties, then
// repeated `step` until stop, stall or the iteration cap.
RecoveryReport run(const MeasurementEnsemble& ens, const HyperParams& hp,
                   const OuterOptions& opts);

// Exhaustive minimizer of the support objective over all 2^n supports
// (n <= 16), inner solves 10x tighter. Ties break toward smaller supports,
// then lexicographically.
SignalEstimate oracle_solve(const MeasurementEnsemble& ens,
                            const HyperParams& hp, const OuterOptions& opts);

}  // namespace aadmm

#endif
