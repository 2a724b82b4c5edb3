#include "core/adaptive.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aadmm {

namespace {

// Full refresh cadence for the incrementally maintained delta_S.
constexpr int kDeltaRefreshPeriod = 25;

double delta_of(const IndexSet& support, const HyperParams& hp) {
  double delta = 0.0;
  for (Eigen::Index i : support) delta += hp.gamma[i];
  return delta;
}

double add_bound_at(double t, double gamma, double lambda) {
  const double half = lambda / 2.0;
  if (t > half) return gamma - t * t + lambda * t - lambda * lambda / 4.0;
  if (t < -half) return gamma - t * t - lambda * t - lambda * lambda / 4.0;
  return gamma;
}

double add_bound_nonneg_at(double t, double gamma, double lambda) {
  const double s = std::max(0.0, t - lambda / 2.0);
  return s * s + lambda * s - 2.0 * s * t + gamma;
}

}  // namespace

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::add: return "add";
    case MoveKind::remove: return "remove";
    case MoveKind::stop: return "stop";
  }
  return "?";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::bounds_nonneg: return "bounds_nonneg";
    case StopReason::max_outer: return "max_outer";
    case StopReason::descent_stall: return "descent_stall";
  }
  return "?";
}

IndexSet init_support(const Eigen::VectorXd& gamma) {
  IndexSet s;
  for (Eigen::Index i = 0; i < gamma.size(); ++i)
    if (gamma[i] < 0.0) s.push_back(i);
  return s;
}

BoundResult bound_add(const OuterState& state, const MeasurementEnsemble& ens,
                      const HyperParams& hp) {
  BoundResult best;
  const Eigen::VectorXd corr = ens.A.transpose() * state.residual;
  for (Eigen::Index i = 0; i < ens.cols(); ++i) {
    if (contains(state.support, i)) continue;
    const double b = add_bound_at(corr[i], hp.gamma[i], hp.lambda);
    if (b < best.value) {
      best.value = b;
      best.index = i;
    }
  }
  return best;
}

BoundResult bound_add_nonneg(const OuterState& state,
                             const MeasurementEnsemble& ens,
                             const HyperParams& hp) {
  BoundResult best;
  const Eigen::VectorXd corr = ens.A.transpose() * state.residual;
  for (Eigen::Index i = 0; i < ens.cols(); ++i) {
    if (contains(state.support, i)) continue;
    const double b = add_bound_nonneg_at(corr[i], hp.gamma[i], hp.lambda);
    if (b < best.value) {
      best.value = b;
      best.index = i;
    }
  }
  return best;
}

BoundResult bound_remove(const OuterState& state,
                         const MeasurementEnsemble& ens,
                         const HyperParams& hp) {
  BoundResult best;
  for (std::size_t c = 0; c < state.support.size(); ++c) {
    const Eigen::Index j = state.support[c];
    const double xj = state.x_s[static_cast<Eigen::Index>(c)];
    const double t = ens.A.col(j).dot(state.residual);
    const double b = xj * xj - hp.lambda * std::abs(xj) + 2.0 * xj * t -
                     hp.gamma[j];
    if (b < best.value) {
      best.value = b;
      best.index = j;
    }
  }
  return best;
}

Move decide_move(const BoundResult& add, const BoundResult& remove) {
  if (std::min(add.value, remove.value) >= 0.0) return {MoveKind::stop, -1};
  if (add.value < remove.value) return {MoveKind::add, *add.index};
  return {MoveKind::remove, *remove.index};
}

OuterState make_state(const MeasurementEnsemble& ens, const HyperParams& hp,
                      IndexSet support, const OuterOptions& opts,
                      const Eigen::VectorXd* warm_start) {
  OuterState state;
  state.support = std::move(support);
  const Eigen::MatrixXd a_s = ens.submatrix(state.support);
  const AdmmResult inner =
      solve_restricted(a_s, ens.y, hp.lambda, opts.admm, warm_start);
  state.x_s = inner.x;
  state.residual = ens.y - a_s * state.x_s;
  state.delta_s = delta_of(state.support, hp);
  state.objective = state.residual.squaredNorm() +
                    hp.lambda * state.x_s.lpNorm<1>() + state.delta_s;
  state.inner_warning = !inner.converged;
  return state;
}

StepResult step(const OuterState& state, const MeasurementEnsemble& ens,
                const HyperParams& hp, const OuterOptions& opts) {
  const BoundResult add = opts.admm.nonneg ? bound_add_nonneg(state, ens, hp)
                                           : bound_add(state, ens, hp);
  const BoundResult remove = bound_remove(state, ens, hp);
  const Move move = decide_move(add, remove);

  StepResult result;
  if (move.kind == MoveKind::stop) {
    result.state = state;
    result.move = move;
    return result;
  }

  IndexSet next_support;
  Eigen::VectorXd warm;
  if (move.kind == MoveKind::add) {
    next_support = with_index(state.support, move.index);
    warm.setZero(static_cast<Eigen::Index>(next_support.size()));
    for (std::size_t c = 0, old = 0; c < next_support.size(); ++c) {
      if (next_support[c] == move.index) continue;  // new index starts at 0
      warm[static_cast<Eigen::Index>(c)] = state.x_s[static_cast<Eigen::Index>(old++)];
    }
  } else {
    next_support = without_index(state.support, move.index);
    warm.setZero(static_cast<Eigen::Index>(next_support.size()));
    for (std::size_t c = 0, nw = 0; c < state.support.size(); ++c) {
      if (state.support[c] == move.index) continue;
      warm[static_cast<Eigen::Index>(nw++)] = state.x_s[static_cast<Eigen::Index>(c)];
    }
  }

  OuterState next;
  next.support = std::move(next_support);
  const Eigen::MatrixXd a_s = ens.submatrix(next.support);
  const AdmmResult inner =
      solve_restricted(a_s, ens.y, hp.lambda, opts.admm, &warm);
  next.x_s = inner.x;
  next.residual = ens.y - a_s * next.x_s;
  next.iteration = state.iteration + 1;
  next.inner_warning = state.inner_warning || !inner.converged;
  next.delta_s = move.kind == MoveKind::add
                     ? state.delta_s + hp.gamma[move.index]
                     : state.delta_s - hp.gamma[move.index];
  if (next.iteration % kDeltaRefreshPeriod == 0)
    next.delta_s = delta_of(next.support, hp);
  next.objective = next.residual.squaredNorm() +
                   hp.lambda * next.x_s.lpNorm<1>() + next.delta_s;

  if (opts.descent_guard && next.objective > state.objective - opts.stall_tol) {
    result.state = state;
    result.state.inner_warning = next.inner_warning;
    result.move = {MoveKind::stop, -1};
    result.stalled = true;
    return result;
  }

  result.state = std::move(next);
  result.move = move;
  return result;
}

RecoveryReport run(const MeasurementEnsemble& ens, const HyperParams& hp,
                   const OuterOptions& opts) {
  if (hp.size() != ens.cols())
    throw std::invalid_argument("hyperparameter length differs from signal length");

  RecoveryReport report;
  OuterState state = make_state(ens, hp, init_support(hp.gamma), opts);
  const int max_outer = opts.resolved_max_outer(ens.cols());

  bool stopped = false;
  for (int it = 0; it < max_outer; ++it) {
    StepResult sr = step(state, ens, hp, opts);
    report.trace.push_back({state.iteration, state.support.size(),
                            state.objective, sr.move});
    report.outer_iterations = it + 1;
    if (sr.move.kind == MoveKind::stop) {
      report.stop_reason =
          sr.stalled ? StopReason::descent_stall : StopReason::bounds_nonneg;
      state.inner_warning = sr.state.inner_warning;
      stopped = true;
      break;
    }
    state = std::move(sr.state);
  }
  if (!stopped) report.stop_reason = StopReason::max_outer;

  report.estimate.x = pad_to_full(state.support, state.x_s, ens.cols());
  report.estimate.support = state.support;
  report.estimate.objective = state.objective;
  report.inner_warning = state.inner_warning;
  return report;
}

SignalEstimate oracle_solve(const MeasurementEnsemble& ens,
                            const HyperParams& hp, const OuterOptions& opts) {
  const Eigen::Index n = ens.cols();
  if (n > 16)
    throw std::invalid_argument("oracle_solve enumerates 2^n supports; refusing n > 16");

  const AdmmOptions tight = opts.admm.tightened();

  // Gray-code order flips one index per step, so every solve warm-starts
  // from its neighbor's solution.
  IndexSet support;
  Eigen::VectorXd x(0);

  SignalEstimate best;
  best.support = support;
  best.x = Eigen::VectorXd::Zero(n);
  best.objective = ens.y.squaredNorm();

  const std::uint64_t total = 1ull << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const Eigen::Index flipped = std::countr_zero(k);
    const std::uint64_t gray = k ^ (k >> 1);
    const auto pos = static_cast<Eigen::Index>(
        std::lower_bound(support.begin(), support.end(), flipped) -
        support.begin());
    Eigen::VectorXd warm(static_cast<Eigen::Index>(support.size()) +
                         ((gray >> flipped) & 1 ? 1 : -1));
    if ((gray >> flipped) & 1) {
      support.insert(support.begin() + pos, flipped);
      warm << x.head(pos), 0.0, x.tail(x.size() - pos);
    } else {
      support.erase(support.begin() + pos);
      warm << x.head(pos), x.tail(x.size() - pos - 1);
    }

    const Eigen::MatrixXd a_s = ens.submatrix(support);
    const AdmmResult inner =
        solve_restricted(a_s, ens.y, hp.lambda, tight, &warm);
    x = inner.x;
    const double g = support_objective(ens, hp, support, x);

    const bool better =
        g < best.objective ||
        (g == best.objective &&
         (support.size() < best.support.size() ||
          (support.size() == best.support.size() &&
           std::lexicographical_compare(support.begin(), support.end(),
                                        best.support.begin(),
                                        best.support.end()))));
    if (better) {
      best.x = pad_to_full(support, x, n);
      best.support = support;
      best.objective = g;
    }
  }
  return best;
}

}  // namespace aadmm
