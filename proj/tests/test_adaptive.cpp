#include <doctest.h>

#include <cmath>
#include <cstring>

#include "core/adaptive.hpp"
#include "oracles.hpp"

using namespace aadmm;

namespace {

// HyperParams whose penalties hit chosen targets, built through the kappa
// map so the type invariant stays intact.
HyperParams hp_with_gammas(double lambda, double sigma2,
                           const std::vector<double>& gammas) {
  Eigen::VectorXd kappa(static_cast<Eigen::Index>(gammas.size()));
  for (std::size_t i = 0; i < gammas.size(); ++i)
    kappa[static_cast<Eigen::Index>(i)] =
        oracles::kappa_for_gamma(gammas[i], lambda, sigma2);
  return HyperParams::make(lambda, sigma2, kappa);
}

OuterState state_for(const MeasurementEnsemble& ens, const HyperParams& hp,
                     IndexSet support, Eigen::VectorXd x_s) {
  OuterState state;
  state.support = std::move(support);
  state.x_s = std::move(x_s);
  state.residual = ens.y - ens.submatrix(state.support) * state.x_s;
  state.delta_s = 0.0;
  for (Eigen::Index i : state.support) state.delta_s += hp.gamma[i];
  state.objective = state.residual.squaredNorm() +
                    hp.lambda * state.x_s.lpNorm<1>() + state.delta_s;
  return state;
}

HyperParams random_hp(Eigen::Index n, std::uint64_t seed) {
  rng::CounterRng rng(seed);
  Eigen::VectorXd kappa(n);
  for (Eigen::Index i = 0; i < n; ++i) kappa[i] = 0.02 + 0.96 * rng.uniform();
  return HyperParams::make(0.1, 0.05, kappa);
}

MeasurementEnsemble random_ensemble(Eigen::Index m, Eigen::Index n,
                                    std::uint64_t seed) {
  rng::CounterRng rng(seed);
  MeasurementEnsemble ens;
  ens.A = oracles::random_unit_columns(m, n, rng);
  ens.y = oracles::random_vector(m, rng);
  return ens;
}

}  // namespace

TEST_CASE("init_support keeps strictly negative penalties") {
  Eigen::VectorXd gamma(4);
  gamma << -0.1, 0.2, -0.3, 0.0;
  CHECK(init_support(gamma) == IndexSet{0, 2});
  CHECK(init_support(Eigen::VectorXd::Constant(3, 0.5)).empty());
  gamma = Eigen::VectorXd::Constant(5, -1.0);
  CHECK(init_support(gamma) == IndexSet{0, 1, 2, 3, 4});
}

TEST_CASE("bound_add middle branch returns the smallest penalty") {
  // orthogonal columns, tiny residual correlations
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 3);
  ens.y = Eigen::VectorXd::Zero(4);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.03, 0.01, 0.02});
  OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
  state.residual = Eigen::VectorXd::Zero(4);  // all |t| <= lambda/2

  const BoundResult b = bound_add(state, ens, hp);
  CHECK(b.value == doctest::Approx(hp.gamma.minCoeff()).epsilon(1e-12));
  CHECK(*b.index == 1);
}

TEST_CASE("bound_add positive branch matches the algebra") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 2);
  ens.y = Eigen::VectorXd::Zero(4);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 10.0});
  OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
  state.residual = Eigen::VectorXd::Zero(4);
  state.residual[0] = 0.5;  // t_0 = 0.5 > lambda/2

  const BoundResult b = bound_add(state, ens, hp);
  // gamma - t^2 + lambda t - lambda^2/4 = 0.01 - 0.25 + 0.1 - 0.01
  CHECK(b.value == doctest::Approx(-0.15).epsilon(1e-9));
  CHECK(*b.index == 0);
  // algebraic identity gamma - (|t| - lambda/2)^2
  CHECK(b.value ==
        doctest::Approx(hp.gamma[0] - std::pow(0.5 - 0.1, 2)).epsilon(1e-9));
}

TEST_CASE("bound_add negative branch is symmetric") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 2);
  ens.y = Eigen::VectorXd::Zero(4);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 10.0});
  OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
  state.residual = Eigen::VectorXd::Zero(4);
  state.residual[0] = -0.5;
  const BoundResult b = bound_add(state, ens, hp);
  CHECK(b.value == doctest::Approx(-0.15).epsilon(1e-9));
}

TEST_CASE("bound_add at t equal to lambda") {
  const double lambda = 0.2;
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(3, 1);
  ens.y = Eigen::VectorXd::Zero(3);
  const HyperParams hp = hp_with_gammas(lambda, 0.5, {0.0});
  OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
  state.residual = Eigen::VectorXd::Zero(3);
  state.residual[0] = lambda;
  const BoundResult b = bound_add(state, ens, hp);
  CHECK(b.value == doctest::Approx(-lambda * lambda / 4.0).epsilon(1e-9));
}

TEST_CASE("bound_add matches the squared-shift identity on random states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MeasurementEnsemble ens = random_ensemble(8, 12, 4000 + seed);
    const HyperParams hp = random_hp(12, 4100 + seed);
    OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
    const BoundResult b = bound_add(state, ens, hp);
    double expected = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < 12; ++i) {
      const double t = ens.A.col(i).dot(state.residual);
      const double shift = std::max(0.0, std::abs(t) - hp.lambda / 2.0);
      expected = std::min(expected, hp.gamma[i] - shift * shift);
    }
    CHECK(b.value == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("bound_add on a full support is vacuous") {
  const MeasurementEnsemble ens = random_ensemble(5, 3, 77);
  const HyperParams hp = random_hp(3, 78);
  const OuterState state =
      state_for(ens, hp, {0, 1, 2}, Eigen::VectorXd::Zero(3));
  const BoundResult b = bound_add(state, ens, hp);
  CHECK(std::isinf(b.value));
  CHECK_FALSE(b.index.has_value());
}

TEST_CASE("bound_add_nonneg branches") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 3);
  ens.y = Eigen::VectorXd::Zero(4);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 5.0, 5.0});
  OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));

  // t <= lambda/2 everywhere: every bound collapses to gamma
  state.residual = Eigen::VectorXd::Zero(4);
  BoundResult b = bound_add_nonneg(state, ens, hp);
  CHECK(b.value == doctest::Approx(hp.gamma.minCoeff()).epsilon(1e-12));

  // a strongly negative correlation still yields gamma (no negative adds)
  state.residual[0] = -3.0;
  b = bound_add_nonneg(state, ens, hp);
  CHECK(b.value == doctest::Approx(hp.gamma.minCoeff()).epsilon(1e-12));

  // t > lambda/2 collapses to gamma - (t - lambda/2)^2
  state.residual[0] = 0.5;
  b = bound_add_nonneg(state, ens, hp);
  CHECK(b.value == doctest::Approx(-0.15).epsilon(1e-9));
  CHECK(b.value ==
        doctest::Approx(hp.gamma[0] - std::pow(0.5 - 0.1, 2)).epsilon(1e-9));
  CHECK(*b.index == 0);
}

TEST_CASE("bound_remove substitutions") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 2);
  ens.y = Eigen::VectorXd::Zero(4);

  SUBCASE("zero coefficient leaves only -gamma") {
    const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.07, 10.0});
    OuterState state = state_for(ens, hp, {0}, Eigen::VectorXd::Zero(1));
    const BoundResult b = bound_remove(state, ens, hp);
    CHECK(b.value == doctest::Approx(-hp.gamma[0]).epsilon(1e-9));
    CHECK(*b.index == 0);
  }

  SUBCASE("orthogonal residual") {
    const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 10.0});
    Eigen::VectorXd x_s(1);
    x_s << 0.5;
    OuterState state = state_for(ens, hp, {0}, x_s);
    state.residual = Eigen::VectorXd::Zero(4);  // r^T a_0 = 0
    const BoundResult b = bound_remove(state, ens, hp);
    // 0.25 - 0.1 + 0 - 0.01
    CHECK(b.value == doctest::Approx(0.14).epsilon(1e-9));
  }

  SUBCASE("negative correlation can favor removal") {
    const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.0, 10.0});
    Eigen::VectorXd x_s(1);
    x_s << 0.1;
    OuterState state = state_for(ens, hp, {0}, x_s);
    state.residual = Eigen::VectorXd::Zero(4);
    state.residual[0] = -1.0;  // r^T a_0 = -1
    const BoundResult b = bound_remove(state, ens, hp);
    // 0.01 - 0.02 - 0.2 - 0
    CHECK(b.value == doctest::Approx(-0.21).epsilon(1e-9));
  }

  SUBCASE("empty support is vacuous") {
    const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 0.02});
    const OuterState state = state_for(ens, hp, {}, Eigen::VectorXd(0));
    const BoundResult b = bound_remove(state, ens, hp);
    CHECK(std::isinf(b.value));
    CHECK_FALSE(b.index.has_value());
  }
}

TEST_CASE("decide_move covers stop, add, and the remove tie") {
  BoundResult add{0.2, 1};
  BoundResult rem{0.3, 2};
  CHECK(decide_move(add, rem).kind == MoveKind::stop);

  add = {-0.15, 4};
  rem = {0.14, 2};
  const Move added = decide_move(add, rem);
  CHECK(added.kind == MoveKind::add);
  CHECK(added.index == 4);

  add = {-0.15, 4};
  rem = {-0.15, 2};  // exact tie goes to removal
  const Move removed = decide_move(add, rem);
  CHECK(removed.kind == MoveKind::remove);
  CHECK(removed.index == 2);

  add = {-0.1, 4};
  rem = {-0.2, 2};
  CHECK(decide_move(add, rem).kind == MoveKind::remove);
}

TEST_CASE("step stops when both bounds are nonnegative") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(3, 2);
  ens.y = Eigen::VectorXd::Zero(3);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.05, 0.06});
  const OuterOptions opts;
  const OuterState state = make_state(ens, hp, {}, opts);
  const StepResult sr = step(state, ens, hp, opts);
  CHECK(sr.move.kind == MoveKind::stop);
  CHECK_FALSE(sr.stalled);
  CHECK(sr.state.support.empty());
}

TEST_CASE("step adds the predicted index and refreshes the state") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 2);
  ens.y = Eigen::VectorXd::Zero(4);
  ens.y[0] = 0.5;  // y^T a_0 = 0.5, so adding index 0 pays off
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 10.0});
  const OuterOptions opts;
  const OuterState state = make_state(ens, hp, {}, opts);
  const StepResult sr = step(state, ens, hp, opts);
  CHECK(sr.move.kind == MoveKind::add);
  CHECK(sr.move.index == 0);
  CHECK(sr.state.support == IndexSet{0});
  CHECK(sr.state.iteration == 1);
  CHECK(sr.state.objective < state.objective);
  // identity column: x_0 = soft_threshold(0.5, lambda/2) = 0.4
  CHECK(sr.state.x_s[0] == doctest::Approx(0.4).epsilon(1e-6));
}

TEST_CASE("step removes a useless index from the support") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(3, 2);
  ens.y = Eigen::VectorXd::Zero(3);
  ens.y[0] = 1.0;
  // index 0 carries the signal; index 1 is orthogonal junk with gamma > 0
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {-0.01, 0.05});
  const OuterOptions opts;
  const OuterState state = make_state(ens, hp, {0, 1}, opts);
  CHECK(state.x_s[1] == 0.0);

  const StepResult sr = step(state, ens, hp, opts);
  CHECK(sr.move.kind == MoveKind::remove);
  CHECK(sr.move.index == 1);
  CHECK(sr.state.support == IndexSet{0});
  CHECK(sr.state.objective ==
        doctest::Approx(state.objective - hp.gamma[1]).epsilon(1e-9));

  const StepResult done = step(sr.state, ens, hp, opts);
  CHECK(done.move.kind == MoveKind::stop);
}

TEST_CASE("all-negative penalties keep the full support") {
  rng::CounterRng rng(8200);
  MeasurementEnsemble ens;
  ens.A = oracles::random_unit_columns(8, 14, rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(14);
  x[2] = 2.0;
  x[9] = -1.0;
  ens.y = ens.A * x;
  const HyperParams hp = HyperParams::uniform(0.2, 0.5, 0.97, 14);
  REQUIRE(hp.gamma.maxCoeff() < 0.0);
  const RecoveryReport report = run(ens, hp, OuterOptions{});
  CHECK(report.estimate.support.size() == 14);
  CHECK(report.stop_reason == StopReason::bounds_nonneg);
}

TEST_CASE("inner non-convergence surfaces as a report warning") {
  rng::CounterRng rng(8300);
  MeasurementEnsemble ens;
  ens.A = oracles::random_unit_columns(6, 10, rng);
  ens.y = oracles::random_vector(6, rng);
  const HyperParams hp = HyperParams::uniform(2e-4, 3.24e-4, 0.97, 10);
  OuterOptions opts;
  opts.admm.max_iter = 3;  // starve the inner solver
  const RecoveryReport report = run(ens, hp, opts);
  CHECK(report.inner_warning);
}

TEST_CASE("a huge stall tolerance rolls every move back") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 2);
  ens.y = Eigen::VectorXd::Zero(4);
  ens.y[0] = 0.5;
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 10.0});
  OuterOptions opts;
  opts.stall_tol = 100.0;  // no move can decrease g by this much
  const OuterState state = make_state(ens, hp, {}, opts);
  const StepResult sr = step(state, ens, hp, opts);
  CHECK(sr.move.kind == MoveKind::stop);
  CHECK(sr.stalled);
  CHECK(sr.state.support == state.support);
  CHECK(sr.state.objective == state.objective);

  RecoveryReport report = run(ens, hp, opts);
  CHECK(report.stop_reason == StopReason::descent_stall);
}

TEST_CASE("run returns the zero signal when nothing is worth adding") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 3);
  ens.y = Eigen::VectorXd::Constant(4, 0.05);  // |y^T a_i| = 0.05 <= lambda/2
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.05, 0.06, 0.07});
  const RecoveryReport report = run(ens, hp, OuterOptions{});
  CHECK(report.estimate.support.empty());
  CHECK(report.estimate.x.cwiseAbs().maxCoeff() == 0.0);
  CHECK(report.outer_iterations == 1);
  CHECK(report.stop_reason == StopReason::bounds_nonneg);
  CHECK(report.estimate.objective ==
        doctest::Approx(ens.y.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("run solves the one-dimensional closed form") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Zero(3, 1);
  ens.A(0, 0) = 1.0;
  ens.y = Eigen::VectorXd::Zero(3);
  ens.y[0] = 1.0;  // y^T a = 1
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {-0.01});
  const RecoveryReport report = run(ens, hp, OuterOptions{});
  CHECK(report.estimate.support == IndexSet{0});
  CHECK(report.estimate.x[0] == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(report.stop_reason == StopReason::bounds_nonneg);
}

TEST_CASE("run is deterministic") {
  const MeasurementEnsemble ens = random_ensemble(10, 16, 900);
  const HyperParams hp = random_hp(16, 901);
  const RecoveryReport a = run(ens, hp, OuterOptions{});
  const RecoveryReport b = run(ens, hp, OuterOptions{});
  REQUIRE(a.estimate.x.size() == b.estimate.x.size());
  CHECK(std::memcmp(a.estimate.x.data(), b.estimate.x.data(),
                    sizeof(double) * a.estimate.x.size()) == 0);
  CHECK(a.estimate.support == b.estimate.support);
  CHECK(a.outer_iterations == b.outer_iterations);
}

TEST_CASE("run always halts within the outer cap") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 8 + static_cast<Eigen::Index>(seed % 5);
    const MeasurementEnsemble ens = random_ensemble(6, n, 5000 + seed);
    const HyperParams hp = random_hp(n, 5100 + seed);
    const OuterOptions opts;
    const RecoveryReport report = run(ens, hp, opts);
    CHECK(report.outer_iterations <= opts.resolved_max_outer(n));
    CHECK(report.trace.size() ==
          static_cast<std::size_t>(report.outer_iterations));
  }
}

TEST_CASE("max_outer reports the cap as the stop reason") {
  const MeasurementEnsemble ens = random_ensemble(8, 12, 903);
  const HyperParams hp = random_hp(12, 904);
  OuterOptions opts;
  opts.max_outer = 1;
  const RecoveryReport full = run(ens, hp, OuterOptions{});
  if (full.outer_iterations > 1) {
    const RecoveryReport capped = run(ens, hp, opts);
    CHECK(capped.stop_reason == StopReason::max_outer);
    CHECK(capped.outer_iterations == 1);
  }
}

TEST_CASE("descent guard keeps the objective trace non-increasing") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MeasurementEnsemble ens = random_ensemble(10, 14, 6000 + seed);
    const HyperParams hp = random_hp(14, 6100 + seed);
    const RecoveryReport report = run(ens, hp, OuterOptions{});
    for (std::size_t i = 1; i < report.trace.size(); ++i)
      CHECK(report.trace[i].objective <= report.trace[i - 1].objective);
  }
}

TEST_CASE("state invariants hold along the search path") {
  const MeasurementEnsemble ens = random_ensemble(10, 12, 7000);
  const HyperParams hp = random_hp(12, 7001);
  const OuterOptions opts;
  OuterState state = make_state(ens, hp, init_support(hp.gamma), opts);
  for (int it = 0; it < opts.resolved_max_outer(12); ++it) {
    const Eigen::VectorXd recomputed =
        ens.y - ens.submatrix(state.support) * state.x_s;
    CHECK((state.residual - recomputed).cwiseAbs().maxCoeff() <= 1e-10);
    const double g = support_objective(ens, hp, state.support, state.x_s);
    CHECK(state.objective == doctest::Approx(g).epsilon(1e-10));

    const StepResult sr = step(state, ens, hp, opts);
    if (sr.move.kind == MoveKind::stop) break;
    state = sr.state;
  }
}

TEST_CASE("nonnegative mode returns a nonnegative signal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MeasurementEnsemble ens = random_ensemble(10, 14, 8000 + seed);
    const HyperParams hp = random_hp(14, 8100 + seed);
    OuterOptions opts;
    opts.admm.nonneg = true;
    const RecoveryReport report = run(ens, hp, opts);
    CHECK(report.estimate.x.minCoeff() >= 0.0);
  }
}

TEST_CASE("oracle refuses huge enumerations") {
  const MeasurementEnsemble ens = random_ensemble(5, 17, 905);
  const HyperParams hp = random_hp(17, 906);
  CHECK_THROWS_AS(oracle_solve(ens, hp, OuterOptions{}),
                  std::invalid_argument);
}

TEST_CASE("oracle agrees with run on the one-dimensional instance") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Zero(3, 1);
  ens.A(0, 0) = 1.0;
  ens.y = Eigen::VectorXd::Zero(3);
  ens.y[0] = 1.0;
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {-0.01});
  const SignalEstimate best = oracle_solve(ens, hp, OuterOptions{});
  const RecoveryReport report = run(ens, hp, OuterOptions{});
  CHECK(best.support == report.estimate.support);
  CHECK(best.x[0] == doctest::Approx(report.estimate.x[0]).epsilon(1e-6));
}

TEST_CASE("oracle picks the empty support for zero data") {
  MeasurementEnsemble ens;
  ens.A = Eigen::MatrixXd::Identity(4, 4);
  ens.y = Eigen::VectorXd::Zero(4);
  const HyperParams hp = hp_with_gammas(0.2, 0.5, {0.01, 0.02, 0.03, 0.04});
  const SignalEstimate best = oracle_solve(ens, hp, OuterOptions{});
  CHECK(best.support.empty());
  CHECK(best.objective == 0.0);
}

TEST_CASE("search never beats the oracle") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Eigen::Index n = 6 + static_cast<Eigen::Index>(seed % 4);
    const MeasurementEnsemble ens = random_ensemble(n - 2, n, 9000 + seed);
    const HyperParams hp = random_hp(n, 9100 + seed);
    const OuterOptions opts;
    const SignalEstimate best = oracle_solve(ens, hp, opts);
    const RecoveryReport report = run(ens, hp, opts);
    CHECK(best.objective <= report.estimate.objective + 1e-8);
  }
}

TEST_CASE("the oracle-optimal support contains every negative penalty") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Eigen::Index n = 6 + static_cast<Eigen::Index>(seed % 5);
    const MeasurementEnsemble ens = random_ensemble(n - 2, n, 9500 + seed);
    const HyperParams hp = random_hp(n, 9600 + seed);
    const SignalEstimate best = oracle_solve(ens, hp, OuterOptions{});
    for (Eigen::Index i = 0; i < n; ++i)
      if (hp.gamma[i] < 0.0) CHECK(contains(best.support, i));
  }
}

TEST_CASE("add and remove bounds overestimate no objective change") {
  // Bound validity against tight re-solves on every visited state.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Eigen::Index n = 6 + static_cast<Eigen::Index>(seed % 4);
    const MeasurementEnsemble ens = random_ensemble(n - 2, n, 9700 + seed);
    const HyperParams hp = random_hp(n, 9800 + seed);
    OuterOptions opts;
    OuterOptions tight = opts;
    tight.admm = opts.admm.tightened();

    OuterState state = make_state(ens, hp, init_support(hp.gamma), opts);
    for (int it = 0; it < opts.resolved_max_outer(n); ++it) {
      const double g_here =
          make_state(ens, hp, state.support, tight).objective;
      const Eigen::VectorXd corr = ens.A.transpose() * state.residual;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (contains(state.support, i)) continue;
        const double t = corr[i];
        const double shift = std::max(0.0, std::abs(t) - hp.lambda / 2.0);
        const double bound_i = hp.gamma[i] - shift * shift;
        const double g_plus =
            make_state(ens, hp, with_index(state.support, i), tight).objective;
        CHECK(g_plus - g_here <= bound_i + 1e-6);
      }
      for (std::size_t c = 0; c < state.support.size(); ++c) {
        const Eigen::Index j = state.support[c];
        const double xj = state.x_s[static_cast<Eigen::Index>(c)];
        const double bound_j = xj * xj - hp.lambda * std::abs(xj) +
                               2.0 * xj * corr[j] - hp.gamma[j];
        const double g_minus =
            make_state(ens, hp, without_index(state.support, j), tight)
                .objective;
        CHECK(g_minus - g_here <= bound_j + 1e-6);
      }
      const StepResult sr = step(state, ens, hp, opts);
      if (sr.move.kind == MoveKind::stop) break;
      state = sr.state;
    }
  }
}
