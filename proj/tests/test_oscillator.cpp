#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swsync/error.hpp"
#include "swsync/oscillator.hpp"
#include "swsync/rk4.hpp"

using namespace swsync;

namespace {

OscillatorModel harmonic() {
    Eigen::Matrix2d a;
    a << 0, 1, -1, 0;
    return linear_model(a, Eigen::Matrix2d::Identity());
}

double decay_error(double dt) {
    const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
    const auto traj = integrate_fixed_step([](const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = -x; }, x0, 1.0, dt);
    return std::abs(traj.states(0, traj.states.cols() - 1) - std::exp(-1.0));
}

}  // namespace

TEST_CASE("Rossler vector field and Jacobian") {
    const Eigen::Vector3d f = rossler_field({1.0, 2.0, 3.0}, 0.2, 0.2, 2.5);
    CHECK(f(0) == doctest::Approx(-5.0));
    CHECK(f(1) == doctest::Approx(1.4));
    CHECK(f(2) == doctest::Approx(0.2 + 3.0 * (1.0 - 2.5)));

    const Eigen::Matrix3d j = rossler_jacobian({1.0, 2.0, 3.0}, 0.2, 2.5);
    Eigen::Matrix3d expected;
    expected << 0, -1, -1, 1, 0.2, 0, 3, 0, 1.0 - 2.5;
    CHECK(j.isApprox(expected));

    const auto model = rossler_model();
    CHECK(model.state_dim == 3);
    CHECK(model.coupling == Eigen::Vector3d(1, 0, 0).asDiagonal().toDenseMatrix());
    CHECK(model.eval(Eigen::Vector3d(1, 2, 3)).isApprox(f));
}

TEST_CASE("published linearization drops the x dependence of dz'/dz") {
    const auto model = rossler_model({}, RosslerLinearization::published);
    const Eigen::MatrixXd j = model.jacobian_at(Eigen::Vector3d(1.0, 2.0, 3.0));
    CHECK(j(2, 2) == doctest::Approx(-2.5));
    CHECK(j(2, 0) == doctest::Approx(3.0));
    CHECK(parse_rossler_linearization(to_string(RosslerLinearization::published)) == RosslerLinearization::published);
    CHECK_THROWS_AS(parse_rossler_linearization("literal"), InvalidArgument);
}

TEST_CASE("analytic Jacobian matches finite differences") {
    const auto model = rossler_model();
    for (const Eigen::Vector3d& x : {Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(-4.2, 0.3, 0.01), kRosslerAnchor}) {
        const Eigen::MatrixXd fd = finite_difference_jacobian(model, x);
        CHECK((fd - model.jacobian_at(x)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("RK4 on exponential decay") {
    CHECK(decay_error(0.01) < 1e-10);
    // fourth order: halving dt cuts the error about 16-fold
    const double ratio = decay_error(0.1) / decay_error(0.05);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("RK4 stepper on matrix states") {
    Rk4Stepper<Eigen::MatrixXd> stepper;
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(2, 2);
    const auto field = [](const Eigen::MatrixXd& m, Eigen::MatrixXd& dm) { dm = -2.0 * m; };
    for (int i = 0; i < 100; ++i) {
        stepper.step(field, x, 0.01);
    }
    CHECK(x(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    CHECK(x(0, 1) == 0.0);
}

TEST_CASE("fixed-step integration hits t_end exactly") {
    const auto traj = integrate_fixed_step(harmonic().field, Eigen::Vector2d(1.0, 0.0), 2.0 * std::numbers::pi, 1e-3);
    CHECK(traj.times(traj.times.size() - 1) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(traj.states(0, traj.states.cols() - 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(traj.states(1, traj.states.cols() - 1)) < 1e-10);
}

TEST_CASE("integration reports blow-up") {
    const VectorField runaway = [](const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = x.array().square(); };
    try {
        integrate_fixed_step(runaway, Eigen::VectorXd::Ones(1), 5.0, 0.01);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(e.time() > 0.9);
        CHECK(e.time() < 1.2);
    }
}

TEST_CASE("harmonic oscillator period is 2 pi") {
    CycleOptions opts;
    opts.settle_time = 3.0;
    const auto cycle = find_limit_cycle(harmonic(), Eigen::Vector2d(1.0, 0.0), opts);
    CHECK(cycle.period == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
    CHECK(cycle.closure_error < 1e-6);
}

TEST_CASE("Rossler limit cycle") {
    const auto model = rossler_model();
    const auto cycle = find_limit_cycle(model, kRosslerAnchor);
    CHECK(std::abs(cycle.period - 5.749) < 0.01);
    CHECK(cycle.closure_error < 1e-6);
    const auto& s = cycle.samples.states;
    CHECK((s.col(0) - s.col(s.cols() - 1)).norm() < 1e-6);
    CHECK(cycle.samples.times(cycle.samples.times.size() - 1) == doctest::Approx(cycle.period));

    // a different settling point lands on a different section of the same orbit
    CycleOptions other;
    other.settle_time = 537.3;
    const auto again = find_limit_cycle(model, Eigen::Vector3d(1.0, 1.0, 0.0), other);
    CHECK(again.period == doctest::Approx(cycle.period).epsilon(1e-6));
}

TEST_CASE("limit cycle search fails on a decaying system") {
    const auto sink = linear_model(-Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity());
    CycleOptions opts;
    opts.settle_time = 10.0;
    opts.max_search_time = 50.0;
    CHECK_THROWS_AS(find_limit_cycle(sink, Eigen::Vector2d(1.0, 0.5), opts), Error);
}
