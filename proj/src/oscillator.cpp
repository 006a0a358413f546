#include "swsync/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "swsync/error.hpp"
#include "swsync/rk4.hpp"

namespace swsync {

Eigen::VectorXd OscillatorModel::eval(const Eigen::VectorXd& state) const {
    Eigen::VectorXd out(state_dim);
    field(state, out);
    return out;
}

Eigen::MatrixXd OscillatorModel::jacobian_at(const Eigen::VectorXd& state) const {
    Eigen::MatrixXd out(state_dim, state_dim);
    jacobian(state, out);
    return out;
}

std::string to_string(RosslerLinearization lin) {
    return lin == RosslerLinearization::analytic ? "analytic" : "published";
}

RosslerLinearization parse_rossler_linearization(const std::string& name) {
    if (name == "analytic") {
        return RosslerLinearization::analytic;
    }
    if (name == "published") {
        return RosslerLinearization::published;
    }
    throw InvalidArgument("unknown Jacobian form '" + name + "' (expected analytic or published)");
}

Eigen::Vector3d rossler_field(const Eigen::Vector3d& s, double a, double b, double c) {
    return {-(s.y() + s.z()), s.x() + a * s.y(), b + s.z() * (s.x() - c)};
}

Eigen::Matrix3d rossler_jacobian(const Eigen::Vector3d& s, double a, double c) {
    Eigen::Matrix3d j;
    j << 0.0, -1.0, -1.0,
         1.0, a, 0.0,
         s.z(), 0.0, s.x() - c;
    return j;
}

OscillatorModel rossler_model(const RosslerParams& p, RosslerLinearization linearization) {
    OscillatorModel m;
    m.name = "rossler";
    m.state_dim = 3;
    m.params = {{"a", p.a}, {"b", p.b}, {"c", p.c}};
    m.field = [p](const Eigen::VectorXd& s, Eigen::VectorXd& d) {
        d(0) = -(s(1) + s(2));
        d(1) = s(0) + p.a * s(1);
        d(2) = p.b + s(2) * (s(0) - p.c);
    };
    const bool drop_x = linearization == RosslerLinearization::published;
    m.jacobian = [p, drop_x](const Eigen::VectorXd& s, Eigen::MatrixXd& j) {
        j << 0.0, -1.0, -1.0,
             1.0, p.a, 0.0,
             s(2), 0.0, drop_x ? -p.c : s(0) - p.c;
    };
    m.coupling = Eigen::Matrix3d::Zero();
    m.coupling(0, 0) = 1.0;
    m.reference_state = kRosslerAnchor;
    return m;
}

OscillatorModel linear_model(const Eigen::MatrixXd& system, const Eigen::MatrixXd& coupling) {
    if (system.rows() != system.cols() || coupling.rows() != system.rows() || coupling.cols() != system.cols()) {
        throw InvalidArgument("linear model needs square system and coupling matrices of equal size");
    }
    OscillatorModel m;
    m.name = "linear";
    m.state_dim = static_cast<int>(system.rows());
    m.field = [system](const Eigen::VectorXd& s, Eigen::VectorXd& d) { d.noalias() = system * s; };
    m.jacobian = [system](const Eigen::VectorXd&, Eigen::MatrixXd& j) { j = system; };
    m.coupling = coupling;
    m.reference_state = Eigen::VectorXd::Ones(m.state_dim);
    return m;
}

Eigen::MatrixXd finite_difference_jacobian(const OscillatorModel& model, const Eigen::VectorXd& state, double step) {
    const int n = model.state_dim;
    Eigen::MatrixXd j(n, n);
    for (int col = 0; col < n; ++col) {
        Eigen::VectorXd plus = state;
        Eigen::VectorXd minus = state;
        plus(col) += step;
        minus(col) -= step;
        j.col(col) = (model.eval(plus) - model.eval(minus)) / (2.0 * step);
    }
    return j;
}

Trajectory integrate_fixed_step(const VectorField& field, const Eigen::VectorXd& initial_state, double t_end,
                                double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw InvalidArgument("integration needs dt > 0 and t_end > 0");
    }
    const auto steps = static_cast<Eigen::Index>(std::ceil(t_end / dt - 1e-9));
    Trajectory traj;
    traj.times.resize(steps + 1);
    traj.states.resize(initial_state.size(), steps + 1);
    traj.times(0) = 0.0;
    traj.states.col(0) = initial_state;

    Rk4Stepper<Eigen::VectorXd> rk(initial_state);
    Eigen::VectorXd x = initial_state;
    for (Eigen::Index i = 1; i <= steps; ++i) {
        const double h = i == steps ? t_end - dt * static_cast<double>(steps - 1) : dt;
        rk.step(field, x, h);
        const double t = i == steps ? t_end : dt * static_cast<double>(i);
        if (!x.allFinite()) {
            throw BlowUpError(t, "non-finite state during integration");
        }
        traj.times(i) = t;
        traj.states.col(i) = x;
    }
    return traj;
}

namespace {

// Signed distance to the section, with the sign chosen so the flow crosses upwards.
struct Section {
    Eigen::VectorXd point;
    Eigen::VectorXd normal;

    double operator()(const Eigen::VectorXd& x) const { return normal.dot(x - point); }
};

// Time tau in (0, dt] at which a single RK4 step from `from` lands on the
// section, found by regula falsi (Illinois variant) on the stepped position.
std::pair<double, Eigen::VectorXd> locate_crossing(const OscillatorModel& model, Rk4Stepper<Eigen::VectorXd>& rk,
                                                   const Section& section, const Eigen::VectorXd& from, double dt) {
    auto advance = [&](double tau) {
        Eigen::VectorXd y = from;
        rk.step(model.field, y, tau);
        return y;
    };
    double lo = 0.0;
    double hi = dt;
    double g_lo = section(from);
    Eigen::VectorXd y_hi = advance(hi);
    double g_hi = section(y_hi);
    int side = 0;
    double tau = hi;
    Eigen::VectorXd y = y_hi;
    for (int it = 0; it < 60; ++it) {
        tau = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        y = advance(tau);
        const double g = section(y);
        if (std::abs(g) < 1e-15 || hi - lo < 1e-15) {
            break;
        }
        if ((g < 0.0) == (g_lo < 0.0)) {
            lo = tau;
            g_lo = g;
            if (side == -1) {
                g_hi /= 2;
            }
            side = -1;
        } else {
            hi = tau;
            g_hi = g;
            if (side == 1) {
                g_lo /= 2;
            }
            side = 1;
        }
    }
    return {tau, y};
}

}  // namespace

LimitCycle find_limit_cycle(const OscillatorModel& model, const Eigen::VectorXd& initial_guess,
                            const CycleOptions& options) {
    if (initial_guess.size() != model.state_dim) {
        throw InvalidArgument("initial guess has wrong dimension");
    }
    if (!(options.dt > 0.0) || options.returns < 1 || options.settle_time < 0.0) {
        throw InvalidArgument("cycle search needs dt > 0, returns >= 1 and settle_time >= 0");
    }
    const double dt = options.dt;
    Rk4Stepper<Eigen::VectorXd> rk(initial_guess);
    Eigen::VectorXd x = initial_guess;

    const auto settle_steps = static_cast<long>(std::llround(options.settle_time / dt));
    for (long i = 0; i < settle_steps; ++i) {
        rk.step(model.field, x, dt);
    }
    if (!x.allFinite()) {
        throw BlowUpError(options.settle_time, "trajectory diverged while settling onto the attractor");
    }

    const Eigen::VectorXd flow = model.eval(x);
    const double speed = flow.norm();
    if (speed < 1e-12) {
        throw ConvergenceError("trajectory settled onto an equilibrium, not a limit cycle");
    }
    const Section section{x, flow / speed};
    const double return_radius = 0.05 * std::max(1.0, x.norm());

    std::vector<double> crossings;
    Eigen::VectorXd anchor = x;
    double t = 0.0;
    double g_prev = 0.0;
    const auto max_steps = static_cast<long>(std::ceil(options.max_search_time / dt));
    for (long i = 0; i < max_steps && static_cast<int>(crossings.size()) < options.returns; ++i) {
        const Eigen::VectorXd from = x;
        rk.step(model.field, x, dt);
        const double g = section(x);
        if (g_prev < 0.0 && g >= 0.0) {
            auto [tau, y] = locate_crossing(model, rk, section, from, dt);
            // the hyperplane may cut the orbit elsewhere; only returns near the anchor count
            if ((y - section.point).norm() <= return_radius) {
                crossings.push_back(t + tau);
                anchor = y;
            }
        }
        g_prev = g;
        t += dt;
        if (!x.allFinite()) {
            throw BlowUpError(t, "trajectory diverged during the period search");
        }
    }
    if (static_cast<int>(crossings.size()) < options.returns) {
        throw ConvergenceError("no periodic return to the Poincare section within " +
                               std::to_string(options.max_search_time) + " time units");
    }

    std::vector<double> intervals(crossings.size());
    std::adjacent_difference(crossings.begin(), crossings.end(), intervals.begin());
    const double period = crossings.back() / static_cast<double>(crossings.size());
    const auto [shortest, longest] = std::minmax_element(intervals.begin(), intervals.end());
    if (*longest - *shortest > 1e-5 * period) {
        throw ConvergenceError("return times to the Poincare section vary (" + std::to_string(*shortest) + " .. " +
                               std::to_string(*longest) +
                               "); the attractor is not a simple limit cycle, use max_lyapunov instead");
    }

    LimitCycle cycle;
    cycle.period = period;
    cycle.anchor = anchor;
    const double steps = std::ceil(period / dt);
    cycle.samples = integrate_fixed_step(model.field, anchor, period, period / steps);
    cycle.closure_error = (cycle.samples.states.rightCols(1) - cycle.samples.states.leftCols(1)).norm();
    if (cycle.closure_error > options.tolerance) {
        throw ConvergenceError("limit cycle does not close: |phi(T) - phi(0)| = " +
                               std::to_string(cycle.closure_error));
    }
    return cycle;
}

}  // namespace swsync
