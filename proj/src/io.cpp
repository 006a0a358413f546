#include "swsync/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "swsync/error.hpp"

namespace swsync {

namespace {

// Round-trip precision without the trailing noise of a fixed format.
struct Num {
    double v;
};

std::ostream& operator<<(std::ostream& out, Num n) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(17) << std::defaultfloat << n.v;
    out.flags(flags);
    out.precision(prec);
    return out;
}

}  // namespace

nlohmann::json to_json(const SpectralMoments& m) {
    nlohmann::json j{{"q1", m.q1}, {"q2", m.q2}, {"q3", m.q3}, {"mean_degree", m.mean_degree}};
    if (m.mean_degree != 0.0) {
        const auto n = m.normalized();
        j["normalized"] = {n[0], n[1], n[2]};
    } else {
        j["normalized"] = nullptr;
    }
    return j;
}

nlohmann::json to_json(const TriangularFit& fit) {
    return {{"x1", fit.x1}, {"x2", fit.x2}, {"x3", fit.x3}, {"height", fit.x3 > fit.x1 ? fit.height() : 0.0}};
}

nlohmann::json to_json(const StabilityInterval& interval) {
    return {{"sigma_max", interval.sigma_max}, {"bracket", {interval.bracket_low, interval.bracket_high}}};
}

nlohmann::json to_json(const SmallWorldParams& p) {
    return {{"nodes", p.node_count}, {"k", p.half_degree}, {"r", p.shortcut_rate}, {"seed", p.seed}};
}

nlohmann::json to_json(const Prediction& p) {
    nlohmann::json params = to_json(p.params);
    params["moment_source"] = p.moment_source;
    params["moments"] = p.moments;
    return {
        {"sigma_max", p.sigma_max},
        {"x1", p.support.x1},
        {"x2", p.support.x2},
        {"x3", p.support.x3},
        {"gamma_max", p.gamma_max},
        {"params", params},
    };
}

void write_spectrum_csv(std::ostream& out, const EigenSpectrum& spectrum) {
    for (double v : spectrum.values) {
        out << Num{v} << '\n';
    }
}

EigenSpectrum read_spectrum_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        try {
            std::size_t used = 0;
            values.push_back(std::stod(line, &used));
        } catch (const std::exception&) {
            throw ParseError(line_no, "expected one eigenvalue per line");
        }
    }
    EigenSpectrum s;
    s.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return s;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "bin_lo,bin_hi,count,density\n";
    for (Eigen::Index i = 0; i < h.counts.size(); ++i) {
        out << Num{h.edges(i)} << ',' << Num{h.edges(i + 1)} << ',' << h.counts(i) << ',' << Num{h.densities(i)}
            << '\n';
    }
}

void write_msf_csv(std::ostream& out, const MSFCurve& curve) {
    out << "sigma,F\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << Num{curve.sigma[i]} << ',' << Num{curve.exponent[i]} << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    if (traj.states.rows() == 3) {
        out << "t,x,y,z\n";
    } else {
        out << 't';
        for (Eigen::Index c = 0; c < traj.states.rows(); ++c) {
            out << ",s" << c;
        }
        out << '\n';
    }
    for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
        out << Num{traj.times(i)};
        for (Eigen::Index c = 0; c < traj.states.rows(); ++c) {
            out << ',' << Num{traj.states(c, i)};
        }
        out << '\n';
    }
}

void write_trace_csv(std::ostream& out, const SimTrace& trace, bool with_nodes) {
    with_nodes = with_nodes && trace.node_first.size() > 0;
    out << "t,err_max,err_rms";
    if (with_nodes) {
        for (Eigen::Index i = 0; i < trace.node_first.cols(); ++i) {
            out << ",x_" << i;
        }
    }
    out << '\n';
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        out << Num{trace.times[s]} << ',' << Num{trace.err_max[s]} << ',' << Num{trace.err_rms[s]};
        if (with_nodes) {
            for (Eigen::Index i = 0; i < trace.node_first.cols(); ++i) {
                out << ',' << Num{trace.node_first(static_cast<Eigen::Index>(s), i)};
            }
        }
        out << '\n';
    }
}

void write_density_csv(std::ostream& out, const TriangularFit& fit, double lo, double hi, int points) {
    out << "lambda,density\n";
    for (int i = 0; i < points; ++i) {
        const double lambda = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
        out << Num{lambda} << ',' << Num{triangle_density(fit, lambda)} << '\n';
    }
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
    out << "gamma,seed,verdict,final_err\n";
    for (const auto& row : report.rows) {
        out << Num{row.gamma} << ',' << row.seed << ',' << (row.synchronized ? "synchronized" : "not_synchronized")
            << ',';
        if (row.diverged) {
            out << "inf";
        } else {
            out << Num{row.final_error};
        }
        out << '\n';
    }
}

}  // namespace swsync
