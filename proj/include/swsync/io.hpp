#pragma once

#include <iosfwd>

#include <json.hpp>

#include "swsync/msf.hpp"
#include "swsync/netsim.hpp"
#include "swsync/oscillator.hpp"
#include "swsync/predictor.hpp"
#include "swsync/spectral.hpp"
#include "swsync/triangular_fit.hpp"

namespace swsync {

// JSON documents
nlohmann::json to_json(const SpectralMoments& m);
nlohmann::json to_json(const TriangularFit& fit);
nlohmann::json to_json(const StabilityInterval& interval);
nlohmann::json to_json(const SmallWorldParams& params);
nlohmann::json to_json(const Prediction& p);

// CSV tables, all with a header row except the bare spectrum listing
void write_spectrum_csv(std::ostream& out, const EigenSpectrum& spectrum);
EigenSpectrum read_spectrum_csv(std::istream& in);
void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_msf_csv(std::ostream& out, const MSFCurve& curve);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trace_csv(std::ostream& out, const SimTrace& trace, bool with_nodes);
void write_density_csv(std::ostream& out, const TriangularFit& fit, double lo, double hi, int points);
void write_validation_csv(std::ostream& out, const ValidationReport& report);

}  // namespace swsync
