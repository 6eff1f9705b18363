#include "sicspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sicspin/error.hpp"

namespace sicspin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double DecayEnvelope::operator()(double t) const {
  if (std::isinf(timescale)) return 1.0;
  return std::exp(-std::pow(std::abs(t) / timescale, stretch));
}

void DecayEnvelope::validate() const {
  if (!(timescale > 0.0)) fail(ErrorCode::InvalidArgument, "decay timescale must be positive");
  if (!(stretch > 0.0)) fail(ErrorCode::InvalidArgument, "stretch exponent must be positive");
}

double rabi_beating_model(double t, const RabiBeatParams& p) {
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) prod *= std::cos(kTwoPi * p.omegas[i] * t + p.phases[i]);
  return p.a + p.b * p.env(t) * prod;
}

EnsembleRabi simulate_ensemble_rabi(const DefectPopulation& pop, const FieldVector& b_lab, const Vector3& mw_pol_lab,
                                    double drive_amplitude, Branch branch, std::span<const double> times,
                                    const DecayEnvelope& env) {
  env.validate();
  if (!(drive_amplitude >= 0.0)) fail(ErrorCode::InvalidArgument, "drive amplitude must be non-negative");
  const std::vector<TransitionSet> transitions = population_transitions(pop, b_lab, mw_pol_lab);

  EnsembleRabi out;
  for (const auto& t : transitions) {
    // A degenerate pair carries its summed weight on the low slot.
    const double amp = (branch == Branch::Low || t.degenerate) ? t.amp_low : t.amp_high;
    out.rabi_freqs.push_back(drive_amplitude * std::sqrt(amp));
  }
  for (std::size_t i = 0; i < out.rabi_freqs.size(); ++i) {
    for (std::size_t j = i + 1; j < out.rabi_freqs.size(); ++j) {
      if (pop.orientations[i].weight > 0.0 && pop.orientations[j].weight > 0.0 &&
          std::abs(out.rabi_freqs[i] - out.rabi_freqs[j]) <=
              1e-9 * std::max({1.0, out.rabi_freqs[i], out.rabi_freqs[j]})) {
        out.beating_collapsed = true;
      }
    }
  }

  std::vector<double> y(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double damping = env(t);
    double s = 0.0;
    for (std::size_t o = 0; o < out.rabi_freqs.size(); ++o) {
      // An orientation the drive does not couple never leaves its initial state.
      const double w = out.rabi_freqs[o];
      s += pop.orientations[o].weight * (w > 0.0 ? std::cos(kTwoPi * w * t) * damping : 1.0);
    }
    y[k] = s;
  }
  out.trace = Trace(std::vector<double>(times.begin(), times.end()), std::move(y), {}, Units{"us", "arb"});
  return out;
}

double ramsey_model(double t, double baseline, double amplitude, const DecayEnvelope& env,
                    std::span<const double> mod_freqs, std::span<const double> mod_phases) {
  if (mod_freqs.size() != mod_phases.size()) {
    fail(ErrorCode::InvalidArgument, "ramsey_model: one phase per modulation frequency");
  }
  double prod = 1.0;
  for (std::size_t i = 0; i < mod_freqs.size(); ++i) prod *= std::cos(kTwoPi * mod_freqs[i] * t + mod_phases[i]);
  return baseline + amplitude * env(t) * prod;
}

double hahn_echo_model(double t, double baseline, double amplitude, const DecayEnvelope& env) {
  return baseline + amplitude * env(t);
}

double t1_model(double t, double baseline, double amplitude, double t1) {
  return baseline + amplitude * std::exp(-t / t1);
}

}  // namespace sicspin
