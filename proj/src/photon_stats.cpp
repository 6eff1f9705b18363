#include "sicspin/photon_stats.hpp"

#include <cmath>

namespace sicspin {

double g2_model(double tau, const G2Params& p) {
  const double d = std::abs(tau - p.tau0);
  const double e1 = std::exp(-d / p.t1);
  // Grouped so that g2(tau0) evaluates to exactly b - a.
  return (1.0 - e1) - p.a * e1 + p.b * std::exp(-d / p.t2);
}

bool is_single_emitter(double g2_at_zero) { return g2_at_zero < kSingleEmitterThreshold; }

double saturation_model(double power, const SaturationParams& p) { return p.i_sat * power / (power + p.p_sat); }

}  // namespace sicspin
