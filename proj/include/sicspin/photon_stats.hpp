#pragma once

namespace sicspin {

/// Antibunching model parameters. Times in ns.
struct G2Params {
  double tau0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double t1 = 1.0;
  double t2 = 1.0;
};

struct SaturationParams {
  double i_sat = 1.0;  // kcps
  double p_sat = 1.0;  // mW
};

/// g2(tau) = 1 - (1 + a) exp(-|tau - tau0| / t1) + b exp(-|tau - tau0| / t2)
double g2_model(double tau, const G2Params& p);

/// g2(0) below one half certifies a single emitter; 0.5 itself does not.
bool is_single_emitter(double g2_at_zero);

inline constexpr double kSingleEmitterThreshold = 0.5;

/// I(P) = I_sat P / (P + P_sat)
double saturation_model(double power, const SaturationParams& p);

}  // namespace sicspin
