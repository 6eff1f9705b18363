#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "sicspin/odmr_spectrum.hpp"
#include "sicspin/trace.hpp"

namespace sicspin {

/// Stretched-exponential envelope exp[-(t / timescale)^stretch], t in microseconds.
struct DecayEnvelope {
  double timescale = std::numeric_limits<double>::infinity();
  double stretch = 1.0;

  static DecayEnvelope none() { return {}; }
  double operator()(double t) const;
  void validate() const;
};

struct RabiBeatParams {
  double a = 0.0;
  double b = 1.0;
  DecayEnvelope env;
  std::array<double, 3> omegas{1.0, 1.0, 1.0};  // MHz
  std::array<double, 3> phases{0.0, 0.0, 0.0};  // rad
};

/// a + b exp[-(t/tau)^n] cos(2 pi W1 t + p1) cos(2 pi W2 t + p2) cos(2 pi W3 t + p3)
double rabi_beating_model(double t, const RabiBeatParams& p);

enum class Branch { Low, High };

struct EnsembleRabi {
  Trace trace;                      // x in us
  std::vector<double> rabi_freqs;   // MHz, one per orientation
  bool beating_collapsed = false;   // at least two weighted orientations share a Rabi frequency
};

/// sum_o w_o cos(2 pi W_o t) env(t), W_o = drive_amplitude * sqrt(amp_o) on the chosen branch.
/// Orientations with W_o = 0 contribute a constant w_o.
EnsembleRabi simulate_ensemble_rabi(const DefectPopulation& pop, const FieldVector& b_lab, const Vector3& mw_pol_lab,
                                    double drive_amplitude, Branch branch, std::span<const double> times,
                                    const DecayEnvelope& env);

/// baseline + amplitude exp[-(t/T2*)^n] prod_i cos(2 pi f_i t + phi_i)
double ramsey_model(double t, double baseline, double amplitude, const DecayEnvelope& env,
                    std::span<const double> mod_freqs, std::span<const double> mod_phases);

/// baseline + amplitude exp[-(t/T2)^n]
double hahn_echo_model(double t, double baseline, double amplitude, const DecayEnvelope& env);

/// baseline + amplitude exp(-t/T1)
double t1_model(double t, double baseline, double amplitude, double t1);

}  // namespace sicspin
