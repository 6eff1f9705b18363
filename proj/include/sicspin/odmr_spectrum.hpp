#pragma once

#include <utility>
#include <vector>

#include "sicspin/spin_hamiltonian.hpp"

namespace sicspin {

enum class Lineshape { Lorentzian, Gaussian };

struct SpectrumConfig {
  double f_min = 1000.0;  // MHz
  double f_max = 1500.0;  // MHz
  int n_points = 1001;
  double linewidth_fwhm = 10.0;  // MHz
  double contrast_scale = 1.0;   // (0, 1]
  Lineshape lineshape = Lineshape::Lorentzian;

  void validate() const;
  std::vector<double> grid() const;
};

struct OdmrSpectrum {
  std::vector<double> freqs;   // MHz
  std::vector<double> signal;  // baseline 1, dips below
};

struct WeightedOrientation {
  DefectOrientation orientation;
  double weight = 1.0;
};

/// One species as an ensemble over its equivalent orientations.
struct DefectPopulation {
  ZfsParams zfs;
  std::vector<WeightedOrientation> orientations;
  double contrast = 0.1;  // dip depth per unit drive weight

  /// Weights non-negative and summing to 1 within 1e-9; at least one orientation.
  void validate() const;

  static DefectPopulation c_axis(const ZfsParams& zfs, double contrast);
  /// Three basal orientations at azimuths 0, 120 and 240 degrees, equal weights.
  static DefectPopulation basal(const ZfsParams& zfs, double contrast);
};

/// Unit-peak line profile at detuning `delta` (MHz).
double line_profile(double delta, double fwhm, Lineshape shape);

/// Transitions of every orientation in `pop` at the lab field, same order as pop.orientations.
std::vector<TransitionSet> population_transitions(const DefectPopulation& pop, const FieldVector& b_lab,
                                                  const Vector3& mw_pol_lab);

/// signal(f) = 1 - sum_k c_k A_k L(f - f_k) over all orientations and both branches.
OdmrSpectrum simulate_spectrum(const DefectPopulation& pop, const FieldVector& b_lab, const Vector3& mw_pol_lab,
                               const SpectrumConfig& cfg);

struct SweepPoint {
  double field = 0.0;  // Gauss
  std::vector<TransitionSet> transitions;
  OdmrSpectrum spectrum;
};

/// One spectrum per field magnitude along the lab-frame unit `direction`.
/// Magnitudes must be non-negative and ascending.
std::vector<SweepPoint> field_sweep(const DefectPopulation& pop, const Vector3& direction,
                                    const std::vector<double>& magnitudes, const Vector3& mw_pol_lab,
                                    const SpectrumConfig& cfg);

}  // namespace sicspin
