#include "sicspin/odmr_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sicspin/error.hpp"

namespace sicspin {

void SpectrumConfig::validate() const {
  if (!(f_min < f_max) || !std::isfinite(f_min) || !std::isfinite(f_max)) {
    fail(ErrorCode::InvalidArgument, "spectrum config: need f_min < f_max");
  }
  if (n_points < 2) fail(ErrorCode::InvalidArgument, "spectrum config: need n_points >= 2");
  if (!(linewidth_fwhm > 0.0)) fail(ErrorCode::InvalidArgument, "spectrum config: linewidth must be positive");
  if (!(contrast_scale > 0.0 && contrast_scale <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "spectrum config: contrast_scale must lie in (0, 1]");
  }
}

std::vector<double> SpectrumConfig::grid() const {
  std::vector<double> f(static_cast<std::size_t>(n_points));
  const double step = (f_max - f_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) f[i] = f_min + step * i;
  f.back() = f_max;
  return f;
}

void DefectPopulation::validate() const {
  if (orientations.empty()) fail(ErrorCode::InvalidArgument, "population has no orientations");
  double total = 0.0;
  for (const auto& wo : orientations) {
    wo.orientation.validate();
    if (!(wo.weight >= 0.0)) fail(ErrorCode::InvalidArgument, "orientation weights must be non-negative");
    total += wo.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "orientation weights must sum to 1 (got " << total << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (!(contrast >= 0.0)) fail(ErrorCode::InvalidArgument, "contrast must be non-negative");
}

DefectPopulation DefectPopulation::c_axis(const ZfsParams& zfs, double contrast) {
  return {zfs, {{DefectOrientation::c_axis(), 1.0}}, contrast};
}

DefectPopulation DefectPopulation::basal(const ZfsParams& zfs, double contrast) {
  DefectPopulation pop{zfs, {}, contrast};
  for (int i = 0; i < 3; ++i) pop.orientations.push_back({DefectOrientation::basal(i), 1.0 / 3.0});
  return pop;
}

double line_profile(double delta, double fwhm, Lineshape shape) {
  const double x = 2.0 * delta / fwhm;
  if (shape == Lineshape::Gaussian) return std::exp(-std::numbers::ln2 * x * x);
  return 1.0 / (1.0 + x * x);
}

std::vector<TransitionSet> population_transitions(const DefectPopulation& pop, const FieldVector& b_lab,
                                                  const Vector3& mw_pol_lab) {
  pop.validate();
  std::vector<TransitionSet> out;
  out.reserve(pop.orientations.size());
  for (const auto& wo : pop.orientations) {
    out.push_back(transitions_at(pop.zfs, b_lab, wo.orientation, mw_pol_lab));
  }
  return out;
}

namespace {

OdmrSpectrum render(const DefectPopulation& pop, const std::vector<TransitionSet>& transitions,
                    const SpectrumConfig& cfg) {
  OdmrSpectrum s;
  s.freqs = cfg.grid();
  s.signal.assign(s.freqs.size(), 1.0);
  const double depth = pop.contrast * cfg.contrast_scale;
  for (std::size_t o = 0; o < transitions.size(); ++o) {
    const TransitionSet& t = transitions[o];
    const double w = pop.orientations[o].weight * depth;
    for (std::size_t i = 0; i < s.freqs.size(); ++i) {
      const double f = s.freqs[i];
      double dip = t.amp_low * line_profile(f - t.f_low, cfg.linewidth_fwhm, cfg.lineshape);
      if (!t.degenerate) dip += t.amp_high * line_profile(f - t.f_high, cfg.linewidth_fwhm, cfg.lineshape);
      s.signal[i] -= w * dip;
    }
  }
  return s;
}

}  // namespace

OdmrSpectrum simulate_spectrum(const DefectPopulation& pop, const FieldVector& b_lab, const Vector3& mw_pol_lab,
                               const SpectrumConfig& cfg) {
  cfg.validate();
  return render(pop, population_transitions(pop, b_lab, mw_pol_lab), cfg);
}

std::vector<SweepPoint> field_sweep(const DefectPopulation& pop, const Vector3& direction,
                                    const std::vector<double>& magnitudes, const Vector3& mw_pol_lab,
                                    const SpectrumConfig& cfg) {
  cfg.validate();
  if (!direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "field sweep direction must be a unit vector");
  }
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] >= 0.0) || (i > 0 && magnitudes[i] < magnitudes[i - 1])) {
      fail(ErrorCode::InvalidArgument, "field magnitudes must be non-negative and ascending");
    }
  }
  std::vector<SweepPoint> out;
  out.reserve(magnitudes.size());
  for (double mag : magnitudes) {
    const Vector3 b = mag * direction;
    const FieldVector b_lab = FieldVector::lab(b.x(), b.y(), b.z());
    SweepPoint pt;
    pt.field = mag;
    pt.transitions = population_transitions(pop, b_lab, mw_pol_lab);
    pt.spectrum = render(pop, pt.transitions, cfg);
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace sicspin
