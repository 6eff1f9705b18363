#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace sicspin {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using Vector3 = Eigen::Vector3d;

// Bohr magneton over Planck constant, MHz per Gauss.
inline constexpr double kBohrMhzPerGauss = 1.3996245;
inline constexpr double kDefaultG = 2.0028;

// Polar angle of an ideal tetrahedral bond, arccos(-1/3), in degrees.
inline constexpr double kBasalPolarDeg = 109.47122063449069;

/// Zero-field splitting of one species. D and E in MHz; E is kept non-negative.
struct ZfsParams {
  double D = 0.0;
  double E = 0.0;
  double g = kDefaultG;

  /// Electron gyromagnetic ratio g*muB/h in MHz/G.
  double gamma() const { return g * kBohrMhzPerGauss; }
};

enum class Frame { Lab, Defect };

/// Magnetic flux density in Gauss, tagged with the frame it is expressed in.
struct FieldVector {
  Vector3 b = Vector3::Zero();
  Frame frame = Frame::Lab;

  static FieldVector lab(double bx, double by, double bz) { return {Vector3(bx, by, bz), Frame::Lab}; }
  static FieldVector defect(double bx, double by, double bz) { return {Vector3(bx, by, bz), Frame::Defect}; }
  /// Lab-frame field of magnitude `gauss` along the direction (polar, azimuth) in degrees.
  static FieldVector lab_spherical(double gauss, double polar_deg, double azimuth_deg);
};

/// Direction of a defect quantization axis relative to the lab frame (lab z = crystal c-axis).
struct DefectOrientation {
  double polar_deg = 0.0;
  double azimuth_deg = 0.0;

  static DefectOrientation c_axis() { return {0.0, 0.0}; }
  static DefectOrientation basal(int index) { return {kBasalPolarDeg, 120.0 * index}; }

  /// Throws InvalidArgument unless 0 <= polar <= 180 and 0 <= azimuth < 360.
  void validate() const;
  /// Rotation taking lab z onto the defect axis: Rz(azimuth) * Ry(polar).
  Eigen::Matrix3d rotation() const;
};

/// Eigen-decomposition of the spin Hamiltonian in the m_s = {+1, 0, -1} basis.
struct SpinLevels {
  std::array<double, 3> energies{};  // ascending, MHz
  Matrix3c states = Matrix3c::Identity();  // column k is the eigenvector of energies[k]
  int ground_index = 0;

  Vector3c state(int k) const { return states.col(k); }
};

/// Ground-to-excited transitions ordered by frequency.
struct TransitionSet {
  double f_low = 0.0;
  double f_high = 0.0;
  double amp_low = 0.0;
  double amp_high = 0.0;
  // Excited levels closer than kDegeneracyMhz: both frequencies equal the shared
  // value, amp_low holds the summed weight and amp_high is zero.
  bool degenerate = false;
};

inline constexpr double kDegeneracyMhz = 1e-6;

namespace spin1 {
Matrix3c sx();
Matrix3c sy();
Matrix3c sz();
}  // namespace spin1

/// D(Sz^2 - 2/3) + E(Sx^2 - Sy^2) + gamma * (B . S). The field must be in the defect frame.
Matrix3c build_hamiltonian(const ZfsParams& zfs, const FieldVector& b);

/// Expresses a lab-frame field in the defect frame of `o`.
FieldVector lab_to_defect_frame(const FieldVector& b, const DefectOrientation& o);

/// Same rotation for a plain vector (microwave polarization, directions).
Vector3 lab_to_defect(const Vector3& v, const DefectOrientation& o);

/// Hermitian 3x3 eigensolver. Throws NotHermitian when |H - H^H| exceeds 1e-9 of |H|.
SpinLevels eigensolve(const Matrix3c& h);

/// Transition frequencies from the ground level and |<e| p.S |g>|^2 drive weights.
/// `polarization` is a real unit vector in the defect frame.
TransitionSet transition_set(const SpinLevels& levels, const Vector3& polarization);

/// Inverse of the zero-field problem: D = mean, E = half splitting.
ZfsParams resonances_to_zfs(double f_low, double f_high, double g = kDefaultG);

/// Convenience: diagonalize at a lab field for one orientation and return the transitions.
TransitionSet transitions_at(const ZfsParams& zfs, const FieldVector& b_lab, const DefectOrientation& o,
                             const Vector3& mw_pol_lab);

}  // namespace sicspin
