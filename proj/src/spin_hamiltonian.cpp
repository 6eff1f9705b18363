#include "sicspin/spin_hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sicspin/error.hpp"

namespace sicspin {

namespace {

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

namespace spin1 {

// Basis order is m_s = +1, 0, -1.
Matrix3c sx() {
  const double s = 1.0 / std::numbers::sqrt2;
  Matrix3c m = Matrix3c::Zero();
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = s;
  return m;
}

Matrix3c sy() {
  using namespace std::complex_literals;
  const double s = 1.0 / std::numbers::sqrt2;
  Matrix3c m = Matrix3c::Zero();
  m(0, 1) = -1i * s;
  m(1, 0) = 1i * s;
  m(1, 2) = -1i * s;
  m(2, 1) = 1i * s;
  return m;
}

Matrix3c sz() {
  Matrix3c m = Matrix3c::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

}  // namespace spin1

FieldVector FieldVector::lab_spherical(double gauss, double polar_deg, double azimuth_deg) {
  const double th = deg2rad(polar_deg);
  const double ph = deg2rad(azimuth_deg);
  return lab(gauss * std::sin(th) * std::cos(ph), gauss * std::sin(th) * std::sin(ph), gauss * std::cos(th));
}

void DefectOrientation::validate() const {
  if (!(polar_deg >= 0.0 && polar_deg <= 180.0) || !(azimuth_deg >= 0.0 && azimuth_deg < 360.0)) {
    std::ostringstream os;
    os << "orientation out of range: polar=" << polar_deg << " azimuth=" << azimuth_deg
       << " (need 0<=polar<=180, 0<=azimuth<360)";
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

Eigen::Matrix3d DefectOrientation::rotation() const {
  const Eigen::Matrix3d rz = Eigen::AngleAxisd(deg2rad(azimuth_deg), Vector3::UnitZ()).toRotationMatrix();
  const Eigen::Matrix3d ry = Eigen::AngleAxisd(deg2rad(polar_deg), Vector3::UnitY()).toRotationMatrix();
  return rz * ry;
}

Matrix3c build_hamiltonian(const ZfsParams& zfs, const FieldVector& b) {
  if (b.frame != Frame::Defect) {
    fail(ErrorCode::InvalidArgument, "build_hamiltonian expects a defect-frame field");
  }
  const Matrix3c sx = spin1::sx();
  const Matrix3c sy = spin1::sy();
  const Matrix3c sz = spin1::sz();

  // Sz^2 - S(S+1)/3 and Sx^2 - Sy^2 are written out directly so that the
  // diagonal is exactly (D/3, -2D/3, D/3) with no rounding from products.
  Matrix3c h = Matrix3c::Zero();
  h(0, 0) = zfs.D / 3.0;
  h(1, 1) = -2.0 * zfs.D / 3.0;
  h(2, 2) = zfs.D / 3.0;
  h(0, 2) = zfs.E;
  h(2, 0) = zfs.E;

  const double gamma = zfs.gamma();
  h += gamma * (b.b.x() * sx + b.b.y() * sy + b.b.z() * sz);
  return h;
}

Vector3 lab_to_defect(const Vector3& v, const DefectOrientation& o) {
  o.validate();
  return o.rotation().transpose() * v;
}

FieldVector lab_to_defect_frame(const FieldVector& b, const DefectOrientation& o) {
  if (b.frame != Frame::Lab) {
    fail(ErrorCode::InvalidArgument, "lab_to_defect_frame expects a lab-frame field");
  }
  return {lab_to_defect(b.b, o), Frame::Defect};
}

TransitionSet transition_set(const SpinLevels& levels, const Vector3& polarization) {
  if (!polarization.allFinite() || std::abs(polarization.norm() - 1.0) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "microwave polarization must be a unit vector");
  }
  const Matrix3c drive =
      polarization.x() * spin1::sx() + polarization.y() * spin1::sy() + polarization.z() * spin1::sz();
  const int g = levels.ground_index;
  const Vector3c ground = levels.states.col(g);

  std::array<int, 2> excited{};
  int n = 0;
  for (int k = 0; k < 3; ++k) {
    if (k != g) excited[n++] = k;
  }

  std::array<double, 2> f{};
  std::array<double, 2> amp{};
  for (int i = 0; i < 2; ++i) {
    const Vector3c e = levels.states.col(excited[i]);
    f[i] = levels.energies[excited[i]] - levels.energies[g];
    amp[i] = std::norm(e.dot(drive * ground));  // Eigen's dot conjugates the left operand
  }

  TransitionSet t;
  if (std::abs(f[1] - f[0]) < kDegeneracyMhz) {
    const double shared = 0.5 * (f[0] + f[1]);
    t.f_low = t.f_high = shared;
    t.amp_low = amp[0] + amp[1];
    t.amp_high = 0.0;
    t.degenerate = true;
    return t;
  }
  t.f_low = f[0];
  t.f_high = f[1];
  t.amp_low = amp[0];
  t.amp_high = amp[1];
  return t;
}

ZfsParams resonances_to_zfs(double f_low, double f_high, double g) {
  if (!std::isfinite(f_low) || !std::isfinite(f_high) || !(f_low > 0.0) || f_low > f_high) {
    std::ostringstream os;
    os << "resonances must satisfy 0 < f_low <= f_high (got " << f_low << ", " << f_high << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  return {0.5 * (f_low + f_high), 0.5 * (f_high - f_low), g};
}

TransitionSet transitions_at(const ZfsParams& zfs, const FieldVector& b_lab, const DefectOrientation& o,
                             const Vector3& mw_pol_lab) {
  const FieldVector b = lab_to_defect_frame(b_lab, o);
  const SpinLevels levels = eigensolve(build_hamiltonian(zfs, b));
  return transition_set(levels, lab_to_defect(mw_pol_lab, o));
}

}  // namespace sicspin
