// Closed-form 3x3 Hermitian eigensolver.
//
// Eigenvalues come from the trigonometric solution of the characteristic
// cubic of the shifted, scaled matrix B = (H - q I) / p, whose roots are
// 2 cos(phi + 2 pi k / 3) with cos(3 phi) = det(B) / 2. Eigenvectors of the
// two extreme roots are null vectors of (H - lambda I) from row cross
// products; the middle one completes the unitary basis. A couple of Jacobi
// sweeps on V^H H V then clean up rounding. Near a double root the cubic
// is ill-conditioned and the whole problem goes to Jacobi instead.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sicspin/error.hpp"
#include "sicspin/spin_hamiltonian.hpp"

namespace sicspin {

namespace {

constexpr double kHermitianTol = 1e-9;
constexpr double kDiscriminantTol = 1e-12;
constexpr int kMaxSweeps = 60;

using cd = std::complex<double>;

// One two-sided rotation zeroing a(p, q). The 2x2 block factors as
// Phi R Phi^H with Phi = diag(1, conj(e)) and R real symmetric.
void rotate(Matrix3c& a, Matrix3c& v, int p, int q) {
  const cd apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cd e = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  Matrix3c j = Matrix3c::Identity();
  j(p, p) = c;
  j(p, q) = s;
  j(q, p) = -s * std::conj(e);
  j(q, q) = c * std::conj(e);

  a = (j.adjoint() * a * j).eval();
  // Keep the diagonal exactly real and the matrix exactly Hermitian.
  for (int i = 0; i < 3; ++i) a(i, i) = a(i, i).real();
  a(q, p) = std::conj(a(p, q));
  v = (v * j).eval();
}

double off_diagonal(const Matrix3c& a) { return std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2)); }

void jacobi_sweeps(Matrix3c& a, Matrix3c& v) {
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal(a) <= 1e-18 * scale) return;
    rotate(a, v, 0, 1);
    rotate(a, v, 0, 2);
    rotate(a, v, 1, 2);
  }
}

// Plain a x b with no conjugation (Eigen's cross conjugates complex inputs).
Vector3c bilinear_cross(const Vector3c& a, const Vector3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// Bilinear null vector of m: each row dotted (without conjugation) with the
// result vanishes. Uses the best-conditioned pair of rows.
Vector3c null_vector(const Matrix3c& m) {
  const Vector3c r0 = m.row(0).transpose();
  const Vector3c r1 = m.row(1).transpose();
  const Vector3c r2 = m.row(2).transpose();
  const std::array<Vector3c, 3> candidates{bilinear_cross(r0, r1), bilinear_cross(r0, r2), bilinear_cross(r1, r2)};
  const auto best = std::max_element(candidates.begin(), candidates.end(),
                                     [](const Vector3c& x, const Vector3c& y) { return x.norm() < y.norm(); });
  return *best;
}

// Rotate each column so its largest component is real and positive; makes
// the output independent of the path taken.
void fix_phases(Matrix3c& v) {
  for (int k = 0; k < 3; ++k) {
    double biggest = 0.0;
    for (int i = 0; i < 3; ++i) biggest = std::max(biggest, std::abs(v(i, k)));
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v(i, k)) >= biggest - 1e-12) {
        const cd phase = std::conj(v(i, k)) / std::abs(v(i, k));
        v.col(k) *= phase;
        v(i, k) = std::abs(v(i, k));
        break;
      }
    }
  }
}

SpinLevels finish(Matrix3c a, Matrix3c v) {
  jacobi_sweeps(a, v);

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  SpinLevels out;
  for (int k = 0; k < 3; ++k) {
    out.energies[k] = a(order[k], order[k]).real();
    out.states.col(k) = v.col(order[k]);
  }
  for (int k = 0; k < 3; ++k) out.states.col(k).normalize();
  fix_phases(out.states);

  // Ground level: largest m_s = 0 weight, ties toward the lower energy.
  int ground = 0;
  double best = std::norm(out.states(1, 0));
  for (int k = 1; k < 3; ++k) {
    const double w = std::norm(out.states(1, k));
    if (w > best + 1e-9) {
      best = w;
      ground = k;
    }
  }
  out.ground_index = ground;
  return out;
}

}  // namespace

SpinLevels eigensolve(const Matrix3c& h) {
  if (!h.allFinite()) fail(ErrorCode::NonFinite, "eigensolve: matrix has non-finite entries");
  const double scale = h.cwiseAbs().maxCoeff();
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    std::ostringstream os;
    os << "eigensolve: matrix is not Hermitian (max |H - H^H| = " << asym << ", max |H| = " << scale << ")";
    fail(ErrorCode::NotHermitian, os.str());
  }
  const Matrix3c herm = 0.5 * (h + h.adjoint());

  const double q = herm.trace().real() / 3.0;
  const Matrix3c k = herm - q * Matrix3c::Identity();
  const double p = std::sqrt(k.squaredNorm() / 6.0);
  if (p == 0.0) return finish(herm, Matrix3c::Identity());

  const Matrix3c b = k / p;
  const double r = std::clamp(0.5 * b.determinant().real(), -1.0, 1.0);
  if (1.0 - r * r < kDiscriminantTol) return finish(herm, Matrix3c::Identity());

  const double phi = std::acos(r) / 3.0;
  const double top = q + 2.0 * p * std::cos(phi);
  const double bottom = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);

  Vector3c v_top = null_vector(herm - top * Matrix3c::Identity());
  Vector3c v_bottom = null_vector(herm - bottom * Matrix3c::Identity());
  if (v_top.norm() == 0.0 || v_bottom.norm() == 0.0) return finish(herm, Matrix3c::Identity());
  v_top.normalize();
  v_bottom -= v_top.dot(v_bottom) * v_top;
  if (v_bottom.norm() < 1e-8) return finish(herm, Matrix3c::Identity());
  v_bottom.normalize();
  const Vector3c v_mid = bilinear_cross(v_top, v_bottom).conjugate();

  Matrix3c v;
  v.col(0) = v_bottom;
  v.col(1) = v_mid;
  v.col(2) = v_top;
  return finish(v.adjoint() * herm * v, v);
}

}  // namespace sicspin
