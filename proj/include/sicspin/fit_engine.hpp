#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sicspin/trace.hpp"

namespace sicspin {

using ModelFn = std::function<double(double x, std::span<const double> params)>;

/// A curve model over named parameters. `eval` must be pure.
struct Model {
  std::string key;
  std::vector<std::string> param_names;
  std::vector<double> defaults;  // starting point used when a fit omits a parameter
  ModelFn eval;
  std::string x_unit = "unitless";
  bool multi_modal = false;
  // Optional: puts interchangeable components (e.g. cosine factors) in a fixed
  // order so equivalent optima report the same parameter vector.
  std::function<void(std::span<double>)> canonicalize;

  std::size_t size() const { return param_names.size(); }
  /// Index of `name`; throws NotFound.
  std::size_t index_of(std::string_view name) const;
};

struct Bound {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool fixed() const { return lo == hi; }
  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

using NamedValues = std::map<std::string, double, std::less<>>;
using NamedBounds = std::map<std::string, Bound, std::less<>>;

struct FitOptions {
  int max_iterations = 200;
  double initial_lambda = 1e-3;
  double cost_rtol = 1e-10;
  double step_tol = 1e-12;
  int multi_start = 1;            // replicas; 1 = plain fit
  double multi_start_spread = 0.2;  // relative perturbation of replicas 1..N-1
  std::uint64_t seed = 0;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> uncertainties;  // 1 sigma; 0 for fixed parameters
  bool uncertainties_available = true;
  double cost = 0.0;                  // weighted sum of squared residuals
  double chi2_reduced = 0.0;
  int n_iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;

  double value(std::string_view name) const;
  double sigma(std::string_view name) const;
};

/// Weighted Levenberg-Marquardt. Parameters absent from `init` start at the
/// model defaults; a bound with lo == hi fixes the parameter.
FitResult fit(const Trace& trace, const Model& model, const NamedValues& init = {}, const NamedBounds& bounds = {},
              const FitOptions& options = {});

/// Forward-difference Jacobian, rows = x points, columns = parameters.
/// Step h_i = sqrt(eps) * max(1, |p_i|).
Eigen::MatrixXd jacobian(const Model& model, std::span<const double> params, std::span<const double> x);

enum class NoiseKind { None, Gaussian, Multiplicative };

struct Noise {
  NoiseKind kind = NoiseKind::None;
  double sigma = 0.0;

  static Noise none() { return {}; }
  static Noise gaussian(double s) { return {NoiseKind::Gaussian, s}; }
  static Noise multiplicative(double s) { return {NoiseKind::Multiplicative, s}; }
};

/// Model values on `x`, optionally with additive or relative Gaussian noise.
/// Deterministic for a given seed.
Trace synthesize(const Model& model, std::span<const double> params, std::span<const double> x, Noise noise,
                 std::uint64_t seed, const std::string& y_unit = "arb");

/// Copy of `trace` with noise applied to y. Deterministic for a given seed.
Trace add_noise(const Trace& trace, Noise noise, std::uint64_t seed);

// Registry of the bundled models: g2, saturation, ramsey, echo, t1, rabi-beating.
const Model& registered_model(std::string_view key);
std::vector<std::string> model_keys();

/// Ramsey model with `n_mod` cosine modulation factors (params f1, phi1, ...).
Model make_ramsey_model(int n_mod);

}  // namespace sicspin
