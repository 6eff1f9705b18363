#include "sicspin/fit_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sicspin/error.hpp"

namespace sicspin {

std::size_t Model::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < param_names.size(); ++i) {
    if (param_names[i] == name) return i;
  }
  fail(ErrorCode::NotFound, "model '" + key + "' has no parameter '" + std::string(name) + "'");
}

double FitResult::value(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return params[i];
  }
  fail(ErrorCode::NotFound, "fit result has no parameter '" + std::string(name) + "'");
}

double FitResult::sigma(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return uncertainties[i];
  }
  fail(ErrorCode::NotFound, "fit result has no parameter '" + std::string(name) + "'");
}

Eigen::MatrixXd jacobian(const Model& model, std::span<const double> params, std::span<const double> x) {
  if (params.size() != model.size()) fail(ErrorCode::InvalidArgument, "jacobian: parameter count mismatch");
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(params.size()));

  std::vector<double> base(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    base[i] = model.eval(x[i], params);
    if (!std::isfinite(base[i])) {
      fail(ErrorCode::NonFinite, "jacobian: model '" + model.key + "' is not finite at the base point");
    }
  }
  std::vector<double> probe(params.begin(), params.end());
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double h = root_eps * std::max(1.0, std::abs(params[j]));
    probe[j] = params[j] + h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = model.eval(x[i], probe);
      if (!std::isfinite(v)) {
        fail(ErrorCode::NonFinite, "jacobian: model '" + model.key + "' is not finite when probing parameter '" +
                                       model.param_names[j] + "'");
      }
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (v - base[i]) / h;
    }
    probe[j] = params[j];
  }
  return jac;
}

namespace {

// The problem restricted to free parameters.
class Problem {
 public:
  Problem(const Trace& trace, const Model& model, std::vector<Bound> bounds)
      : trace_(trace), model_(model), bounds_(std::move(bounds)) {
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      if (!bounds_[i].fixed()) free_.push_back(i);
    }
    sqrt_w_.resize(static_cast<Eigen::Index>(trace.size()));
    for (std::size_t i = 0; i < trace.size(); ++i) {
      sqrt_w_(static_cast<Eigen::Index>(i)) = trace.has_errors() ? 1.0 / trace.y_err()[i] : 1.0;
    }
  }

  std::size_t n_free() const { return free_.size(); }
  const std::vector<std::size_t>& free_indices() const { return free_; }

  Eigen::VectorXd free_values(const std::vector<double>& full) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(free_.size()));
    for (std::size_t k = 0; k < free_.size(); ++k) v(static_cast<Eigen::Index>(k)) = full[free_[k]];
    return v;
  }

  // p + step, clamped into the bounds.
  std::vector<double> stepped(const std::vector<double>& full, const Eigen::VectorXd& step) const {
    std::vector<double> out = full;
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const std::size_t i = free_[k];
      out[i] = bounds_[i].clamp(full[i] + step(static_cast<Eigen::Index>(k)));
    }
    return out;
  }

  // Weighted residuals sqrt(w) (y - f); non-finite model values propagate as NaN.
  Eigen::VectorXd residuals(const std::vector<double>& full) const {
    Eigen::VectorXd r(static_cast<Eigen::Index>(trace_.size()));
    for (std::size_t i = 0; i < trace_.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      r(ii) = sqrt_w_(ii) * (trace_.y()[i] - model_.eval(trace_.x()[i], full));
    }
    return r;
  }

  Eigen::MatrixXd weighted_jacobian(const std::vector<double>& full) const {
    const Eigen::MatrixXd j = jacobian(model_, full, trace_.x());
    Eigen::MatrixXd out(j.rows(), static_cast<Eigen::Index>(free_.size()));
    for (std::size_t k = 0; k < free_.size(); ++k) {
      out.col(static_cast<Eigen::Index>(k)) =
          sqrt_w_.cwiseProduct(j.col(static_cast<Eigen::Index>(free_[k])));
    }
    return out;
  }

 private:
  const Trace& trace_;
  const Model& model_;
  std::vector<Bound> bounds_;
  std::vector<std::size_t> free_;
  Eigen::VectorXd sqrt_w_;
};

double cost_of(const Eigen::VectorXd& r) {
  const double c = r.squaredNorm();
  return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
}

struct RunOutcome {
  std::vector<double> params;
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
};

RunOutcome levenberg_marquardt(const Problem& prob, std::vector<double> p, const FitOptions& opt) {
  constexpr double kLambdaMax = 1e20;
  RunOutcome out;
  double cost = cost_of(prob.residuals(p));
  double lambda = opt.initial_lambda;

  if (prob.n_free() == 0 || cost == 0.0) {
    return {std::move(p), cost, 0, true};
  }

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    out.iterations = iter;
    const Eigen::VectorXd r = prob.residuals(p);
    const Eigen::MatrixXd j = prob.weighted_jacobian(p);
    const Eigen::MatrixXd a = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    const double p_norm = prob.free_values(p).norm();

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd m = a;
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        m(k, k) += lambda * (a(k, k) > 0.0 ? a(k, k) : 1.0);
      }
      const Eigen::VectorXd step = m.ldlt().solve(g);
      const std::vector<double> trial = prob.stepped(p, step);
      const Eigen::VectorXd actual = prob.free_values(trial) - prob.free_values(p);
      const double step_norm = actual.norm();
      const double trial_cost = step.allFinite() ? cost_of(prob.residuals(trial)) : std::numeric_limits<double>::infinity();

      if (step.allFinite() && trial_cost < cost) {
        const double drop = cost - trial_cost;
        p = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        if (cost == 0.0 || drop <= opt.cost_rtol * (cost + drop) || step_norm <= opt.step_tol * (p_norm + opt.step_tol)) {
          return {std::move(p), cost, iter, true};
        }
      } else {
        if (step.allFinite() && step_norm <= opt.step_tol * (p_norm + opt.step_tol)) {
          return {std::move(p), cost, iter, true};
        }
        lambda *= 10.0;
        if (lambda > kLambdaMax) return {std::move(p), cost, iter, false};
      }
    }
  }
  out.params = std::move(p);
  out.cost = cost;
  out.converged = false;
  return out;
}

// Parameter covariance from (J^T W J)^-1 scaled by reduced chi-square.
void fill_uncertainties(const Problem& prob, FitResult& res) {
  res.uncertainties.assign(res.params.size(), 0.0);
  const std::size_t k = prob.n_free();
  if (k == 0) return;
  const Eigen::MatrixXd j = prob.weighted_jacobian(res.params);
  const Eigen::MatrixXd a = j.transpose() * j;

  const Eigen::VectorXd d = a.diagonal();
  bool singular = (d.array() <= 0.0).any() || !a.allFinite();
  if (!singular) {
    const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd corr = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);
    singular = es.eigenvalues().minCoeff() <= 1e-14 * es.eigenvalues().maxCoeff();
  }
  if (singular) {
    res.uncertainties_available = false;
    std::fill(res.uncertainties.begin(), res.uncertainties.end(), std::numeric_limits<double>::quiet_NaN());
    res.warnings.push_back("normal matrix is singular at the solution; uncertainties unavailable");
    return;
  }
  const Eigen::MatrixXd cov = a.inverse() * res.chi2_reduced;
  for (std::size_t q = 0; q < k; ++q) {
    res.uncertainties[prob.free_indices()[q]] = std::sqrt(std::max(0.0, cov(static_cast<Eigen::Index>(q),
                                                                           static_cast<Eigen::Index>(q))));
  }
}

}  // namespace

FitResult fit(const Trace& trace, const Model& model, const NamedValues& init, const NamedBounds& bounds,
              const FitOptions& options) {
  std::vector<double> start = model.defaults;
  start.resize(model.size(), 0.0);
  std::vector<Bound> b(model.size());
  for (const auto& [name, bound] : bounds) {
    if (!(bound.lo <= bound.hi)) fail(ErrorCode::InvalidArgument, "bound for '" + name + "' has lo > hi");
    const std::size_t i = model.index_of(name);
    b[i] = bound;
    if (bound.fixed()) start[i] = bound.lo;  // an explicit init below must then agree
  }
  for (const auto& [name, v] : init) start[model.index_of(name)] = v;
  for (std::size_t i = 0; i < start.size(); ++i) {
    if (!std::isfinite(start[i])) fail(ErrorCode::InvalidArgument, "initial '" + model.param_names[i] + "' is not finite");
    if (start[i] < b[i].lo || start[i] > b[i].hi) {
      std::ostringstream os;
      os << "initial '" << model.param_names[i] << "' = " << start[i] << " lies outside [" << b[i].lo << ", "
         << b[i].hi << "]";
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  if (options.max_iterations < 1) fail(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
  if (options.multi_start < 1) fail(ErrorCode::InvalidArgument, "multi_start must be at least 1");

  const Problem prob(trace, model, b);
  if (trace.size() < prob.n_free() + 1) {
    fail(ErrorCode::InvalidArgument, "trace has " + std::to_string(trace.size()) + " points; need at least " +
                                         std::to_string(prob.n_free() + 1) + " for " +
                                         std::to_string(prob.n_free()) + " free parameters");
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!std::isfinite(model.eval(trace.x()[i], start))) {
      fail(ErrorCode::NonFinite, "model '" + model.key + "' is not finite at the initial parameters");
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RunOutcome best;
  bool have_best = false;
  for (int replica = 0; replica < options.multi_start; ++replica) {
    std::vector<double> p0 = start;
    if (replica > 0) {
      for (std::size_t i = 0; i < p0.size(); ++i) {
        if (b[i].fixed()) continue;
        p0[i] = b[i].clamp(start[i] * (1.0 + options.multi_start_spread * unit(rng)));
      }
    }
    RunOutcome run = levenberg_marquardt(prob, std::move(p0), options);
    if (model.canonicalize) {
      std::vector<double> c = run.params;
      model.canonicalize(c);
      bool ok = true;
      for (std::size_t i = 0; i < c.size(); ++i) ok = ok && b[i].clamp(c[i]) == c[i];
      if (ok) run.params = std::move(c);
    }
    if (!have_best) {
      best = std::move(run);
      have_best = true;
      continue;
    }
    const double scale = std::max(best.cost, run.cost);
    const bool tie = std::abs(run.cost - best.cost) <= 1e-12 * scale;
    const auto norm = [&](const std::vector<double>& v) { return prob.free_values(v).norm(); };
    if ((!tie && run.cost < best.cost) || (tie && norm(run.params) < norm(best.params))) best = std::move(run);
  }

  FitResult res;
  res.names = model.param_names;
  res.params = best.params;
  res.cost = best.cost;
  res.n_iterations = best.iterations;
  res.converged = best.converged;
  const std::size_t dof = trace.size() - prob.n_free();
  res.chi2_reduced = best.cost / static_cast<double>(dof);
  if (!res.converged) res.warnings.push_back("fit did not converge; reporting best parameters found");
  fill_uncertainties(prob, res);
  return res;
}

Trace add_noise(const Trace& trace, Noise noise, std::uint64_t seed) {
  if (!(noise.sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  if (noise.kind == NoiseKind::None || noise.sigma == 0.0) return trace;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> y = trace.y();
  for (double& v : y) {
    const double z = normal(rng);
    v = noise.kind == NoiseKind::Gaussian ? v + noise.sigma * z : v * (1.0 + noise.sigma * z);
  }
  return Trace(trace.x(), std::move(y), trace.y_err(), trace.units());
}

Trace synthesize(const Model& model, std::span<const double> params, std::span<const double> x, Noise noise,
                 std::uint64_t seed, const std::string& y_unit) {
  if (params.size() != model.size()) fail(ErrorCode::InvalidArgument, "synthesize: parameter count mismatch");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = model.eval(x[i], params);
  return add_noise(Trace(std::vector<double>(x.begin(), x.end()), std::move(y), {}, Units{model.x_unit, y_unit}),
                   noise, seed);
}

}  // namespace sicspin
