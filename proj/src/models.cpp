// Bundled fit models. Each wraps the forward model from dynamics or
// photon_stats so fits and simulations share one definition.

#include <algorithm>
#include <tuple>
#include <utility>

#include "sicspin/dynamics.hpp"
#include "sicspin/error.hpp"
#include "sicspin/fit_engine.hpp"
#include "sicspin/photon_stats.hpp"

namespace sicspin {

namespace {

// Sorts k (frequency, phase) pairs stored as [f1..fk, phi1..phik] by frequency.
void sort_pairs(std::span<double> freqs, std::span<double> phases) {
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < freqs.size(); ++i) pairs.emplace_back(freqs[i], phases[i]);
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) std::tie(freqs[i], phases[i]) = pairs[i];
}

Model g2() {
  Model m;
  m.key = "g2";
  m.param_names = {"tau0", "a", "b", "t1", "t2"};
  m.defaults = {0.0, 0.5, 0.2, 10.0, 100.0};
  m.x_unit = "ns";
  m.eval = [](double x, std::span<const double> p) { return g2_model(x, {p[0], p[1], p[2], p[3], p[4]}); };
  return m;
}

Model saturation() {
  Model m;
  m.key = "saturation";
  m.param_names = {"i_sat", "p_sat"};
  m.defaults = {100.0, 2.0};
  m.x_unit = "mW";
  m.eval = [](double x, std::span<const double> p) { return saturation_model(x, {p[0], p[1]}); };
  return m;
}

Model echo() {
  Model m;
  m.key = "echo";
  m.param_names = {"baseline", "amplitude", "t2", "n"};
  m.defaults = {0.0, 1.0, 10.0, 1.0};
  m.x_unit = "us";
  m.eval = [](double x, std::span<const double> p) { return hahn_echo_model(x, p[0], p[1], {p[2], p[3]}); };
  return m;
}

Model t1() {
  Model m;
  m.key = "t1";
  m.param_names = {"baseline", "amplitude", "t1"};
  m.defaults = {0.0, 1.0, 100.0};
  m.x_unit = "us";
  m.eval = [](double x, std::span<const double> p) { return t1_model(x, p[0], p[1], p[2]); };
  return m;
}

Model rabi_beating() {
  Model m;
  m.key = "rabi-beating";
  m.param_names = {"a", "b", "tau", "n", "omega1", "omega2", "omega3", "phi1", "phi2", "phi3"};
  m.defaults = {0.0, 1.0, 1.0, 1.0, 1.0, 1.2, 1.4, 0.0, 0.0, 0.0};
  m.x_unit = "us";
  m.multi_modal = true;
  m.eval = [](double x, std::span<const double> p) {
    RabiBeatParams rb;
    rb.a = p[0];
    rb.b = p[1];
    rb.env = {p[2], p[3]};
    rb.omegas = {p[4], p[5], p[6]};
    rb.phases = {p[7], p[8], p[9]};
    return rabi_beating_model(x, rb);
  };
  m.canonicalize = [](std::span<double> p) { sort_pairs(p.subspan(4, 3), p.subspan(7, 3)); };
  return m;
}

const std::vector<Model>& registry() {
  static const std::vector<Model> models{g2(), saturation(), make_ramsey_model(0), echo(), t1(), rabi_beating()};
  return models;
}

}  // namespace

Model make_ramsey_model(int n_mod) {
  if (n_mod < 0) fail(ErrorCode::InvalidArgument, "ramsey model: negative modulation count");
  Model m;
  m.key = "ramsey";
  m.param_names = {"baseline", "amplitude", "t2star", "n"};
  m.defaults = {0.0, 1.0, 1.0, 1.0};
  for (int i = 1; i <= n_mod; ++i) {
    m.param_names.push_back("f" + std::to_string(i));
    m.defaults.push_back(1.0);
  }
  for (int i = 1; i <= n_mod; ++i) {
    m.param_names.push_back("phi" + std::to_string(i));
    m.defaults.push_back(0.0);
  }
  m.x_unit = "us";
  m.multi_modal = n_mod > 0;
  const auto k = static_cast<std::size_t>(n_mod);
  m.eval = [k](double x, std::span<const double> p) {
    return ramsey_model(x, p[0], p[1], {p[2], p[3]}, p.subspan(4, k), p.subspan(4 + k, k));
  };
  if (k > 1) m.canonicalize = [k](std::span<double> p) { sort_pairs(p.subspan(4, k), p.subspan(4 + k, k)); };
  return m;
}

const Model& registered_model(std::string_view key) {
  const auto& models = registry();
  const auto it = std::find_if(models.begin(), models.end(), [&](const Model& m) { return m.key == key; });
  if (it == models.end()) {
    fail(ErrorCode::NotFound, "unknown model '" + std::string(key) +
                                  "' (expected g2, saturation, ramsey, echo, t1, rabi-beating)");
  }
  return *it;
}

std::vector<std::string> model_keys() {
  std::vector<std::string> keys;
  for (const auto& m : registry()) keys.push_back(m.key);
  return keys;
}

}  // namespace sicspin
