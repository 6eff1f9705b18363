#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicspin/sicspin.h"

using doctest::Approx;

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(sicspin_version()) > 0);
  sicspin_zfs z{};
  CHECK(sicspin_resonances_to_zfs(1400, 1300, sicspin_default_g(), &z) == SICSPIN_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sicspin_last_error()) > 0);
  CHECK(sicspin_resonances_to_zfs(1300, 1400, sicspin_default_g(), nullptr) == SICSPIN_ERR_INVALID_ARGUMENT);
  CHECK(sicspin_resonances_to_zfs(1342.6, 1375.3, sicspin_default_g(), &z) == SICSPIN_OK);
  CHECK(z.D == Approx(1358.95));
  CHECK(z.E == Approx(16.35));
  CHECK(sicspin_gamma(2.0028) == Approx(2.0028 * 1.3996245));
}

TEST_CASE("spin levels through the C layer") {
  const sicspin_zfs z{1358.95, 16.35, 2.0028};
  const double b[3] = {0, 0, 0};
  sicspin_levels lv{};
  REQUIRE(sicspin_spin_levels(&z, b, &lv) == SICSPIN_OK);
  CHECK(lv.energies[0] == Approx(-2 * 1358.95 / 3));
  double norm = 0;
  for (int i = 0; i < 3; ++i) norm += lv.states_re[1][i] * lv.states_re[1][i] + lv.states_im[1][i] * lv.states_im[1][i];
  CHECK(norm == Approx(1.0));

  const double pol[3] = {1, 0, 0};
  sicspin_transitions t{};
  REQUIRE(sicspin_transitions_at(&z, b, sicspin_orientation{0, 0}, pol, &t) == SICSPIN_OK);
  CHECK(t.f_low == Approx(1342.6));
  CHECK(t.f_high == Approx(1375.3));

  const double bad_pol[3] = {1, 1, 0};
  CHECK(sicspin_transitions_at(&z, b, sicspin_orientation{0, 0}, bad_pol, &t) == SICSPIN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("trace handles") {
  const double x[3] = {0, 1, 2};
  const double y[3] = {1, 0.5, 0.25};
  sicspin_trace* t = nullptr;
  REQUIRE(sicspin_trace_create(x, y, nullptr, 3, "us", "arb", &t) == SICSPIN_OK);
  CHECK(sicspin_trace_size(t) == 3);
  CHECK(std::string(sicspin_trace_x_unit(t)) == "us");
  char* csv = nullptr;
  REQUIRE(sicspin_trace_to_csv(t, &csv) == SICSPIN_OK);
  sicspin_trace* back = nullptr;
  REQUIRE(sicspin_trace_parse_csv(csv, &back) == SICSPIN_OK);
  const double* bx = nullptr;
  const double* by = nullptr;
  const double* be = nullptr;
  REQUIRE(sicspin_trace_data(back, &bx, &by, &be) == SICSPIN_OK);
  CHECK(be == nullptr);
  for (int i = 0; i < 3; ++i) CHECK(by[i] == y[i]);
  sicspin_string_free(csv);
  sicspin_trace_free(back);
  sicspin_trace_free(t);

  const double bad_x[3] = {0, 0, 1};
  CHECK(sicspin_trace_create(bad_x, y, nullptr, 3, "us", "arb", &t) == SICSPIN_ERR_INVALID_ARGUMENT);
  CHECK(sicspin_trace_parse_csv("x,y\n1,2\n1,3\n", &t) == SICSPIN_ERR_PARSE);
  CHECK(std::string(sicspin_last_error()).find("line 3") != std::string::npos);
  sicspin_trace_free(nullptr);
}

TEST_CASE("spectrum and sweep") {
  const sicspin_zfs z{1350.8, 0.0, 2.0028};
  sicspin_population* pop = nullptr;
  REQUIRE(sicspin_population_create(&z, 0.25, &pop) == SICSPIN_OK);
  REQUIRE(sicspin_population_add(pop, sicspin_orientation{0, 0}, 1.0) == SICSPIN_OK);
  const double b[3] = {0, 0, 0};
  const double pol[3] = {1, 0, 0};
  sicspin_spectrum_config cfg = sicspin_spectrum_config_default();
  sicspin_trace* spec = nullptr;
  REQUIRE(sicspin_simulate_spectrum(pop, b, pol, &cfg, &spec) == SICSPIN_OK);
  const double* x = nullptr;
  const double* y = nullptr;
  sicspin_trace_data(spec, &x, &y, nullptr);
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < sicspin_trace_size(spec); ++i) argmin = y[i] < y[argmin] ? i : argmin;
  CHECK(std::abs(x[argmin] - 1350.8) <= 0.5);
  CHECK(std::string(sicspin_trace_x_unit(spec)) == "MHz");
  sicspin_trace_free(spec);

  const double dir[3] = {0, 0, 1};
  const double mags[3] = {0, 50, 100};
  sicspin_sweep* sw = nullptr;
  REQUIRE(sicspin_field_sweep(pop, dir, mags, 3, pol, &cfg, &sw) == SICSPIN_OK);
  CHECK(sicspin_sweep_size(sw) == 3);
  sicspin_transitions t{};
  REQUIRE(sicspin_sweep_transitions(sw, 2, &t) == SICSPIN_OK);
  CHECK(t.f_high - t.f_low == Approx(2 * sicspin_gamma(2.0028) * 100));
  CHECK(sicspin_sweep_transitions(sw, 7, &t) == SICSPIN_ERR_INVALID_ARGUMENT);
  CHECK(sicspin_sweep_spectrum(sw, 1) != nullptr);
  sicspin_sweep_free(sw);

  cfg.n_points = 1;
  CHECK(sicspin_simulate_spectrum(pop, b, pol, &cfg, &spec) == SICSPIN_ERR_INVALID_ARGUMENT);
  sicspin_population_free(pop);
}

TEST_CASE("ensemble rabi") {
  sicspin_catalog* cat = nullptr;
  REQUIRE(sicspin_catalog_builtin(&cat) == SICSPIN_OK);
  sicspin_population* pop = nullptr;
  REQUIRE(sicspin_catalog_population(cat, "PL5", 0.1, &pop) == SICSPIN_OK);
  std::vector<double> times(100);
  for (int i = 0; i < 100; ++i) times[i] = 0.02 * i;
  const double b[3] = {0, 0, 0};
  const double pol[3] = {0, 0, 1};
  double freqs[3];
  int collapsed = 0;
  sicspin_trace* tr = nullptr;
  REQUIRE(sicspin_simulate_ensemble_rabi(pop, b, pol, 5.0, SICSPIN_BRANCH_LOW, times.data(), times.size(), 0.0, 1.0, &tr,
                                         freqs, &collapsed) == SICSPIN_OK);
  CHECK(collapsed == 1);
  CHECK(sicspin_trace_size(tr) == 100);
  sicspin_trace_free(tr);
  CHECK(sicspin_catalog_population(cat, "PL3", 0.1, &pop) != SICSPIN_OK);
  sicspin_population_free(pop);
  sicspin_catalog_free(cat);
}

TEST_CASE("photon statistics") {
  CHECK(sicspin_g2(5.0, 5.0, 0.75, 0.25, 3, 50) == -0.5);
  CHECK(sicspin_is_single_emitter(0.5) == 0);
  CHECK(sicspin_is_single_emitter(0.49) == 1);
  CHECK(sicspin_saturation(2.36, 225.8, 2.36) == Approx(112.9));
}

TEST_CASE("models and fitting") {
  CHECK(sicspin_model_count() == 6);
  CHECK(std::string(sicspin_model_key(5)) == "rabi-beating");
  CHECK(sicspin_model_key(6) == nullptr);
  CHECK(sicspin_model_params("ramsey", 2, nullptr, nullptr, 0) == 8);
  CHECK(sicspin_model_params("nope", 0, nullptr, nullptr, 0) == 0);
  const char* names[5];
  double defaults[5];
  REQUIRE(sicspin_model_params("g2", 0, names, defaults, 5) == 5);
  CHECK(std::string(names[0]) == "tau0");
  CHECK(std::string(sicspin_model_x_unit("g2")) == "ns");
  CHECK(sicspin_model_multi_modal("rabi-beating") == 1);

  std::vector<double> x(201);
  for (int i = 0; i < 201; ++i) x[i] = 5.0 * i;
  const double truth[3] = {0.3, 0.7, 186.6};
  sicspin_trace* t = nullptr;
  REQUIRE(sicspin_synthesize("t1", 0, truth, 3, x.data(), x.size(), SICSPIN_NOISE_GAUSSIAN, 0.01, 5, &t) ==
          SICSPIN_OK);
  const char* init_names[1] = {"t1"};
  const double init_values[1] = {150.0};
  sicspin_fit_options opts = sicspin_fit_options_default();
  sicspin_fit_result* r = nullptr;
  REQUIRE(sicspin_fit(t, "t1", init_names, init_values, 1, nullptr, nullptr, nullptr, 0, &opts, &r) == SICSPIN_OK);
  CHECK(sicspin_fit_result_size(r) == 3);
  CHECK(std::string(sicspin_fit_result_name(r, 2)) == "t1");
  CHECK(std::abs(sicspin_fit_result_value(r, 2) - 186.6) < 0.05 * 186.6);
  CHECK(sicspin_fit_result_sigma(r, 2) > 0);
  CHECK(sicspin_fit_result_converged(r) == 1);
  sicspin_fit_result_free(r);

  const char* bname[1] = {"baseline"};
  const double lo[1] = {0.25};
  const double hi[1] = {0.25};
  REQUIRE(sicspin_fit(t, "t1", init_names, init_values, 1, bname, lo, hi, 1, &opts, &r) == SICSPIN_OK);
  CHECK(sicspin_fit_result_value(r, 0) == 0.25);
  sicspin_fit_result_free(r);

  const char* unknown[1] = {"tau"};
  CHECK(sicspin_fit(t, "t1", unknown, init_values, 1, nullptr, nullptr, nullptr, 0, &opts, &r) == SICSPIN_ERR_NOT_FOUND);
  CHECK(sicspin_fit(t, "bogus", nullptr, nullptr, 0, nullptr, nullptr, nullptr, 0, &opts, &r) == SICSPIN_ERR_NOT_FOUND);

  sicspin_trace* noisy = nullptr;
  REQUIRE(sicspin_trace_add_noise(t, SICSPIN_NOISE_GAUSSIAN, 0.1, 9, &noisy) == SICSPIN_OK);
  sicspin_trace* noisy2 = nullptr;
  REQUIRE(sicspin_trace_add_noise(t, SICSPIN_NOISE_GAUSSIAN, 0.1, 9, &noisy2) == SICSPIN_OK);
  const double* y1 = nullptr;
  const double* y2 = nullptr;
  sicspin_trace_data(noisy, nullptr, &y1, nullptr);
  sicspin_trace_data(noisy2, nullptr, &y2, nullptr);
  CHECK(std::equal(y1, y1 + 201, y2));
  sicspin_trace_free(noisy);
  sicspin_trace_free(noisy2);

  std::vector<double> out(x.size());
  REQUIRE(sicspin_model_eval("t1", 0, truth, 3, x.data(), x.size(), out.data()) == SICSPIN_OK);
  CHECK(out[0] == Approx(1.0));
  CHECK(sicspin_model_eval("t1", 0, truth, 2, x.data(), x.size(), out.data()) == SICSPIN_ERR_INVALID_ARGUMENT);
  sicspin_trace_free(t);
}

TEST_CASE("catalog, identify and census") {
  sicspin_catalog* cat = nullptr;
  REQUIRE(sicspin_catalog_builtin(&cat) == SICSPIN_OK);
  CHECK(sicspin_catalog_size(cat) >= 5);
  const double res[1] = {1350.8};
  sicspin_matches* m = nullptr;
  REQUIRE(sicspin_identify(cat, res, 1, 0.0, 5.0, 2.0, 0, &m) == SICSPIN_OK);
  CHECK(std::string(sicspin_matches_name(m, 0)) == "PL6");
  CHECK(std::string(sicspin_matches_on(m, 0)) == "resonances");
  CHECK(sicspin_matches_low_confidence(m) == 0);
  sicspin_matches_free(m);

  std::vector<const char*> labels(137, "PL5");
  labels.insert(labels.end(), 12, "PL2");
  char* json = nullptr;
  double frac = 0;
  REQUIRE(sicspin_census(cat, labels.data(), labels.size(), &json, &frac) == SICSPIN_OK);
  CHECK(std::abs(frac - 137.0 / 149.0) < 1e-12);
  const auto doc = nlohmann::json::parse(json);
  CHECK(doc["total"] == 149);
  sicspin_string_free(json);

  sicspin_catalog* merged = nullptr;
  CHECK(sicspin_catalog_merge(cat, "[{\"name\": \"PL6\", \"bogus\": 1}]", &merged) == SICSPIN_ERR_PARSE);
  REQUIRE(sicspin_catalog_merge(cat, "[{\"name\": \"PL6\", \"roomT_contrast\": 0.3}]", &merged) == SICSPIN_OK);
  CHECK(sicspin_catalog_size(merged) == sicspin_catalog_size(cat));
  sicspin_catalog_free(merged);

  double ev = 0;
  REQUIRE(sicspin_nm_to_ev(1239.8419843, &ev) == SICSPIN_OK);
  CHECK(ev == 1.0);
  CHECK(sicspin_ev_to_nm(0.0, &ev) == SICSPIN_ERR_INVALID_ARGUMENT);
  sicspin_catalog_free(cat);
}
