#include "sicspin/sicspin.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicspin/defect_catalog.hpp"
#include "sicspin/dynamics.hpp"
#include "sicspin/error.hpp"
#include "sicspin/fit_engine.hpp"
#include "sicspin/odmr_spectrum.hpp"
#include "sicspin/photon_stats.hpp"
#include "sicspin/spin_hamiltonian.hpp"
#include "sicspin/trace.hpp"

struct sicspin_trace {
  sicspin::Trace trace;
};

struct sicspin_population {
  sicspin::DefectPopulation pop;
};

struct sicspin_sweep {
  std::vector<double> fields;
  std::vector<std::vector<sicspin::TransitionSet>> transitions;
  std::vector<sicspin_trace> spectra;
};

struct sicspin_fit_result {
  sicspin::FitResult result;
};

struct sicspin_catalog {
  sicspin::Catalog catalog;
};

struct sicspin_matches {
  sicspin::MatchResult result;
  std::vector<std::string> on;
};

namespace {

thread_local std::string g_last_error;

sicspin_status status_of(sicspin::ErrorCode code) {
  switch (code) {
    case sicspin::ErrorCode::InvalidArgument:
      return SICSPIN_ERR_INVALID_ARGUMENT;
    case sicspin::ErrorCode::NotHermitian:
      return SICSPIN_ERR_NOT_HERMITIAN;
    case sicspin::ErrorCode::Parse:
      return SICSPIN_ERR_PARSE;
    case sicspin::ErrorCode::NonFinite:
      return SICSPIN_ERR_NON_FINITE;
    case sicspin::ErrorCode::NotFound:
      return SICSPIN_ERR_NOT_FOUND;
  }
  return SICSPIN_ERR_INTERNAL;
}

template <class F>
sicspin_status guard(F&& body) noexcept {
  try {
    body();
    return SICSPIN_OK;
  } catch (const sicspin::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SICSPIN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SICSPIN_ERR_INTERNAL;
  }
}

template <class... P>
void require(const char* what, const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) sicspin::fail(sicspin::ErrorCode::InvalidArgument, std::string(what) + ": null argument");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sicspin::Vector3 vec(const double v[3]) { return {v[0], v[1], v[2]}; }

sicspin::ZfsParams zfs_of(const sicspin_zfs* z) { return {z->D, z->E, z->g}; }

sicspin_transitions to_c(const sicspin::TransitionSet& t) {
  return {t.f_low, t.f_high, t.amp_low, t.amp_high, t.degenerate ? 1 : 0};
}

sicspin::SpectrumConfig config_of(const sicspin_spectrum_config* c) {
  sicspin::SpectrumConfig cfg;
  cfg.f_min = c->f_min;
  cfg.f_max = c->f_max;
  cfg.n_points = c->n_points;
  cfg.linewidth_fwhm = c->linewidth_fwhm;
  cfg.contrast_scale = c->contrast_scale;
  cfg.lineshape = c->lineshape == SICSPIN_GAUSSIAN ? sicspin::Lineshape::Gaussian : sicspin::Lineshape::Lorentzian;
  return cfg;
}

sicspin::Trace spectrum_trace(const sicspin::OdmrSpectrum& s) {
  return sicspin::Trace(s.freqs, s.signal, {}, sicspin::Units{"MHz", "normalized"});
}

sicspin::Model model_of(const char* key, int ramsey_modulations) {
  if (key == nullptr) sicspin::fail(sicspin::ErrorCode::InvalidArgument, "model key is null");
  if (std::string_view(key) == "ramsey") return sicspin::make_ramsey_model(ramsey_modulations);
  return sicspin::registered_model(key);
}

sicspin::Noise noise_of(sicspin_noise kind, double sigma) {
  switch (kind) {
    case SICSPIN_NOISE_GAUSSIAN:
      return sicspin::Noise::gaussian(sigma);
    case SICSPIN_NOISE_MULTIPLICATIVE:
      return sicspin::Noise::multiplicative(sigma);
    default:
      return sicspin::Noise::none();
  }
}

// Models handed out by pointer live for the whole process.
const sicspin::Model* try_model(const char* key, int ramsey_modulations) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::unique_ptr<sicspin::Model>> cache;
  if (key == nullptr) return nullptr;
  const std::lock_guard<std::mutex> lock(mu);
  const auto k = std::make_pair(std::string(key), std::string_view(key) == "ramsey" ? ramsey_modulations : 0);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second.get();
  try {
    auto m = std::make_unique<sicspin::Model>(model_of(key, ramsey_modulations));
    return cache.emplace(k, std::move(m)).first->second.get();
  } catch (...) {
    return nullptr;
  }
}

}  // namespace

extern "C" {

const char* sicspin_version(void) { return "1.0.0"; }

const char* sicspin_last_error(void) { return g_last_error.c_str(); }

void sicspin_string_free(char* s) { delete[] s; }

/* traces */

sicspin_status sicspin_trace_create(const double* x, const double* y, const double* y_err, size_t n,
                                    const char* x_unit, const char* y_unit, sicspin_trace** out) {
  return guard([&] {
    require("sicspin_trace_create", out);
    if (n > 0) require("sicspin_trace_create", x, y);
    std::vector<double> xs(x, x + n), ys(y, y + n), es;
    if (y_err != nullptr) es.assign(y_err, y_err + n);
    sicspin::Units units;
    if (x_unit != nullptr) units.x = x_unit;
    if (y_unit != nullptr) units.y = y_unit;
    *out = new sicspin_trace{sicspin::Trace(std::move(xs), std::move(ys), std::move(es), std::move(units))};
  });
}

sicspin_status sicspin_trace_parse_csv(const char* text, sicspin_trace** out) {
  return guard([&] {
    require("sicspin_trace_parse_csv", text, out);
    *out = new sicspin_trace{sicspin::parse_trace_csv(text)};
  });
}

sicspin_status sicspin_trace_to_csv(const sicspin_trace* t, char** out) {
  return guard([&] {
    require("sicspin_trace_to_csv", t, out);
    *out = dup_string(sicspin::format_trace_csv(t->trace));
  });
}

size_t sicspin_trace_size(const sicspin_trace* t) { return t ? t->trace.size() : 0; }

sicspin_status sicspin_trace_data(const sicspin_trace* t, const double** x, const double** y, const double** y_err) {
  return guard([&] {
    require("sicspin_trace_data", t);
    if (x) *x = t->trace.x().data();
    if (y) *y = t->trace.y().data();
    if (y_err) *y_err = t->trace.has_errors() ? t->trace.y_err().data() : nullptr;
  });
}

const char* sicspin_trace_x_unit(const sicspin_trace* t) { return t ? t->trace.units().x.c_str() : ""; }
const char* sicspin_trace_y_unit(const sicspin_trace* t) { return t ? t->trace.units().y.c_str() : ""; }

void sicspin_trace_free(sicspin_trace* t) { delete t; }

/* spin Hamiltonian */

double sicspin_default_g(void) { return sicspin::kDefaultG; }

double sicspin_gamma(double g) { return sicspin::ZfsParams{0.0, 0.0, g}.gamma(); }

sicspin_status sicspin_resonances_to_zfs(double f_low, double f_high, double g, sicspin_zfs* out) {
  return guard([&] {
    require("sicspin_resonances_to_zfs", out);
    const auto z = sicspin::resonances_to_zfs(f_low, f_high, g);
    *out = {z.D, z.E, z.g};
  });
}

sicspin_status sicspin_spin_levels(const sicspin_zfs* zfs, const double b_defect[3], sicspin_levels* out) {
  return guard([&] {
    require("sicspin_spin_levels", zfs, b_defect, out);
    const auto b = sicspin::FieldVector::defect(b_defect[0], b_defect[1], b_defect[2]);
    const auto levels = sicspin::eigensolve(sicspin::build_hamiltonian(zfs_of(zfs), b));
    for (int k = 0; k < 3; ++k) {
      out->energies[k] = levels.energies[k];
      for (int i = 0; i < 3; ++i) {
        out->states_re[k][i] = levels.states(i, k).real();
        out->states_im[k][i] = levels.states(i, k).imag();
      }
    }
    out->ground_index = levels.ground_index;
  });
}

sicspin_status sicspin_lab_to_defect(const double v_lab[3], sicspin_orientation o, double out[3]) {
  return guard([&] {
    require("sicspin_lab_to_defect", v_lab, out);
    const auto v = sicspin::lab_to_defect(vec(v_lab), {o.polar_deg, o.azimuth_deg});
    for (int i = 0; i < 3; ++i) out[i] = v[i];
  });
}

sicspin_status sicspin_transitions_at(const sicspin_zfs* zfs, const double b_lab[3], sicspin_orientation o,
                                      const double mw_pol_lab[3], sicspin_transitions* out) {
  return guard([&] {
    require("sicspin_transitions_at", zfs, b_lab, mw_pol_lab, out);
    const auto b = sicspin::FieldVector::lab(b_lab[0], b_lab[1], b_lab[2]);
    *out = to_c(sicspin::transitions_at(zfs_of(zfs), b, {o.polar_deg, o.azimuth_deg}, vec(mw_pol_lab)));
  });
}

/* populations and ODMR */

sicspin_status sicspin_population_create(const sicspin_zfs* zfs, double contrast, sicspin_population** out) {
  return guard([&] {
    require("sicspin_population_create", zfs, out);
    if (!(contrast >= 0.0)) sicspin::fail(sicspin::ErrorCode::InvalidArgument, "contrast must be non-negative");
    *out = new sicspin_population{{zfs_of(zfs), {}, contrast}};
  });
}

sicspin_status sicspin_population_add(sicspin_population* pop, sicspin_orientation o, double weight) {
  return guard([&] {
    require("sicspin_population_add", pop);
    const sicspin::DefectOrientation orient{o.polar_deg, o.azimuth_deg};
    orient.validate();
    if (!(weight >= 0.0)) sicspin::fail(sicspin::ErrorCode::InvalidArgument, "weight must be non-negative");
    pop->pop.orientations.push_back({orient, weight});
  });
}

size_t sicspin_population_size(const sicspin_population* pop) { return pop ? pop->pop.orientations.size() : 0; }

void sicspin_population_free(sicspin_population* pop) { delete pop; }

sicspin_spectrum_config sicspin_spectrum_config_default(void) {
  const sicspin::SpectrumConfig d;
  return {d.f_min, d.f_max, d.n_points, d.linewidth_fwhm, d.contrast_scale, SICSPIN_LORENTZIAN};
}

sicspin_status sicspin_population_transitions(const sicspin_population* pop, const double b_lab[3],
                                              const double mw_pol_lab[3], sicspin_transitions* out) {
  return guard([&] {
    require("sicspin_population_transitions", pop, b_lab, mw_pol_lab, out);
    const auto ts = sicspin::population_transitions(
        pop->pop, sicspin::FieldVector::lab(b_lab[0], b_lab[1], b_lab[2]), vec(mw_pol_lab));
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = to_c(ts[i]);
  });
}

sicspin_status sicspin_simulate_spectrum(const sicspin_population* pop, const double b_lab[3],
                                         const double mw_pol_lab[3], const sicspin_spectrum_config* cfg,
                                         sicspin_trace** out) {
  return guard([&] {
    require("sicspin_simulate_spectrum", pop, b_lab, mw_pol_lab, cfg, out);
    const auto s = sicspin::simulate_spectrum(pop->pop, sicspin::FieldVector::lab(b_lab[0], b_lab[1], b_lab[2]),
                                              vec(mw_pol_lab), config_of(cfg));
    *out = new sicspin_trace{spectrum_trace(s)};
  });
}

sicspin_status sicspin_field_sweep(const sicspin_population* pop, const double direction_lab[3],
                                   const double* magnitudes, size_t n, const double mw_pol_lab[3],
                                   const sicspin_spectrum_config* cfg, sicspin_sweep** out) {
  return guard([&] {
    require("sicspin_field_sweep", pop, direction_lab, mw_pol_lab, cfg, out);
    if (n > 0) require("sicspin_field_sweep", magnitudes);
    const auto pts = sicspin::field_sweep(pop->pop, vec(direction_lab), std::vector<double>(magnitudes, magnitudes + n),
                                          vec(mw_pol_lab), config_of(cfg));
    auto sweep = std::make_unique<sicspin_sweep>();
    for (const auto& p : pts) {
      sweep->fields.push_back(p.field);
      sweep->transitions.push_back(p.transitions);
      sweep->spectra.push_back({spectrum_trace(p.spectrum)});
    }
    *out = sweep.release();
  });
}

size_t sicspin_sweep_size(const sicspin_sweep* s) { return s ? s->fields.size() : 0; }

double sicspin_sweep_field(const sicspin_sweep* s, size_t i) {
  return (s && i < s->fields.size()) ? s->fields[i] : std::numeric_limits<double>::quiet_NaN();
}

const sicspin_trace* sicspin_sweep_spectrum(const sicspin_sweep* s, size_t i) {
  return (s && i < s->spectra.size()) ? &s->spectra[i] : nullptr;
}

sicspin_status sicspin_sweep_transitions(const sicspin_sweep* s, size_t i, sicspin_transitions* out) {
  return guard([&] {
    require("sicspin_sweep_transitions", s, out);
    if (i >= s->fields.size()) sicspin::fail(sicspin::ErrorCode::InvalidArgument, "sweep index out of range");
    for (std::size_t k = 0; k < s->transitions[i].size(); ++k) out[k] = to_c(s->transitions[i][k]);
  });
}

void sicspin_sweep_free(sicspin_sweep* s) { delete s; }

/* dynamics */

sicspin_status sicspin_simulate_ensemble_rabi(const sicspin_population* pop, const double b_lab[3],
                                              const double mw_pol_lab[3], double drive_amplitude,
                                              sicspin_branch branch, const double* times, size_t n,
                                              double timescale, double stretch, sicspin_trace** out,
                                              double* rabi_freqs, int* beating_collapsed) {
  return guard([&] {
    require("sicspin_simulate_ensemble_rabi", pop, b_lab, mw_pol_lab, out);
    if (n > 0) require("sicspin_simulate_ensemble_rabi", times);
    sicspin::DecayEnvelope env = sicspin::DecayEnvelope::none();
    if (timescale > 0.0 && std::isfinite(timescale)) env = {timescale, stretch};
    env.stretch = stretch;
    const auto r = sicspin::simulate_ensemble_rabi(
        pop->pop, sicspin::FieldVector::lab(b_lab[0], b_lab[1], b_lab[2]), vec(mw_pol_lab), drive_amplitude,
        branch == SICSPIN_BRANCH_HIGH ? sicspin::Branch::High : sicspin::Branch::Low,
        std::span<const double>(times, n), env);
    if (rabi_freqs) std::copy(r.rabi_freqs.begin(), r.rabi_freqs.end(), rabi_freqs);
    if (beating_collapsed) *beating_collapsed = r.beating_collapsed ? 1 : 0;
    *out = new sicspin_trace{r.trace};
  });
}

/* photon statistics */

double sicspin_g2(double tau, double tau0, double a, double b, double t1, double t2) {
  return sicspin::g2_model(tau, {tau0, a, b, t1, t2});
}

int sicspin_is_single_emitter(double g2_at_zero) { return sicspin::is_single_emitter(g2_at_zero) ? 1 : 0; }

double sicspin_saturation(double power, double i_sat, double p_sat) {
  return sicspin::saturation_model(power, {i_sat, p_sat});
}

/* fitting */

sicspin_fit_options sicspin_fit_options_default(void) {
  const sicspin::FitOptions d;
  return {d.max_iterations, d.multi_start, d.seed, 0};
}

size_t sicspin_model_count(void) { return sicspin::model_keys().size(); }

const char* sicspin_model_key(size_t i) {
  static const std::vector<std::string> keys = sicspin::model_keys();
  return i < keys.size() ? keys[i].c_str() : nullptr;
}

size_t sicspin_model_params(const char* model, int ramsey_modulations, const char** names, double* defaults,
                            size_t cap) {
  const sicspin::Model* m = try_model(model, ramsey_modulations);
  if (!m) return 0;
  for (std::size_t i = 0; i < m->size() && i < cap; ++i) {
    if (names) names[i] = m->param_names[i].c_str();
    if (defaults) defaults[i] = m->defaults[i];
  }
  return m->size();
}

const char* sicspin_model_x_unit(const char* model) {
  const sicspin::Model* m = try_model(model, 0);
  return m ? m->x_unit.c_str() : nullptr;
}

int sicspin_model_multi_modal(const char* model) {
  const sicspin::Model* m = try_model(model, 0);
  return (m && m->multi_modal) ? 1 : 0;
}

sicspin_status sicspin_model_eval(const char* model, int ramsey_modulations, const double* params, size_t n_params,
                                  const double* x, size_t n, double* y) {
  return guard([&] {
    require("sicspin_model_eval", params, x, y);
    const sicspin::Model m = model_of(model, ramsey_modulations);
    if (n_params != m.size()) sicspin::fail(sicspin::ErrorCode::InvalidArgument, "parameter count mismatch");
    const std::span<const double> p(params, n_params);
    for (std::size_t i = 0; i < n; ++i) y[i] = m.eval(x[i], p);
  });
}

sicspin_status sicspin_fit(const sicspin_trace* trace, const char* model, const char* const* init_names,
                           const double* init_values, size_t n_init, const char* const* bound_names,
                           const double* bound_lo, const double* bound_hi, size_t n_bounds,
                           const sicspin_fit_options* opts, sicspin_fit_result** out) {
  return guard([&] {
    require("sicspin_fit", trace, out);
    if (n_init > 0) require("sicspin_fit", init_names, init_values);
    if (n_bounds > 0) require("sicspin_fit", bound_names, bound_lo, bound_hi);
    const sicspin_fit_options o = opts ? *opts : sicspin_fit_options_default();
    const sicspin::Model m = model_of(model, o.ramsey_modulations);
    sicspin::NamedValues init;
    for (std::size_t i = 0; i < n_init; ++i) init[init_names[i]] = init_values[i];
    sicspin::NamedBounds bounds;
    for (std::size_t i = 0; i < n_bounds; ++i) bounds[bound_names[i]] = {bound_lo[i], bound_hi[i]};
    sicspin::FitOptions fo;
    fo.max_iterations = o.max_iterations;
    fo.multi_start = o.multi_start;
    fo.seed = o.seed;
    *out = new sicspin_fit_result{sicspin::fit(trace->trace, m, init, bounds, fo)};
  });
}

size_t sicspin_fit_result_size(const sicspin_fit_result* r) { return r ? r->result.params.size() : 0; }

const char* sicspin_fit_result_name(const sicspin_fit_result* r, size_t i) {
  return (r && i < r->result.names.size()) ? r->result.names[i].c_str() : nullptr;
}

double sicspin_fit_result_value(const sicspin_fit_result* r, size_t i) {
  return (r && i < r->result.params.size()) ? r->result.params[i] : std::numeric_limits<double>::quiet_NaN();
}

double sicspin_fit_result_sigma(const sicspin_fit_result* r, size_t i) {
  return (r && i < r->result.uncertainties.size()) ? r->result.uncertainties[i]
                                                   : std::numeric_limits<double>::quiet_NaN();
}

int sicspin_fit_result_uncertainties_available(const sicspin_fit_result* r) {
  return (r && r->result.uncertainties_available) ? 1 : 0;
}

double sicspin_fit_result_chi2_reduced(const sicspin_fit_result* r) {
  return r ? r->result.chi2_reduced : std::numeric_limits<double>::quiet_NaN();
}

int sicspin_fit_result_iterations(const sicspin_fit_result* r) { return r ? r->result.n_iterations : 0; }

int sicspin_fit_result_converged(const sicspin_fit_result* r) { return (r && r->result.converged) ? 1 : 0; }

size_t sicspin_fit_result_warning_count(const sicspin_fit_result* r) { return r ? r->result.warnings.size() : 0; }

const char* sicspin_fit_result_warning(const sicspin_fit_result* r, size_t i) {
  return (r && i < r->result.warnings.size()) ? r->result.warnings[i].c_str() : nullptr;
}

void sicspin_fit_result_free(sicspin_fit_result* r) { delete r; }

sicspin_status sicspin_synthesize(const char* model, int ramsey_modulations, const double* params, size_t n_params,
                                  const double* x, size_t n, sicspin_noise noise, double sigma, uint64_t seed,
                                  sicspin_trace** out) {
  return guard([&] {
    require("sicspin_synthesize", params, out);
    if (n > 0) require("sicspin_synthesize", x);
    const sicspin::Model m = model_of(model, ramsey_modulations);
    *out = new sicspin_trace{sicspin::synthesize(m, std::span<const double>(params, n_params),
                                                 std::span<const double>(x, n), noise_of(noise, sigma), seed)};
  });
}

sicspin_status sicspin_trace_add_noise(const sicspin_trace* t, sicspin_noise noise, double sigma, uint64_t seed,
                                       sicspin_trace** out) {
  return guard([&] {
    require("sicspin_trace_add_noise", t, out);
    *out = new sicspin_trace{sicspin::add_noise(t->trace, noise_of(noise, sigma), seed)};
  });
}

/* catalog */

sicspin_status sicspin_catalog_builtin(sicspin_catalog** out) {
  return guard([&] {
    require("sicspin_catalog_builtin", out);
    *out = new sicspin_catalog{sicspin::Catalog::builtin()};
  });
}

sicspin_status sicspin_catalog_merge(const sicspin_catalog* base, const char* json_text, sicspin_catalog** out) {
  return guard([&] {
    require("sicspin_catalog_merge", base, json_text, out);
    *out = new sicspin_catalog{base->catalog.merged(json_text)};
  });
}

sicspin_status sicspin_catalog_to_json(const sicspin_catalog* c, char** out) {
  return guard([&] {
    require("sicspin_catalog_to_json", c, out);
    *out = dup_string(c->catalog.to_json());
  });
}

size_t sicspin_catalog_size(const sicspin_catalog* c) { return c ? c->catalog.records().size() : 0; }

const char* sicspin_catalog_name(const sicspin_catalog* c, size_t i) {
  return (c && i < c->catalog.records().size()) ? c->catalog.records()[i].name.c_str() : nullptr;
}

sicspin_status sicspin_catalog_population(const sicspin_catalog* c, const char* name, double contrast_fallback,
                                          sicspin_population** out) {
  return guard([&] {
    require("sicspin_catalog_population", c, name, out);
    const sicspin::DefectRecord* rec = c->catalog.find(name);
    if (!rec) sicspin::fail(sicspin::ErrorCode::NotFound, std::string("no catalog species '") + name + "'");
    auto pop = rec->population(contrast_fallback);
    if (!pop) {
      sicspin::fail(sicspin::ErrorCode::InvalidArgument,
                    "species '" + rec->name + "' has no room-temperature resonances to simulate");
    }
    *out = new sicspin_population{*pop};
  });
}

void sicspin_catalog_free(sicspin_catalog* c) { delete c; }

sicspin_status sicspin_identify(const sicspin_catalog* c, const double* resonances, size_t n, double zpl_nm,
                                double tol_freq, double tol_zpl, int cryogenic, sicspin_matches** out) {
  return guard([&] {
    require("sicspin_identify", c, out);
    if (n > 0) require("sicspin_identify", resonances);
    sicspin::IdentifyOptions opt;
    opt.tol_freq = tol_freq;
    opt.tol_zpl = tol_zpl;
    opt.cryogenic = cryogenic != 0;
    const std::optional<double> zpl = zpl_nm > 0.0 ? std::optional<double>(zpl_nm) : std::nullopt;
    auto m = std::make_unique<sicspin_matches>();
    m->result = sicspin::identify(c->catalog, std::span<const double>(resonances, n), zpl, opt);
    for (const auto& r : m->result.ranked) m->on.push_back(sicspin::to_string(r.matched_on));
    *out = m.release();
  });
}

size_t sicspin_matches_size(const sicspin_matches* m) { return m ? m->result.ranked.size() : 0; }

const char* sicspin_matches_name(const sicspin_matches* m, size_t i) {
  return (m && i < m->result.ranked.size()) ? m->result.ranked[i].name.c_str() : nullptr;
}

double sicspin_matches_score(const sicspin_matches* m, size_t i) {
  return (m && i < m->result.ranked.size()) ? m->result.ranked[i].score : std::numeric_limits<double>::quiet_NaN();
}

const char* sicspin_matches_on(const sicspin_matches* m, size_t i) {
  return (m && i < m->on.size()) ? m->on[i].c_str() : nullptr;
}

int sicspin_matches_low_confidence(const sicspin_matches* m) { return (m && m->result.low_confidence) ? 1 : 0; }

void sicspin_matches_free(sicspin_matches* m) { delete m; }

sicspin_status sicspin_census(const sicspin_catalog* c, const char* const* labels, size_t n, char** out_json,
                              double* modified_fraction) {
  return guard([&] {
    require("sicspin_census", c);
    if (n > 0) require("sicspin_census", labels);
    std::vector<std::string> ls;
    for (std::size_t i = 0; i < n; ++i) {
      require("sicspin_census", labels[i]);
      ls.emplace_back(labels[i]);
    }
    const auto res = sicspin::census(c->catalog, ls);
    if (modified_fraction) *modified_fraction = res.modified_fraction;
    if (out_json) {
      nlohmann::ordered_json j;
      j["total"] = res.total;
      j["counts"] = nlohmann::ordered_json::object();
      for (const auto& [name, count] : res.counts) j["counts"][name] = count;
      j["fractions"] = nlohmann::ordered_json::object();
      for (const auto& [name, f] : res.fractions) j["fractions"][name] = f;
      j["modified_fraction"] = res.modified_fraction;
      j["warnings"] = res.warnings;
      *out_json = dup_string(j.dump());
    }
  });
}

sicspin_status sicspin_nm_to_ev(double nm, double* out) {
  return guard([&] {
    require("sicspin_nm_to_ev", out);
    *out = sicspin::nm_to_ev(nm);
  });
}

sicspin_status sicspin_ev_to_nm(double ev, double* out) {
  return guard([&] {
    require("sicspin_ev_to_nm", out);
    *out = sicspin::ev_to_nm(ev);
  });
}

}  // extern "C"
