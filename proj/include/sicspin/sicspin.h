/*
 * sicspin C API.
 *
 * All objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns a sicspin_status; on
 * failure a human-readable message is available from sicspin_last_error() on
 * the calling thread until the next failing call. Strings returned through
 * `char**` out-parameters are owned by the caller and released with
 * sicspin_string_free. Frequencies are MHz, fields Gauss, times us (or the
 * unit declared by a trace), powers mW.
 */
#ifndef SICSPIN_H
#define SICSPIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SICSPIN_BUILDING)
#    define SICSPIN_API __declspec(dllexport)
#  else
#    define SICSPIN_API __declspec(dllimport)
#  endif
#else
#  define SICSPIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sicspin_status {
  SICSPIN_OK = 0,
  SICSPIN_ERR_INVALID_ARGUMENT = 1,
  SICSPIN_ERR_PARSE = 2,
  SICSPIN_ERR_NOT_HERMITIAN = 3,
  SICSPIN_ERR_NON_FINITE = 4,
  SICSPIN_ERR_NOT_FOUND = 5,
  SICSPIN_ERR_INTERNAL = 6
} sicspin_status;

SICSPIN_API const char* sicspin_version(void);
SICSPIN_API const char* sicspin_last_error(void);
SICSPIN_API void sicspin_string_free(char* s);

/* ---- traces ------------------------------------------------------------ */

typedef struct sicspin_trace sicspin_trace;

/* y_err may be NULL. Units may be NULL ("unitless"). */
SICSPIN_API sicspin_status sicspin_trace_create(const double* x, const double* y, const double* y_err, size_t n,
                                                const char* x_unit, const char* y_unit, sicspin_trace** out);
SICSPIN_API sicspin_status sicspin_trace_parse_csv(const char* text, sicspin_trace** out);
SICSPIN_API sicspin_status sicspin_trace_to_csv(const sicspin_trace* t, char** out);
SICSPIN_API size_t sicspin_trace_size(const sicspin_trace* t);
/* Borrowed pointers valid for the lifetime of `t`; *y_err is NULL when absent. */
SICSPIN_API sicspin_status sicspin_trace_data(const sicspin_trace* t, const double** x, const double** y,
                                              const double** y_err);
SICSPIN_API const char* sicspin_trace_x_unit(const sicspin_trace* t);
SICSPIN_API const char* sicspin_trace_y_unit(const sicspin_trace* t);
SICSPIN_API void sicspin_trace_free(sicspin_trace* t);

/* ---- spin Hamiltonian -------------------------------------------------- */

typedef struct sicspin_zfs {
  double D;
  double E;
  double g;
} sicspin_zfs;

typedef struct sicspin_orientation {
  double polar_deg;
  double azimuth_deg;
} sicspin_orientation;

typedef struct sicspin_transitions {
  double f_low;
  double f_high;
  double amp_low;
  double amp_high;
  int degenerate;
} sicspin_transitions;

typedef struct sicspin_levels {
  double energies[3];        /* ascending, MHz */
  double states_re[3][3];    /* states_re[k][i]: component i (m_s = +1, 0, -1) of level k */
  double states_im[3][3];
  int ground_index;
} sicspin_levels;

SICSPIN_API double sicspin_default_g(void);
SICSPIN_API double sicspin_gamma(double g);
SICSPIN_API sicspin_status sicspin_resonances_to_zfs(double f_low, double f_high, double g, sicspin_zfs* out);
/* b_defect is in the defect frame. */
SICSPIN_API sicspin_status sicspin_spin_levels(const sicspin_zfs* zfs, const double b_defect[3], sicspin_levels* out);
SICSPIN_API sicspin_status sicspin_lab_to_defect(const double v_lab[3], sicspin_orientation o, double out[3]);
/* Lab-frame field and polarization; the polarization must be a unit vector. */
SICSPIN_API sicspin_status sicspin_transitions_at(const sicspin_zfs* zfs, const double b_lab[3], sicspin_orientation o,
                                                  const double mw_pol_lab[3], sicspin_transitions* out);

/* ---- populations and ODMR --------------------------------------------- */

typedef struct sicspin_population sicspin_population;

SICSPIN_API sicspin_status sicspin_population_create(const sicspin_zfs* zfs, double contrast,
                                                     sicspin_population** out);
SICSPIN_API sicspin_status sicspin_population_add(sicspin_population* pop, sicspin_orientation o, double weight);
SICSPIN_API size_t sicspin_population_size(const sicspin_population* pop);
SICSPIN_API void sicspin_population_free(sicspin_population* pop);

typedef enum sicspin_lineshape { SICSPIN_LORENTZIAN = 0, SICSPIN_GAUSSIAN = 1 } sicspin_lineshape;

typedef struct sicspin_spectrum_config {
  double f_min;
  double f_max;
  int n_points;
  double linewidth_fwhm;
  double contrast_scale;
  sicspin_lineshape lineshape;
} sicspin_spectrum_config;

SICSPIN_API sicspin_spectrum_config sicspin_spectrum_config_default(void);

/* Per-orientation transitions in population order; `out` holds pop size entries. */
SICSPIN_API sicspin_status sicspin_population_transitions(const sicspin_population* pop, const double b_lab[3],
                                                          const double mw_pol_lab[3], sicspin_transitions* out);
/* Spectrum as a trace: x = frequency (MHz), y = normalized signal. */
SICSPIN_API sicspin_status sicspin_simulate_spectrum(const sicspin_population* pop, const double b_lab[3],
                                                     const double mw_pol_lab[3], const sicspin_spectrum_config* cfg,
                                                     sicspin_trace** out);

typedef struct sicspin_sweep sicspin_sweep;

SICSPIN_API sicspin_status sicspin_field_sweep(const sicspin_population* pop, const double direction_lab[3],
                                               const double* magnitudes, size_t n, const double mw_pol_lab[3],
                                               const sicspin_spectrum_config* cfg, sicspin_sweep** out);
SICSPIN_API size_t sicspin_sweep_size(const sicspin_sweep* s);
SICSPIN_API double sicspin_sweep_field(const sicspin_sweep* s, size_t i);
/* Borrowed; valid for the lifetime of `s`. */
SICSPIN_API const sicspin_trace* sicspin_sweep_spectrum(const sicspin_sweep* s, size_t i);
/* `out` holds population-size entries. */
SICSPIN_API sicspin_status sicspin_sweep_transitions(const sicspin_sweep* s, size_t i, sicspin_transitions* out);
SICSPIN_API void sicspin_sweep_free(sicspin_sweep* s);

/* ---- dynamics ---------------------------------------------------------- */

typedef enum sicspin_branch { SICSPIN_BRANCH_LOW = 0, SICSPIN_BRANCH_HIGH = 1 } sicspin_branch;

/* timescale <= 0 or infinite means no decay. rabi_freqs holds population-size entries (may be NULL). */
SICSPIN_API sicspin_status sicspin_simulate_ensemble_rabi(const sicspin_population* pop, const double b_lab[3],
                                                          const double mw_pol_lab[3], double drive_amplitude,
                                                          sicspin_branch branch, const double* times, size_t n,
                                                          double timescale, double stretch, sicspin_trace** out,
                                                          double* rabi_freqs, int* beating_collapsed);

/* ---- photon statistics ------------------------------------------------- */

SICSPIN_API double sicspin_g2(double tau, double tau0, double a, double b, double t1, double t2);
SICSPIN_API int sicspin_is_single_emitter(double g2_at_zero);
SICSPIN_API double sicspin_saturation(double power, double i_sat, double p_sat);

/* ---- fitting ----------------------------------------------------------- */

typedef struct sicspin_fit_result sicspin_fit_result;

typedef struct sicspin_fit_options {
  int max_iterations;
  int multi_start;
  uint64_t seed;
  int ramsey_modulations; /* number of cosine factors for the ramsey model */
} sicspin_fit_options;

typedef enum sicspin_noise { SICSPIN_NOISE_NONE = 0, SICSPIN_NOISE_GAUSSIAN = 1, SICSPIN_NOISE_MULTIPLICATIVE = 2 } sicspin_noise;

SICSPIN_API sicspin_fit_options sicspin_fit_options_default(void);
SICSPIN_API size_t sicspin_model_count(void);
SICSPIN_API const char* sicspin_model_key(size_t i);
/* Writes up to `cap` parameter names (borrowed) and returns the model's parameter count, 0 if unknown. */
SICSPIN_API size_t sicspin_model_params(const char* model, int ramsey_modulations, const char** names,
                                        double* defaults, size_t cap);
SICSPIN_API const char* sicspin_model_x_unit(const char* model);
SICSPIN_API int sicspin_model_multi_modal(const char* model);
SICSPIN_API sicspin_status sicspin_model_eval(const char* model, int ramsey_modulations, const double* params,
                                              size_t n_params, const double* x, size_t n, double* y);

/* Named initial values (missing ones use model defaults) and bounds (lo == hi fixes a parameter). */
SICSPIN_API sicspin_status sicspin_fit(const sicspin_trace* trace, const char* model, const char* const* init_names,
                                       const double* init_values, size_t n_init, const char* const* bound_names,
                                       const double* bound_lo, const double* bound_hi, size_t n_bounds,
                                       const sicspin_fit_options* opts, sicspin_fit_result** out);
SICSPIN_API size_t sicspin_fit_result_size(const sicspin_fit_result* r);
SICSPIN_API const char* sicspin_fit_result_name(const sicspin_fit_result* r, size_t i);
SICSPIN_API double sicspin_fit_result_value(const sicspin_fit_result* r, size_t i);
SICSPIN_API double sicspin_fit_result_sigma(const sicspin_fit_result* r, size_t i);
SICSPIN_API int sicspin_fit_result_uncertainties_available(const sicspin_fit_result* r);
SICSPIN_API double sicspin_fit_result_chi2_reduced(const sicspin_fit_result* r);
SICSPIN_API int sicspin_fit_result_iterations(const sicspin_fit_result* r);
SICSPIN_API int sicspin_fit_result_converged(const sicspin_fit_result* r);
SICSPIN_API size_t sicspin_fit_result_warning_count(const sicspin_fit_result* r);
SICSPIN_API const char* sicspin_fit_result_warning(const sicspin_fit_result* r, size_t i);
SICSPIN_API void sicspin_fit_result_free(sicspin_fit_result* r);

SICSPIN_API sicspin_status sicspin_synthesize(const char* model, int ramsey_modulations, const double* params,
                                              size_t n_params, const double* x, size_t n, sicspin_noise noise,
                                              double sigma, uint64_t seed, sicspin_trace** out);

SICSPIN_API sicspin_status sicspin_trace_add_noise(const sicspin_trace* t, sicspin_noise noise, double sigma,
                                                   uint64_t seed, sicspin_trace** out);

/* ---- catalog ----------------------------------------------------------- */

typedef struct sicspin_catalog sicspin_catalog;
typedef struct sicspin_matches sicspin_matches;

SICSPIN_API sicspin_status sicspin_catalog_builtin(sicspin_catalog** out);
/* New catalog = `base` merged field-wise by name with the JSON override document. */
SICSPIN_API sicspin_status sicspin_catalog_merge(const sicspin_catalog* base, const char* json_text,
                                                 sicspin_catalog** out);
SICSPIN_API sicspin_status sicspin_catalog_to_json(const sicspin_catalog* c, char** out);
SICSPIN_API size_t sicspin_catalog_size(const sicspin_catalog* c);
SICSPIN_API const char* sicspin_catalog_name(const sicspin_catalog* c, size_t i);
/* Population for a species (orientation ensemble from its class, room-temperature resonances). */
SICSPIN_API sicspin_status sicspin_catalog_population(const sicspin_catalog* c, const char* name,
                                                      double contrast_fallback, sicspin_population** out);
SICSPIN_API void sicspin_catalog_free(sicspin_catalog* c);

/* zpl_nm <= 0 means no ZPL. */
SICSPIN_API sicspin_status sicspin_identify(const sicspin_catalog* c, const double* resonances, size_t n,
                                            double zpl_nm, double tol_freq, double tol_zpl, int cryogenic,
                                            sicspin_matches** out);
SICSPIN_API size_t sicspin_matches_size(const sicspin_matches* m);
SICSPIN_API const char* sicspin_matches_name(const sicspin_matches* m, size_t i);
SICSPIN_API double sicspin_matches_score(const sicspin_matches* m, size_t i);
/* "resonances", "zpl", "both" or "none". */
SICSPIN_API const char* sicspin_matches_on(const sicspin_matches* m, size_t i);
SICSPIN_API int sicspin_matches_low_confidence(const sicspin_matches* m);
SICSPIN_API void sicspin_matches_free(sicspin_matches* m);

/* JSON object {total, counts, fractions, modified_fraction, warnings}. */
SICSPIN_API sicspin_status sicspin_census(const sicspin_catalog* c, const char* const* labels, size_t n, char** out_json,
                                          double* modified_fraction);

SICSPIN_API sicspin_status sicspin_nm_to_ev(double nm, double* out);
SICSPIN_API sicspin_status sicspin_ev_to_nm(double ev, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SICSPIN_H */
