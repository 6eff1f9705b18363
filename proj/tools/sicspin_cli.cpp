// Command-line front end. Talks to the library only through the C API.
//
// Exit status: 0 success, 2 input error, 3 fit did not converge.
// Result documents go to --out (or stdout); diagnostics go to stderr.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sicspin/sicspin.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(sicspin_status st, const std::string& context) {
  if (st != SICSPIN_OK) throw InputError(context + ": " + sicspin_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using TracePtr = std::unique_ptr<sicspin_trace, Deleter<sicspin_trace, sicspin_trace_free>>;
using PopulationPtr = std::unique_ptr<sicspin_population, Deleter<sicspin_population, sicspin_population_free>>;
using CatalogPtr = std::unique_ptr<sicspin_catalog, Deleter<sicspin_catalog, sicspin_catalog_free>>;
using SweepPtr = std::unique_ptr<sicspin_sweep, Deleter<sicspin_sweep, sicspin_sweep_free>>;
using FitPtr = std::unique_ptr<sicspin_fit_result, Deleter<sicspin_fit_result, sicspin_fit_result_free>>;
using MatchesPtr = std::unique_ptr<sicspin_matches, Deleter<sicspin_matches, sicspin_matches_free>>;

std::string take_string(char* s) {
  std::string out(s);
  sicspin_string_free(s);
  return out;
}

double parse_double(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError(what + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what, std::size_t expect = 0) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_double(std::string_view(s).substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (expect != 0 && out.size() != expect) {
    throw InputError(what + ": expected " + std::to_string(expect) + " comma-separated values");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string trace_csv(const sicspin_trace* t) {
  char* text = nullptr;
  check(sicspin_trace_to_csv(t, &text), "csv");
  return take_string(text);
}

json transitions_json(const sicspin_transitions& t) {
  json j;
  j["f_low"] = t.f_low;
  j["f_high"] = t.f_high;
  j["amp_low"] = t.amp_low;
  j["amp_high"] = t.amp_high;
  j["degenerate"] = t.degenerate != 0;
  return j;
}

json trace_json(const sicspin_trace* t) {
  const double* x = nullptr;
  const double* y = nullptr;
  check(sicspin_trace_data(t, &x, &y, nullptr), "trace");
  const std::size_t n = sicspin_trace_size(t);
  json j;
  j["x_unit"] = sicspin_trace_x_unit(t);
  j["y_unit"] = sicspin_trace_y_unit(t);
  j["x"] = std::vector<double>(x, x + n);
  j["y"] = std::vector<double>(y, y + n);
  return j;
}

// Options shared by every command.
struct Globals {
  std::string out;
  std::uint64_t seed = 0;
  std::string catalog_path;
};

CatalogPtr load_catalog(const Globals& g) {
  sicspin_catalog* raw = nullptr;
  check(sicspin_catalog_builtin(&raw), "catalog");
  CatalogPtr cat(raw);
  if (!g.catalog_path.empty()) {
    const std::string text = read_file(g.catalog_path);
    sicspin_catalog* merged = nullptr;
    check(sicspin_catalog_merge(cat.get(), text.c_str(), &merged), "catalog override '" + g.catalog_path + "'");
    cat.reset(merged);
  }
  return cat;
}

// Population from a catalog species or explicit resonances / ZFS.
struct PopulationOpts {
  std::string species;
  std::string resonances;
  std::string zfs;
  double g = sicspin_default_g();
  std::string orientation = "c-axis";
  double contrast = -1.0;
  std::string b_field = "0,0,0";
  std::string mw_pol = "1,0,0";

  void add(CLI::App* app) {
    app->add_option("--species", species, "catalog species (e.g. PL5, PL6, PL7', PL8')");
    app->add_option("--resonances", resonances, "zero-field resonances f1[,f2] in MHz");
    app->add_option("--zfs", zfs, "D,E in MHz");
    app->add_option("--g", g, "electron g-factor");
    app->add_option("--orientation", orientation, "c-axis or basal (without --species)")
        ->check(CLI::IsMember({"c-axis", "basal"}));
    app->add_option("--contrast", contrast, "dip depth per unit drive weight");
    app->add_option("--b-field", b_field, "mag,dir-polar,dir-azimuth (Gauss, degrees, lab frame)");
    app->add_option("--mw-pol", mw_pol, "microwave polarization x,y,z (lab frame)");
  }

  PopulationPtr build(const Globals& g_opts, json& inputs, std::vector<std::string>& warnings) const {
    const int sources = !species.empty() + !resonances.empty() + !zfs.empty();
    if (sources != 1) throw InputError("give exactly one of --species, --resonances, --zfs");
    sicspin_population* raw = nullptr;
    if (!species.empty()) {
      CatalogPtr cat = load_catalog(g_opts);
      const double fallback = contrast >= 0.0 ? contrast : 0.1;
      check(sicspin_catalog_population(cat.get(), species.c_str(), fallback, &raw), "species");
      inputs["species"] = species;
      if (contrast >= 0.0) warnings.push_back("--contrast only applies when the species has no catalog contrast");
      return PopulationPtr(raw);
    }
    sicspin_zfs z{};
    if (!resonances.empty()) {
      const auto f = parse_list(resonances, "--resonances");
      if (f.size() > 2) throw InputError("--resonances takes one or two values");
      check(sicspin_resonances_to_zfs(f.front(), f.back(), g, &z), "--resonances");
      inputs["resonances"] = f;
    } else {
      const auto de = parse_list(zfs, "--zfs", 2);
      z = {de[0], de[1], g};
      inputs["zfs"] = de;
    }
    inputs["g"] = g;
    inputs["orientation"] = orientation;
    const double c = contrast >= 0.0 ? contrast : 0.1;
    inputs["contrast"] = c;
    check(sicspin_population_create(&z, c, &raw), "population");
    PopulationPtr pop(raw);
    if (orientation == "c-axis") {
      check(sicspin_population_add(pop.get(), {0.0, 0.0}, 1.0), "population");
    } else {
      const double polar = std::acos(-1.0 / 3.0) * 180.0 / std::numbers::pi;
      for (int i = 0; i < 3; ++i) check(sicspin_population_add(pop.get(), {polar, 120.0 * i}, 1.0 / 3.0), "population");
    }
    return pop;
  }

  std::array<double, 3> field(json& inputs) const {
    const auto v = parse_list(b_field, "--b-field", 3);
    if (v[0] < 0.0) throw InputError("--b-field magnitude must be non-negative");
    inputs["b_field"] = {{"magnitude", v[0]}, {"polar", v[1]}, {"azimuth", v[2]}};
    const double th = v[1] * std::numbers::pi / 180.0;
    const double ph = v[2] * std::numbers::pi / 180.0;
    return {v[0] * std::sin(th) * std::cos(ph), v[0] * std::sin(th) * std::sin(ph), v[0] * std::cos(th)};
  }

  std::array<double, 3> polarization(json& inputs) const {
    auto v = parse_list(mw_pol, "--mw-pol", 3);
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0.0)) throw InputError("--mw-pol must be non-zero");
    for (double& c : v) c /= n;
    inputs["mw_pol"] = v;
    return {v[0], v[1], v[2]};
  }
};

struct SpectrumOpts {
  double f_min = 1000.0;
  double f_max = 1500.0;
  int points = 1001;
  double fwhm = 10.0;
  double contrast_scale = 1.0;
  std::string lineshape = "lorentzian";

  void add(CLI::App* app) {
    app->add_option("--f-min", f_min, "MHz");
    app->add_option("--f-max", f_max, "MHz");
    app->add_option("--points", points, "frequency grid points");
    app->add_option("--fwhm", fwhm, "linewidth FWHM in MHz");
    app->add_option("--contrast-scale", contrast_scale, "global contrast factor in (0, 1]");
    app->add_option("--lineshape", lineshape)->check(CLI::IsMember({"lorentzian", "gaussian"}));
  }

  sicspin_spectrum_config config(json& inputs) const {
    inputs["f_min"] = f_min;
    inputs["f_max"] = f_max;
    inputs["points"] = points;
    inputs["fwhm"] = fwhm;
    inputs["contrast_scale"] = contrast_scale;
    inputs["lineshape"] = lineshape;
    return {f_min, f_max, points, fwhm, contrast_scale, lineshape == "gaussian" ? SICSPIN_GAUSSIAN : SICSPIN_LORENTZIAN};
  }
};

json document(const std::string& command) {
  json doc;
  doc["command"] = command;
  doc["inputs"] = json::object();
  return doc;
}

void emit(const Globals& g, json& doc, const std::vector<std::string>& warnings) {
  doc["warnings"] = warnings;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_file(g.out, text);
  }
}

int run_simulate_odmr(const Globals& g, const PopulationOpts& p, const SpectrumOpts& s, const std::string& csv) {
  json doc = document("simulate-odmr");
  std::vector<std::string> warnings;
  json& in = doc["inputs"];
  PopulationPtr pop = p.build(g, in, warnings);
  const auto b = p.field(in);
  const auto pol = p.polarization(in);
  const sicspin_spectrum_config cfg = s.config(in);

  std::vector<sicspin_transitions> ts(sicspin_population_size(pop.get()));
  check(sicspin_population_transitions(pop.get(), b.data(), pol.data(), ts.data()), "transitions");
  sicspin_trace* raw = nullptr;
  check(sicspin_simulate_spectrum(pop.get(), b.data(), pol.data(), &cfg, &raw), "simulate-odmr");
  TracePtr spec(raw);

  json spectrum;
  spectrum["transitions"] = json::array();
  for (const auto& t : ts) spectrum["transitions"].push_back(transitions_json(t));
  spectrum["trace"] = trace_json(spec.get());
  doc["spectrum"] = spectrum;
  if (!csv.empty()) {
    write_file(csv, trace_csv(spec.get()));
    doc["csv"] = csv;
  }
  emit(g, doc, warnings);
  return kExitOk;
}

int run_sweep_field(const Globals& g, const PopulationOpts& p, const SpectrumOpts& s, const std::string& dir,
                    double b_max, int b_points, const std::string& fields, const std::string& csv_prefix) {
  json doc = document("sweep-field");
  std::vector<std::string> warnings;
  json& in = doc["inputs"];
  PopulationPtr pop = p.build(g, in, warnings);
  const auto pol = p.polarization(in);
  const sicspin_spectrum_config cfg = s.config(in);

  const auto angles = parse_list(dir, "--b-dir", 2);
  const double th = angles[0] * std::numbers::pi / 180.0;
  const double ph = angles[1] * std::numbers::pi / 180.0;
  const std::array<double, 3> direction{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  in["b_dir"] = {{"polar", angles[0]}, {"azimuth", angles[1]}};

  std::vector<double> mags;
  if (!fields.empty()) {
    mags = parse_list(fields, "--fields");
  } else {
    if (b_points < 1) throw InputError("--b-points must be at least 1");
    for (int i = 0; i < b_points; ++i) mags.push_back(b_points == 1 ? b_max : b_max * i / (b_points - 1));
  }
  in["fields"] = mags;

  sicspin_sweep* raw = nullptr;
  check(sicspin_field_sweep(pop.get(), direction.data(), mags.data(), mags.size(), pol.data(), &cfg, &raw),
        "sweep-field");
  SweepPtr sweep(raw);

  json points = json::array();
  std::vector<sicspin_transitions> ts(sicspin_population_size(pop.get()));
  for (std::size_t i = 0; i < sicspin_sweep_size(sweep.get()); ++i) {
    json pt;
    pt["field"] = sicspin_sweep_field(sweep.get(), i);
    check(sicspin_sweep_transitions(sweep.get(), i, ts.data()), "sweep-field");
    pt["transitions"] = json::array();
    for (const auto& t : ts) pt["transitions"].push_back(transitions_json(t));
    if (!csv_prefix.empty()) {
      const std::string path = csv_prefix + "_" + std::to_string(i) + ".csv";
      write_file(path, trace_csv(sicspin_sweep_spectrum(sweep.get(), i)));
      pt["csv"] = path;
    }
    points.push_back(pt);
  }
  doc["sweep"] = points;
  emit(g, doc, warnings);
  return kExitOk;
}

int run_simulate_rabi(const Globals& g, const PopulationOpts& p, double drive, const std::string& branch,
                      double t_max, int points, double tau, double stretch, double noise, const std::string& csv) {
  json doc = document("simulate-rabi");
  std::vector<std::string> warnings;
  json& in = doc["inputs"];
  PopulationPtr pop = p.build(g, in, warnings);
  const auto b = p.field(in);
  const auto pol = p.polarization(in);
  if (points < 2 || !(t_max > 0.0)) throw InputError("need --points >= 2 and --t-max > 0");
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) times[i] = t_max * i / (points - 1);
  in["drive"] = drive;
  in["branch"] = branch;
  in["t_max"] = t_max;
  in["points"] = points;
  if (tau > 0.0) in["tau"] = tau;
  in["stretch"] = stretch;
  in["noise"] = noise;
  in["seed"] = g.seed;

  std::vector<double> freqs(sicspin_population_size(pop.get()));
  int collapsed = 0;
  sicspin_trace* raw = nullptr;
  check(sicspin_simulate_ensemble_rabi(pop.get(), b.data(), pol.data(), drive,
                                       branch == "high" ? SICSPIN_BRANCH_HIGH : SICSPIN_BRANCH_LOW, times.data(),
                                       times.size(), tau, stretch, &raw, freqs.data(), &collapsed),
        "simulate-rabi");
  TracePtr trace(raw);
  if (noise > 0.0) {
    sicspin_trace* noisy = nullptr;
    check(sicspin_trace_add_noise(trace.get(), SICSPIN_NOISE_GAUSSIAN, noise, g.seed, &noisy), "noise");
    trace.reset(noisy);
  }
  if (collapsed) warnings.push_back("orientations share a Rabi frequency; beating collapses");

  doc["params"] = {{"rabi_freqs", freqs}, {"beating_collapsed", collapsed != 0}};
  doc["trace"] = trace_json(trace.get());
  if (!csv.empty()) {
    write_file(csv, trace_csv(trace.get()));
    doc["csv"] = csv;
  }
  emit(g, doc, warnings);
  return kExitOk;
}

std::pair<std::string, std::string> split_kv(const std::string& s, char sep, const std::string& what) {
  const std::size_t pos = s.find(sep);
  if (pos == std::string::npos || pos == 0) throw InputError(what + ": expected name" + sep + "value, got '" + s + "'");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

int run_fit(const Globals& g, const std::string& input, const std::string& model, const std::vector<std::string>& inits,
            const std::vector<std::string>& bounds, int max_iter, int multi_start, int ramsey_mods,
            const std::string& csv) {
  json doc = document("fit");
  std::vector<std::string> warnings;
  json& in = doc["inputs"];
  in["input"] = input;
  in["model"] = model;

  const std::size_t n_params = sicspin_model_params(model.c_str(), ramsey_mods, nullptr, nullptr, 0);
  if (n_params == 0) throw InputError("unknown model '" + model + "'");

  sicspin_trace* raw = nullptr;
  check(sicspin_trace_parse_csv(read_file(input).c_str(), &raw), input);
  TracePtr trace(raw);

  std::vector<std::string> init_names;
  std::vector<double> init_values;
  json init_json = json::object();
  for (const auto& kv : inits) {
    auto [k, v] = split_kv(kv, '=', "--init");
    init_values.push_back(parse_double(v, "--init " + k));
    init_names.push_back(k);
    init_json[k] = init_values.back();
  }
  std::vector<std::string> bound_names;
  std::vector<double> lo, hi;
  json bounds_json = json::object();
  for (const auto& kv : bounds) {
    auto [k, range] = split_kv(kv, '=', "--bounds");
    auto [l, h] = split_kv(range, ':', "--bounds " + k);
    bound_names.push_back(k);
    lo.push_back(parse_double(l, "--bounds " + k));
    hi.push_back(parse_double(h, "--bounds " + k));
    bounds_json[k] = {lo.back(), hi.back()};
  }
  in["init"] = init_json;
  in["bounds"] = bounds_json;

  sicspin_fit_options opts = sicspin_fit_options_default();
  opts.max_iterations = max_iter;
  opts.multi_start = multi_start > 0 ? multi_start : (sicspin_model_multi_modal(model.c_str()) ? 8 : 1);
  opts.seed = g.seed;
  opts.ramsey_modulations = ramsey_mods;
  in["max_iterations"] = max_iter;
  in["multi_start"] = opts.multi_start;
  in["seed"] = g.seed;
  if (model == "ramsey") in["ramsey_modulations"] = ramsey_mods;

  std::vector<const char*> in_ptrs, b_ptrs;
  for (const auto& s : init_names) in_ptrs.push_back(s.c_str());
  for (const auto& s : bound_names) b_ptrs.push_back(s.c_str());
  sicspin_fit_result* fr = nullptr;
  check(sicspin_fit(trace.get(), model.c_str(), in_ptrs.data(), init_values.data(), init_values.size(), b_ptrs.data(),
                    lo.data(), hi.data(), lo.size(), &opts, &fr),
        "fit");
  FitPtr result(fr);

  json params = json::object();
  json sigmas = json::object();
  std::vector<double> values;
  const bool have_sigma = sicspin_fit_result_uncertainties_available(result.get()) != 0;
  for (std::size_t i = 0; i < sicspin_fit_result_size(result.get()); ++i) {
    const char* name = sicspin_fit_result_name(result.get(), i);
    values.push_back(sicspin_fit_result_value(result.get(), i));
    params[name] = values.back();
    if (have_sigma) {
      sigmas[name] = sicspin_fit_result_sigma(result.get(), i);
    } else {
      sigmas[name] = nullptr;
    }
  }
  const bool converged = sicspin_fit_result_converged(result.get()) != 0;
  doc["params"] = params;
  doc["uncertainties"] = sigmas;
  doc["chi2_reduced"] = sicspin_fit_result_chi2_reduced(result.get());
  doc["iterations"] = sicspin_fit_result_iterations(result.get());
  doc["converged"] = converged;
  for (std::size_t i = 0; i < sicspin_fit_result_warning_count(result.get()); ++i) {
    warnings.emplace_back(sicspin_fit_result_warning(result.get(), i));
  }

  if (!csv.empty()) {
    const double* x = nullptr;
    check(sicspin_trace_data(trace.get(), &x, nullptr, nullptr), "trace");
    const std::size_t n = sicspin_trace_size(trace.get());
    std::vector<double> y(n);
    check(sicspin_model_eval(model.c_str(), ramsey_mods, values.data(), values.size(), x, n, y.data()), "model");
    sicspin_trace* curve = nullptr;
    check(sicspin_trace_create(x, y.data(), nullptr, n, sicspin_trace_x_unit(trace.get()),
                               sicspin_trace_y_unit(trace.get()), &curve),
          "fitted curve");
    TracePtr fitted(curve);
    write_file(csv, trace_csv(fitted.get()));
    doc["csv"] = csv;
  }
  emit(g, doc, warnings);
  return converged ? kExitOk : kExitNoConvergence;
}

int run_identify(const Globals& g, const std::string& resonances, double zpl, double tol_f, double tol_z,
                 bool cryogenic) {
  json doc = document("identify");
  std::vector<std::string> warnings;
  json& in = doc["inputs"];
  std::vector<double> f;
  if (!resonances.empty()) f = parse_list(resonances, "--resonances");
  in["resonances"] = f;
  if (zpl > 0.0) in["zpl_nm"] = zpl;
  in["tol_freq"] = tol_f;
  in["tol_zpl"] = tol_z;
  in["cryogenic"] = cryogenic;
  if (!g.catalog_path.empty()) in["catalog"] = g.catalog_path;

  CatalogPtr cat = load_catalog(g);
  sicspin_matches* raw = nullptr;
  check(sicspin_identify(cat.get(), f.data(), f.size(), zpl, tol_f, tol_z, cryogenic ? 1 : 0, &raw), "identify");
  MatchesPtr m(raw);
  json ranked = json::array();
  for (std::size_t i = 0; i < sicspin_matches_size(m.get()); ++i) {
    ranked.push_back({{"name", sicspin_matches_name(m.get(), i)},
                      {"score", sicspin_matches_score(m.get(), i)},
                      {"matched_on", sicspin_matches_on(m.get(), i)}});
  }
  const bool low = sicspin_matches_low_confidence(m.get()) != 0;
  if (low) warnings.push_back("no plausible catalog match");
  doc["params"] = {{"top", sicspin_matches_size(m.get()) ? sicspin_matches_name(m.get(), 0) : ""},
                   {"low_confidence", low},
                   {"matches", ranked}};
  emit(g, doc, warnings);
  return kExitOk;
}

int run_catalog(const Globals& g) {
  json doc = document("catalog");
  if (!g.catalog_path.empty()) doc["inputs"]["catalog"] = g.catalog_path;
  CatalogPtr cat = load_catalog(g);
  char* text = nullptr;
  check(sicspin_catalog_to_json(cat.get(), &text), "catalog");
  doc["catalog"] = json::parse(take_string(text));
  emit(g, doc, {});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-defect ODMR, dynamics, fitting and identification toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "write the result document here instead of stdout");
  app.add_option("--seed", g.seed, "seed for all synthetic noise");
  app.add_option("--catalog", g.catalog_path, "catalog override file (JSON), merged by name");

  PopulationOpts odmr_pop;
  SpectrumOpts odmr_spec;
  std::string odmr_csv;
  auto* odmr = app.add_subcommand("simulate-odmr", "continuous-wave ODMR spectrum");
  odmr_pop.add(odmr);
  odmr_spec.add(odmr);
  odmr->add_option("--csv", odmr_csv, "write the spectrum as a trace CSV");

  PopulationOpts sweep_pop;
  SpectrumOpts sweep_spec;
  std::string sweep_dir = "0,0", sweep_fields, sweep_csv;
  double b_max = 180.0;
  int b_points = 10;
  auto* sweep = app.add_subcommand("sweep-field", "ODMR spectra along a field ramp");
  sweep_pop.add(sweep);
  sweep_spec.add(sweep);
  sweep->add_option("--b-dir", sweep_dir, "field direction polar,azimuth in degrees (lab frame)");
  sweep->add_option("--b-max", b_max, "largest field magnitude in Gauss");
  sweep->add_option("--b-points", b_points, "number of evenly spaced magnitudes from 0 to --b-max");
  sweep->add_option("--fields", sweep_fields, "explicit ascending magnitudes in Gauss");
  sweep->add_option("--csv", sweep_csv, "CSV prefix; writes <prefix>_<i>.csv per field");

  PopulationOpts rabi_pop;
  double drive = 5.0, t_max = 2.0, tau = 0.0, stretch = 1.0, noise = 0.0;
  int rabi_points = 401;
  std::string branch = "low", rabi_csv;
  auto* rabi = app.add_subcommand("simulate-rabi", "ensemble Rabi oscillation over defect orientations");
  rabi_pop.add(rabi);
  rabi->add_option("--drive", drive, "drive amplitude in MHz");
  rabi->add_option("--branch", branch)->check(CLI::IsMember({"low", "high"}));
  rabi->add_option("--t-max", t_max, "us");
  rabi->add_option("--points", rabi_points);
  rabi->add_option("--tau", tau, "decay timescale in us (0 = none)");
  rabi->add_option("--stretch", stretch, "decay stretch exponent");
  rabi->add_option("--noise", noise, "additive Gaussian noise sigma");
  rabi->add_option("--csv", rabi_csv, "write the trace CSV");

  std::string fit_input, fit_model, fit_csv;
  std::vector<std::string> fit_inits, fit_bounds;
  int max_iter = 200, multi_start = 0, ramsey_mods = 0;
  auto* fitc = app.add_subcommand("fit", "least-squares fit of a registered model to a trace CSV");
  fitc->add_option("--input", fit_input, "trace CSV")->required();
  fitc->add_option("--model", fit_model, "g2, saturation, ramsey, echo, t1, rabi-beating")->required();
  fitc->add_option("--init", fit_inits, "initial value name=value (repeatable)");
  fitc->add_option("--bounds", fit_bounds, "bounds name=lo:hi (repeatable)");
  fitc->add_option("--max-iterations", max_iter);
  fitc->add_option("--multi-start", multi_start, "replicas (default 8 for multi-modal models, else 1)");
  fitc->add_option("--ramsey-modulations", ramsey_mods, "cosine modulation factors for the ramsey model");
  fitc->add_option("--csv", fit_csv, "write the fitted curve as a trace CSV");

  std::string id_res;
  double zpl = 0.0, tol_f = 5.0, tol_z = 2.0;
  bool cryogenic = false;
  auto* ident = app.add_subcommand("identify", "rank catalog species against measured signatures");
  ident->add_option("--resonances", id_res, "f1[,f2,...] in MHz");
  ident->add_option("--zpl", zpl, "zero-phonon line in nm");
  ident->add_option("--tol-freq", tol_f, "MHz");
  ident->add_option("--tol-zpl", tol_z, "nm");
  ident->add_flag("--cryogenic", cryogenic, "match against cryogenic ZFS");

  auto* catalog = app.add_subcommand("catalog", "print the active catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*odmr) return run_simulate_odmr(g, odmr_pop, odmr_spec, odmr_csv);
    if (*sweep) return run_sweep_field(g, sweep_pop, sweep_spec, sweep_dir, b_max, b_points, sweep_fields, sweep_csv);
    if (*rabi) return run_simulate_rabi(g, rabi_pop, drive, branch, t_max, rabi_points, tau, stretch, noise, rabi_csv);
    if (*fitc) return run_fit(g, fit_input, fit_model, fit_inits, fit_bounds, max_iter, multi_start, ramsey_mods, fit_csv);
    if (*ident) return run_identify(g, id_res, zpl, tol_f, tol_z, cryogenic);
    if (*catalog) return run_catalog(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
