#include "sicspin/defect_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sicspin/error.hpp"

namespace sicspin {

using json = nlohmann::ordered_json;

std::string to_string(OrientationClass c) { return c == OrientationClass::CAxis ? "c-axis" : "basal"; }

std::string to_string(TempTrend t) {
  switch (t) {
    case TempTrend::ContrastDropsCold:
      return "contrast-drops-cold";
    case TempTrend::ContrastRisesCold:
      return "contrast-rises-cold";
    case TempTrend::ContrastStable:
      return "contrast-stable";
    case TempTrend::MixedBranches:
      return "mixed-branches";
  }
  return "contrast-stable";
}

std::string to_string(MatchedOn m) {
  switch (m) {
    case MatchedOn::None:
      return "none";
    case MatchedOn::Resonances:
      return "resonances";
    case MatchedOn::Zpl:
      return "zpl";
    case MatchedOn::Both:
      return "both";
  }
  return "none";
}

namespace {

OrientationClass orientation_from(const std::string& s) {
  if (s == "c-axis") return OrientationClass::CAxis;
  if (s == "basal") return OrientationClass::Basal;
  fail(ErrorCode::Parse, "orientation_class must be 'c-axis' or 'basal', got '" + s + "'");
}

TempTrend trend_from(const std::string& s) {
  for (TempTrend t : {TempTrend::ContrastDropsCold, TempTrend::ContrastRisesCold, TempTrend::ContrastStable,
                      TempTrend::MixedBranches}) {
    if (to_string(t) == s) return t;
  }
  fail(ErrorCode::Parse, "unknown temp_trend '" + s + "'");
}

}  // namespace

std::string canonical_name(std::string_view name) {
  std::string out(name);
  static const std::string prime = "′";
  for (std::size_t pos = out.find(prime); pos != std::string::npos; pos = out.find(prime, pos)) {
    out.replace(pos, prime.size(), "'");
  }
  return out;
}

void DefectRecord::validate() const {
  if (name.empty()) fail(ErrorCode::InvalidArgument, "catalog record without a name");
  if (zero_field_resonances_roomT.empty() && zfs_cryo.empty() && !zpl_nm) {
    fail(ErrorCode::InvalidArgument, "record '" + name + "' has neither resonances nor a ZPL");
  }
  for (const auto* list : {&zero_field_resonances_roomT, &zfs_cryo}) {
    if (!std::is_sorted(list->begin(), list->end())) {
      fail(ErrorCode::InvalidArgument, "record '" + name + "' has unsorted resonance list");
    }
    for (double f : *list) {
      if (!(f > 0.0)) fail(ErrorCode::InvalidArgument, "record '" + name + "' has a non-positive resonance");
    }
  }
  if (zpl_nm && !(*zpl_nm > 0.0)) fail(ErrorCode::InvalidArgument, "record '" + name + "' has non-positive zpl_nm");
}

std::optional<ZfsParams> DefectRecord::zfs(double g) const {
  const auto& r = zero_field_resonances_roomT;
  if (r.empty()) return std::nullopt;
  return resonances_to_zfs(r.front(), r.back(), g);
}

std::optional<SaturationParams> DefectRecord::saturation() const {
  if (!i_sat || !p_sat) return std::nullopt;
  return SaturationParams{*i_sat, *p_sat};
}

std::optional<DefectPopulation> DefectRecord::population(double contrast_fallback) const {
  const auto z = zfs();
  if (!z) return std::nullopt;
  const double c = roomT_contrast.value_or(contrast_fallback);
  return orientation_class == OrientationClass::CAxis ? DefectPopulation::c_axis(*z, c)
                                                      : DefectPopulation::basal(*z, c);
}

Catalog::Catalog(std::vector<DefectRecord> records) : records_(std::move(records)) {
  for (auto& r : records_) {
    r.name = canonical_name(r.name);
    r.validate();
  }
  for (std::size_t i = 0; i < records_.size(); ++i) {
    for (std::size_t j = i + 1; j < records_.size(); ++j) {
      if (records_[i].name == records_[j].name) {
        fail(ErrorCode::InvalidArgument, "duplicate catalog record '" + records_[i].name + "'");
      }
    }
  }
}

namespace {

Catalog make_builtin() {
  const std::string ev_note =
      "zpl_ev is the energy quoted with the species list; it does not equal hc/zpl_nm for this record, "
      "and the quoted eV list matches hc/lambda of the nm list only after pairwise reordering. zpl_nm is canonical.";

  std::vector<DefectRecord> r;

  DefectRecord pl1;
  pl1.name = "PL1";
  pl1.orientation_class = OrientationClass::CAxis;
  pl1.zero_field_resonances_roomT = {1323.5};
  r.push_back(pl1);

  DefectRecord pl3;
  pl3.name = "PL3";
  pl3.orientation_class = OrientationClass::Basal;
  pl3.zpl_nm = 1108.0;
  pl3.notes = {"reference row: conventional divacancy ZPL only"};
  r.push_back(pl3);

  DefectRecord pl4;
  pl4.name = "PL4";
  pl4.orientation_class = OrientationClass::Basal;
  pl4.zpl_nm = 1078.0;
  pl4.notes = {"reference row: conventional divacancy ZPL only"};
  r.push_back(pl4);

  DefectRecord pl5;
  pl5.name = "PL5";
  pl5.orientation_class = OrientationClass::Basal;
  pl5.zero_field_resonances_roomT = {1342.6, 1375.3};
  pl5.zfs_cryo = {1356.5, 1387.7};
  pl5.zpl_nm = 1042.2;
  pl5.zpl_ev = 1.1947;
  pl5.roomT_contrast = 0.20;
  pl5.i_sat = 70.4;
  pl5.p_sat = 1.93;
  pl5.t2_star = 1.82;
  pl5.t2 = 31.6;
  pl5.t1 = 186.6;
  pl5.temp_trend = TempTrend::MixedBranches;
  pl5.modified_divacancy = true;
  pl5.reported_D = 1358.9;
  pl5.reported_E = 16.6;
  pl5.notes = {"quoted E = 16.6 MHz differs from (1375.3 - 1342.6) / 2 = 16.35 MHz implied by the resonances; "
               "resonances are canonical",
               ev_note};
  r.push_back(pl5);

  DefectRecord pl6;
  pl6.name = "PL6";
  pl6.orientation_class = OrientationClass::CAxis;
  pl6.zero_field_resonances_roomT = {1350.8};
  pl6.zfs_cryo = {1365.3};
  pl6.zpl_nm = 1037.8;
  pl6.zpl_ev = 1.1899;
  pl6.roomT_contrast = 0.25;
  pl6.i_sat = 225.8;
  pl6.p_sat = 2.36;
  pl6.t2_star = 1.92;
  pl6.t2 = 33.4;
  pl6.t1 = 204.1;
  pl6.temp_trend = TempTrend::ContrastStable;
  pl6.modified_divacancy = true;
  pl6.notes = {ev_note};
  r.push_back(pl6);

  DefectRecord pl7;
  pl7.name = "PL7'";
  pl7.orientation_class = OrientationClass::Basal;
  pl7.zero_field_resonances_roomT = {1135.5, 1333.0};
  pl7.zpl_nm = 1106.2;
  pl7.zpl_ev = 1.1513;
  pl7.i_sat = 31.7;
  pl7.p_sat = 2.33;
  pl7.temp_trend = TempTrend::ContrastDropsCold;
  pl7.modified_divacancy = true;
  pl7.reported_D = 1234.2;
  pl7.reported_E = 98.8;
  pl7.notes = {ev_note};
  r.push_back(pl7);

  DefectRecord pl8;
  pl8.name = "PL8'";
  pl8.orientation_class = OrientationClass::CAxis;
  pl8.zero_field_resonances_roomT = {1315.7};
  pl8.zpl_nm = 1077.1;
  pl8.zpl_ev = 1.1208;
  pl8.roomT_contrast = 0.05;
  pl8.i_sat = 106.6;
  pl8.p_sat = 1.66;
  pl8.temp_trend = TempTrend::ContrastRisesCold;
  pl8.modified_divacancy = true;
  pl8.notes = {"single resonance; E = 0 assumed for simulation, not established", ev_note};
  r.push_back(pl8);

  return Catalog(std::move(r));
}

}  // namespace

const Catalog& Catalog::builtin() {
  static const Catalog cat = make_builtin();
  return cat;
}

const DefectRecord* Catalog::find(std::string_view name) const {
  const std::string key = canonical_name(name);
  for (const auto& r : records_) {
    if (r.name == key) return &r;
  }
  return nullptr;
}

namespace {

json record_to_json(const DefectRecord& r) {
  json j;
  j["name"] = r.name;
  j["orientation_class"] = to_string(r.orientation_class);
  if (!r.zero_field_resonances_roomT.empty()) j["zero_field_resonances_roomT"] = r.zero_field_resonances_roomT;
  if (!r.zfs_cryo.empty()) j["zfs_cryo"] = r.zfs_cryo;
  const auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("zpl_nm", r.zpl_nm);
  put("zpl_ev", r.zpl_ev);
  put("roomT_contrast", r.roomT_contrast);
  put("i_sat", r.i_sat);
  put("p_sat", r.p_sat);
  put("t2_star", r.t2_star);
  put("t2", r.t2);
  put("t1", r.t1);
  if (r.temp_trend) j["temp_trend"] = to_string(*r.temp_trend);
  j["modified_divacancy"] = r.modified_divacancy;
  put("reported_D", r.reported_D);
  put("reported_E", r.reported_E);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) fail(ErrorCode::Parse, "'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(ErrorCode::Parse, "'" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(ErrorCode::Parse, "'" + key + "' must be a number");
  return v.get<double>();
}

void apply_fields(DefectRecord& r, const json& j) {
  for (const auto& [key, v] : j.items()) {
    if (key == "name") {
      continue;
    } else if (key == "orientation_class") {
      if (!v.is_string()) fail(ErrorCode::Parse, "'orientation_class' must be a string");
      r.orientation_class = orientation_from(v.get<std::string>());
    } else if (key == "zero_field_resonances_roomT") {
      r.zero_field_resonances_roomT = number_list(v, key);
    } else if (key == "zfs_cryo") {
      r.zfs_cryo = number_list(v, key);
    } else if (key == "zpl_nm") {
      r.zpl_nm = number(v, key);
    } else if (key == "zpl_ev") {
      r.zpl_ev = number(v, key);
    } else if (key == "roomT_contrast") {
      r.roomT_contrast = number(v, key);
    } else if (key == "i_sat") {
      r.i_sat = number(v, key);
    } else if (key == "p_sat") {
      r.p_sat = number(v, key);
    } else if (key == "t2_star") {
      r.t2_star = number(v, key);
    } else if (key == "t2") {
      r.t2 = number(v, key);
    } else if (key == "t1") {
      r.t1 = number(v, key);
    } else if (key == "temp_trend") {
      if (!v.is_string()) fail(ErrorCode::Parse, "'temp_trend' must be a string");
      r.temp_trend = trend_from(v.get<std::string>());
    } else if (key == "modified_divacancy") {
      if (!v.is_boolean()) fail(ErrorCode::Parse, "'modified_divacancy' must be a boolean");
      r.modified_divacancy = v.get<bool>();
    } else if (key == "reported_D") {
      r.reported_D = number(v, key);
    } else if (key == "reported_E") {
      r.reported_E = number(v, key);
    } else if (key == "notes") {
      if (!v.is_array()) fail(ErrorCode::Parse, "'notes' must be an array of strings");
      r.notes.clear();
      for (const auto& s : v) {
        if (!s.is_string()) fail(ErrorCode::Parse, "'notes' must be an array of strings");
        r.notes.push_back(s.get<std::string>());
      }
    } else {
      fail(ErrorCode::Parse, "unknown catalog field '" + key + "'");
    }
  }
}

}  // namespace

Catalog Catalog::merged(std::string_view json_text) const {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("catalog override: ") + e.what());
  }
  if (doc.is_object() && doc.contains("records")) doc = doc["records"];
  if (!doc.is_array()) fail(ErrorCode::Parse, "catalog override must be an array of records");

  std::vector<DefectRecord> out = records_;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
      fail(ErrorCode::Parse, "catalog override entries must be objects with a string 'name'");
    }
    const std::string name = canonical_name(entry["name"].get<std::string>());
    auto it = std::find_if(out.begin(), out.end(), [&](const DefectRecord& r) { return r.name == name; });
    if (it == out.end()) {
      DefectRecord fresh;
      fresh.name = name;
      apply_fields(fresh, entry);
      out.push_back(std::move(fresh));
    } else {
      apply_fields(*it, entry);
    }
  }
  return Catalog(std::move(out));
}

std::string Catalog::to_json() const {
  json arr = json::array();
  for (const auto& r : records_) arr.push_back(record_to_json(r));
  return arr.dump(2);
}

MatchResult identify(const Catalog& catalog, std::span<const double> resonances, std::optional<double> zpl_nm,
                     const IdentifyOptions& opt) {
  if (resonances.empty() && !zpl_nm) fail(ErrorCode::InvalidArgument, "identify: no resonances and no ZPL given");
  if (!(opt.tol_freq > 0.0) || !(opt.tol_zpl > 0.0)) {
    fail(ErrorCode::InvalidArgument, "identify: tolerances must be positive");
  }
  // Terms at or beyond three tolerances count as unmatched.
  const double floor = std::exp(-9.0);

  MatchResult res;
  for (const auto& rec : catalog.records()) {
    const auto& lines = opt.cryogenic ? rec.zfs_cryo : rec.zero_field_resonances_roomT;
    double score = 0.0;
    bool on_res = false;
    bool on_zpl = false;
    if (!lines.empty()) {
      for (double q : resonances) {
        double nearest = std::abs(q - lines.front());
        for (double f : lines) nearest = std::min(nearest, std::abs(q - f));
        const double term = std::exp(-std::pow(nearest / opt.tol_freq, 2));
        score += term;
        on_res = on_res || term > floor;
      }
    }
    if (zpl_nm && rec.zpl_nm) {
      const double term = std::exp(-std::pow((*zpl_nm - *rec.zpl_nm) / opt.tol_zpl, 2));
      score += term;
      on_zpl = term > floor;
    }
    const MatchedOn on = on_res && on_zpl ? MatchedOn::Both
                         : on_res         ? MatchedOn::Resonances
                         : on_zpl         ? MatchedOn::Zpl
                                          : MatchedOn::None;
    res.ranked.push_back({rec.name, score, on});
  }
  std::sort(res.ranked.begin(), res.ranked.end(), [](const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  res.low_confidence = res.ranked.empty() || res.ranked.front().score < floor;
  return res;
}

CensusResult census(const Catalog& catalog, std::span<const std::string> labels) {
  if (labels.empty()) fail(ErrorCode::InvalidArgument, "census: no labels");
  CensusResult out;
  out.total = labels.size();
  std::vector<std::size_t> counts(catalog.records().size(), 0);
  std::size_t other = 0;
  std::size_t modified = 0;
  for (const auto& label : labels) {
    const DefectRecord* rec = catalog.find(label);
    if (!rec) {
      ++other;
      out.warnings.push_back("unknown label '" + label + "' counted as other");
      continue;
    }
    ++counts[static_cast<std::size_t>(rec - catalog.records().data())];
    if (rec->modified_divacancy) ++modified;
  }
  const double n = static_cast<double>(out.total);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    out.counts.emplace_back(catalog.records()[i].name, counts[i]);
    out.fractions.emplace_back(catalog.records()[i].name, static_cast<double>(counts[i]) / n);
  }
  if (other > 0) {
    out.counts.emplace_back("other", other);
    out.fractions.emplace_back("other", static_cast<double>(other) / n);
  }
  out.modified_fraction = static_cast<double>(modified) / n;
  return out;
}

double nm_to_ev(double wavelength_nm) {
  if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm)) {
    fail(ErrorCode::InvalidArgument, "wavelength must be positive");
  }
  return kHcEvNm / wavelength_nm;
}

double ev_to_nm(double energy_ev) {
  if (!(energy_ev > 0.0) || !std::isfinite(energy_ev)) fail(ErrorCode::InvalidArgument, "energy must be positive");
  return kHcEvNm / energy_ev;
}

}  // namespace sicspin
