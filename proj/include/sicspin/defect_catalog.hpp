#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sicspin/odmr_spectrum.hpp"
#include "sicspin/photon_stats.hpp"
#include "sicspin/spin_hamiltonian.hpp"

namespace sicspin {

enum class OrientationClass { CAxis, Basal };

enum class TempTrend { ContrastDropsCold, ContrastRisesCold, ContrastStable, MixedBranches };

/// One species. Frequencies in MHz, wavelengths in nm, times in us.
struct DefectRecord {
  std::string name;
  OrientationClass orientation_class = OrientationClass::CAxis;
  std::vector<double> zero_field_resonances_roomT;
  std::vector<double> zfs_cryo;
  std::optional<double> zpl_nm;
  std::optional<double> zpl_ev;
  std::optional<double> roomT_contrast;
  std::optional<double> i_sat;  // kcps
  std::optional<double> p_sat;  // mW
  std::optional<double> t2_star;
  std::optional<double> t2;
  std::optional<double> t1;
  std::optional<TempTrend> temp_trend;
  bool modified_divacancy = false;
  // D and E as quoted alongside the resonances, when they were quoted.
  std::optional<double> reported_D;
  std::optional<double> reported_E;
  std::vector<std::string> notes;

  /// At least one of resonances or ZPL; resonance lists ascending.
  void validate() const;

  /// D and E from the room-temperature resonances (a single line means E = 0).
  std::optional<ZfsParams> zfs(double g = kDefaultG) const;
  std::optional<SaturationParams> saturation() const;
  /// Orientation ensemble for simulations; c-axis gives one orientation, basal three.
  std::optional<DefectPopulation> population(double contrast_fallback = 0.1) const;
};

enum class MatchedOn { None, Resonances, Zpl, Both };

struct Match {
  std::string name;
  double score = 0.0;
  MatchedOn matched_on = MatchedOn::None;
};

struct MatchResult {
  std::vector<Match> ranked;  // descending score, ties alphabetical
  bool low_confidence = false;
};

struct IdentifyOptions {
  double tol_freq = 5.0;  // MHz
  double tol_zpl = 2.0;   // nm
  bool cryogenic = false;
};

struct CensusResult {
  std::size_t total = 0;
  std::vector<std::pair<std::string, std::size_t>> counts;  // catalog order, then "other"
  std::vector<std::pair<std::string, double>> fractions;
  double modified_fraction = 0.0;
  std::vector<std::string> warnings;
};

/// Immutable after construction; lookups accept the Unicode prime as an alias for '.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<DefectRecord> records);

  static const Catalog& builtin();

  const std::vector<DefectRecord>& records() const { return records_; }
  const DefectRecord* find(std::string_view name) const;

  /// Field-wise merge by name from a JSON override document (array of records
  /// or {"records": [...]}); unknown names are appended.
  Catalog merged(std::string_view json_text) const;
  std::string to_json() const;

 private:
  std::vector<DefectRecord> records_;
};

/// Normalizes species labels: U+2032 prime becomes an ASCII apostrophe.
std::string canonical_name(std::string_view name);

/// score = sum over query features of exp(-(delta / tol)^2) against each record's nearest feature.
MatchResult identify(const Catalog& catalog, std::span<const double> resonances, std::optional<double> zpl_nm,
                     const IdentifyOptions& opt = {});

CensusResult census(const Catalog& catalog, std::span<const std::string> labels);

inline constexpr double kHcEvNm = 1239.8419843;

double nm_to_ev(double wavelength_nm);
double ev_to_nm(double energy_ev);

std::string to_string(OrientationClass c);
std::string to_string(TempTrend t);
std::string to_string(MatchedOn m);

}  // namespace sicspin
