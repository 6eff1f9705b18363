#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sicspin {

struct Units {
  std::string x = "unitless";
  std::string y = "unitless";

  bool operator==(const Units&) const = default;
};

/// A measured or synthetic series. x is strictly increasing; y_err, when
/// present, is strictly positive and the same length as x.
class Trace {
 public:
  Trace() = default;
  Trace(std::vector<double> x, std::vector<double> y, std::vector<double> y_err = {}, Units units = {});

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& y_err() const { return y_err_; }
  bool has_errors() const { return !y_err_.empty(); }
  const Units& units() const { return units_; }

  bool operator==(const Trace&) const = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> y_err_;
  Units units_;
};

/// Parses the `x,y` / `x,y,yerr` CSV format. Errors name the offending line.
Trace parse_trace_csv(std::string_view text);

/// Emits the same format: header, optional `# units:` line, shortest round-trip numbers.
std::string format_trace_csv(const Trace& trace);

}  // namespace sicspin
