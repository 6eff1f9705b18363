#include "sicspin/trace.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sicspin/error.hpp"

namespace sicspin {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    parse_error(line_no, "non-numeric cell '" + std::string(cell) + "'");
  }
  return v;
}

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

Trace::Trace(std::vector<double> x, std::vector<double> y, std::vector<double> y_err, Units units)
    : x_(std::move(x)), y_(std::move(y)), y_err_(std::move(y_err)), units_(std::move(units)) {
  if (x_.size() != y_.size()) fail(ErrorCode::InvalidArgument, "trace: x and y lengths differ");
  if (!y_err_.empty() && y_err_.size() != x_.size()) {
    fail(ErrorCode::InvalidArgument, "trace: y_err length differs from x");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
      fail(ErrorCode::NonFinite, "trace: non-finite value at index " + std::to_string(i));
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      fail(ErrorCode::InvalidArgument, "trace: x not strictly increasing at index " + std::to_string(i));
    }
    if (!y_err_.empty() && !(y_err_[i] > 0.0 && std::isfinite(y_err_[i]))) {
      fail(ErrorCode::InvalidArgument, "trace: y_err must be positive at index " + std::to_string(i));
    }
  }
}

Trace parse_trace_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty() || trim(lines[0]).empty()) parse_error(1, "missing header");

  const std::vector<std::string_view> header = split(trim(lines[0]), ',');
  bool with_err = false;
  if (header.size() == 2 && header[0] == "x" && header[1] == "y") {
    with_err = false;
  } else if (header.size() == 3 && header[0] == "x" && header[1] == "y" && header[2] == "yerr") {
    with_err = true;
  } else {
    parse_error(1, "header must be 'x,y' or 'x,y,yerr'");
  }
  const std::size_t width = with_err ? 3 : 2;

  std::vector<double> x, y, yerr;
  Units units;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view tag = "units:";
      std::string_view rest = trim(line.substr(1));
      if (rest.substr(0, tag.size()) == tag) {
        const auto parts = split(trim(rest.substr(tag.size())), ',');
        if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
          parse_error(line_no, "units comment must read '# units: <x-unit>,<y-unit>'");
        }
        units = Units{std::string(parts[0]), std::string(parts[1])};
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != width) {
      parse_error(line_no, "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
    }
    const double xv = parse_number(cells[0], line_no);
    if (!x.empty() && !(xv > x.back())) parse_error(line_no, "x must be strictly increasing");
    x.push_back(xv);
    y.push_back(parse_number(cells[1], line_no));
    if (with_err) {
      const double e = parse_number(cells[2], line_no);
      if (!(e > 0.0)) parse_error(line_no, "yerr must be positive");
      yerr.push_back(e);
    }
  }
  return Trace(std::move(x), std::move(y), std::move(yerr), std::move(units));
}

std::string format_trace_csv(const Trace& trace) {
  std::string out = trace.has_errors() ? "x,y,yerr\n" : "x,y\n";
  out += "# units: " + trace.units().x + "," + trace.units().y + "\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    append_number(out, trace.x()[i]);
    out += ',';
    append_number(out, trace.y()[i]);
    if (trace.has_errors()) {
      out += ',';
      append_number(out, trace.y_err()[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sicspin
