#include "perceptlet/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string_view>

#include "perceptlet/io.hpp"

namespace perceptlet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_number(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), last, out);
  return ec == std::errc() && ptr == last;
}

std::string position(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

}  // namespace

std::vector<Sample> parse_samples_csv(const std::string& text,
                                      const CsvReadOptions& options) {
  std::vector<Sample> samples;
  std::string_view rest(text);
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (!rest.empty()) {
    const std::size_t eol = rest.find('\n');
    std::string_view raw =
        eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view()
                                         : rest.substr(eol + 1);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> cells;
    std::string_view scan = line;
    while (true) {
      const std::size_t comma = scan.find(',');
      if (comma == std::string_view::npos) {
        cells.push_back(scan);
        break;
      }
      cells.push_back(scan.substr(0, comma));
      scan = scan.substr(comma + 1);
    }
    if (cells.size() < 2) {
      throw ParseError(position(line_no) +
                       "expected at least 2 columns (x first, y last), got " +
                       std::to_string(cells.size()));
    }

    double x = 0.0;
    if (!parse_number(cells.front(), x)) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ParseError(position(line_no) + "not a number: '" +
                       std::string(trim(cells.front())) + "'");
    }
    header_allowed = false;
    double y = 0.0;
    if (!parse_number(cells.back(), y)) {
      throw ParseError(position(line_no) + "not a number: '" +
                       std::string(trim(cells.back())) + "'");
    }

    switch (options.y_space) {
      case YSpace::logical:
        if (!(y >= 0.0 && y <= 1.0)) {
          throw ParseError(position(line_no) + "y=" +
                           std::string(trim(cells.back())) +
                           " outside [0,1]; pass --y-space perception or "
                           "--map-output tanh");
        }
        break;
      case YSpace::perception:
        if (!(y >= -1.0 && y <= 1.0)) {
          throw ParseError(position(line_no) + "y=" +
                           std::string(trim(cells.back())) +
                           " outside [-1,+1] for --y-space perception");
        }
        y = 0.5 * (1.0 + y);
        break;
      case YSpace::tanh_real:
        y = 0.5 * (1.0 + std::tanh(y));
        break;
    }
    samples.push_back(Sample{x, y});
  }
  if (samples.empty()) {
    throw ParseError("no data rows found");
  }
  return samples;
}

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace perceptlet
