#pragma once

#include <string>
#include <vector>

#include "perceptlet/model.hpp"

namespace perceptlet {

/// How the CSV y column maps to the logical value the learner targets.
enum class YSpace {
  logical,     // y already in [0,1]
  perception,  // y in [-1,+1], mapped by (1+y)/2
  tanh_real,   // unbounded y, mapped by (1+tanh(y))/2
};

struct CsvReadOptions {
  YSpace y_space = YSpace::logical;
};

/// Parses `x,y` text: x is the first column, y the last, extra columns in
/// between are ignored (so a multi-level series dump feeds straight back in,
/// with the finest estimate as the target). A header row is auto-detected by
/// a non-numeric first cell; `#` lines are comments; LF and CRLF both work.
/// Throws ParseError naming the 1-based line of any problem. x is passed
/// through untouched (range checks belong to the learner, which knows
/// whether an input mapping applies).
std::vector<Sample> parse_samples_csv(const std::string& text,
                                      const CsvReadOptions& options);

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

}  // namespace perceptlet
