#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace argeslab {

/// n observations (rows) of p variables (columns).
struct Dataset {
  Eigen::MatrixXd values;
  std::vector<std::string> names;  // empty unless read with a header

  int n() const { return static_cast<int>(values.rows()); }
  int p() const { return static_cast<int>(values.cols()); }
};

/// Comma-separated values, one observation per line. Blank lines are skipped.
/// Throws ParseError (with line number) on ragged rows or non-numeric cells,
/// std::ios_base::failure when the file cannot be opened.
Dataset read_csv(const std::string& path, bool header = false);
Dataset parse_csv(const std::string& text, bool header = false);
/// Writes doubles in shortest round-trip form.
void write_csv(const std::string& path, const Dataset& d, bool header = false);
std::string format_csv(const Dataset& d, bool header = false);

}  // namespace argeslab
