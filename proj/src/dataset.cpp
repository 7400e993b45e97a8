#include "argeslab/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "argeslab/error.hpp"

namespace argeslab {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Dataset parse_csv(const std::string& text, bool header) {
  Dataset d;
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int p = -1;
  bool need_header = header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (need_header) {
      for (auto c : cells) d.names.emplace_back(trim(c));
      p = static_cast<int>(cells.size());
      need_header = false;
      continue;
    }
    if (p < 0) p = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != p)
      throw ParseError("expected " + std::to_string(p) + " fields, found " + std::to_string(cells.size()),
                       lineno);
    std::vector<double> row(p);
    for (int j = 0; j < p; ++j) {
      auto cell = trim(cells[j]);
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[j]);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
        throw ParseError("field " + std::to_string(j + 1) + " is not a number: '" + std::string(cell) + "'",
                         lineno);
    }
    rows.push_back(std::move(row));
  }
  if (p < 0) p = 0;
  d.values.resize(static_cast<Eigen::Index>(rows.size()), p);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j < p; ++j) d.values(static_cast<Eigen::Index>(r), j) = rows[r][j];
  return d;
}

Dataset read_csv(const std::string& path, bool header) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), header);
}

std::string format_csv(const Dataset& d, bool header) {
  std::string out;
  if (header) {
    for (int j = 0; j < d.p(); ++j) {
      if (j) out += ',';
      out += j < static_cast<int>(d.names.size()) ? d.names[j] : "X" + std::to_string(j);
    }
    out += '\n';
  }
  char buf[64];
  for (int i = 0; i < d.n(); ++i) {
    for (int j = 0; j < d.p(); ++j) {
      if (j) out += ',';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d.values(i, j));
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const Dataset& d, bool header) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  f << format_csv(d, header);
  if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace argeslab
