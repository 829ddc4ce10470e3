#include "ltc/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc {
namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return cells;
    start = comma + 1;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (std::size_t i = 0; i < traj.dimension(); ++i) out << ",v" << i;
  out << '\n';
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    out << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states.cols(); ++i) {
      out << ',' << format_double(traj.states(static_cast<Eigen::Index>(k), i));
    }
    out << '\n';
  }
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  return out.str();
}

Trajectory parse_trajectory_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("trajectory CSV is empty", 1, 1);

  const auto header = split_row(lines[0]);
  if (header[0] != "t") throw ParseError("line 1: header must start with 't'", 1, 1);
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "v" + std::to_string(i - 1)) {
      throw ParseError("line 1: expected column 'v" + std::to_string(i - 1) + "'", 1, 0);
    }
  }
  const std::size_t dim = header.size() - 1;

  Trajectory traj;
  traj.states.resize(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(dim));
  traj.times.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_row(lines[r]);
    const std::size_t line_no = r + 1;
    if (cells.size() != dim + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim + 1) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no, 0);
    }
    std::size_t column = 1;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      const auto cell = cells[c];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(column) +
                             ": malformed number '" + std::string(cell) + "'",
                         line_no, column);
      }
      if (c == 0) {
        if (!traj.times.empty() && !(v > traj.times.back())) {
          throw ParseError("line " + std::to_string(line_no) + ": times must be strictly increasing", line_no, 1);
        }
        traj.times.push_back(v);
      } else {
        traj.states(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1)) = v;
      }
      column += cell.size() + 1;
    }
  }
  return traj;
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read trajectory file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_trajectory_csv(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trajectory file '" + path + "'");
  write_trajectory_csv(out, traj);
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace ltc
