#ifndef LTC_TRAJECTORY_IO_HPP
#define LTC_TRAJECTORY_IO_HPP

#include <ostream>
#include <string>
#include <string_view>

#include "ltc/solver.hpp"

namespace ltc {

// "%.17g": enough digits for strtod to give back the same double.
std::string format_double(double v);

// CSV with header "t,v0,v1,...,v{k-1}" and one row per recorded time.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::string trajectory_to_csv(const Trajectory& traj);

/// Throws ParseError with the 1-based line (and column of the field) on
/// a bad header, ragged rows or malformed numbers.
Trajectory parse_trajectory_csv(std::string_view text);

Trajectory load_trajectory(const std::string& path);
void save_trajectory(const Trajectory& traj, const std::string& path);

}  // namespace ltc

#endif  // LTC_TRAJECTORY_IO_HPP
