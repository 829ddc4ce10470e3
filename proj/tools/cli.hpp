#ifndef LTC_TOOLS_CLI_HPP
#define LTC_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "ltc/approximation.hpp"

namespace ltc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParse = 2;
inline constexpr int kNumeric = 3;
inline constexpr int kViolations = 4;  // verify found bound violations

/// Runs one command line (without the program name). Normal output goes
/// to `out`; failures print a first line "ERROR <category>: <detail>" to
/// `err` and return the category's exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Text report of an approximation run, one "key value" pair per line.
std::string format_report(const ApproximationReport& report, const std::string& field_text,
                          const std::string& domain_text, const Eigen::VectorXd& x0, double horizon,
                          const PipelineConfig& config);

/// Paired CSV: t, ref_x1..ref_xn, ltc_x1..ltc_xn on the common grid.
std::string format_paired_csv(const ApproximationReport& report);

}  // namespace ltc::cli

#endif  // LTC_TOOLS_CLI_HPP
