#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "berk/equidist.hpp"
#include "berk/errors.hpp"

namespace berk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kFactorBound = 3,
  kPrecisionCap = 4,
  kDomainError = 5,
};

int exit_code_for(const Error& e);

/// Serializes a powers-experiment report; the layout is fixed so equal
/// runs give byte-identical files.
std::string report_json(const StatReport& report, const FieldSpec& spec,
                        const std::string& point_text, unsigned digits);

/// Header `l,poly_id,S_num,S_den,S_decimal,count_below_1,count_below_1_2`,
/// one row per checkpoint and member.
std::string report_csv(const StatReport& report, unsigned digits);

/// Runs one CLI invocation; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berk::cli
