#ifndef NHF_CLI_HPP
#define NHF_CLI_HPP

#include <ostream>

#include "json.hpp"
#include "nhf/report.hpp"

namespace nhf {

/// Exit codes: 0 when every check passes, 1 when a mathematical check fails,
/// 2 for malformed input or structural errors. The report goes to `out`,
/// diagnostics and wall time to `err`.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// JSON form of a report's checks. Non-finite numbers become strings.
nlohmann::json report_json(const Report& report);

}  // namespace nhf

#endif  // NHF_CLI_HPP
