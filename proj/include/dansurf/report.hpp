#ifndef DANSURF_REPORT_HPP
#define DANSURF_REPORT_HPP

#include <string>

#include "json.hpp"

#include "dansurf/isotropy.hpp"

namespace dansurf {

/// {suite, surface, g, checks: [{family, params, expected, observed, witness?}], pass}
nlohmann::ordered_json to_json(const VerifyReport& report);

/// Fixed-width table, one row per check, followed by a PASS/FAIL summary line.
std::string to_text(const VerifyReport& report);

}  // namespace dansurf

#endif
