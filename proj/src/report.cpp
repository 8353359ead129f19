#include "dansurf/report.hpp"

#include <algorithm>
#include <sstream>

namespace dansurf {

nlohmann::ordered_json to_json(const VerifyReport& report) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json row;
    row["family"] = c.family;
    row["params"] = c.params;
    row["expected"] = c.expected;
    row["observed"] = c.observed;
    if (c.witness) row["witness"] = *c.witness;
    checks.push_back(std::move(row));
  }
  nlohmann::ordered_json out;
  out["suite"] = report.suite;
  out["surface"] = report.surface;
  out["g"] = report.g;
  out["checks"] = std::move(checks);
  out["pass"] = report.pass;
  return out;
}

std::string to_text(const VerifyReport& report) {
  std::size_t fam = 6, par = 6;
  for (const auto& c : report.checks) {
    fam = std::max(fam, c.family.size());
    par = std::max(par, std::min<std::size_t>(c.params.size(), 60));
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() > w) s = s.substr(0, w - 3) + "...";
    s.resize(w, ' ');
    return s;
  };
  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };

  std::ostringstream os;
  os << "suite:   " << report.suite << "\n"
     << "surface: " << report.surface << "\n"
     << "g:       " << report.g << "\n\n";
  os << pad("family", fam) << "  " << pad("params", par) << "  expected  observed  status\n";
  for (const auto& c : report.checks) {
    os << pad(c.family, fam) << "  " << pad(c.params, par) << "  " << pad(yn(c.expected), 8) << "  "
       << pad(yn(c.observed), 8) << "  " << (c.matches() ? "ok" : "MISMATCH") << "\n";
    if (!c.matches() && c.witness) os << "    witness: " << *c.witness << "\n";
  }
  os << "\n" << (report.pass ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
     << report.failures() << " mismatches)\n";
  return os.str();
}

}  // namespace dansurf
