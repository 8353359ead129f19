#ifndef DANSURF_CLI_HPP
#define DANSURF_CLI_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dansurf/diffmaps.hpp"

namespace dansurf {

enum class OutputFormat { text, json };

/// Everything one invocation works on. All named objects share `surface`.
struct Session {
  SurfacePtr surface;
  std::map<std::string, Derivation> derivations;
  std::map<std::string, RingMap> maps;
  unsigned cap = 0;  // 0 = per-derivation default
  std::uint64_t seed = 20240229;
  OutputFormat format = OutputFormat::text;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int invalid = 2;
}  // namespace exit_code

/// Option values of the form `@path` are replaced by the file's contents.
std::string resolve_argument(const std::string& value);

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dansurf

#endif
