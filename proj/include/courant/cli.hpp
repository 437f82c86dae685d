#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace courant {

struct RunConfig {
  std::string subcommand;          // verify | gric | flow | dualize | list
  std::string backend = "point";   // point | chart
  std::string algebra;             // built-in name, catalog entry or JSON path
  std::string preset;              // background or invariant family
  std::string triple = "su2_semiabelian";
  std::string e0 = "identity";
  int samples = 5;
  std::optional<double> tol;       // overrides every check tolerance
  std::uint64_t seed = 1;
  double t_end = 0.1;
  double h = 1e-3;
  std::string out = "courant-out";
};

/// Fills defaults and throws ConfigInvalid on inconsistent settings.
void validate(RunConfig& config);

/// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid configuration.
/// Writes report JSON, CSV data and manifest.json under config.out.
int run(RunConfig config, std::ostream& log);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);
/// printf("%.12e").
std::string format_double(double v);

}  // namespace courant
