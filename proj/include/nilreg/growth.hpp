#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilreg/group.hpp"

namespace nilreg {

// Formula degrees are exact integers from lattice ranks; the fit is a
// verification layer, never the source of truth.
int bass_guivarch(const GroupSpec& spec);
int relative_degree(const GroupSpec& spec, const SubgroupSpec& sub);
int schreier_degree(const GroupSpec& spec, const SubgroupSpec& sub);

// d_j^{H;G} for j = 1..m, from the catalog H_j generator lists.
std::vector<int> relative_ranks(const GroupSpec& spec, const SubgroupSpec& sub);

struct FitWindow {
  int lo = 0;  // inclusive
  int hi = 0;  // inclusive
};

// Least-squares slope of log counts against log n over the window.
// counts[n] must be positive there; fewer than 3 points is an error.
double fit_exponent(const std::vector<std::uint64_t>& counts, FitWindow w,
                    double* residual = nullptr);

FitWindow default_window(int radius);  // [N/3, N]

struct GrowthReport {
  std::string group;
  std::string subgroup;  // empty for the full group
  std::string kind;      // "ball", "relative" or "schreier"
  int degree = 0;
  double fitted = 0.0;
  double residual = 0.0;
  FitWindow window;
  double tolerance = 0.4;
  bool match = false;

  std::string to_json() const;
};

GrowthReport make_report(const std::string& group, const std::string& subgroup,
                         const std::string& kind, int degree,
                         const std::vector<std::uint64_t>& counts, FitWindow w,
                         double tolerance);

}  // namespace nilreg
