#include "nilreg/growth.hpp"

#include <cmath>
#include <sstream>

#include "nilreg/lattice.hpp"

namespace nilreg {

int bass_guivarch(const GroupSpec& spec) {
  int d = 0;
  for (int j = 1; j <= spec.nil_class; ++j) d += j * spec.levels[j - 1].rank;
  return d;
}

std::vector<int> relative_ranks(const GroupSpec& spec, const SubgroupSpec& sub) {
  if (!sub.hj_gens)
    fail(ErrorKind::Precondition,
         "relative_degree: subgroup " + sub.name + " has no H_j generator lists");
  std::vector<int> ranks;
  for (int j = 1; j <= spec.nil_class; ++j) {
    std::vector<std::vector<Int>> rows;
    for (const auto& name : (*sub.hj_gens)[j - 1]) {
      const GroupElement& h = spec.element(name);
      if (!spec.in_level(j, h))
        fail(ErrorKind::Validation, "relative_degree: H_" + std::to_string(j) +
                                        " generator " + name +
                                        " fails the G_" + std::to_string(j) +
                                        " predicate");
      rows.push_back(project(spec, j, h));
    }
    ranks.push_back(rows.empty() ? 0 : lattice_rank(rows));
  }
  return ranks;
}

int relative_degree(const GroupSpec& spec, const SubgroupSpec& sub) {
  auto ranks = relative_ranks(spec, sub);
  int d = 0;
  for (int j = 1; j <= spec.nil_class; ++j) d += j * ranks[j - 1];
  return d;
}

int schreier_degree(const GroupSpec& spec, const SubgroupSpec& sub) {
  const int d = bass_guivarch(spec) - relative_degree(spec, sub);
  if (d < 0)
    fail(ErrorKind::Validation,
         "schreier_degree: negative degree, the catalog data for " + sub.name +
             " is corrupted");
  return d;
}

FitWindow default_window(int radius) {
  return FitWindow{std::max(1, radius / 3), radius};
}

double fit_exponent(const std::vector<std::uint64_t>& counts, FitWindow w,
                    double* residual) {
  if (w.lo < 0 || w.hi >= static_cast<int>(counts.size()) || w.lo > w.hi)
    fail(ErrorKind::Precondition, "fit_exponent: window outside counts");
  const int pts = w.hi - w.lo + 1;
  if (pts < 3)
    fail(ErrorKind::Precondition, "fit_exponent: fewer than 3 points in window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = w.lo; n <= w.hi; ++n) {
    if (n == 0 || counts[n] == 0)
      fail(ErrorKind::Precondition, "fit_exponent: nonpositive point in window");
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(counts[n]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = pts * sxx - sx * sx;
  if (denom <= 0) fail(ErrorKind::Precondition, "fit_exponent: degenerate window");
  const double slope = (pts * sxy - sx * sy) / denom;
  if (residual) {
    const double icept = (sy - slope * sx) / pts;
    double ss = 0;
    for (int n = w.lo; n <= w.hi; ++n) {
      const double x = std::log(static_cast<double>(n));
      const double y = std::log(static_cast<double>(counts[n]));
      const double e = y - (slope * x + icept);
      ss += e * e;
    }
    *residual = std::sqrt(ss / pts);
  }
  return slope;
}

GrowthReport make_report(const std::string& group, const std::string& subgroup,
                         const std::string& kind, int degree,
                         const std::vector<std::uint64_t>& counts, FitWindow w,
                         double tolerance) {
  GrowthReport r;
  r.group = group;
  r.subgroup = subgroup;
  r.kind = kind;
  r.degree = degree;
  r.window = w;
  r.tolerance = tolerance;
  r.fitted = fit_exponent(counts, w, &r.residual);
  r.match = std::abs(r.fitted - degree) <= tolerance;
  return r;
}

std::string GrowthReport::to_json() const {
  std::ostringstream os;
  os.precision(12);
  os << "{\"group\":\"" << group << "\"";
  if (!subgroup.empty()) os << ",\"subgroup\":\"" << subgroup << "\"";
  os << ",\"kind\":\"" << kind << "\",\"degree\":" << degree
     << ",\"fitted\":" << fitted << ",\"residual\":" << residual
     << ",\"window\":[" << window.lo << "," << window.hi << "]"
     << ",\"tolerance\":" << tolerance
     << ",\"verdict\":\"" << (match ? "match" : "mismatch") << "\"}";
  return os.str();
}

}  // namespace nilreg
