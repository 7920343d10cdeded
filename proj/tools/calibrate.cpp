// Maintainer tool: runs the verification suite on the default grid and
// prints the observed ratio ranges per check, as input for freezing the
// calibration windows (calibration/windows.json and src/calibration.cpp).

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>

#include "orderstat/verify.hpp"

int main(int argc, char** argv) {
  orderstat::SuiteConfig cfg;
  cfg.suite = "all";
  cfg.grid = orderstat::default_grid({64, 256, 1024});
  cfg.samples = 200000;
  cfg.seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20250807;
  cfg.threads = 0;

  auto result = orderstat::run_suite(cfg);

  struct Range {
    double lo = 1e300, hi = -1e300;
    int count = 0;
  };
  std::map<std::string, Range> ranges;
  for (const auto& r : result.reports) {
    if (r.verdict == orderstat::Verdict::HypothesisNotMet) continue;
    std::string key = r.theorem_id;
    if (r.verdict == orderstat::Verdict::Informational) key += "_info";
    if (r.theorem_id == "kmax_over_tstar_half" ||
        r.theorem_id == "iso_kmin_scaled") {
      // caps differ between the unconditional and the general case
      key += r.note.find("not asserted") == std::string::npos &&
                     r.note.find("not unconditional") == std::string::npos
                 ? ""
                 : "_general";
    }
    auto& rg = ranges[key];
    rg.lo = std::min(rg.lo, r.ratio);
    rg.hi = std::max(rg.hi, r.ratio);
    rg.count++;
  }

  std::printf("sweep seed %llu, samples %zu\n",
              static_cast<unsigned long long>(cfg.seed), cfg.samples);
  for (const auto& [key, rg] : ranges)
    std::printf("%-28s count=%3d ratio in [%.6f, %.6f]\n", key.c_str(),
                rg.count, rg.lo, rg.hi);
  return 0;
}
