#pragma once

#include <cstdint>

namespace orderstat {

/// Frozen empirical window for a ratio whose theoretical constant is
/// existential. floor/cap come from a one-time oracle sweep (see
/// calibration/windows.json for the recorded sweep).
struct Window {
  double floor;
  double cap;
};

/// Calibration table. The paper-style universal constants are not
/// reproducible quantities, so each informational ratio is regression-tested
/// against the window measured in the calibration sweep.
struct Calibration {
  uint64_t sweep_seed;
  int sweep_samples;

  Window topk_logconcave_ratio;   // E topk / (k t(k)), log-concave uncorrelated
  Window kmax_tstar_half_ratio;   // E kmax / t*(k - 1/2)
  Window kmax_multiplier;         // smallest C with P(kmax >= C t*(k-1/2)) <= 1-c
  double kmax_multiplier_prob;    // the probability floor c above
  Window kmax_gen_level_ratio;    // E kmax / t*(k - k^{5/6}/2)
  Window iso_kmax_over_tstar;     // E kmax / t*(k), isotropic, k <= n/2
  Window iso_kmax_over_t;         // E kmax / t(k), isotropic, k <= n/2
  Window iso_kmin_unconditional;  // E kmin * n/k, unconditional isotropic
  double iso_kmin_floor;          // general isotropic floor for E kmin * n/k
  double iso_kmin_gen_cap;        // cap coefficient on (1 + n^{5/6}/k)
  double weak_strong_cap;         // smallest empirical C-hat in the moment comparison
};

const Calibration& calibration();

}  // namespace orderstat
