#pragma once

#include <vector>

#include "orderstat/marginal.hpp"
#include "orderstat/report.hpp"

namespace orderstat {

/// Families exercised by the analytic lemma grid.
std::vector<Marginal> lemma_family_catalog();

/// Runs the marginal-level lemma checks on a deterministic (t, u, lambda)
/// grid for every family in the catalog:
///   - dilation tail bound        P(|Y|>=ut) <= P(|Y|>=t)^((u-1)/2)
///   - small-ball dilation        P(|Y|<=t) <= 1/10  =>  P(|Y|<=21t) >= 5 P(|Y|<=t)
///   - half-level tail lower bound (mean-zero families)
///   - cut-mean comparison        (symmetric families), both forms
///   - nonnegativity mass >= 1/e  (mean-zero families)
///   - regular moment growth with measured per-family constants
///   - small-ball density ratio, measured constant only (informational)
///
/// Inequalities are asserted with additive slack >= -`slack`.
std::vector<BoundReport> run_lemma_grid(double slack = 1e-9);

}  // namespace orderstat
