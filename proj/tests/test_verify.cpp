#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orderstat/montecarlo.hpp"
#include "orderstat/threshold.hpp"
#include "orderstat/verify.hpp"
#include "oracles.hpp"

using orderstat::Marginal;
using orderstat::VectorModel;
using orderstat::Verdict;

namespace {

const orderstat::BoundReport* find_report(
    const std::vector<orderstat::BoundReport>& reports, const std::string& id) {
  for (const auto& r : reports)
    if (r.theorem_id == id) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("default grids") {
  auto ks = orderstat::default_k_grid(1024);
  CHECK(ks == std::vector<std::size_t>{1, 4, 32, 256, 512});
  CHECK(orderstat::default_k_grid(64) == std::vector<std::size_t>{1, 4, 8, 16, 32});
  auto grid = orderstat::default_grid({16, 64});
  CHECK(grid.size() == 14);
  CHECK(grid.front().name == "gaussian");
  CHECK(grid.back().name == "gaussian_ar05");
}

TEST_CASE("prop upper bound check") {
  auto model = VectorModel::independent_product(Marginal::laplace(1.0), 32);
  auto rep = orderstat::check_prop_upper(model, 4, 20000, 7);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.ratio > 0.0);
  CHECK(rep.ratio < 1.0);
}

TEST_CASE("explicit-constant lower bound, alpha = 1") {
  auto model = VectorModel::independent_product(Marginal::gaussian(1.0), 64);
  auto reports = orderstat::check_thm_negcorr(model, 8, 1.0, 20000, 7);
  REQUIRE(reports.size() == 2);
  const auto* lower = find_report(reports, "negcorr_topk_lower");
  REQUIRE(lower);
  CHECK(lower->verdict == Verdict::Pass);
  // c(1) = 1/972 exactly
  double t8 = orderstat::t_threshold(model.marginals(), 8.0).value;
  CHECK(lower->rhs == doctest::Approx(8.0 * t8 / 972.0).epsilon(1e-12));
  CHECK(lower->ratio > 10.0);  // wide margin at alpha = 1
  const auto* upper = find_report(reports, "negcorr_topk_upper");
  REQUIRE(upper);
  CHECK(upper->verdict == Verdict::Pass);

  // degenerate k = n instance
  auto full = orderstat::check_thm_negcorr(model, 64, 1.0, 20000, 7);
  CHECK(find_report(full, "negcorr_topk_lower")->verdict == Verdict::Pass);
}

TEST_CASE("negcorr hypothesis gating") {
  auto ex2 = VectorModel::fully_correlated_gaussian(16);
  // alpha = 1 is not verifiable: moduli coincide
  auto rejected = orderstat::check_thm_negcorr(ex2, 4, 1.0, 20000, 7);
  REQUIRE(rejected.size() == 1);
  CHECK(rejected[0].verdict == Verdict::HypothesisNotMet);
}

TEST_CASE("log-concave two-sided check and the counterexample") {
  auto cube = VectorModel::uniform_cube(64, std::sqrt(3.0));
  auto reps = orderstat::check_thm_logconcave(cube, 8, 20000, 7);
  const auto* up = find_report(reps, "logconcave_topk_upper");
  const auto* lo = find_report(reps, "logconcave_topk_lower");
  REQUIRE(up);
  REQUIRE(lo);
  CHECK(up->verdict == Verdict::Pass);
  CHECK(lo->verdict == Verdict::Pass);

  // the sign-shared construction is not jointly log-concave: informational,
  // ratio near sqrt(2/pi)/t(16) ~ 0.32 at n=1024
  auto ex1 = VectorModel::sign_shared_gaussian(1024);
  auto reps1 = orderstat::check_thm_logconcave(ex1, 16, 20000, 7);
  const auto* lo1 = find_report(reps1, "logconcave_topk_lower");
  REQUIRE(lo1);
  CHECK(lo1->verdict == Verdict::Informational);
  CHECK(lo1->ratio == doctest::Approx(0.324).epsilon(0.05));
  CHECK(find_report(reps1, "logconcave_topk_upper")->verdict == Verdict::Pass);

  // correlated coordinates: refused
  auto ex2 = VectorModel::fully_correlated_gaussian(16);
  auto reps2 = orderstat::check_thm_logconcave(ex2, 4, 20000, 7);
  CHECK(reps2.size() == 1);
  CHECK(reps2[0].verdict == Verdict::HypothesisNotMet);
}

TEST_CASE("k-max mean vs median chain and ratio window") {
  // the chain holds for any model, even outside the theorem hypotheses
  auto ex2 = VectorModel::fully_correlated_gaussian(32);
  auto reps2 = orderstat::check_thm_kmax(ex2, 4, 20000, 7);
  const auto* chain2 = find_report(reps2, "kmax_mean_vs_median");
  REQUIRE(chain2);
  CHECK(chain2->verdict == Verdict::Pass);
  CHECK(find_report(reps2, "kmax_over_tstar_half")->verdict ==
        Verdict::HypothesisNotMet);

  auto cube = VectorModel::uniform_cube(256, std::sqrt(3.0));
  auto reps = orderstat::check_thm_kmax(cube, 16, 20000, 7);
  CHECK(find_report(reps, "kmax_mean_vs_median")->verdict == Verdict::Pass);
  const auto* ratio = find_report(reps, "kmax_over_tstar_half");
  REQUIRE(ratio);
  CHECK(ratio->verdict == Verdict::Pass);

  // k = 1, iid gaussians: t*(1/2) is the 1/(2n)-upper-quantile of |g|
  auto gauss = VectorModel::independent_product(Marginal::gaussian(1.0), 100);
  auto repsg = orderstat::check_thm_kmax(gauss, 1, 40000, 7);
  const auto* rg = find_report(repsg, "kmax_over_tstar_half");
  REQUIRE(rg);
  CHECK(rg->rhs ==
        doctest::Approx(oracle::inverse_normal_survival(0.5 / 200.0)).epsilon(1e-7));
  CHECK(rg->verdict == Verdict::Pass);

  CHECK_THROWS_AS(orderstat::check_thm_kmax(gauss, 0, 20000, 7),
                  std::domain_error);
}

TEST_CASE("general upper bounds for k-max") {
  auto laplace = VectorModel::independent_product(Marginal::laplace(1.0), 1024);
  auto reps = orderstat::check_thm_revkmax(laplace, 64, 20000, 7);
  const auto* mult = find_report(reps, "kmax_tail_multiplier");
  const auto* gen = find_report(reps, "kmax_over_tstar_gen");
  REQUIRE(mult);
  REQUIRE(gen);
  CHECK(mult->verdict == Verdict::Pass);
  CHECK(gen->verdict == Verdict::Pass);
  // 64^{5/6} = 32, so the general level is 48 and t* = ln(1024/48)
  CHECK(gen->rhs == doctest::Approx(std::log(1024.0 / 48.0)).epsilon(1e-8));

  // k = 1: the reduced level coincides with k - 1/2
  auto gauss = VectorModel::independent_product(Marginal::gaussian(1.0), 64);
  auto reps1 = orderstat::check_thm_revkmax(gauss, 1, 20000, 7);
  CHECK(find_report(reps1, "kmax_over_tstar_gen")->rhs ==
        doctest::Approx(orderstat::tstar_threshold(gauss.marginals(), 0.5).value)
            .epsilon(1e-12));
}

TEST_CASE("isotropic corollary") {
  auto cube = VectorModel::uniform_cube(64, std::sqrt(3.0));
  auto reps = orderstat::check_cor_isotropic(cube, {1, 4, 16, 32}, 40000, 7);
  for (const auto& r : reps) {
    INFO(r.theorem_id, " k=", r.k, " ratio=", r.ratio);
    CHECK(r.verdict == Verdict::Pass);
  }
  // k = 1: E min * n = sqrt(3) n/(n+1), the uniform order-statistic value
  for (const auto& r : reps) {
    if (r.theorem_id == "iso_kmin_scaled" && r.k == 1.0) {
      double expect = std::sqrt(3.0) * 64.0 / 65.0;
      CHECK(std::abs(r.lhs - expect) <= 3.0 * r.lhs_stderr);
    }
  }
  // non-isotropic input is refused
  auto laplace = VectorModel::independent_product(Marginal::laplace(1.0), 16);
  auto repsl = orderstat::check_cor_isotropic(laplace, {1}, 20000, 7);
  CHECK(repsl[0].verdict == Verdict::HypothesisNotMet);
}

TEST_CASE("weak vs strong moments") {
  // n = 1: C-hat is below 1 by construction (p = 4 needs the larger budget
  // to clear the 5% relative-stderr refusal)
  auto single = VectorModel::independent_product(Marginal::laplace(1.0), 1);
  auto reps1 = orderstat::check_weak_strong(single, {2.0, 4.0}, 200000, 7);
  for (const auto& r : reps1) {
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.ratio <= 1.0);
  }
  auto refused = orderstat::check_weak_strong(single, {4.0}, 2000, 7);
  CHECK(refused[0].verdict == Verdict::HypothesisNotMet);
  CHECK(refused[0].note.find("refused") != std::string::npos);

  auto laplace = VectorModel::independent_product(Marginal::laplace(1.0), 64);
  auto reps = orderstat::check_weak_strong(laplace, {4.0}, 40000, 7);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].verdict == Verdict::Pass);
  // beta for the doubling condition: Gamma(2p+1)^{1/2p} / Gamma(p+1)^{1/p} <= 2
  auto m = Marginal::laplace(1.0);
  for (double p = 2.0; p <= 8.0; p += 0.5)
    CHECK(m.moment_p(2.0 * p) / m.moment_p(p) <= 2.0);

  // hypothesis gating
  auto ex2 = VectorModel::fully_correlated_gaussian(8);
  auto repsx = orderstat::check_weak_strong(ex2, {2.0}, 20000, 7);
  CHECK(repsx[0].verdict == Verdict::HypothesisNotMet);
}

TEST_CASE("suite runs deterministically") {
  orderstat::SuiteConfig cfg;
  cfg.suite = "all";
  cfg.grid = orderstat::default_grid({16});
  cfg.samples = 5000;
  cfg.seed = 7;
  auto r1 = orderstat::run_suite(cfg);
  auto r2 = orderstat::run_suite(cfg);
  REQUIRE(r1.reports.size() == r2.reports.size());
  CHECK(r1.reports.size() > 40);

  orderstat::write_reports_csv(r1.reports, "suite1.csv");
  orderstat::write_reports_csv(r2.reports, "suite2.csv");
  std::ifstream f1("suite1.csv"), f2("suite2.csv");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find("theorem_id,model,n,k,") == 0);

  cfg.threads = 4;
  auto r3 = orderstat::run_suite(cfg);
  orderstat::write_reports_csv(r3.reports, "suite3.csv");
  std::ifstream f3("suite3.csv");
  std::stringstream s3;
  s3 << f3.rdbuf();
  CHECK(s1.str() == s3.str());
}

TEST_CASE("suite on the small grid has no pass-class failures") {
  orderstat::SuiteConfig cfg;
  cfg.suite = "all";
  cfg.grid = orderstat::default_grid({32});
  cfg.samples = 20000;
  cfg.seed = 11;
  auto res = orderstat::run_suite(cfg);
  for (const auto& r : res.reports) {
    INFO(r.theorem_id, " ", r.model, " n=", r.n, " k=", r.k, " ratio=", r.ratio,
         " note=", r.note);
    CHECK_FALSE(r.failed());
  }
  CHECK_FALSE(res.any_fail());
}

TEST_CASE("calibration table matches the recorded sweep file") {
  std::ifstream in(std::string(ORDERSTAT_SOURCE_DIR) + "/calibration/windows.json");
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  const auto& cal = orderstat::calibration();
  CHECK(j["sweep"]["seed"].get<uint64_t>() == cal.sweep_seed);
  CHECK(j["sweep"]["samples"].get<int>() == cal.sweep_samples);
  auto w = j["windows"];
  CHECK(w["topk_logconcave_ratio"]["floor"].get<double>() ==
        cal.topk_logconcave_ratio.floor);
  CHECK(w["kmax_tstar_half_ratio"]["floor"].get<double>() ==
        cal.kmax_tstar_half_ratio.floor);
  CHECK(w["kmax_tstar_half_ratio"]["cap"].get<double>() ==
        cal.kmax_tstar_half_ratio.cap);
  CHECK(w["kmax_multiplier"]["cap"].get<double>() == cal.kmax_multiplier.cap);
  CHECK(w["kmax_multiplier_prob"].get<double>() == cal.kmax_multiplier_prob);
  CHECK(w["kmax_gen_level_ratio"]["floor"].get<double>() ==
        cal.kmax_gen_level_ratio.floor);
  CHECK(w["kmax_gen_level_ratio"]["cap"].get<double>() ==
        cal.kmax_gen_level_ratio.cap);
  CHECK(w["iso_kmax_over_tstar"]["floor"].get<double>() ==
        cal.iso_kmax_over_tstar.floor);
  CHECK(w["iso_kmax_over_tstar"]["cap"].get<double>() ==
        cal.iso_kmax_over_tstar.cap);
  CHECK(w["iso_kmax_over_t"]["floor"].get<double>() == cal.iso_kmax_over_t.floor);
  CHECK(w["iso_kmax_over_t"]["cap"].get<double>() == cal.iso_kmax_over_t.cap);
  CHECK(w["iso_kmin_unconditional"]["floor"].get<double>() ==
        cal.iso_kmin_unconditional.floor);
  CHECK(w["iso_kmin_unconditional"]["cap"].get<double>() ==
        cal.iso_kmin_unconditional.cap);
  CHECK(w["iso_kmin_floor"].get<double>() == cal.iso_kmin_floor);
  CHECK(w["iso_kmin_gen_cap"].get<double>() == cal.iso_kmin_gen_cap);
  CHECK(w["weak_strong_cap"].get<double>() == cal.weak_strong_cap);
}

TEST_CASE("empty grid gives lemma reports only") {
  orderstat::SuiteConfig cfg;
  cfg.suite = "prop11";
  cfg.grid = {};
  auto res = orderstat::run_suite(cfg);
  CHECK(res.reports.empty());
  CHECK_FALSE(res.any_fail());

  cfg.suite = "lemmas";
  auto lem = orderstat::run_suite(cfg);
  CHECK(lem.reports.size() > 40);
  CHECK_FALSE(lem.any_fail());
}
