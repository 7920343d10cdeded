#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "orderstat/model.hpp"
#include "orderstat/special.hpp"
#include "oracles.hpp"

using orderstat::CounterRng;
using orderstat::Marginal;
using orderstat::VectorModel;

namespace {

double ks_distance_to_cdf(std::vector<double> xs,
                          const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max(d, std::abs(f - (i + 1) / n));
    d = std::max(d, std::abs(f - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("counter rng basics") {
  CounterRng rng(42, 0);
  // pure function of the index
  CHECK(rng.uniform(123) == rng.uniform(123));
  CHECK(rng.uniform(123) != rng.uniform(124));
  CHECK(CounterRng(42, 1).uniform(123) != rng.uniform(123));
  CHECK(CounterRng(43, 0).uniform(123) != rng.uniform(123));
  double s = 0.0, s2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    s += u;
    s2 += u * u;
  }
  double mean = s / n;
  double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("fully correlated draws have equal coordinates") {
  auto model = VectorModel::fully_correlated_gaussian(16);
  auto batch = model.sample(100, 7);
  for (std::size_t i = 0; i < batch.count; ++i) {
    auto row = batch.row(i);
    for (double v : row) CHECK(v == row[0]);
  }
}

TEST_CASE("sign-shared draws have equal moduli and mixed signs") {
  auto model = VectorModel::sign_shared_gaussian(64);
  auto batch = model.sample(200, 11);
  std::size_t sign_changes = 0;
  for (std::size_t i = 0; i < batch.count; ++i) {
    auto row = batch.row(i);
    for (double v : row) CHECK(std::abs(v) == doctest::Approx(std::abs(row[0])));
    for (std::size_t j = 1; j < row.size(); ++j)
      sign_changes += (row[j] > 0) != (row[j - 1] > 0);
  }
  CHECK(sign_changes > 2000);  // about half of 200*63
}

TEST_CASE("independent coordinates are uncorrelated in sample") {
  auto model = VectorModel::independent_product(Marginal::gaussian(1.0), 2);
  const std::size_t count = 1000000;
  auto batch = model.sample(count, 3);
  double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    auto row = batch.row(i);
    sx += row[0];
    sy += row[1];
    sxy += row[0] * row[1];
    sxx += row[0] * row[0];
    syy += row[1] * row[1];
  }
  double n = static_cast<double>(count);
  double corr = (sxy / n - sx / n * sy / n) /
                std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
  CHECK(std::abs(corr) < 0.005);
}

TEST_CASE("marginal_of") {
  CHECK(VectorModel::sign_shared_gaussian(8).marginal_of(3).describe() ==
        "gaussian(1)");
  CHECK(VectorModel::uniform_cube(8, 2.0).marginal_of(0).describe() ==
        "uniform(2)");
  std::vector<double> diag4_1 = {4.0, 0.0, 0.0, 1.0};
  auto gc = VectorModel::gaussian_covariance(2, diag4_1);
  CHECK(gc.marginal_of(0).describe() == "gaussian(2)");
  CHECK(gc.marginal_of(1).describe() == "gaussian(1)");
  CHECK_THROWS_AS(gc.marginal_of(2), orderstat::CapabilityError);
}

TEST_CASE("gaussian covariance sampling matches the matrix") {
  const std::size_t n = 3;
  std::vector<double> cov = {1.0, 0.5, 0.25, 0.5, 1.0, 0.5, 0.25, 0.5, 1.0};
  auto model = VectorModel::gaussian_covariance(n, cov);
  const std::size_t count = 200000;
  auto batch = model.sample(count, 5);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < count; ++i)
        s += batch.row(i)[a] * batch.row(i)[b];
      double emp = s / static_cast<double>(count);
      CHECK(std::abs(emp - cov[a * n + b]) < 12.0 / std::sqrt(count));
    }
  }
}

TEST_CASE("rank-deficient covariance is accepted and degenerate") {
  // the all-ones matrix is rank 1; its symmetric square root reproduces the
  // equal-coordinates law
  const std::size_t n = 8;
  std::vector<double> ones(n * n, 1.0);
  auto model = VectorModel::gaussian_covariance(n, ones);
  auto batch = model.sample(50, 2);
  for (std::size_t i = 0; i < batch.count; ++i) {
    auto row = batch.row(i);
    for (double v : row) CHECK(v == doctest::Approx(row[0]).epsilon(1e-9));
  }
}

TEST_CASE("invalid covariance is rejected") {
  std::vector<double> asym = {1.0, 0.2, 0.3, 1.0};
  CHECK_THROWS_AS(VectorModel::gaussian_covariance(2, asym), orderstat::ModelError);
  std::vector<double> indef = {1.0, 2.0, 2.0, 1.0};
  CHECK_THROWS_AS(VectorModel::gaussian_covariance(2, indef), orderstat::ModelError);
  std::vector<double> wrong_size = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(VectorModel::gaussian_covariance(2, wrong_size),
                  orderstat::ModelError);
}

TEST_CASE("model flags") {
  auto gauss = VectorModel::independent_product(Marginal::gaussian(1.0), 8);
  CHECK(gauss.is_isotropic());
  CHECK(gauss.is_unconditional());
  CHECK(gauss.has_uncorrelated_coordinates());
  CHECK(gauss.is_log_concave());

  auto laplace = VectorModel::independent_product(Marginal::laplace(1.0), 8);
  CHECK_FALSE(laplace.is_isotropic());  // variance 2 per coordinate

  auto cube = VectorModel::uniform_cube(8, std::sqrt(3.0));
  CHECK(cube.is_isotropic());
  CHECK(cube.is_unconditional());

  auto ex1 = VectorModel::sign_shared_gaussian(8);
  CHECK(ex1.is_isotropic());
  CHECK(ex1.is_unconditional());
  CHECK(ex1.has_uncorrelated_coordinates());
  CHECK_FALSE(ex1.is_log_concave());

  auto ex2 = VectorModel::fully_correlated_gaussian(8);
  CHECK_FALSE(ex2.is_isotropic());
  CHECK_FALSE(ex2.is_unconditional());
  CHECK_FALSE(ex2.has_uncorrelated_coordinates());
  CHECK(ex2.is_log_concave());

  auto shifted = VectorModel::independent_product(
      Marginal::shifted_exponential(1.0, true), 8);
  CHECK_FALSE(shifted.is_unconditional());  // asymmetric marginals
  CHECK(shifted.has_uncorrelated_coordinates());
}

TEST_CASE("isotropy holds in sample for flagged models") {
  std::vector<VectorModel> models = {
      VectorModel::independent_product(Marginal::gaussian(1.0), 8),
      VectorModel::uniform_cube(8, std::sqrt(3.0)),
      VectorModel::sign_shared_gaussian(8)};
  const std::size_t count = 100000;
  for (const auto& model : models) {
    REQUIRE(model.is_isotropic());
    auto batch = model.sample(count, 17);
    const std::size_t n = model.n();
    for (std::size_t a = 0; a < n; ++a) {
      double mean = 0.0;
      for (std::size_t i = 0; i < count; ++i) mean += batch.row(i)[a];
      mean /= static_cast<double>(count);
      CHECK(std::abs(mean) < 4.0 / std::sqrt(count));
      for (std::size_t b = a; b < n; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i)
          s += batch.row(i)[a] * batch.row(i)[b];
        double emp = s / static_cast<double>(count);
        double expect = a == b ? 1.0 : 0.0;
        CHECK(std::abs(emp - expect) < 6.0 / std::sqrt(count));
      }
    }
  }
}

TEST_CASE("unconditional laws are invariant under sign flips") {
  // modulus statistics are exactly flip-invariant; signed coordinate means
  // agree with the flipped batch within MC error
  auto model = VectorModel::uniform_cube(4, std::sqrt(3.0));
  const std::size_t count = 100000;
  auto batch = model.sample(count, 23);
  CounterRng flips(99, 77);

  double mean0 = 0.0, meanf = 0.0, m2 = 0.0;
  std::vector<double> flipped(model.n());
  for (std::size_t i = 0; i < count; ++i) {
    auto row = batch.row(i);
    for (std::size_t j = 0; j < row.size(); ++j)
      flipped[j] = flips.uniform(i * row.size() + j) < 0.5 ? -row[j] : row[j];
    mean0 += row[0];
    meanf += flipped[0];
    m2 += row[0] * row[0];
    double t0 = std::abs(row[0]) + std::abs(row[1]);
    double tf = std::abs(flipped[0]) + std::abs(flipped[1]);
    CHECK(t0 == tf);  // modulus statistics identical under flips
  }
  double sd = std::sqrt(m2 / count);
  CHECK(std::abs(mean0 - meanf) / count < 6.0 * sd / std::sqrt(count));
}

TEST_CASE("decoupled model keeps marginals, kills dependence") {
  auto base = VectorModel::fully_correlated_gaussian(4);
  auto dec = VectorModel::decoupled(base);
  CHECK(dec.marginal_of(2).describe() == "gaussian(1)");

  const std::size_t count = 40000;
  auto batch = dec.sample(count, 31);
  // per-coordinate KS distance against the exact marginal cdf
  for (std::size_t j = 0; j < dec.n(); ++j) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = batch.row(i)[j];
    double d = ks_distance_to_cdf(
        std::move(xs), [](double x) { return orderstat::normal_cdf(x); });
    CHECK(d <= 2.0 / std::sqrt(static_cast<double>(count)));
  }
  // base has perfectly correlated coordinates; decoupled must not
  double s01 = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    s01 += batch.row(i)[0] * batch.row(i)[1];
  CHECK(std::abs(s01 / count) < 6.0 / std::sqrt(count));
}

TEST_CASE("weights scale samples and marginals") {
  auto model = VectorModel::independent_product(Marginal::laplace(1.0), 3)
                   .with_weights({2.0, 0.0, -1.0});
  auto plain = VectorModel::independent_product(Marginal::laplace(1.0), 3);
  auto wb = model.sample(100, 13);
  auto pb = plain.sample(100, 13);
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(wb.row(i)[0] == 2.0 * pb.row(i)[0]);
    CHECK(wb.row(i)[1] == 0.0);
    CHECK(wb.row(i)[2] == -pb.row(i)[2]);
  }
  CHECK(model.marginal_of(1).is_degenerate());
  CHECK(model.marginal_of(0).abs_mean() == doctest::Approx(2.0));
  CHECK_THROWS_AS(plain.with_weights({1.0}), orderstat::ModelError);
}

TEST_CASE("sampling is reproducible and randomly addressable") {
  auto model = VectorModel::independent_product(Marginal::laplace(1.0), 5);
  auto b1 = model.sample(64, 123, 9);
  auto b2 = model.sample(64, 123, 9);
  CHECK(b1.data == b2.data);
  auto b3 = model.sample(64, 123, 10);
  CHECK(b1.data != b3.data);

  // row i can be regenerated in isolation
  CounterRng rng(123, 9);
  std::vector<double> row(5);
  model.sample_into(row, 17, rng);
  for (std::size_t j = 0; j < 5; ++j) CHECK(row[j] == b1.row(17)[j]);
}

TEST_CASE("negative correlation ratio estimates") {
  // independence: alpha = 1 within noise
  auto indep = VectorModel::independent_product(Marginal::gaussian(1.0), 4);
  auto est = orderstat::estimate_negcorr_alpha(indep, {0.5, 1.0}, 200000, 41);
  CHECK(est.cells > 0);
  CHECK(est.alpha == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(est.alpha - 1.0) <= 3.0 * est.stderr_ + 0.01);

  // equal moduli: at s = t with P(|g| >= t) = 0.1 the ratio is 1/P = 10
  double t10 = 1.6448536269514722;
  auto ex2 = VectorModel::fully_correlated_gaussian(4);
  auto est2 = orderstat::estimate_negcorr_alpha(ex2, {t10}, 200000, 43);
  CHECK(est2.alpha == doctest::Approx(10.0).epsilon(0.05));

  auto ex1 = VectorModel::sign_shared_gaussian(4);
  auto est1 = orderstat::estimate_negcorr_alpha(ex1, {t10}, 200000, 47);
  CHECK(est1.alpha == doctest::Approx(10.0).epsilon(0.05));

  // unmeetable occupancy threshold
  CHECK_THROWS_AS(
      orderstat::estimate_negcorr_alpha(indep, {100.0}, 2000, 7),
      orderstat::EstimationError);
}

TEST_CASE("example models match the spec'd covariance structure") {
  // the sign-shared model is isotropic although all moduli coincide
  auto ex1 = VectorModel::sign_shared_gaussian(6);
  const std::size_t count = 200000;
  auto batch = ex1.sample(count, 53);
  double cross = 0.0, var0 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    cross += batch.row(i)[0] * batch.row(i)[1];
    var0 += batch.row(i)[0] * batch.row(i)[0];
  }
  CHECK(std::abs(cross / count) < 6.0 / std::sqrt(count));
  CHECK(var0 / count == doctest::Approx(1.0).epsilon(0.02));
}
