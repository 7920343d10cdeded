#include "orderstat/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace orderstat {

namespace {

std::vector<double> symmetric_sqrt(std::size_t n, const std::vector<double>& sigma) {
  using Eigen::MatrixXd;
  MatrixXd S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) S(i, j) = sigma[i * n + j];
  if (!S.isApprox(S.transpose(), 1e-10))
    throw ModelError("gaussian_covariance: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
  Eigen::VectorXd lam = es.eigenvalues();
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -1e-10 * std::max(1.0, S.norm()))
      throw ModelError("gaussian_covariance: matrix not PSD");
    // zero out solver noise too: sqrt would amplify 1e-16 to 1e-8
    if (lam[i] < 1e-12 * std::max(lam_max, 1.0)) lam[i] = 0.0;
  }
  MatrixXd A = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
               es.eigenvectors().transpose();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = A(i, j);
  return out;
}

void require_dim(std::size_t n) {
  if (n < 1) throw ModelError("model: dimension must be >= 1");
}

}  // namespace

VectorModel VectorModel::independent_product(std::vector<Marginal> marginals) {
  require_dim(marginals.size());
  VectorModel m(Kind::IndependentProduct, marginals.size());
  m.marginals_ = std::move(marginals);
  return m;
}

VectorModel VectorModel::independent_product(const Marginal& marg, std::size_t n) {
  return independent_product(std::vector<Marginal>(n, marg));
}

VectorModel VectorModel::gaussian_covariance(std::size_t n, std::vector<double> sigma) {
  require_dim(n);
  if (sigma.size() != n * n)
    throw ModelError("gaussian_covariance: need dense n x n matrix");
  VectorModel m(Kind::GaussianCovariance, n);
  m.factor_ = symmetric_sqrt(n, sigma);
  m.cov_ = std::move(sigma);
  return m;
}

VectorModel VectorModel::sign_shared_gaussian(std::size_t n) {
  require_dim(n);
  return VectorModel(Kind::SignSharedGaussian, n);
}

VectorModel VectorModel::fully_correlated_gaussian(std::size_t n) {
  require_dim(n);
  return VectorModel(Kind::FullyCorrelatedGaussian, n);
}

VectorModel VectorModel::uniform_cube(std::size_t n, double halfwidth) {
  require_dim(n);
  if (!(halfwidth > 0.0)) throw ModelError("uniform_cube: halfwidth must be positive");
  VectorModel m(Kind::UniformCube, n);
  m.halfwidth_ = halfwidth;
  return m;
}

VectorModel VectorModel::decoupled(const VectorModel& base) {
  VectorModel m(Kind::Decoupled, base.n());
  m.base_ = std::make_shared<VectorModel>(base);
  return m;
}

VectorModel VectorModel::with_weights(std::vector<double> weights) const {
  if (weights.size() != n_) throw ModelError("weights: length must equal n");
  VectorModel m = *this;
  m.weights_ = std::move(weights);
  return m;
}

std::string VectorModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::IndependentProduct:
      os << "product[" << marginals_.front().describe() << "]";
      break;
    case Kind::GaussianCovariance: os << "gaussian_cov"; break;
    case Kind::SignSharedGaussian: os << "sign_shared_gaussian"; break;
    case Kind::FullyCorrelatedGaussian: os << "fully_correlated_gaussian"; break;
    case Kind::UniformCube: os << "uniform_cube(" << halfwidth_ << ")"; break;
    case Kind::Decoupled: os << "decoupled[" << base_->describe() << "]"; break;
  }
  os << ":n=" << n_;
  if (weights_) os << ":weighted";
  return os.str();
}

uint64_t VectorModel::uniforms_per_sample() const {
  switch (kind_) {
    case Kind::IndependentProduct:
    case Kind::GaussianCovariance:
    case Kind::UniformCube:
      return n_;
    case Kind::SignSharedGaussian:
      return n_ + 1;
    case Kind::FullyCorrelatedGaussian:
      return 1;
    case Kind::Decoupled:
      return n_ * base_->uniforms_per_sample();
  }
  return n_;
}

void VectorModel::sample_raw(std::span<double> out, uint64_t index,
                             const CounterRng& rng) const {
  const uint64_t base_idx = index * uniforms_per_sample();
  switch (kind_) {
    case Kind::IndependentProduct:
      for (std::size_t j = 0; j < n_; ++j)
        out[j] = marginals_[j].quantile(rng.uniform(base_idx + j));
      return;
    case Kind::GaussianCovariance: {
      std::vector<double> z(n_);
      for (std::size_t j = 0; j < n_; ++j) z[j] = rng.normal(base_idx + j);
      for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        const double* row = factor_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * z[j];
        out[i] = acc;
      }
      return;
    }
    case Kind::SignSharedGaussian: {
      double g = rng.normal(base_idx + n_);
      for (std::size_t j = 0; j < n_; ++j)
        out[j] = (rng.uniform(base_idx + j) < 0.5 ? -g : g);
      return;
    }
    case Kind::FullyCorrelatedGaussian: {
      double g = rng.normal(base_idx);
      for (std::size_t j = 0; j < n_; ++j) out[j] = g;
      return;
    }
    case Kind::UniformCube:
      for (std::size_t j = 0; j < n_; ++j)
        out[j] = halfwidth_ * (2.0 * rng.uniform(base_idx + j) - 1.0);
      return;
    case Kind::Decoupled: {
      // coordinate j of the j-th independent copy of the base vector
      std::vector<double> scratch(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        base_->sample_raw(scratch, index * n_ + j, rng);
        out[j] = scratch[j];
      }
      return;
    }
  }
}

void VectorModel::sample_into(std::span<double> out, uint64_t index,
                              const CounterRng& rng) const {
  if (out.size() != n_) throw ModelError("sample_into: bad output size");
  sample_raw(out, index, rng);
  if (weights_)
    for (std::size_t j = 0; j < n_; ++j) out[j] *= (*weights_)[j];
}

SampleBatch VectorModel::sample(std::size_t count, uint64_t seed,
                                uint64_t stream_id) const {
  if (count < 1) throw ModelError("sample: count must be >= 1");
  SampleBatch b;
  b.n = n_;
  b.count = count;
  b.seed = seed;
  b.stream_id = stream_id;
  b.data.resize(count * n_);
  CounterRng rng(seed, stream_id);
  for (std::size_t i = 0; i < count; ++i)
    sample_into({b.data.data() + i * n_, n_}, i, rng);
  return b;
}

Marginal VectorModel::base_marginal_of(std::size_t i) const {
  if (i >= n_) throw CapabilityError("marginal_of: coordinate out of range");
  switch (kind_) {
    case Kind::IndependentProduct:
      return marginals_[i];
    case Kind::GaussianCovariance: {
      double v = cov_[i * n_ + i];
      if (v <= 0.0) {
        // degenerate coordinate: point mass at 0
        return Marginal::scaled(Marginal::gaussian(1.0), 0.0);
      }
      return Marginal::gaussian(std::sqrt(v));
    }
    case Kind::SignSharedGaussian:
    case Kind::FullyCorrelatedGaussian:
      return Marginal::gaussian(1.0);
    case Kind::UniformCube:
      return Marginal::uniform(halfwidth_);
    case Kind::Decoupled:
      return base_->marginal_of(i);
  }
  throw CapabilityError("marginal_of: unsupported model kind");
}

Marginal VectorModel::marginal_of(std::size_t i) const {
  Marginal m = base_marginal_of(i);
  if (weights_ && (*weights_)[i] != 1.0) return Marginal::scaled(m, (*weights_)[i]);
  return m;
}

std::vector<Marginal> VectorModel::marginals() const {
  std::vector<Marginal> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(marginal_of(i));
  return out;
}

bool VectorModel::is_unconditional() const {
  switch (kind_) {
    case Kind::IndependentProduct:
      return std::all_of(marginals_.begin(), marginals_.end(),
                         [](const Marginal& m) { return m.is_symmetric(); });
    case Kind::GaussianCovariance: {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          if (cov_[i * n_ + j] != 0.0) return false;
      return true;
    }
    case Kind::SignSharedGaussian:
      return true;  // sign flips are absorbed into the epsilon_i
    case Kind::FullyCorrelatedGaussian:
      return n_ == 1;
    case Kind::UniformCube:
      return true;
    case Kind::Decoupled: {
      for (std::size_t i = 0; i < n_; ++i)
        if (!base_->marginal_of(i).is_symmetric()) return false;
      return true;
    }
  }
  return false;
}

bool VectorModel::is_isotropic() const {
  // mean zero, Cov = Id: uncorrelated coordinates with unit variances
  if (!has_uncorrelated_coordinates()) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    Marginal m = marginal_of(i);
    if (!m.is_mean_zero()) return false;
    if (std::abs(m.variance() - 1.0) > 1e-12) return false;
  }
  return true;
}

bool VectorModel::has_uncorrelated_coordinates() const {
  switch (kind_) {
    case Kind::IndependentProduct:
    case Kind::UniformCube:
    case Kind::Decoupled:
      return true;
    case Kind::SignSharedGaussian:
      return true;  // E X_i X_j = E eps_i eps_j g^2 = 0
    case Kind::FullyCorrelatedGaussian:
      return n_ == 1;
    case Kind::GaussianCovariance:
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          if (cov_[i * n_ + j] != 0.0) return false;
      return true;
  }
  return false;
}

bool VectorModel::is_log_concave() const {
  switch (kind_) {
    case Kind::IndependentProduct:
    case Kind::UniformCube:
    case Kind::Decoupled:
      return true;  // products of log-concave marginals
    case Kind::GaussianCovariance:
    case Kind::FullyCorrelatedGaussian:
      return true;  // Gaussians, possibly degenerate
    case Kind::SignSharedGaussian:
      // supported on a union of diagonal lines; only the marginals are
      // log-concave (the point of the construction)
      return n_ == 1;
  }
  return false;
}

NegCorrEstimate estimate_negcorr_alpha(const VectorModel& model,
                                       const std::vector<double>& grid,
                                       std::size_t count, uint64_t seed) {
  if (grid.empty()) throw EstimationError("negcorr: empty grid");
  const std::size_t n = model.n();
  if (n < 2) throw EstimationError("negcorr: need n >= 2");
  SampleBatch batch = model.sample(count, seed, /*stream_id=*/0);

  // pair selection: all pairs when feasible, otherwise a deterministic sample
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n * (n - 1) / 2 <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    CounterRng prng(seed ^ 0x9e3779b97f4a7c15ull, 1);
    for (uint64_t c = 0; pairs.size() < 64; ++c) {
      auto i = static_cast<std::size_t>(prng.uniform(2 * c) * n);
      auto j = static_cast<std::size_t>(prng.uniform(2 * c + 1) * n);
      if (i != j) pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }

  const double min_survival = 10.0 / std::sqrt(static_cast<double>(count));
  NegCorrEstimate best;
  best.alpha = -1.0;

  for (auto [i, j] : pairs) {
    for (double s : grid) {
      for (double t : grid) {
        std::size_t ci = 0, cj = 0, cij = 0;
        for (std::size_t r = 0; r < count; ++r) {
          const double* row = batch.data.data() + r * n;
          bool ai = std::abs(row[i]) >= s;
          bool aj = std::abs(row[j]) >= t;
          ci += ai;
          cj += aj;
          cij += (ai && aj);
        }
        double pi = static_cast<double>(ci) / count;
        double pj = static_cast<double>(cj) / count;
        if (pi < min_survival || pj < min_survival) continue;
        double pij = static_cast<double>(cij) / count;
        double ratio = pij / (pi * pj);
        // delta-method standard error, joint-count binomial noise dominant
        double se = std::sqrt(std::max(pij * (1.0 - pij), 1.0 / count) /
                              static_cast<double>(count)) /
                    (pi * pj);
        best.cells++;
        if (ratio > best.alpha) {
          best.alpha = ratio;
          best.stderr_ = se;
          best.i = i;
          best.j = j;
          best.s = s;
          best.t = t;
        }
      }
    }
  }
  if (best.cells == 0)
    throw EstimationError("negcorr: all grid cells below occupancy threshold");
  return best;
}

}  // namespace orderstat
