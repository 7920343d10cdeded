#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orderstat/marginal.hpp"
#include "orderstat/rng.hpp"

namespace orderstat {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Requested analytic information the model cannot supply (caller should fall
/// back to empirical estimation).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix of independent draws, rows are samples of X.
struct SampleBatch {
  std::size_t n = 0;
  std::size_t count = 0;
  std::vector<double> data;  // row-major count x n
  uint64_t seed = 0;
  uint64_t stream_id = 0;

  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * n, n};
  }
};

/// Joint law of X = (X_1,...,X_n) with a deterministic counter-based sampler.
/// Immutable after construction; sampling any index on any thread gives
/// identical bits for fixed (seed, stream_id).
class VectorModel {
 public:
  enum class Kind {
    IndependentProduct,
    GaussianCovariance,
    SignSharedGaussian,
    FullyCorrelatedGaussian,
    UniformCube,
    Decoupled,
  };

  static VectorModel independent_product(std::vector<Marginal> marginals);
  static VectorModel independent_product(const Marginal& m, std::size_t n);
  /// Sigma is dense row-major n x n; must be symmetric PSD within 1e-10
  /// (eigenvalues in [-1e-10, 0) are clipped to zero).
  static VectorModel gaussian_covariance(std::size_t n, std::vector<double> sigma);
  static VectorModel sign_shared_gaussian(std::size_t n);
  static VectorModel fully_correlated_gaussian(std::size_t n);
  static VectorModel uniform_cube(std::size_t n, double halfwidth);
  static VectorModel decoupled(const VectorModel& base);

  VectorModel with_weights(std::vector<double> weights) const;

  Kind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  const std::optional<std::vector<double>>& weights() const { return weights_; }
  std::string describe() const;

  /// Uniform variates consumed per sample; sample i uses stream indices
  /// [i*ups, (i+1)*ups), so arbitrary sample ranges can be generated
  /// independently.
  uint64_t uniforms_per_sample() const;

  /// Fill out (size n) with sample number `index`.
  void sample_into(std::span<double> out, uint64_t index, const CounterRng& rng) const;

  SampleBatch sample(std::size_t count, uint64_t seed, uint64_t stream_id = 0) const;

  /// Exact marginal law of coordinate i (weights folded in).
  Marginal marginal_of(std::size_t i) const;
  std::vector<Marginal> marginals() const;

  bool is_unconditional() const;
  bool is_isotropic() const;
  bool has_uncorrelated_coordinates() const;
  bool is_log_concave() const;

 private:
  VectorModel(Kind k, std::size_t n) : kind_(k), n_(n) {}
  Marginal base_marginal_of(std::size_t i) const;
  void sample_raw(std::span<double> out, uint64_t index, const CounterRng& rng) const;

  Kind kind_;
  std::size_t n_;
  std::vector<Marginal> marginals_;              // IndependentProduct
  std::vector<double> cov_;                      // GaussianCovariance, row-major
  std::vector<double> factor_;                   // symmetric square root of cov_
  double halfwidth_ = 0.0;                       // UniformCube
  std::shared_ptr<const VectorModel> base_;      // Decoupled
  std::optional<std::vector<double>> weights_;
};

struct NegCorrEstimate {
  double alpha = 0.0;       // max empirical ratio over pairs and grid cells
  double stderr_ = 0.0;     // standard error attached to the max cell
  std::size_t cells = 0;    // cells that met the occupancy precondition
  std::size_t i = 0, j = 0; // argmax pair
  double s = 0.0, t = 0.0;  // argmax thresholds
};

/// Empirical sup over coordinate pairs and grid cells of
/// P(|X_i|>=s, |X_j|>=t) / (P(|X_i|>=s) P(|X_j|>=t)).
/// Cells where either marginal survival estimate is below 10/sqrt(count)
/// are skipped; throws EstimationError if every cell is skipped.
NegCorrEstimate estimate_negcorr_alpha(const VectorModel& model,
                                       const std::vector<double>& grid,
                                       std::size_t count, uint64_t seed);

}  // namespace orderstat
