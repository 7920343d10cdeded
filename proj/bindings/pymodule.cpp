#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "orderstat/json_io.hpp"
#include "orderstat/lemmas.hpp"
#include "orderstat/montecarlo.hpp"
#include "orderstat/threshold.hpp"
#include "orderstat/verify.hpp"

namespace py = pybind11;
using namespace orderstat;

namespace {

std::vector<double> to_vector(
    py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  auto buf = arr.request();
  const double* p = static_cast<const double*>(buf.ptr);
  return std::vector<double>(p, p + buf.size);
}

py::array_t<double> batch_to_numpy(const SampleBatch& b) {
  py::array_t<double> out({b.count, b.n});
  std::copy(b.data.begin(), b.data.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_orderstat, m) {
  m.doc() = "thresholds, Monte Carlo estimators and bound checks for order "
            "statistics of log-concave random vectors";

  py::class_<Marginal>(m, "Marginal")
      .def_static("gaussian", &Marginal::gaussian, py::arg("sigma"))
      .def_static("laplace", &Marginal::laplace, py::arg("scale"))
      .def_static("uniform", &Marginal::uniform, py::arg("halfwidth"))
      .def_static("half_normal_modulus", &Marginal::half_normal_modulus,
                  py::arg("sigma"))
      .def_static("shifted_exponential", &Marginal::shifted_exponential,
                  py::arg("rate"), py::arg("centered") = true)
      .def_static("scaled", &Marginal::scaled, py::arg("base"), py::arg("weight"))
      .def("survival_abs", &Marginal::survival_abs)
      .def("survival_signed", &Marginal::survival_signed)
      .def("truncated_abs_mean", &Marginal::truncated_abs_mean)
      .def("abs_mean", &Marginal::abs_mean)
      .def("mean", &Marginal::mean)
      .def("variance", &Marginal::variance)
      .def("moment_p", &Marginal::moment_p)
      .def("quantile", &Marginal::quantile)
      .def("pdf", &Marginal::pdf)
      .def("is_symmetric", &Marginal::is_symmetric)
      .def("is_mean_zero", &Marginal::is_mean_zero)
      .def("__repr__", &Marginal::describe);

  py::class_<VectorModel>(m, "VectorModel")
      .def_static(
          "independent_product",
          [](const Marginal& marg, std::size_t n) {
            return VectorModel::independent_product(marg, n);
          },
          py::arg("marginal"), py::arg("n"))
      .def_static(
          "independent_product_list",
          [](std::vector<Marginal> ms) {
            return VectorModel::independent_product(std::move(ms));
          },
          py::arg("marginals"))
      .def_static(
          "gaussian_covariance",
          [](py::array_t<double> cov) {
            auto buf = cov.request();
            if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
              throw std::invalid_argument("covariance must be square 2-D");
            auto n = static_cast<std::size_t>(buf.shape[0]);
            return VectorModel::gaussian_covariance(n, to_vector(cov));
          },
          py::arg("cov"))
      .def_static("sign_shared_gaussian", &VectorModel::sign_shared_gaussian,
                  py::arg("n"))
      .def_static("fully_correlated_gaussian",
                  &VectorModel::fully_correlated_gaussian, py::arg("n"))
      .def_static("uniform_cube", &VectorModel::uniform_cube, py::arg("n"),
                  py::arg("halfwidth"))
      .def_static("decoupled", &VectorModel::decoupled, py::arg("base"))
      .def("with_weights", &VectorModel::with_weights, py::arg("weights"))
      .def_property_readonly("n", &VectorModel::n)
      .def("marginal_of", &VectorModel::marginal_of, py::arg("i"))
      .def("is_unconditional", &VectorModel::is_unconditional)
      .def("is_isotropic", &VectorModel::is_isotropic)
      .def("has_uncorrelated_coordinates",
           &VectorModel::has_uncorrelated_coordinates)
      .def("is_log_concave", &VectorModel::is_log_concave)
      .def(
          "sample",
          [](const VectorModel& model, std::size_t count, uint64_t seed,
             uint64_t stream_id) {
            return batch_to_numpy(model.sample(count, seed, stream_id));
          },
          py::arg("count"), py::arg("seed"), py::arg("stream_id") = 0)
      .def("__repr__", &VectorModel::describe);

  m.def("model_from_json", [](const std::string& text) {
    return model_from_json(nlohmann::json::parse(text));
  });

  py::class_<ThresholdResult>(m, "ThresholdResult")
      .def_readonly("value", &ThresholdResult::value)
      .def_readonly("residual", &ThresholdResult::residual)
      .def_readonly("iterations", &ThresholdResult::iterations)
      .def_readonly("degenerate", &ThresholdResult::degenerate)
      .def("__repr__", [](const ThresholdResult& r) {
        return "ThresholdResult(value=" + format_double(r.value) + ")";
      });

  m.def(
      "t_threshold",
      [](const VectorModel& model, double level) {
        return t_threshold(model.marginals(), level);
      },
      py::arg("model"), py::arg("level"),
      "inf{t>0 : (1/t) sum_i E|X_i| 1{|X_i|>=t} <= level}");
  m.def(
      "tstar_threshold",
      [](const VectorModel& model, double level) {
        return tstar_threshold(model.marginals(), level);
      },
      py::arg("model"), py::arg("level"),
      "inf{t>0 : sum_i P(|X_i|>=t) <= level}");

  m.def(
      "kth_max_abs",
      [](py::array_t<double> x, std::size_t k) {
        auto v = to_vector(x);
        return kth_max_abs(v, k);
      },
      py::arg("x"), py::arg("k"));
  m.def(
      "topk_abs_sum",
      [](py::array_t<double> x, std::size_t k) {
        auto v = to_vector(x);
        return topk_abs_sum(v, k);
      },
      py::arg("x"), py::arg("k"));

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("mean", &Estimate::mean)
      .def_property_readonly("stderr", [](const Estimate& e) { return e.stderr_; })
      .def_readonly("ci95", &Estimate::ci95)
      .def_readonly("count", &Estimate::count)
      .def_readonly("seed", &Estimate::seed)
      .def_readonly("stat_id", &Estimate::stat_id)
      .def("__repr__", [](const Estimate& e) {
        return "Estimate(" + e.stat_id + ", mean=" + format_double(e.mean) +
               ", stderr=" + format_double(e.stderr_) + ")";
      });

  m.def(
      "estimate_mean",
      [](const VectorModel& model, const std::string& stat, std::size_t count,
         uint64_t seed, int threads) {
        return estimate_mean(model, StatSpec::parse(stat), count, seed, threads);
      },
      py::arg("model"), py::arg("stat"), py::arg("count"), py::arg("seed"),
      py::arg("threads") = 0,
      "stat is one of kmax:K, kmin:K, topk:K, supw:P");
  m.def(
      "estimate_median",
      [](const VectorModel& model, const std::string& stat, std::size_t count,
         std::size_t replications, uint64_t seed, int threads) {
        return estimate_median(model, StatSpec::parse(stat), count,
                               replications, seed, threads);
      },
      py::arg("model"), py::arg("stat"), py::arg("count"),
      py::arg("replications"), py::arg("seed"), py::arg("threads") = 0);
  m.def(
      "tail_probability",
      [](const VectorModel& model, const std::string& stat, double u,
         std::size_t count, uint64_t seed, int threads) {
        return tail_probability(model, StatSpec::parse(stat), u, count, seed,
                                threads);
      },
      py::arg("model"), py::arg("stat"), py::arg("u"), py::arg("count"),
      py::arg("seed"), py::arg("threads") = 0);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("theorem_id", &BoundReport::theorem_id)
      .def_readonly("model", &BoundReport::model)
      .def_readonly("n", &BoundReport::n)
      .def_readonly("k", &BoundReport::k)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("lhs_stderr", &BoundReport::lhs_stderr)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("ratio", &BoundReport::ratio)
      .def_readonly("note", &BoundReport::note)
      .def_property_readonly("verdict",
                             [](const BoundReport& r) {
                               return std::string(to_string(r.verdict));
                             })
      .def("__repr__", [](const BoundReport& r) {
        return "BoundReport(" + r.theorem_id + ", " + r.model +
               ", verdict=" + to_string(r.verdict) + ")";
      });

  m.def("run_lemma_grid", &run_lemma_grid, py::arg("slack") = 1e-9);
  m.def(
      "run_suite",
      [](const std::string& suite, std::vector<std::size_t> ns,
         std::size_t samples, uint64_t seed, int threads) {
        SuiteConfig cfg;
        cfg.suite = suite;
        cfg.grid = default_grid(ns);
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.threads = threads;
        return run_suite(cfg).reports;
      },
      py::arg("suite") = "all", py::arg("ns") = std::vector<std::size_t>{64},
      py::arg("samples") = 20000, py::arg("seed") = 7, py::arg("threads") = 0);

  m.def(
      "byparts_identity_check",
      [](const VectorModel& model, std::size_t k, double t, std::size_t count,
         uint64_t seed) {
        return byparts_identity_check(model, k, t, count, seed);
      },
      py::arg("model"), py::arg("k"), py::arg("t"), py::arg("count"),
      py::arg("seed"));
}
