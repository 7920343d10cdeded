#include "orderstat/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace orderstat {

using nlohmann::json;

namespace {

double get_param(const json& params, std::initializer_list<const char*> names) {
  for (const char* name : names)
    if (params.contains(name)) return params.at(name).get<double>();
  throw std::invalid_argument(std::string("config: missing parameter ") +
                              *names.begin());
}

}  // namespace

Marginal marginal_from_json(const json& j) {
  std::string family = j.at("family").get<std::string>();
  json params = j.value("params", json::object());
  if (family == "gaussian")
    return Marginal::gaussian(get_param(params, {"sigma"}));
  if (family == "laplace" || family == "two_sided_exponential")
    return Marginal::laplace(get_param(params, {"b", "scale"}));
  if (family == "uniform")
    return Marginal::uniform(get_param(params, {"a", "halfwidth"}));
  if (family == "half_normal_modulus")
    return Marginal::half_normal_modulus(get_param(params, {"sigma"}));
  if (family == "shifted_exponential")
    return Marginal::shifted_exponential(get_param(params, {"rate", "lambda"}),
                                         params.value("centered", true));
  if (family == "scaled")
    return Marginal::scaled(marginal_from_json(params.at("base")),
                            get_param(params, {"weight", "a_i"}));
  throw std::invalid_argument("config: unknown marginal family " + family);
}

json marginal_to_json(const Marginal& m) {
  json params;
  switch (m.family()) {
    case Marginal::Family::Gaussian:
    case Marginal::Family::HalfNormalModulus:
      params["sigma"] = m.param();
      break;
    case Marginal::Family::Laplace:
      params["b"] = m.param();
      break;
    case Marginal::Family::Uniform:
      params["a"] = m.param();
      break;
    case Marginal::Family::ShiftedExponential:
      params["rate"] = m.param();
      params["centered"] = m.param(1) != 0.0;
      break;
    case Marginal::Family::Scaled:
      params["base"] = marginal_to_json(*m.base());
      params["weight"] = m.weight();
      break;
  }
  return json{{"family", m.family_name()}, {"params", params}};
}

VectorModel model_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  json params = j.value("params", json::object());
  VectorModel model = [&]() -> VectorModel {
    if (kind == "independent_product") {
      if (params.contains("marginals")) {
        std::vector<Marginal> ms;
        for (const auto& mj : params.at("marginals")) ms.push_back(marginal_from_json(mj));
        return VectorModel::independent_product(std::move(ms));
      }
      auto n = j.at("n").get<std::size_t>();
      return VectorModel::independent_product(marginal_from_json(params.at("marginal")), n);
    }
    if (kind == "gaussian_covariance") {
      auto n = j.at("n").get<std::size_t>();
      std::vector<double> cov;
      if (params.contains("cov")) {
        cov = params.at("cov").get<std::vector<double>>();
      } else if (params.contains("diag")) {
        auto d = params.at("diag").get<std::vector<double>>();
        if (d.size() != n) throw std::invalid_argument("config: diag length != n");
        cov.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) cov[i * n + i] = d[i];
      } else if (params.contains("ar_rho")) {
        double rho = params.at("ar_rho").get<double>();
        cov.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k)
            cov[i * n + k] = std::pow(rho, std::abs(static_cast<double>(i) -
                                                    static_cast<double>(k)));
      } else {
        throw std::invalid_argument("config: gaussian_covariance needs cov, diag or ar_rho");
      }
      return VectorModel::gaussian_covariance(n, std::move(cov));
    }
    if (kind == "sign_shared_gaussian")
      return VectorModel::sign_shared_gaussian(j.at("n").get<std::size_t>());
    if (kind == "fully_correlated_gaussian")
      return VectorModel::fully_correlated_gaussian(j.at("n").get<std::size_t>());
    if (kind == "uniform_cube")
      return VectorModel::uniform_cube(j.at("n").get<std::size_t>(),
                                       params.value("halfwidth", std::sqrt(3.0)));
    if (kind == "decoupled") return VectorModel::decoupled(model_from_json(params.at("base")));
    throw std::invalid_argument("config: unknown model kind " + kind);
  }();
  if (j.contains("weights"))
    return model.with_weights(j.at("weights").get<std::vector<double>>());
  return model;
}

VectorModel model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model config: " + path);
  json j;
  in >> j;
  return model_from_json(j);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json estimate_to_json(const Estimate& e) {
  return json{{"mean", e.mean},
              {"stderr", e.stderr_},
              {"ci95", {e.ci95.first, e.ci95.second}},
              {"count", e.count},
              {"seed", e.seed},
              {"stat", e.stat_id}};
}

json threshold_to_json(const ThresholdResult& r) {
  return json{{"value", r.value},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"bracket", {r.bracket_lo, r.bracket_hi}},
              {"degenerate", r.degenerate}};
}

json report_to_json(const BoundReport& r) {
  return json{{"theorem_id", r.theorem_id},
              {"model", r.model},
              {"n", r.n},
              {"k", r.k},
              {"lhs", r.lhs},
              {"lhs_stderr", r.lhs_stderr},
              {"rhs", r.rhs},
              {"ratio", r.ratio},
              {"verdict", to_string(r.verdict)},
              {"tolerance_policy", r.tolerance_policy},
              {"seed", r.seed},
              {"note", r.note}};
}

std::string report_csv_header() {
  return "theorem_id,model,n,k,lhs,lhs_stderr,rhs,ratio,verdict,seed";
}

std::string report_csv_row(const BoundReport& r) {
  std::string row;
  row += r.theorem_id;
  row += ',';
  row += r.model;
  row += ',';
  row += std::to_string(r.n);
  row += ',';
  row += format_double(r.k);
  row += ',';
  row += format_double(r.lhs);
  row += ',';
  row += format_double(r.lhs_stderr);
  row += ',';
  row += format_double(r.rhs);
  row += ',';
  row += format_double(r.ratio);
  row += ',';
  row += to_string(r.verdict);
  row += ',';
  row += std::to_string(r.seed);
  return row;
}

std::string model_config_hash(const json& j) {
  std::string dump = j.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace orderstat
