// orderstat: thresholds, Monte Carlo estimates and bound verification for
// order statistics of log-concave random vectors.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "orderstat/json_io.hpp"
#include "orderstat/lemmas.hpp"
#include "orderstat/montecarlo.hpp"
#include "orderstat/threshold.hpp"
#include "orderstat/verify.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
}

void print_report_line(const orderstat::BoundReport& r) {
  std::printf("[%-18s] %-28s n=%-5lld k=%-7g ratio=%-10.4g %s\n",
              orderstat::to_string(r.verdict), r.theorem_id.c_str(), r.n, r.k,
              r.ratio, r.note.c_str());
}

int run_threshold(const std::string& model_path, const std::string& kind,
                  double level, const std::string& out_path) {
  auto model = orderstat::model_from_file(model_path);
  auto marginals = model.marginals();
  orderstat::ThresholdResult r = kind == "t"
                                     ? orderstat::t_threshold(marginals, level)
                                     : orderstat::tstar_threshold(marginals, level);
  emit(orderstat::threshold_to_json(r), out_path);
  return 0;
}

int run_estimate(const std::string& model_path, const std::string& stat_text,
                 std::size_t samples, uint64_t seed, int threads, bool median,
                 std::size_t replications, const std::string& csv_path,
                 const std::string& out_path) {
  std::ifstream in(model_path);
  if (!in) throw std::runtime_error("cannot open model config: " + model_path);
  json model_json;
  in >> model_json;
  auto model = orderstat::model_from_json(model_json);
  auto stat = orderstat::StatSpec::parse(stat_text);

  orderstat::Estimate est =
      median ? orderstat::estimate_median(model, stat, samples, replications,
                                          seed, threads)
             : orderstat::estimate_mean(model, stat, samples, seed, threads);
  emit(orderstat::estimate_to_json(est), out_path);

  if (!csv_path.empty()) {
    bool fresh = !std::filesystem::exists(csv_path);
    std::ofstream csv(csv_path, std::ios::app | std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open csv file: " + csv_path);
    if (fresh) csv << "model_hash,stat,mean,stderr,count,seed\n";
    csv << orderstat::model_config_hash(model_json) << ',' << est.stat_id << ','
        << orderstat::format_double(est.mean) << ','
        << orderstat::format_double(est.stderr_) << ',' << est.count << ','
        << est.seed << "\n";
  }
  return 0;
}

int run_identity(const std::string& model_path, std::size_t k, double t,
                 std::size_t samples, uint64_t seed) {
  auto model = orderstat::model_from_file(model_path);
  auto reports = orderstat::byparts_identity_check(model, k, t, samples, seed);
  bool failed = false;
  for (const auto& r : reports) {
    print_report_line(r);
    failed = failed || r.failed();
  }
  return failed ? 1 : 0;
}

int run_lemmas(double slack) {
  auto reports = orderstat::run_lemma_grid(slack);
  bool failed = false;
  for (const auto& r : reports) {
    std::printf("[%-18s] %-26s %-28s %s\n", orderstat::to_string(r.verdict),
                r.theorem_id.c_str(), r.model.c_str(), r.note.c_str());
    failed = failed || r.failed();
  }
  std::printf("%zu lemma checks\n", reports.size());
  return failed ? 1 : 0;
}

int run_verify(const std::string& suite, const std::string& grid_spec,
               std::size_t samples, uint64_t seed, int threads,
               const std::string& out_path) {
  orderstat::SuiteConfig cfg;
  cfg.suite = suite;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  if (grid_spec == "default") {
    cfg.grid = orderstat::default_grid();
  } else {
    std::ifstream in(grid_spec);
    if (!in) throw std::runtime_error("cannot open grid file: " + grid_spec);
    json j;
    in >> j;
    if (j.contains("ns")) {
      cfg.grid = orderstat::default_grid(j.at("ns").get<std::vector<std::size_t>>());
    } else {
      for (const auto& item : j.at("models")) {
        cfg.grid.push_back({item.at("name").get<std::string>(),
                            orderstat::model_from_json(item.at("model"))});
      }
    }
  }

  auto result = orderstat::run_suite(cfg);
  std::size_t passes = 0, fails = 0, info = 0, skipped = 0;
  for (const auto& r : result.reports) {
    print_report_line(r);
    switch (r.verdict) {
      case orderstat::Verdict::Pass: ++passes; break;
      case orderstat::Verdict::Fail: ++fails; break;
      case orderstat::Verdict::Informational: ++info; break;
      case orderstat::Verdict::HypothesisNotMet: ++skipped; break;
    }
  }
  std::printf("%zu reports: %zu pass, %zu fail, %zu informational, %zu hypothesis-not-met\n",
              result.reports.size(), passes, fails, info, skipped);
  if (!out_path.empty()) orderstat::write_reports_csv(result.reports, out_path);
  return result.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-statistic thresholds and bounds for log-concave vectors"};
  app.require_subcommand(1);

  std::string model_path, out_path, csv_path, kind = "tstar", stat_text = "kmax:1";
  std::string suite = "all", grid_spec = "default";
  double level = 1.0, t_cut = 0.0, slack = 1e-9;
  std::size_t samples = 200000, replications = 1, k_arg = 1;
  uint64_t seed = 7;
  int threads = 0;
  bool median = false;

  auto* thr = app.add_subcommand("threshold", "solve t(k,X) or t*(p,X)");
  thr->add_option("--model", model_path, "model config JSON")->required();
  thr->add_option("--kind", kind, "t | tstar")
      ->check(CLI::IsMember({"t", "tstar"}));
  thr->add_option("--level", level, "k for t, p for t*")->required();
  thr->add_option("--out", out_path, "also write the JSON result here");

  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of a statistic");
  est->add_option("--model", model_path, "model config JSON")->required();
  est->add_option("--stat", stat_text, "kmax:K | kmin:K | topk:K | supw:P")
      ->required();
  est->add_option("--samples", samples, "draw count");
  est->add_option("--seed", seed, "RNG seed");
  est->add_option("--threads", threads, "worker cap, 0 = hardware");
  est->add_flag("--median", median, "estimate the median instead of the mean");
  est->add_option("--replications", replications, "stream count for --median");
  est->add_option("--csv", csv_path, "append a CSV row here");
  est->add_option("--out", out_path, "also write the JSON result here");

  auto* ver = app.add_subcommand("verify", "run the bound-verification suite");
  ver->add_option("--suite", suite,
                  "all|prop11|thm12|thm13|thm14|thm15|cor16|weakstrong|lemmas")
      ->check(CLI::IsMember({"all", "prop11", "thm12", "thm13", "thm14",
                             "thm15", "cor16", "weakstrong", "lemmas"}));
  ver->add_option("--grid", grid_spec, "default | grid JSON file");
  ver->add_option("--samples", samples, "draws per grid model");
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--threads", threads, "worker cap, 0 = hardware");
  ver->add_option("--out", out_path, "write the report CSV here");

  auto* ident = app.add_subcommand("identity", "layer-cake identity checks");
  ident->add_option("--model", model_path, "model config JSON")->required();
  ident->add_option("--k", k_arg, "top index count")->required();
  ident->add_option("--t", t_cut, "truncation level");
  ident->add_option("--samples", samples, "draw count");
  ident->add_option("--seed", seed, "RNG seed");

  auto* lem = app.add_subcommand("lemmas", "analytic marginal-level lemma grid");
  lem->add_option("--slack", slack, "additive slack for the inequalities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (thr->parsed()) return run_threshold(model_path, kind, level, out_path);
    if (est->parsed())
      return run_estimate(model_path, stat_text, samples, seed, threads, median,
                          replications, csv_path, out_path);
    if (ver->parsed())
      return run_verify(suite, grid_spec, samples, seed, threads, out_path);
    if (ident->parsed())
      return run_identity(model_path, k_arg, t_cut, samples, seed);
    if (lem->parsed()) return run_lemmas(slack);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
