#pragma once

#include <string>
#include <utility>

namespace orderstat {

/// Monte Carlo point estimate with its uncertainty.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  long long count = 0;
  unsigned long long seed = 0;
  std::string stat_id;
};

enum class Verdict { Pass, Fail, HypothesisNotMet, Informational };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::HypothesisNotMet: return "hypothesis-not-met";
    case Verdict::Informational: return "informational";
  }
  return "?";
}

/// One inequality instance: both sides, the ratio, and the verdict under the
/// declared tolerance policy.
struct BoundReport {
  std::string theorem_id;
  std::string model;
  long long n = 0;
  double k = 0.0;
  double lhs = 0.0;
  double lhs_stderr = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  Verdict verdict = Verdict::Informational;
  std::string tolerance_policy;
  unsigned long long seed = 0;
  std::string note;

  bool failed() const { return verdict == Verdict::Fail; }
};

}  // namespace orderstat
