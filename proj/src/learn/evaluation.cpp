#include "testlab/learn/evaluation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "testlab/common/error.hpp"
#include "testlab/common/stats.hpp"

namespace testlab::learn {

Scores evaluate(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw DimensionMismatch("predictions and targets differ in length");
  }
  const std::size_t n = targets.size();
  if (n < 2) throw InvalidArgument("evaluation needs at least 2 samples");
  Scores s;
  std::vector<double> abs_err(n);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = targets[i] - predictions[i];
    abs_err[i] = std::fabs(e);
    s.mae += abs_err[i];
    ss_res += e * e;
  }
  const auto dn = static_cast<double>(n);
  s.mae /= dn;
  s.mse = ss_res / dn;
  s.rmse = std::sqrt(s.mse);
  s.mdae = stats::median(std::move(abs_err));
  const double mean = stats::mean(targets);
  double ss_tot = 0.0;
  for (double t : targets) ss_tot += (t - mean) * (t - mean);
  bool constant = true;
  for (double t : targets) constant = constant && t == targets[0];
  if (constant) {
    s.r2 = std::numeric_limits<double>::quiet_NaN();
    s.r2_defined = false;
  } else {
    s.r2 = 1.0 - ss_res / ss_tot;
  }
  return s;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("each sample needs at least 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = stats::sample_variance(a) / na;
  const double vb = stats::sample_variance(b) / nb;
  const double se2 = va + vb;
  if (!(se2 > 0.0)) throw DegenerateVariance("both samples have zero variance");
  WelchResult r;
  r.t = (stats::mean(a) - stats::mean(b)) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = stats::student_t_two_sided_p(r.t, r.df);
  return r;
}

}  // namespace testlab::learn
