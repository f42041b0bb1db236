#include "tss/montecarlo.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <stdexcept>

namespace tss {

McEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("binomial_estimate: no trials");
  if (successes > trials) throw std::invalid_argument("binomial_estimate: successes > trials");
  McEstimate e;
  e.successes = successes;
  e.trials = trials;
  const double t = static_cast<double>(trials);
  e.estimate = static_cast<double>(successes) / t;
  if (successes == 0) {
    e.halfwidth = std::min(1.0, 3.0 / t);
    e.ci_low = 0.0;
    e.ci_high = e.halfwidth;
  } else if (successes == trials) {
    e.halfwidth = std::min(1.0, 3.0 / t);
    e.ci_low = 1.0 - e.halfwidth;
    e.ci_high = 1.0;
  } else {
    e.halfwidth = 1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / t);
    e.ci_low = std::max(0.0, e.estimate - e.halfwidth);
    e.ci_high = std::min(1.0, e.estimate + e.halfwidth);
  }
  return e;
}

BinomialInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double alpha) {
  if (trials == 0 || successes > trials) throw std::invalid_argument("clopper_pearson: bad counts");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("clopper_pearson: alpha in (0, 1)");
  const double k = static_cast<double>(successes);
  const double t = static_cast<double>(trials);
  BinomialInterval ci;
  if (successes > 0) ci.low = boost::math::ibeta_inv(k, t - k + 1.0, alpha / 2.0);
  if (successes < trials) ci.high = boost::math::ibeta_inv(k + 1.0, t - k, 1.0 - alpha / 2.0);
  return ci;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace tss
