#include "binpack/rl_math.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace binpack {

namespace {

void check_distribution(const std::vector<double>& probs) {
  if (probs.empty()) throw std::invalid_argument("empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
}

}  // namespace

double entropy(const std::vector<double>& probs) {
  check_distribution(probs);
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double logp_advantage_covariance(const std::vector<double>& probs,
                                 const std::vector<double>& advantages) {
  check_distribution(probs);
  if (probs.size() != advantages.size()) {
    throw std::invalid_argument("probs/advantages length mismatch");
  }
  // Means under the policy; zero-probability actions contribute nothing.
  double mu = 0.0, nu = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      mu += probs[i] * std::log(probs[i]);
      nu += probs[i] * advantages[i];
    }
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      cov += probs[i] * (std::log(probs[i]) - mu) * (advantages[i] - nu);
    }
  }
  return cov;
}

double entropy_delta_estimate(const std::vector<double>& probs,
                              const std::vector<double>& advantages, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  return -beta * logp_advantage_covariance(probs, advantages);
}

std::vector<double> clipped_ratios(const std::vector<DecisionRecord>& records,
                                   double phi) {
  if (phi < 0.0 || phi > 1.0) throw std::invalid_argument("phi must lie in [0,1]");

  std::vector<double> cov(records.size());
  std::vector<double> ratios(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DecisionRecord& r = records[i];
    cov[i] = logp_advantage_covariance(r.probs_old, r.advantages);
    if (r.action < 0 || r.action >= static_cast<int>(r.probs_old.size()) ||
        r.probs_old[r.action] <= 0.0) {
      throw std::invalid_argument("record has zero old probability at the chosen action");
    }
    ratios[i] = r.probs_new[r.action] / r.probs_old[r.action];
  }

  if (records.empty() || phi == 0.0) return ratios;

  std::vector<double> sorted_cov = cov;
  std::sort(sorted_cov.begin(), sorted_cov.end());
  const std::size_t n = sorted_cov.size();
  const double median = n % 2 == 1
                            ? sorted_cov[n / 2]
                            : 0.5 * (sorted_cov[n / 2 - 1] + sorted_cov[n / 2]);

  std::vector<std::size_t> high;
  for (std::size_t i = 0; i < n; ++i) {
    if (cov[i] > median) high.push_back(i);
  }
  std::stable_sort(high.begin(), high.end(),
                   [&cov](std::size_t a, std::size_t b) { return cov[a] > cov[b]; });
  const std::size_t clip =
      static_cast<std::size_t>(std::ceil(phi * static_cast<double>(high.size())));
  for (std::size_t i = 0; i < clip && i < high.size(); ++i) {
    ratios[high[i]] = 0.0;
  }
  return ratios;
}

double drift_adjusted_objective(double objective, const DecisionRecord& record,
                                double beta) {
  if (!record.is_first_step) return objective;
  if (record.action < 0 || record.action >= static_cast<int>(record.probs_old.size()) ||
      record.probs_old[record.action] <= 0.0 ||
      record.probs_new[record.action] <= 0.0) {
    throw std::invalid_argument("record has zero probability at the chosen action");
  }
  const double drift =
      std::abs(std::log(record.probs_new[record.action] / record.probs_old[record.action]));
  return objective - beta * drift;
}

}  // namespace binpack
