#pragma once

#include <vector>

namespace binpack {

// One recorded decision: the action distribution before and after a policy
// update, per-action advantages, and the sampled action.
struct DecisionRecord {
  std::vector<double> probs_old;
  std::vector<double> probs_new;
  std::vector<double> advantages;  // one per action
  int action = 0;
  bool is_first_step = false;
};

// -sum p ln p with 0 ln 0 = 0. Throws std::invalid_argument when the
// probabilities do not sum to 1 within 1e-9 or contain negatives.
double entropy(const std::vector<double>& probs);

// Cov_{a~p}(ln p(a), A(a)); zero for uniform p or constant A.
double logp_advantage_covariance(const std::vector<double>& probs,
                                 const std::vector<double>& advantages);

// First-order entropy-change prediction: -beta * Cov(ln p, A).
double entropy_delta_estimate(const std::vector<double>& probs,
                              const std::vector<double>& advantages, double beta);

// Importance ratios pi_new(a)/pi_old(a) with the top ceil(phi * |N_high_cov|)
// high-covariance records zeroed. N_high_cov = records whose covariance lies
// above the batch median; covariance ties break by record order.
std::vector<double> clipped_ratios(const std::vector<DecisionRecord>& records,
                                   double phi);

// First-step policy-drift penalty: J - beta * |ln(pi_new(a)/pi_old(a))| at
// first-step records, J unchanged otherwise.
double drift_adjusted_objective(double objective, const DecisionRecord& record,
                                double beta);

}  // namespace binpack
