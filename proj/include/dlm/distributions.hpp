#ifndef DLM_DISTRIBUTIONS_HPP
#define DLM_DISTRIBUTIONS_HPP

#include <cstdint>

#include "dlm/params.hpp"

namespace dlm {

// Inverse Polya distribution. The hazard formula is the primitive; pmf and
// survival follow from the product-of-hazards identity. Survival products
// are accumulated as sums of log(1 - lambda(i)) so that S(n) stays accurate
// across hundreds of orders of magnitude.

/// Hazard rate lambda(n) = (alpha + (n-1) zeta) / (1 + (n-1) zeta), n >= 1.
double ipd_hazard(const IpdParams& p, std::int64_t n);

/// P[N = n], n >= 1.
double ipd_pmf(const IpdParams& p, std::int64_t n);

/// log P[N = n].
double ipd_log_pmf(const IpdParams& p, std::int64_t n);

/// P[N > n], n >= 0. S(0) = 1.
double ipd_survival(const IpdParams& p, std::int64_t n);

/// log P[N > n].
double ipd_log_survival(const IpdParams& p, std::int64_t n);

/// E[N], summed as sum_{n>=0} S(n) with a certified geometric tail bound
/// (relative truncation error <= 1e-12). The zeta = 0 boundary is the
/// geometric distribution and returns 1/alpha exactly.
double ipd_mttf(const IpdParams& p);

/// Smallest n >= 1 with P[N <= n] >= q.
std::int64_t ipd_quantile(const IpdParams& p, double q);

// Weibull-1: survival coincides with the continuous Weibull's at integer
// points. Hazard and pmf are evaluated through expm1 so values stay exact
// deep in the tail.

/// Hazard lambda(n) = 1 - exp(((n-1)/eta)^beta - (n/eta)^beta), n >= 1.
double w1_hazard(const W1Params& p, std::int64_t n);

/// P[N = n] = S(n-1) - S(n), n >= 1.
double w1_pmf(const W1Params& p, std::int64_t n);

/// log P[N = n].
double w1_log_pmf(const W1Params& p, std::int64_t n);

/// P[N > n] = exp(-(n/eta)^beta), n >= 0.
double w1_survival(const W1Params& p, std::int64_t n);

/// log P[N > n] = -(n/eta)^beta.
double w1_log_survival(const W1Params& p, std::int64_t n);

/// E[N] as sum_{n>=0} S(n) with certified truncation (geometric tail bound
/// for beta >= 1, incomplete-gamma integral bound for beta < 1).
double w1_mttf(const W1Params& p);

/// Smallest n >= 1 with P[N <= n] >= q.
std::int64_t w1_quantile_int(const W1Params& p, double q);

// Continuous Weibull.

double weibull_density(const WeibullParams& p, double t);
double weibull_survival(const WeibullParams& p, double t);
double weibull_log_density(const WeibullParams& p, double t);

/// Continuous hazard f(t)/S(t) = (beta/eta) (t/eta)^(beta-1).
double weibull_hazard(const WeibullParams& p, double t);

/// eta * Gamma(1 + 1/beta).
double weibull_mean(const WeibullParams& p);

/// n_q = eta * (-log(1-q))^(1/beta); identical for W and W1 parameter pairs.
double weibull_quantile(const WeibullParams& p, double q);
double weibull_quantile(const W1Params& p, double q);

} // namespace dlm

#endif
