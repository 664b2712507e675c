#include "dlm/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "dlm/special_functions.hpp"

namespace dlm {

namespace {

constexpr std::int64_t kSeriesCap = 2'000'000'000;

void require_n_ge(std::int64_t n, std::int64_t lo, const char* who) {
    if (n < lo)
        throw std::domain_error(std::string(who) + ": n out of domain");
}

void require_open_unit(double q, const char* who) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error(std::string(who) + ": probability must lie in (0,1)");
}

// (m/eta)^beta with the m = 0 convention.
inline double w1_exponent(const W1Params& p, std::int64_t m) {
    return m == 0 ? 0.0 : std::pow(static_cast<double>(m) / p.eta, p.beta);
}

} // namespace

double ipd_hazard(const IpdParams& p, std::int64_t n) {
    require_n_ge(n, 1, "ipd_hazard");
    const double t = static_cast<double>(n - 1) * p.zeta;
    return (p.alpha + t) / (1.0 + t);
}

double ipd_log_survival(const IpdParams& p, std::int64_t n) {
    require_n_ge(n, 0, "ipd_log_survival");
    // log S(n) = n log(1-alpha) - sum_{i=0}^{n-1} log(1 + i zeta)
    long double acc = 0.0L;
    for (std::int64_t i = 0; i < n; ++i)
        acc += std::log1p(static_cast<double>(i) * p.zeta);
    return static_cast<double>(static_cast<long double>(n) * std::log1p(-p.alpha) - acc);
}

double ipd_survival(const IpdParams& p, std::int64_t n) {
    return std::exp(ipd_log_survival(p, n));
}

double ipd_log_pmf(const IpdParams& p, std::int64_t n) {
    require_n_ge(n, 1, "ipd_log_pmf");
    return std::log(ipd_hazard(p, n)) + ipd_log_survival(p, n - 1);
}

double ipd_pmf(const IpdParams& p, std::int64_t n) {
    require_n_ge(n, 1, "ipd_pmf");
    return ipd_hazard(p, n) * ipd_survival(p, n - 1);
}

double ipd_mttf(const IpdParams& p) {
    if (p.zeta == 0.0) return 1.0 / p.alpha; // geometric boundary
    double sum = 1.0; // S(0)
    double s = 1.0;
    for (std::int64_t n = 1; n <= kSeriesCap; ++n) {
        s *= 1.0 - ipd_hazard(p, n);
        sum += s;
        // lambda is nondecreasing, so S(n+k) <= S(n) (1-lambda(n+1))^k.
        const double lam = ipd_hazard(p, n + 1);
        const double tail = s * (1.0 - lam) / lam;
        if (tail <= 1e-12 * sum) return sum;
    }
    throw std::runtime_error("ipd_mttf: series cap reached (parameters too close to zero)");
}

std::int64_t ipd_quantile(const IpdParams& p, double q) {
    require_open_unit(q, "ipd_quantile");
    const double target = std::log1p(-q); // log(1-q)
    const double log_keep = std::log1p(-p.alpha);
    long double acc = 0.0L;
    for (std::int64_t n = 1; n <= kSeriesCap; ++n) {
        acc += log_keep - std::log1p(static_cast<double>(n - 1) * p.zeta);
        if (static_cast<double>(acc) <= target) return n;
    }
    throw std::runtime_error("ipd_quantile: scan cap reached (parameters too close to zero)");
}

double w1_hazard(const W1Params& p, std::int64_t n) {
    require_n_ge(n, 1, "w1_hazard");
    return -std::expm1(w1_exponent(p, n - 1) - w1_exponent(p, n));
}

double w1_log_survival(const W1Params& p, std::int64_t n) {
    require_n_ge(n, 0, "w1_log_survival");
    return -w1_exponent(p, n);
}

double w1_survival(const W1Params& p, std::int64_t n) {
    return std::exp(w1_log_survival(p, n));
}

double w1_pmf(const W1Params& p, std::int64_t n) {
    require_n_ge(n, 1, "w1_pmf");
    return std::exp(-w1_exponent(p, n - 1)) * w1_hazard(p, n);
}

double w1_log_pmf(const W1Params& p, std::int64_t n) {
    require_n_ge(n, 1, "w1_log_pmf");
    return -w1_exponent(p, n - 1) + std::log(w1_hazard(p, n));
}

double w1_mttf(const W1Params& p) {
    double sum = 1.0; // S(0)
    std::int64_t next_check = 1;
    for (std::int64_t n = 1; n <= kSeriesCap; ++n) {
        const double x = w1_exponent(p, n);
        const double s = std::exp(-x);
        sum += s;
        if (s < 1e-13 * sum && n >= next_check) {
            double tail;
            if (p.beta >= 1.0) {
                // Exponent increments are nondecreasing: geometric bound.
                const double rho = std::exp(x - w1_exponent(p, n + 1));
                tail = s * rho / (1.0 - rho);
            } else {
                // sum_{m>n} S(m) <= int_n^inf S(t) dt, via incomplete gamma.
                tail = p.eta / p.beta * upper_incomplete_gamma(1.0 / p.beta, x);
            }
            if (tail <= 1e-12 * sum) return sum;
            next_check = n + n / 8 + 64;
        }
    }
    throw std::runtime_error("w1_mttf: series cap reached");
}

std::int64_t w1_quantile_int(const W1Params& p, double q) {
    require_open_unit(q, "w1_quantile_int");
    const double t = weibull_quantile(p, q);
    if (!(t < 4e18))
        throw std::runtime_error("w1_quantile_int: quantile exceeds integer range");
    const std::int64_t n = static_cast<std::int64_t>(std::ceil(t));
    // ceil lands on the answer except when t is an exact integer boundary.
    std::int64_t lo = n > 1 ? n - 1 : 1;
    while (w1_survival(p, lo) > 1.0 - q) ++lo;
    return lo;
}

double weibull_density(const WeibullParams& p, double t) {
    if (!(t > 0.0))
        throw std::domain_error("weibull_density: t must be > 0");
    const double z = t / p.eta;
    return p.beta / p.eta * std::pow(z, p.beta - 1.0) * std::exp(-std::pow(z, p.beta));
}

double weibull_log_density(const WeibullParams& p, double t) {
    if (!(t > 0.0))
        throw std::domain_error("weibull_log_density: t must be > 0");
    const double log_z = std::log(t / p.eta);
    return std::log(p.beta / p.eta) + (p.beta - 1.0) * log_z - std::pow(t / p.eta, p.beta);
}

double weibull_survival(const WeibullParams& p, double t) {
    if (t < 0.0)
        throw std::domain_error("weibull_survival: t must be >= 0");
    return std::exp(-std::pow(t / p.eta, p.beta));
}

double weibull_hazard(const WeibullParams& p, double t) {
    if (!(t > 0.0))
        throw std::domain_error("weibull_hazard: t must be > 0");
    return p.beta / p.eta * std::pow(t / p.eta, p.beta - 1.0);
}

double weibull_mean(const WeibullParams& p) {
    return p.eta * std::exp(log_gamma(1.0 + 1.0 / p.beta));
}

double weibull_quantile(const WeibullParams& p, double q) {
    require_open_unit(q, "weibull_quantile");
    return p.eta * std::pow(-std::log1p(-q), 1.0 / p.beta);
}

double weibull_quantile(const W1Params& p, double q) {
    return weibull_quantile(WeibullParams(p.eta, p.beta), q);
}

} // namespace dlm
