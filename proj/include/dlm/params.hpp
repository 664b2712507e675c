#ifndef DLM_PARAMS_HPP
#define DLM_PARAMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <cmath>

namespace dlm {

/// Inverse Polya lifetime parameters.
///
/// `alpha` is the failure probability at the first solicitation, `zeta` the
/// ageing intensity (probability mass added per survived solicitation,
/// normalized by the initial urn size). `zeta == 0` is the geometric
/// (no-ageing) limit and is accepted.
struct IpdParams {
    double alpha;
    double zeta;

    IpdParams(double alpha_, double zeta_) : alpha(alpha_), zeta(zeta_) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("IpdParams: alpha must lie in (0,1), got " +
                                    std::to_string(alpha_));
        if (!(zeta >= 0.0) || !std::isfinite(zeta))
            throw std::domain_error("IpdParams: zeta must be finite and >= 0, got " +
                                    std::to_string(zeta_));
    }

    double ratio() const { return zeta / alpha; }
};

/// Raw urn counts: `a` black (failure) balls, `b` red (operating) balls,
/// `z` black balls added after each survival.
struct UrnScheme {
    std::int64_t a;
    std::int64_t b;
    std::int64_t z;

    UrnScheme(std::int64_t a_, std::int64_t b_, std::int64_t z_) : a(a_), b(b_), z(z_) {
        if (a < 1 || b < 1 || z < 0)
            throw std::domain_error("UrnScheme: require a >= 1, b >= 1, z >= 0");
    }

    IpdParams to_params() const {
        const double total = static_cast<double>(a) + static_cast<double>(b);
        return IpdParams(static_cast<double>(a) / total, static_cast<double>(z) / total);
    }
};

/// Weibull-1 (type I discrete Weibull) parameters. Shares the (eta, beta)
/// pair with the continuous Weibull; theta = exp(-eta^-beta) is the survival
/// probability of the first solicitation and is always derived, never stored.
struct W1Params {
    double eta;
    double beta;

    W1Params(double eta_, double beta_) : eta(eta_), beta(beta_) {
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw std::domain_error("W1Params: eta must be finite and > 0");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::domain_error("W1Params: beta must be finite and > 0");
    }

    double theta() const { return std::exp(-std::pow(1.0 / eta, beta)); }
};

/// Continuous Weibull parameters (scale eta, shape beta).
struct WeibullParams {
    double eta;
    double beta;

    WeibullParams(double eta_, double beta_) : eta(eta_), beta(beta_) {
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw std::domain_error("WeibullParams: eta must be finite and > 0");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::domain_error("WeibullParams: beta must be finite and > 0");
    }

    W1Params discretized() const { return W1Params(eta, beta); }
};

} // namespace dlm

#endif
