#ifndef DLM_INFERENCE_HPP
#define DLM_INFERENCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlm/params.hpp"
#include "dlm/sampling.hpp"

namespace dlm {

/// Summary constants of the grouped IPD likelihood. The summation constant
/// the source material prints as a second alpha is renamed A here:
///   A  = sum_i k_i n_i + sum_j n_j - r
///   mu = sum_i k_i + r
struct IpdLikelihoodStats {
    std::int64_t s = 0;  // distinct survivor values
    std::int64_t r = 0;  // failure observations
    double A = 0.0;
    double mu = 0.0;
};

IpdLikelihoodStats ipd_likelihood_stats(const GroupedSample& sample);

/// Censored IPD log-likelihood evaluator over a fixed grouped sample.
///
/// Two algebraically identical routes are used: the log-Gamma form for
/// zeta >= 1e-3, and the expanded product form (cumulative log1p tables,
/// exact down to zeta = 0) below that, where forming Gamma(1/zeta + n)
/// differences loses all precision. Score and Hessian follow the same split,
/// using digamma/trigamma in the Gamma regime.
class IpdLikelihood {
public:
    explicit IpdLikelihood(const GroupedSample& sample);

    /// log L(alpha, zeta); -inf outside 0 < alpha < 1, zeta >= 0.
    double log_lik(double alpha, double zeta) const;

    /// Gradient (d/dalpha, d/dzeta) of log_lik.
    std::array<double, 2> score(double alpha, double zeta) const;

    /// Hessian entries {d2/dalpha2, d2/dalpha dzeta, d2/dzeta2}.
    std::array<double, 3> hessian(double alpha, double zeta) const;

    /// Residuals of the two score equations in their natural scaling,
    /// (1-alpha)*F1 and zeta^2*F2; both vanish at interior stationary points
    /// and the second also vanishes on the zeta = 0 boundary.
    std::array<double, 2> score_residuals(double alpha, double zeta) const;

    const IpdLikelihoodStats& stats() const { return stats_; }
    std::int64_t max_value() const { return n_max_; }

private:
    struct Term {
        std::int64_t value;
        double count;
        bool failure;
    };
    std::vector<Term> terms_; // survivors then aggregated failures
    IpdLikelihoodStats stats_;
    std::int64_t n_max_ = 0;

    double log_lik_gamma_form(double alpha, double zeta) const;
    double log_lik_product_form(double alpha, double zeta) const;
};

double ipd_log_likelihood(const GroupedSample& sample, const IpdParams& params);

/// Censored W1 log-likelihood: failures contribute log pmf, censors log S.
double w1_log_likelihood(const LifetimeSample& sample, const W1Params& params);

/// Censored continuous-Weibull log-likelihood; integer values are treated as
/// continuous observations. Censor terms are identical to W1's.
double weibull_log_likelihood(const LifetimeSample& sample, const WeibullParams& params);

/// Gradients in (log eta, log beta) coordinates, used by the optimizer and
/// checked against finite differences in the tests.
std::array<double, 2> w1_log_likelihood_gradient(const LifetimeSample& sample,
                                                 const W1Params& params);
std::array<double, 2> weibull_log_likelihood_gradient(const LifetimeSample& sample,
                                                      const WeibullParams& params);

enum class Model { Ipd, W1, Weibull };

enum class FitStatus {
    Converged,
    AllCensored,
    DegenerateSample,
    NonInvertibleHessian,
    MaxIterationsExceeded,
};

const char* to_string(Model m);
const char* to_string(FitStatus s);

struct FitConfig {
    double tol = 1e-8;
    int max_iterations = 200;
    // IPD initialization grid (log-spaced).
    int grid_alpha_points = 50;
    int grid_zeta_points = 50;
    double grid_alpha_lo = 1e-8, grid_alpha_hi = 0.5;
    double grid_zeta_lo = 1e-12, grid_zeta_hi = 10.0;
    bool parallel_grid = true;
    bool trace = false; // record log-likelihood per accepted iterate
};

struct FitResult {
    Model model = Model::Ipd;
    double param1 = 0.0; // alpha or eta
    double param2 = 0.0; // zeta or beta
    double log_likelihood = 0.0;
    bool converged = false;
    FitStatus status = FitStatus::MaxIterationsExceeded;
    int iterations = 0;
    std::optional<std::array<double, 2>> stderr_estimates;
    std::vector<double> trace; // filled when FitConfig::trace
    std::string diagnostic;

    struct Derived {
        double mttf;
        double q50, q75, q90, q99;
    };
    /// Recomputed from the fitted parameters on every call; nothing cached.
    Derived derived() const;
};

/// Newton-Raphson MLE for the IPD from grouped censored data, seeded by a
/// crude grid maximization. Iterates are kept inside
/// alpha in [1e-12, 1-1e-12], zeta >= 0 by step halving (up to 60 halvings),
/// and every accepted step is an ascent step.
FitResult fit_ipd(const GroupedSample& sample, const FitConfig& config = {});
FitResult fit_ipd(const LifetimeSample& sample, const FitConfig& config = {});

/// BFGS ascent in (log eta, log beta) with analytic gradients.
FitResult fit_w1(const LifetimeSample& sample, const FitConfig& config = {});
FitResult fit_weibull(const LifetimeSample& sample, const FitConfig& config = {});

/// Product-limit estimator. Censors tied with failures at the same value are
/// kept at risk through that value (censored just after the failure).
struct KaplanMeierCurve {
    struct Step {
        std::int64_t value;
        double survival;
        std::int64_t at_risk;
        std::int64_t deaths;
    };
    std::vector<Step> steps; // one per observed failure value, ascending

    /// Step-function evaluation, S(0) = 1.
    double survival_at(std::int64_t n) const;
};

KaplanMeierCurve kaplan_meier(const LifetimeSample& sample);

// Grid-search kernel behind fit_ipd; exposed for the serial/parallel
// equivalence tests and the benchmark.
struct IpdGridResult {
    double alpha;
    double zeta;
    double log_lik;
};
IpdGridResult ipd_grid_search(const IpdLikelihood& lik, const FitConfig& config);
IpdGridResult ipd_grid_search_serial(const IpdLikelihood& lik, const FitConfig& config);

} // namespace dlm

#endif
