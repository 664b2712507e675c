#include "dlm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dlm/distributions.hpp"
#include "dlm/special_functions.hpp"

namespace dlm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kBoxEps = 1e-12;
// Below this zeta the log-Gamma form of the likelihood cancels catastrophically
// (1/zeta overwhelms the value differences); the expanded product form takes over.
constexpr double kGammaFormZeta = 1e-3;

bool interior(double alpha, double zeta) {
    return alpha > 0.0 && alpha < 1.0 && zeta >= 0.0 && std::isfinite(zeta);
}

} // namespace

const char* to_string(Model m) {
    switch (m) {
        case Model::Ipd: return "ipd";
        case Model::W1: return "w1";
        case Model::Weibull: return "weibull";
    }
    return "?";
}

const char* to_string(FitStatus s) {
    switch (s) {
        case FitStatus::Converged: return "Converged";
        case FitStatus::AllCensored: return "AllCensored";
        case FitStatus::DegenerateSample: return "DegenerateSample";
        case FitStatus::NonInvertibleHessian: return "NonInvertibleHessian";
        case FitStatus::MaxIterationsExceeded: return "MaxIterationsExceeded";
    }
    return "?";
}

IpdLikelihoodStats ipd_likelihood_stats(const GroupedSample& sample) {
    IpdLikelihoodStats st;
    st.s = static_cast<std::int64_t>(sample.survivors.size());
    st.r = static_cast<std::int64_t>(sample.failures.size());
    long double a = 0.0L;
    long double mu = 0.0L;
    for (const auto& sv : sample.survivors) {
        a += static_cast<long double>(sv.count) * static_cast<long double>(sv.value);
        mu += static_cast<long double>(sv.count);
    }
    for (std::int64_t v : sample.failures) a += static_cast<long double>(v);
    a -= static_cast<long double>(st.r);
    mu += static_cast<long double>(st.r);
    st.A = static_cast<double>(a);
    st.mu = static_cast<double>(mu);
    return st;
}

IpdLikelihood::IpdLikelihood(const GroupedSample& sample) {
    stats_ = ipd_likelihood_stats(sample);
    for (const auto& sv : sample.survivors) {
        if (sv.value < 1 || sv.count < 1)
            throw std::domain_error("IpdLikelihood: survivor values and counts must be >= 1");
        terms_.push_back({sv.value, static_cast<double>(sv.count), false});
        n_max_ = std::max(n_max_, sv.value);
    }
    // Aggregate equal failure values; discrete data make repeats common.
    std::vector<std::int64_t> fails = sample.failures;
    std::sort(fails.begin(), fails.end());
    for (std::size_t i = 0; i < fails.size();) {
        if (fails[i] < 1)
            throw std::domain_error("IpdLikelihood: failure values must be >= 1");
        std::size_t j = i;
        while (j < fails.size() && fails[j] == fails[i]) ++j;
        terms_.push_back({fails[i], static_cast<double>(j - i), true});
        n_max_ = std::max(n_max_, fails[i]);
        i = j;
    }
    if (terms_.empty()) throw std::invalid_argument("IpdLikelihood: empty sample");
}

double IpdLikelihood::log_lik_gamma_form(double alpha, double zeta) const {
    const double inv_zeta = 1.0 / zeta;
    const double base = log_gamma(1.0 + inv_zeta);
    const double log_zeta = std::log(zeta);
    long double acc = static_cast<long double>(stats_.A) * std::log1p(-alpha);
    for (const Term& t : terms_) {
        const double n = static_cast<double>(t.value);
        if (t.failure) acc += t.count * std::log(alpha + (n - 1.0) * zeta);
        acc -= t.count * ((n - 1.0) * log_zeta + log_gamma(n + inv_zeta) - base);
    }
    return static_cast<double>(acc);
}

double IpdLikelihood::log_lik_product_form(double alpha, double zeta) const {
    // T[m] = sum_{p=1}^{m} log(1 + p zeta); exact at zeta = 0.
    std::vector<double> table(static_cast<std::size_t>(n_max_));
    long double run = 0.0L;
    table[0] = 0.0;
    for (std::int64_t p = 1; p < n_max_; ++p) {
        run += std::log1p(static_cast<double>(p) * zeta);
        table[static_cast<std::size_t>(p)] = static_cast<double>(run);
    }
    long double acc = static_cast<long double>(stats_.A) * std::log1p(-alpha);
    for (const Term& t : terms_) {
        const double n = static_cast<double>(t.value);
        if (t.failure) acc += t.count * std::log(alpha + (n - 1.0) * zeta);
        acc -= t.count * table[static_cast<std::size_t>(t.value - 1)];
    }
    return static_cast<double>(acc);
}

double IpdLikelihood::log_lik(double alpha, double zeta) const {
    if (!interior(alpha, zeta)) return kNegInf;
    if (zeta >= kGammaFormZeta) return log_lik_gamma_form(alpha, zeta);
    return log_lik_product_form(alpha, zeta);
}

std::array<double, 2> IpdLikelihood::score(double alpha, double zeta) const {
    long double f1 = -static_cast<long double>(stats_.A) / (1.0 - alpha);
    long double fail_dzeta = 0.0L;
    for (const Term& t : terms_) {
        if (!t.failure) continue;
        const double nm1 = static_cast<double>(t.value - 1);
        const double denom = alpha + nm1 * zeta;
        f1 += t.count / denom;
        fail_dzeta += t.count * nm1 / denom;
    }

    long double f2 = fail_dzeta;
    if (zeta >= kGammaFormZeta) {
        const double inv_zeta = 1.0 / zeta;
        const double psi_base = digamma(1.0 + inv_zeta);
        long double g = 0.0L;
        long double weighted_nm1 = 0.0L;
        for (const Term& t : terms_) {
            g += t.count * (digamma(static_cast<double>(t.value) + inv_zeta) - psi_base);
            weighted_nm1 += t.count * static_cast<double>(t.value - 1);
        }
        f2 += -weighted_nm1 / zeta + g / (zeta * zeta);
    } else {
        // d/dzeta of -sum log(1+p zeta) summed over each term's product range.
        std::vector<double> table(static_cast<std::size_t>(n_max_));
        long double run = 0.0L;
        table[0] = 0.0;
        for (std::int64_t p = 1; p < n_max_; ++p) {
            const double pd = static_cast<double>(p);
            run += pd / (1.0 + pd * zeta);
            table[static_cast<std::size_t>(p)] = static_cast<double>(run);
        }
        for (const Term& t : terms_)
            f2 -= t.count * table[static_cast<std::size_t>(t.value - 1)];
    }
    return {static_cast<double>(f1), static_cast<double>(f2)};
}

std::array<double, 3> IpdLikelihood::hessian(double alpha, double zeta) const {
    const double one_m_alpha = 1.0 - alpha;
    long double h11 = -static_cast<long double>(stats_.A) / (one_m_alpha * one_m_alpha);
    long double h12 = 0.0L;
    long double fail_d2 = 0.0L;
    for (const Term& t : terms_) {
        if (!t.failure) continue;
        const double nm1 = static_cast<double>(t.value - 1);
        const double denom = alpha + nm1 * zeta;
        const double inv2 = 1.0 / (denom * denom);
        h11 -= t.count * inv2;
        h12 -= t.count * nm1 * inv2;
        fail_d2 -= t.count * nm1 * nm1 * inv2;
    }

    long double h22 = fail_d2;
    if (zeta >= kGammaFormZeta) {
        const double inv_zeta = 1.0 / zeta;
        const double psi_base = digamma(1.0 + inv_zeta);
        const double psi1_base = trigamma(1.0 + inv_zeta);
        long double g = 0.0L, g1 = 0.0L, weighted_nm1 = 0.0L;
        for (const Term& t : terms_) {
            const double n = static_cast<double>(t.value);
            g += t.count * (digamma(n + inv_zeta) - psi_base);
            g1 += t.count * (trigamma(n + inv_zeta) - psi1_base);
            weighted_nm1 += t.count * (n - 1.0);
        }
        const double z2 = zeta * zeta;
        h22 += weighted_nm1 / z2 - 2.0 * g / (z2 * zeta) - g1 / (z2 * z2);
    } else {
        std::vector<double> table(static_cast<std::size_t>(n_max_));
        long double run = 0.0L;
        table[0] = 0.0;
        for (std::int64_t p = 1; p < n_max_; ++p) {
            const double pd = static_cast<double>(p);
            const double q = 1.0 + pd * zeta;
            run += pd * pd / (q * q);
            table[static_cast<std::size_t>(p)] = static_cast<double>(run);
        }
        for (const Term& t : terms_)
            h22 += t.count * table[static_cast<std::size_t>(t.value - 1)];
    }
    return {static_cast<double>(h11), static_cast<double>(h12), static_cast<double>(h22)};
}

std::array<double, 2> IpdLikelihood::score_residuals(double alpha, double zeta) const {
    const auto f = score(alpha, zeta);
    return {(1.0 - alpha) * f[0], zeta * zeta * f[1]};
}

double ipd_log_likelihood(const GroupedSample& sample, const IpdParams& params) {
    return IpdLikelihood(sample).log_lik(params.alpha, params.zeta);
}

// ---------------------------------------------------------------------------
// W1 / continuous Weibull likelihoods in (log eta, log beta) coordinates.

namespace {

struct FlatRecord {
    double value;
    double log_value;
    bool failure;
};

std::vector<FlatRecord> flatten(const LifetimeSample& sample) {
    if (sample.records.empty())
        throw std::invalid_argument("likelihood: empty sample");
    std::vector<FlatRecord> recs;
    recs.reserve(sample.records.size());
    for (const Record& r : sample.records) {
        if (r.value < 1) throw std::domain_error("likelihood: record value must be >= 1");
        const double v = static_cast<double>(r.value);
        recs.push_back({v, std::log(v), r.event == Event::Failure});
    }
    return recs;
}

double w1_loglik_uv(const std::vector<FlatRecord>& recs, double u, double v) {
    const double beta = std::exp(v);
    long double acc = 0.0L;
    for (const FlatRecord& r : recs) {
        const double xn = std::exp(beta * (r.log_value - u));
        if (!std::isfinite(xn)) return kNegInf;
        if (!r.failure) {
            acc -= xn;
            continue;
        }
        const double xm = r.value > 1.0 ? std::exp(beta * (std::log(r.value - 1.0) - u)) : 0.0;
        const double d = xm - xn;
        if (!(d < 0.0)) return kNegInf; // saturated tail: pmf underflowed
        acc += -xm + std::log(-std::expm1(d));
    }
    return static_cast<double>(acc);
}

std::array<double, 2> w1_grad_uv(const std::vector<FlatRecord>& recs, double u, double v) {
    const double beta = std::exp(v);
    long double gu = 0.0L, gv = 0.0L;
    for (const FlatRecord& r : recs) {
        const double ln = r.log_value - u;
        const double xn = std::exp(beta * ln);
        if (!r.failure) {
            gu += beta * xn;
            gv -= beta * ln * xn;
            continue;
        }
        double xm = 0.0, lm = 0.0;
        if (r.value > 1.0) {
            lm = std::log(r.value - 1.0) - u;
            xm = std::exp(beta * lm);
        }
        const double w = 1.0 / std::expm1(xn - xm); // e^d/(1-e^d), d = xm - xn
        gu += beta * (xm - w * (xn - xm));
        gv += -beta * lm * xm - w * beta * (lm * xm - ln * xn);
    }
    return {static_cast<double>(gu), static_cast<double>(gv)};
}

double weibull_loglik_uv(const std::vector<FlatRecord>& recs, double u, double v) {
    const double beta = std::exp(v);
    long double acc = 0.0L;
    for (const FlatRecord& r : recs) {
        const double ln = r.log_value - u;
        const double xn = std::exp(beta * ln);
        if (!std::isfinite(xn)) return kNegInf;
        if (r.failure)
            acc += v - u + (beta - 1.0) * ln - xn;
        else
            acc -= xn;
    }
    return static_cast<double>(acc);
}

std::array<double, 2> weibull_grad_uv(const std::vector<FlatRecord>& recs, double u, double v) {
    const double beta = std::exp(v);
    long double gu = 0.0L, gv = 0.0L;
    for (const FlatRecord& r : recs) {
        const double ln = r.log_value - u;
        const double xn = std::exp(beta * ln);
        if (r.failure) {
            gu += beta * (xn - 1.0);
            gv += 1.0 + beta * ln * (1.0 - xn);
        } else {
            gu += beta * xn;
            gv -= beta * ln * xn;
        }
    }
    return {static_cast<double>(gu), static_cast<double>(gv)};
}

} // namespace

double w1_log_likelihood(const LifetimeSample& sample, const W1Params& params) {
    return w1_loglik_uv(flatten(sample), std::log(params.eta), std::log(params.beta));
}

double weibull_log_likelihood(const LifetimeSample& sample, const WeibullParams& params) {
    return weibull_loglik_uv(flatten(sample), std::log(params.eta), std::log(params.beta));
}

std::array<double, 2> w1_log_likelihood_gradient(const LifetimeSample& sample,
                                                 const W1Params& params) {
    return w1_grad_uv(flatten(sample), std::log(params.eta), std::log(params.beta));
}

std::array<double, 2> weibull_log_likelihood_gradient(const LifetimeSample& sample,
                                                      const WeibullParams& params) {
    return weibull_grad_uv(flatten(sample), std::log(params.eta), std::log(params.beta));
}

// ---------------------------------------------------------------------------
// IPD grid initialization.

namespace {

std::vector<double> log_space(double lo, double hi, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (points - 1));
    return out;
}

IpdGridResult grid_search_impl(const IpdLikelihood& lik, const FitConfig& cfg, bool parallel) {
    const auto alphas = log_space(cfg.grid_alpha_lo, cfg.grid_alpha_hi, cfg.grid_alpha_points);
    const auto zetas = log_space(cfg.grid_zeta_lo, cfg.grid_zeta_hi, cfg.grid_zeta_points);
    const auto nz = static_cast<std::int64_t>(zetas.size());
    std::vector<IpdGridResult> row_best(static_cast<std::size_t>(nz));

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t iz = 0; iz < nz; ++iz) {
        const double zeta = zetas[static_cast<std::size_t>(iz)];
        IpdGridResult best{alphas[0], zeta, kNegInf};
        for (double alpha : alphas) {
            const double ll = lik.log_lik(alpha, zeta);
            if (ll > best.log_lik) best = {alpha, zeta, ll};
        }
        row_best[static_cast<std::size_t>(iz)] = best;
    }

    // Serial reduction; ties break toward the lexicographically smaller
    // (alpha, zeta), so the result is independent of thread count.
    IpdGridResult best = row_best[0];
    for (std::int64_t iz = 1; iz < nz; ++iz) {
        const IpdGridResult& c = row_best[static_cast<std::size_t>(iz)];
        if (c.log_lik > best.log_lik ||
            (c.log_lik == best.log_lik &&
             (c.alpha < best.alpha || (c.alpha == best.alpha && c.zeta < best.zeta))))
            best = c;
    }
    return best;
}

} // namespace

IpdGridResult ipd_grid_search(const IpdLikelihood& lik, const FitConfig& cfg) {
    return grid_search_impl(lik, cfg, cfg.parallel_grid);
}

IpdGridResult ipd_grid_search_serial(const IpdLikelihood& lik, const FitConfig& cfg) {
    return grid_search_impl(lik, cfg, false);
}

// ---------------------------------------------------------------------------
// fit_ipd: Newton-Raphson with adaptive step halving.

FitResult fit_ipd(const GroupedSample& sample, const FitConfig& config) {
    FitResult res;
    res.model = Model::Ipd;
    if (sample.failures.empty()) {
        res.status = FitStatus::AllCensored;
        res.diagnostic = "no failure observations";
        return res;
    }
    const IpdLikelihood lik(sample);

    const IpdGridResult init = ipd_grid_search(lik, config);
    double a = init.alpha, z = init.zeta;
    double ll = lik.log_lik(a, z);
    if (config.trace) res.trace.push_back(ll);

    bool singular_seen = false;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        res.iterations = iter;
        const auto resid = lik.score_residuals(a, z);
        if (std::max(std::fabs(resid[0]), std::fabs(resid[1])) < config.tol) {
            res.status = FitStatus::Converged;
            res.converged = true;
            break;
        }
        const auto f = lik.score(a, z);
        const auto h = lik.hessian(a, z);
        const double det = h[0] * h[2] - h[1] * h[1];
        const double scale = std::fabs(h[0] * h[2]) + h[1] * h[1];

        double da, dz;
        if (std::fabs(det) <= 1e-12 * scale || scale == 0.0) {
            singular_seen = true;
            da = f[0];
            dz = f[1];
        } else {
            da = (-h[2] * f[0] + h[1] * f[1]) / det;
            dz = (h[1] * f[0] - h[0] * f[1]) / det;
            if (da * f[0] + dz * f[1] <= 0.0) { // not an ascent direction
                da = f[0];
                dz = f[1];
            }
        }

        bool accepted = false;
        double lambda = 1.0;
        for (int halving = 0; halving <= 60; ++halving, lambda *= 0.5) {
            const double a2 = a + lambda * da;
            const double z2 = z + lambda * dz;
            if (a2 < kBoxEps || a2 > 1.0 - kBoxEps || z2 < 0.0 || z2 > 1e9) continue;
            const double ll2 = lik.log_lik(a2, z2);
            if (ll2 >= ll) {
                a = a2;
                z = z2;
                ll = ll2;
                accepted = true;
                break;
            }
        }
        if (config.trace && accepted) res.trace.push_back(ll);
        if (!accepted) {
            res.status =
                singular_seen ? FitStatus::NonInvertibleHessian : FitStatus::MaxIterationsExceeded;
            res.diagnostic = "no admissible ascent step after 60 halvings";
            break;
        }
    }
    if (!res.converged && res.status == FitStatus::MaxIterationsExceeded)
        res.diagnostic = "score residuals above tolerance after max iterations";

    res.param1 = a;
    res.param2 = z;
    res.log_likelihood = ll;

    if (res.converged) {
        const auto h = lik.hessian(a, z);
        const double i11 = -h[0], i12 = -h[1], i22 = -h[2];
        const double det = i11 * i22 - i12 * i12;
        if (det > 0.0 && i11 > 0.0)
            res.stderr_estimates = {{std::sqrt(i22 / det), std::sqrt(i11 / det)}};
        else
            res.diagnostic = "observed information not positive definite; no standard errors";
    }
    return res;
}

FitResult fit_ipd(const LifetimeSample& sample, const FitConfig& config) {
    return fit_ipd(group_sample(sample), config);
}

// ---------------------------------------------------------------------------
// fit_w1 / fit_weibull: BFGS ascent in (log eta, log beta).

namespace {

using UvFn = double (*)(const std::vector<FlatRecord>&, double, double);
using UvGrad = std::array<double, 2> (*)(const std::vector<FlatRecord>&, double, double);

FitResult fit_weibull_family(const LifetimeSample& sample, const FitConfig& config, Model model,
                             UvFn loglik, UvGrad grad) {
    FitResult res;
    res.model = model;
    if (sample.records.empty() || sample.failure_count() == 0) {
        res.status = FitStatus::AllCensored;
        res.diagnostic = "no failure observations";
        return res;
    }
    const auto recs = flatten(sample);

    double vmin = recs[0].value, vmax = recs[0].value;
    long double vsum = 0.0L;
    for (const FlatRecord& r : recs) {
        vmin = std::min(vmin, r.value);
        vmax = std::max(vmax, r.value);
        vsum += r.value;
    }
    if (vmin == vmax) {
        res.status = FitStatus::DegenerateSample;
        res.diagnostic = "all observed values identical; shape parameter unbounded";
        return res;
    }
    const double mean = static_cast<double>(vsum) / static_cast<double>(recs.size());

    // Crude initialization grid; BFGS refines from its argmax.
    const auto etas = log_space(std::max(0.25, mean / 32.0), 32.0 * std::max(mean, vmax), 14);
    static constexpr double kBetas[] = {0.3, 0.5, 0.8, 1.0, 1.3, 1.8, 2.5, 3.5, 5.0, 8.0, 12.0};
    double u = std::log(etas[0]), v = std::log(kBetas[0]);
    double ll = kNegInf;
    for (double eta : etas)
        for (double beta : kBetas) {
            const double cand = loglik(recs, std::log(eta), std::log(beta));
            if (cand > ll) {
                ll = cand;
                u = std::log(eta);
                v = std::log(beta);
            }
        }

    // Minimize f = -loglik with inverse-Hessian BFGS.
    auto g = grad(recs, u, v);
    double b11 = 1.0, b12 = 0.0, b22 = 1.0; // inverse Hessian approx of f
    {
        const double gn = std::max(1.0, std::hypot(g[0], g[1]));
        b11 = b22 = 1.0 / gn;
    }

    for (int iter = 0; iter < std::max(config.max_iterations, 500); ++iter) {
        res.iterations = iter;
        if (std::max(std::fabs(g[0]), std::fabs(g[1])) < config.tol) {
            res.status = FitStatus::Converged;
            res.converged = true;
            break;
        }
        if (v > std::log(2e4) || u > 46.0 || u < -23.0) {
            res.status = FitStatus::DegenerateSample;
            res.diagnostic = "optimizer diverged; likelihood unbounded along the parameter path";
            break;
        }
        // Ascent direction d = Binv * g (Binv approximates (-H)^-1, kept SPD).
        double du = b11 * g[0] + b12 * g[1];
        double dv = b12 * g[0] + b22 * g[1];
        double slope = du * g[0] + dv * g[1];
        if (!(slope > 0.0)) {
            const double gn = std::max(1.0, std::hypot(g[0], g[1]));
            b11 = b22 = 1.0 / gn;
            b12 = 0.0;
            du = b11 * g[0];
            dv = b22 * g[1];
            slope = du * g[0] + dv * g[1];
        }

        double lambda = 1.0;
        double u2 = u, v2 = v, ll2 = kNegInf;
        bool accepted = false;
        for (int halving = 0; halving <= 60; ++halving, lambda *= 0.5) {
            u2 = u + lambda * du;
            v2 = v + lambda * dv;
            ll2 = loglik(recs, u2, v2);
            if (ll2 >= ll + 1e-4 * lambda * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.status = FitStatus::MaxIterationsExceeded;
            res.diagnostic = "line search failed to improve the log-likelihood";
            break;
        }

        const auto g2 = grad(recs, u2, v2);
        const double su = u2 - u, sv = v2 - v;
        const double yu = g[0] - g2[0], yv = g[1] - g2[1]; // y of f = -loglik
        const double sy = su * yu + sv * yv;
        if (sy > 1e-12 * std::hypot(su, sv) * std::hypot(yu, yv)) {
            // Inverse BFGS update: B' = (I - r s y^T) B (I - r y s^T) + r s s^T.
            const double rho = 1.0 / sy;
            const double byu = b11 * yu + b12 * yv;
            const double byv = b12 * yu + b22 * yv;
            const double yby = yu * byu + yv * byv;
            const double c = rho * rho * yby + rho;
            b11 += c * su * su - rho * (su * byu + su * byu);
            b12 += c * su * sv - rho * (su * byv + sv * byu);
            b22 += c * sv * sv - rho * (sv * byv + sv * byv);
        }
        u = u2;
        v = v2;
        ll = ll2;
        g = g2;
        if (config.trace) res.trace.push_back(ll);
    }
    if (!res.converged && res.status == FitStatus::MaxIterationsExceeded && res.diagnostic.empty())
        res.diagnostic = "gradient above tolerance after max iterations";

    res.param1 = std::exp(u);
    res.param2 = std::exp(v);
    res.log_likelihood = ll;

    if (res.converged) {
        // Observed information in (u,v) by central differences of the gradient.
        const double h = 1e-5;
        const auto gu_p = grad(recs, u + h, v), gu_m = grad(recs, u - h, v);
        const auto gv_p = grad(recs, u, v + h), gv_m = grad(recs, u, v - h);
        const double i11 = -(gu_p[0] - gu_m[0]) / (2 * h);
        const double i12 = -0.5 * ((gu_p[1] - gu_m[1]) + (gv_p[0] - gv_m[0])) / (2 * h);
        const double i22 = -(gv_p[1] - gv_m[1]) / (2 * h);
        const double det = i11 * i22 - i12 * i12;
        if (det > 0.0 && i11 > 0.0) {
            // Delta method back to (eta, beta).
            res.stderr_estimates = {{res.param1 * std::sqrt(i22 / det),
                                     res.param2 * std::sqrt(i11 / det)}};
        } else {
            res.diagnostic = "observed information not positive definite; no standard errors";
        }
    }
    return res;
}

} // namespace

FitResult fit_w1(const LifetimeSample& sample, const FitConfig& config) {
    return fit_weibull_family(sample, config, Model::W1, w1_loglik_uv, w1_grad_uv);
}

FitResult fit_weibull(const LifetimeSample& sample, const FitConfig& config) {
    return fit_weibull_family(sample, config, Model::Weibull, weibull_loglik_uv, weibull_grad_uv);
}

// ---------------------------------------------------------------------------

FitResult::Derived FitResult::derived() const {
    switch (model) {
        case Model::Ipd: {
            const IpdParams p(param1, param2);
            return {ipd_mttf(p), static_cast<double>(ipd_quantile(p, 0.5)),
                    static_cast<double>(ipd_quantile(p, 0.75)),
                    static_cast<double>(ipd_quantile(p, 0.9)),
                    static_cast<double>(ipd_quantile(p, 0.99))};
        }
        case Model::W1: {
            const W1Params p(param1, param2);
            return {w1_mttf(p), weibull_quantile(p, 0.5), weibull_quantile(p, 0.75),
                    weibull_quantile(p, 0.9), weibull_quantile(p, 0.99)};
        }
        case Model::Weibull: {
            const WeibullParams p(param1, param2);
            return {weibull_mean(p), weibull_quantile(p, 0.5), weibull_quantile(p, 0.75),
                    weibull_quantile(p, 0.9), weibull_quantile(p, 0.99)};
        }
    }
    throw std::logic_error("FitResult::derived: bad model");
}

KaplanMeierCurve kaplan_meier(const LifetimeSample& sample) {
    if (sample.records.empty()) throw std::invalid_argument("kaplan_meier: empty sample");
    std::vector<Record> recs = sample.records;
    std::sort(recs.begin(), recs.end(), [](const Record& a, const Record& b) {
        return a.value < b.value;
    });

    KaplanMeierCurve curve;
    auto at_risk = static_cast<std::int64_t>(recs.size());
    double survival = 1.0;
    std::size_t i = 0;
    while (i < recs.size()) {
        const std::int64_t t = recs[i].value;
        std::int64_t deaths = 0, removed = 0;
        while (i < recs.size() && recs[i].value == t) {
            if (recs[i].event == Event::Failure) ++deaths;
            ++removed;
            ++i;
        }
        if (deaths > 0) {
            survival *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
            curve.steps.push_back({t, survival, at_risk, deaths});
        }
        at_risk -= removed;
    }
    return curve;
}

double KaplanMeierCurve::survival_at(std::int64_t n) const {
    double s = 1.0;
    for (const Step& step : steps) {
        if (step.value > n) break;
        s = step.survival;
    }
    return s;
}

} // namespace dlm
