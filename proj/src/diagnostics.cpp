#include "dlm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dlm/distributions.hpp"

namespace dlm {

namespace {

struct Band {
    double lo;
    double hi;
    AgeingClass cls;
};

// zeta/alpha magnitudes fitted from discretized Weibull samples, one band per
// shape scenario. Non-exhaustive by construction; gaps are resolved by
// nearest log-scale edge.
constexpr Band kRatioBands[] = {
    {0.0, 1e-5, AgeingClass::Rejuvenation},
    {8e-5, 1e-4, AgeingClass::NoAgeing},
    {5.8e-4, 7e-4, AgeingClass::SoftDeceleratedAgeing},
    {2.6e-3, 3.2e-3, AgeingClass::DeceleratedAgeing},
    {2e-2, 4e-2, AgeingClass::DeceleratedAgeing},
    {0.25, 0.35, AgeingClass::NonAcceleratedAgeing},
    {1.28, 1.35, AgeingClass::AcceleratedAgeing},
    {1.48, 1.85, AgeingClass::StronglyAcceleratedAgeing},
};

constexpr double kHazardSaturation = 1.0 - 1e-12;

void require_n3(std::int64_t n) {
    if (n < 3) throw std::domain_error("hazard_second_difference: n must be >= 3");
}

} // namespace

const char* to_string(AgeingClass c) {
    switch (c) {
        case AgeingClass::Rejuvenation: return "Rejuvenation";
        case AgeingClass::NoAgeing: return "NoAgeing";
        case AgeingClass::SoftDeceleratedAgeing: return "SoftDeceleratedAgeing";
        case AgeingClass::DeceleratedAgeing: return "DeceleratedAgeing";
        case AgeingClass::NonAcceleratedAgeing: return "NonAcceleratedAgeing";
        case AgeingClass::AcceleratedAgeing: return "AcceleratedAgeing";
        case AgeingClass::StronglyAcceleratedAgeing: return "StronglyAcceleratedAgeing";
    }
    return "?";
}

const char* to_string(PlausibilityFlag f) {
    switch (f) {
        case PlausibilityFlag::Plausible: return "Plausible";
        case PlausibilityFlag::ImplausibleRatioAboveOne: return "ImplausibleRatioAboveOne";
        case PlausibilityFlag::Boundary: return "Boundary";
    }
    return "?";
}

AgeingClass classify_beta(double beta) {
    if (!(beta > 0.0)) throw std::domain_error("classify_beta: beta must be > 0");
    if (beta < 1.0) return AgeingClass::Rejuvenation;
    if (beta == 1.0) return AgeingClass::NoAgeing;
    if (beta < 2.0) return AgeingClass::DeceleratedAgeing;
    if (beta == 2.0) return AgeingClass::NonAcceleratedAgeing;
    return AgeingClass::AcceleratedAgeing;
}

RatioClassification classify_ipd_ratio(const IpdParams& params) {
    const double ratio = params.ratio();
    AgeingClass cls = AgeingClass::StronglyAcceleratedAgeing;
    bool between = true;
    for (const Band& b : kRatioBands) {
        if (ratio >= b.lo && ratio <= b.hi) {
            cls = b.cls;
            between = false;
            break;
        }
    }
    if (between) {
        // Nearest edge in log distance decides the class.
        const double lr = std::log(std::max(ratio, 1e-300));
        double best = std::numeric_limits<double>::infinity();
        for (const Band& b : kRatioBands) {
            for (double edge : {b.lo, b.hi}) {
                if (edge <= 0.0) continue;
                const double d = std::fabs(lr - std::log(edge));
                if (d < best) {
                    best = d;
                    cls = b.cls;
                }
            }
        }
    }
    PlausibilityFlag flag = PlausibilityFlag::Plausible;
    if (ratio > 1.0)
        flag = PlausibilityFlag::ImplausibleRatioAboveOne;
    else if (cls == AgeingClass::Rejuvenation)
        flag = PlausibilityFlag::Boundary; // indistinguishable from no ageing
    return {cls, flag, between};
}

double hazard_second_difference(const IpdParams& params, std::int64_t n) {
    require_n3(n);
    const double z = params.zeta;
    const double d1 = 1.0 + static_cast<double>(n - 1) * z;
    const double d2 = 1.0 + static_cast<double>(n - 2) * z;
    const double d3 = 1.0 + static_cast<double>(n - 3) * z;
    return 2.0 * (params.alpha - 1.0) * z * z / (d1 * d2 * d3);
}

double hazard_second_difference(const W1Params& params, std::int64_t n) {
    require_n3(n);
    return w1_hazard(params, n) - 2.0 * w1_hazard(params, n - 1) + w1_hazard(params, n - 2);
}

std::optional<std::int64_t> find_w1_inflection(const W1Params& params, std::int64_t n_max) {
    if (n_max < 3) throw std::domain_error("find_w1_inflection: n_max must be >= 3");
    double lam2 = w1_hazard(params, 1);
    double lam1 = w1_hazard(params, 2);
    bool seen_positive = false;
    for (std::int64_t n = 3; n <= n_max; ++n) {
        const double lam = w1_hazard(params, n);
        const double d2 = lam - 2.0 * lam1 + lam2;
        if (d2 > 0.0) {
            seen_positive = true;
        } else {
            return seen_positive ? std::optional<std::int64_t>(n) : std::nullopt;
        }
        if (lam >= kHazardSaturation) return std::nullopt;
        lam2 = lam1;
        lam1 = lam;
    }
    return std::nullopt;
}

namespace {

std::vector<InflectionRow> inflection_map_impl(const std::vector<double>& eta_grid,
                                               const std::vector<double>& beta_grid,
                                               std::int64_t n_max, bool parallel) {
    if (eta_grid.empty() || beta_grid.empty())
        throw std::invalid_argument("inflection_map: grids must be nonempty");
    const auto ne = static_cast<std::int64_t>(eta_grid.size());
    const auto nb = static_cast<std::int64_t>(beta_grid.size());
    std::vector<InflectionRow> rows(static_cast<std::size_t>(ne * nb));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t k = 0; k < ne * nb; ++k) {
        const double eta = eta_grid[static_cast<std::size_t>(k / nb)];
        const double beta = beta_grid[static_cast<std::size_t>(k % nb)];
        rows[static_cast<std::size_t>(k)] = {eta, beta,
                                             find_w1_inflection(W1Params(eta, beta), n_max)};
    }
    return rows;
}

} // namespace

std::vector<InflectionRow> inflection_map(const std::vector<double>& eta_grid,
                                          const std::vector<double>& beta_grid,
                                          std::int64_t n_max) {
    return inflection_map_impl(eta_grid, beta_grid, n_max, true);
}

std::vector<InflectionRow> inflection_map_serial(const std::vector<double>& eta_grid,
                                                 const std::vector<double>& beta_grid,
                                                 std::int64_t n_max) {
    return inflection_map_impl(eta_grid, beta_grid, n_max, false);
}

void write_inflection_csv(const std::vector<InflectionRow>& rows, std::ostream& os) {
    os << "eta,beta,inflection_n\n";
    char buf[64];
    for (const InflectionRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", r.eta, r.beta);
        os << buf;
        if (r.inflection) os << *r.inflection;
        os << '\n';
    }
}

AgeingReport ageing_report(const IpdParams& params) {
    const RatioClassification rc = classify_ipd_ratio(params);
    AgeingReport rep;
    rep.model = Model::Ipd;
    rep.ageing_class = rc.ageing_class;
    rep.ratio_zeta_alpha = params.ratio();
    rep.plausibility_flag = rc.plausibility_flag;
    rep.between_published_bands = rc.between_published_bands;
    // IPD hazards are concave for every zeta > 0: no inflection to report.
    return rep;
}

AgeingReport ageing_report(const W1Params& params) {
    AgeingReport rep;
    rep.model = Model::W1;
    rep.ageing_class = classify_beta(params.beta);
    std::int64_t n_max = 1000;
    try {
        n_max = std::clamp<std::int64_t>(w1_quantile_int(params, 1.0 - 1e-9), 1000, 1000000);
    } catch (const std::runtime_error&) {
        // quantile out of integer range; the capped scan window stands
    }
    rep.inflection_point = find_w1_inflection(params, n_max);
    return rep;
}

AgeingReport ageing_report(const WeibullParams& params) {
    AgeingReport rep;
    rep.model = Model::Weibull;
    rep.ageing_class = classify_beta(params.beta);
    return rep;
}

} // namespace dlm
