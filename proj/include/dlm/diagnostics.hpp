#ifndef DLM_DIAGNOSTICS_HPP
#define DLM_DIAGNOSTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dlm/inference.hpp"
#include "dlm/params.hpp"

namespace dlm {

enum class AgeingClass {
    Rejuvenation,
    NoAgeing,
    SoftDeceleratedAgeing,
    DeceleratedAgeing,
    NonAcceleratedAgeing,
    AcceleratedAgeing,
    StronglyAcceleratedAgeing,
};

enum class PlausibilityFlag {
    Plausible,
    ImplausibleRatioAboveOne,
    Boundary,
};

const char* to_string(AgeingClass c);
const char* to_string(PlausibilityFlag f);

struct AgeingReport {
    Model model;
    AgeingClass ageing_class;
    std::optional<double> ratio_zeta_alpha; // present iff model == Ipd
    PlausibilityFlag plausibility_flag = PlausibilityFlag::Plausible;
    std::optional<std::int64_t> inflection_point;
    bool between_published_bands = false; // ratio fell in a gap of the band table
};

/// Weibull shape classification: rejuvenation below 1, exponential at 1,
/// decelerated in (1,2), the beta = 2 boundary, accelerated above 2.
AgeingClass classify_beta(double beta);

struct RatioClassification {
    AgeingClass ageing_class;
    PlausibilityFlag plausibility_flag;
    bool between_published_bands;
};

/// Maps zeta/alpha onto the published ageing bands. Ratios in a gap go to the
/// band whose nearest edge is closer in log scale and are annotated; ratios
/// above one are flagged as implausible for the urn model, ratios in the
/// rejuvenation region as an ageing/no-ageing boundary the model cannot
/// distinguish.
RatioClassification classify_ipd_ratio(const IpdParams& params);

/// lambda(n) - 2 lambda(n-1) + lambda(n-2), n >= 3. The IPD overload uses the
/// closed form 2(alpha-1) zeta^2 / prod(1 + (n-k) zeta), exact in sign for
/// every n; the W1 overload differences the hazard directly.
double hazard_second_difference(const IpdParams& params, std::int64_t n);
double hazard_second_difference(const W1Params& params, std::int64_t n);

/// Smallest n in [3, n_max] where the W1 hazard's second difference turns
/// from positive to nonpositive; absent when the hazard is concave from the
/// start or no sign change occurs. The scan stops early once the hazard
/// saturates (within 1e-12 of 1), where differences are numerically
/// meaningless.
std::optional<std::int64_t> find_w1_inflection(const W1Params& params, std::int64_t n_max);

struct InflectionRow {
    double eta;
    double beta;
    std::optional<std::int64_t> inflection;
};

std::vector<InflectionRow> inflection_map(const std::vector<double>& eta_grid,
                                          const std::vector<double>& beta_grid,
                                          std::int64_t n_max);
std::vector<InflectionRow> inflection_map_serial(const std::vector<double>& eta_grid,
                                                 const std::vector<double>& beta_grid,
                                                 std::int64_t n_max);

/// CSV with header `eta,beta,inflection_n`; empty third field when absent.
void write_inflection_csv(const std::vector<InflectionRow>& rows, std::ostream& os);

AgeingReport ageing_report(const IpdParams& params);
AgeingReport ageing_report(const W1Params& params);
AgeingReport ageing_report(const WeibullParams& params);

} // namespace dlm

#endif
