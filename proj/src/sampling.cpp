#include "dlm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dlm {

namespace {

constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ULL;
constexpr std::int64_t kLifetimeCap = 1'000'000'000;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::string describe(const IpdParams& p) {
    return "ipd(alpha=" + std::to_string(p.alpha) + ",zeta=" + std::to_string(p.zeta) + ")";
}

std::string describe(double eta, double beta, const char* name) {
    return std::string(name) + "(eta=" + std::to_string(eta) +
           ",beta=" + std::to_string(beta) + ")";
}

void require_count(std::int64_t count) {
    if (count < 1)
        throw std::domain_error("sampler: count must be >= 1");
}

LifetimeSample cohort_sample_ipd(const IpdParams& p, std::int64_t count, SeededStream s,
                                 bool parallel) {
    require_count(count);
    const CounterRng rng(s);
    LifetimeSample out;
    out.records.reserve(static_cast<std::size_t>(count));
    out.provenance = describe(p);

    std::int64_t alive = count;
    std::uint64_t base = 0;
    for (std::int64_t k = 1; alive > 0; ++k) {
        if (k > kLifetimeCap)
            throw std::runtime_error(
                "sample_ipd: cohort did not terminate within 1e9 solicitations");
        const double t = static_cast<double>(k - 1) * p.zeta;
        const double alpha_k = (p.alpha + t) / (1.0 + t);
        std::int64_t failures = 0;
#pragma omp parallel for reduction(+ : failures) if (parallel)
        for (std::int64_t j = 0; j < alive; ++j) {
            if (rng.uniform_at(base + static_cast<std::uint64_t>(j)) < alpha_k) ++failures;
        }
        base += static_cast<std::uint64_t>(alive);
        for (std::int64_t f = 0; f < failures; ++f)
            out.records.push_back({k, Event::Failure});
        alive -= failures;
    }
    return out;
}

LifetimeSample inversion_sample_w1(double eta, double beta, std::int64_t count, SeededStream s,
                                   bool parallel, const char* name) {
    require_count(count);
    const CounterRng rng(s);
    LifetimeSample out;
    out.records.resize(static_cast<std::size_t>(count));
    out.provenance = describe(eta, beta, name);
    const double inv_beta = 1.0 / beta;
    bool overflow = false;
#pragma omp parallel for reduction(|| : overflow) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        const double u = rng.uniform_open_at(static_cast<std::uint64_t>(i));
        const double t = eta * std::pow(-std::log(u), inv_beta);
        if (t > 4e18) {
            overflow = true;
        } else {
            const std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
            out.records[static_cast<std::size_t>(i)] = {n, Event::Failure};
        }
    }
    if (overflow)
        throw std::runtime_error("w1 sampler: draw exceeded integer range");
    return out;
}

} // namespace

CounterRng::CounterRng(SeededStream s) : key_(mix64(s.seed ^ mix64(s.stream + kPhi))) {}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kPhi);
}

double CounterRng::uniform_at(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open_at(std::uint64_t counter) const {
    return static_cast<double>((at(counter) >> 11) + 1) * 0x1.0p-53;
}

std::int64_t LifetimeSample::failure_count() const {
    return std::count_if(records.begin(), records.end(),
                         [](const Record& r) { return r.event == Event::Failure; });
}

std::int64_t LifetimeSample::censored_count() const {
    return static_cast<std::int64_t>(records.size()) - failure_count();
}

GroupedSample group_sample(const LifetimeSample& flat) {
    GroupedSample g;
    std::map<std::int64_t, std::int64_t> survivors;
    for (const Record& r : flat.records) {
        if (r.value < 1)
            throw std::domain_error("group_sample: record value must be >= 1");
        if (r.event == Event::Failure)
            g.failures.push_back(r.value);
        else
            ++survivors[r.value];
    }
    std::sort(g.failures.begin(), g.failures.end());
    g.survivors.reserve(survivors.size());
    for (const auto& [value, count] : survivors) g.survivors.push_back({value, count});
    return g;
}

LifetimeSample ungroup_sample(const GroupedSample& grouped) {
    LifetimeSample flat;
    for (const auto& s : grouped.survivors)
        for (std::int64_t i = 0; i < s.count; ++i)
            flat.records.push_back({s.value, Event::RightCensored});
    for (std::int64_t value : grouped.failures) flat.records.push_back({value, Event::Failure});
    return flat;
}

LifetimeSample sample_ipd(const IpdParams& p, std::int64_t count, SeededStream s) {
    return cohort_sample_ipd(p, count, s, true);
}

LifetimeSample sample_ipd_serial(const IpdParams& p, std::int64_t count, SeededStream s) {
    return cohort_sample_ipd(p, count, s, false);
}

LifetimeSample sample_w1(const W1Params& p, std::int64_t count, SeededStream s) {
    return inversion_sample_w1(p.eta, p.beta, count, s, true, "w1");
}

LifetimeSample sample_w1_serial(const W1Params& p, std::int64_t count, SeededStream s) {
    return inversion_sample_w1(p.eta, p.beta, count, s, false, "w1");
}

LifetimeSample sample_weibull_discretized(const WeibullParams& p, std::int64_t count,
                                          SeededStream s) {
    return inversion_sample_w1(p.eta, p.beta, count, s, true, "weibull_discretized");
}

CensoredWithLatents apply_censoring_traced(const LifetimeSample& sample, double rate,
                                           SeededStream s, CensoringMode mode) {
    if (!(rate >= 0.0 && rate < 1.0))
        throw std::domain_error("apply_censoring: rate must lie in [0,1)");
    for (const Record& r : sample.records)
        if (r.event != Event::Failure)
            throw std::invalid_argument("apply_censoring: input sample must be uncensored");

    const CounterRng rng(s);
    const std::size_t n = sample.records.size();
    CensoredWithLatents out;
    out.sample = sample;
    out.latents.resize(n);

    std::vector<bool> selected(n, false);
    if (mode == CensoringMode::Bernoulli) {
        for (std::size_t i = 0; i < n; ++i)
            selected[i] = rng.uniform_at(2 * i) < rate;
    } else {
        // Partial Fisher-Yates over the index array picks ceil(rate*n) slots.
        const auto m = static_cast<std::size_t>(
            std::ceil(rate * static_cast<double>(n)));
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < m && i < n; ++i) {
            const auto j = i + static_cast<std::size_t>(
                                   rng.uniform_at(2 * i) * static_cast<double>(n - i));
            std::swap(idx[i], idx[std::min(j, n - 1)]);
            selected[idx[i]] = true;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t latent = sample.records[i].value;
        out.latents[i] = latent;
        if (!selected[i]) continue;
        const double u = rng.uniform_at(2 * i + 1);
        const auto c = 1 + static_cast<std::int64_t>(u * static_cast<double>(latent));
        out.sample.records[i] = {std::min(c, latent), Event::RightCensored};
    }
    return out;
}

LifetimeSample apply_censoring(const LifetimeSample& sample, double rate, SeededStream s,
                               CensoringMode mode) {
    return apply_censoring_traced(sample, rate, s, mode).sample;
}

} // namespace dlm
