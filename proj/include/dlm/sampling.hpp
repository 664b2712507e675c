#ifndef DLM_SAMPLING_HPP
#define DLM_SAMPLING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dlm/params.hpp"

namespace dlm {

/// Identifies one reproducible random stream. Equal (seed, stream) pairs
/// produce bit-identical output sequences; distinct stream ids give
/// independent substreams (used to partition parallel replicates).
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Counter-based generator: draw i is the SplitMix64 finalizer applied to
/// key + (i+1)*phi, with the key mixed from (seed, stream). Because every
/// draw is addressed by its counter, parallel consumers can pull from one
/// stream deterministically regardless of scheduling.
class CounterRng {
public:
    explicit CounterRng(SeededStream s);

    std::uint64_t at(std::uint64_t counter) const;

    /// Uniform on [0, 1), 53 bits.
    double uniform_at(std::uint64_t counter) const;

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open_at(std::uint64_t counter) const;

    std::uint64_t next_u64() { return at(counter_++); }
    double next_uniform() { return uniform_at(counter_++); }
    std::uint64_t counter() const { return counter_; }
    void skip(std::uint64_t n) { counter_ += n; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class Event : std::uint8_t { Failure = 1, RightCensored = 0 };

struct Record {
    std::int64_t value; // solicitation count, >= 1
    Event event;

    friend bool operator==(const Record&, const Record&) = default;
};

/// Censored observations, flat form.
struct LifetimeSample {
    std::vector<Record> records;
    std::string provenance; // optional generating-model descriptor

    std::size_t size() const { return records.size(); }
    std::int64_t failure_count() const;
    std::int64_t censored_count() const;
};

/// Grouped form: k_i survivors censored at n_i, plus individual failure values.
struct GroupedSample {
    struct Survivors {
        std::int64_t value;
        std::int64_t count;
        friend bool operator==(const Survivors&, const Survivors&) = default;
    };
    std::vector<Survivors> survivors; // sorted by value, counts >= 1
    std::vector<std::int64_t> failures; // sorted, repeats kept
};

GroupedSample group_sample(const LifetimeSample& flat);
LifetimeSample ungroup_sample(const GroupedSample& grouped);

/// Urn cohort sampler: all `count` items advance one solicitation at a
/// time, each step drawing Bernoulli(alpha_k) per survivor. Emits exactly
/// `count` uncensored lifetimes in ascending order. Throws if any lifetime
/// would exceed 1e9 solicitations (pathological parameters).
LifetimeSample sample_ipd(const IpdParams& p, std::int64_t count, SeededStream s);
LifetimeSample sample_ipd_serial(const IpdParams& p, std::int64_t count, SeededStream s);

/// Inversion sampling of the continuous Weibull followed by the ceiling,
/// which reproduces W1 exactly (the survival functions agree at integers).
LifetimeSample sample_w1(const W1Params& p, std::int64_t count, SeededStream s);
LifetimeSample sample_w1_serial(const W1Params& p, std::int64_t count, SeededStream s);

/// Same construction as sample_w1; provided under the continuous parameter
/// type for the discretized-Weibull experiment protocols.
LifetimeSample sample_weibull_discretized(const WeibullParams& p, std::int64_t count,
                                          SeededStream s);

enum class CensoringMode {
    /// Each record independently censored with probability `rate`.
    Bernoulli,
    /// Exactly ceil(rate * size) records censored, chosen uniformly.
    ExactCount,
};

/// Right-censor an uncensored sample: a selected record with latent lifetime
/// n is replaced by a censoring value uniform on {1, ..., n}.
LifetimeSample apply_censoring(const LifetimeSample& sample, double rate, SeededStream s,
                               CensoringMode mode = CensoringMode::Bernoulli);

/// Instrumented variant retaining latent lifetimes (latents[i] is the
/// pre-censoring value of record i).
struct CensoredWithLatents {
    LifetimeSample sample;
    std::vector<std::int64_t> latents;
};
CensoredWithLatents apply_censoring_traced(const LifetimeSample& sample, double rate,
                                           SeededStream s,
                                           CensoringMode mode = CensoringMode::Bernoulli);

} // namespace dlm

#endif
