#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qosa {

/// Deterministic seeded source of uniforms.
///
/// Backed by std::mt19937_64 seeded through std::seed_seq, both of which are
/// fully specified by the standard, so a given seed yields the same sequence
/// on every conforming platform. Child streams are keyed by (seed, index) and
/// are used to give every Monte Carlo replication its own reproducible stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    /// Stream for replication `index` derived from `seed`.
    static RandomStream child(std::uint64_t seed, std::uint64_t index);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    RandomStream(std::uint64_t seed, std::seed_seq& seq);

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct Uniform {
    double lo;
    double hi;
};

struct Exponential {
    double rate;
};

// -X where X ~ Exponential(rate).
struct NegatedExponential {
    double rate;
};

class InputDistribution {
public:
    using Law = std::variant<Uniform, Exponential, NegatedExponential>;

    static InputDistribution uniform(double lo, double hi);
    static InputDistribution exponential(double rate);
    static InputDistribution negated_exponential(double rate);

    double draw(RandomStream& stream) const;
    double mean() const;
    std::string describe() const;

    const Law& law() const noexcept { return law_; }

private:
    explicit InputDistribution(Law law) : law_(law) {}

    Law law_;
};

std::vector<double> sample(const InputDistribution& dist, RandomStream& stream, std::size_t n);

} // namespace qosa
