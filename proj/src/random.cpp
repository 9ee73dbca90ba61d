#include "qosa/random.hpp"

#include "qosa/error.hpp"

#include <cmath>
#include <sstream>

namespace qosa {
namespace {

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

// Separates child seed sequences from root ones of the same length.
constexpr std::uint32_t kChildTag = 0x9e3779b9u;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::seed_seq& seq) : seed_(seed), engine_(seq) {}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
    std::seed_seq seq{lo32(seed), hi32(seed)};
    engine_.seed(seq);
}

RandomStream RandomStream::child(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{lo32(seed), hi32(seed), lo32(index), hi32(index), kChildTag};
    return RandomStream(seed, seq);
}

InputDistribution InputDistribution::uniform(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        throw InvalidArgument("Uniform(lo, hi) requires finite lo < hi");
    }
    return InputDistribution(Uniform{lo, hi});
}

InputDistribution InputDistribution::exponential(double rate) {
    if (!(std::isfinite(rate) && rate > 0.0)) {
        throw InvalidArgument("Exponential(rate) requires rate > 0");
    }
    return InputDistribution(Exponential{rate});
}

InputDistribution InputDistribution::negated_exponential(double rate) {
    if (!(std::isfinite(rate) && rate > 0.0)) {
        throw InvalidArgument("NegatedExponential(rate) requires rate > 0");
    }
    return InputDistribution(NegatedExponential{rate});
}

double InputDistribution::draw(RandomStream& stream) const {
    const double u = stream.uniform();
    return std::visit(Overloaded{
                          [u](const Uniform& d) { return d.lo + (d.hi - d.lo) * u; },
                          [u](const Exponential& d) { return -std::log1p(-u) / d.rate; },
                          [u](const NegatedExponential& d) { return std::log1p(-u) / d.rate; },
                      },
                      law_);
}

double InputDistribution::mean() const {
    return std::visit(Overloaded{
                          [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                          [](const Exponential& d) { return 1.0 / d.rate; },
                          [](const NegatedExponential& d) { return -1.0 / d.rate; },
                      },
                      law_);
}

std::string InputDistribution::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const Uniform& d) { os << "Uniform(" << d.lo << ", " << d.hi << ")"; },
                   [&](const Exponential& d) { os << "Exponential(" << d.rate << ")"; },
                   [&](const NegatedExponential& d) { os << "-Exponential(" << d.rate << ")"; },
               },
               law_);
    return os.str();
}

std::vector<double> sample(const InputDistribution& dist, RandomStream& stream, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("sample size must be at least 1");
    }
    std::vector<double> out(n);
    for (auto& v : out) {
        v = dist.draw(stream);
    }
    return out;
}

} // namespace qosa
