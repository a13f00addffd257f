#pragma once

#include "rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>

namespace nilharm
{

/// Seed from NILHARM_SEED, else 0.
inline std::uint64_t default_seed()
{
    if (const char* s = std::getenv("NILHARM_SEED"))
    {
        try
        {
            return std::stoull(s);
        }
        catch (const std::exception&)
        {
            throw ParseError("NILHARM_SEED is not an unsigned 64-bit integer");
        }
    }
    return 0;
}

/// Named generator streams derived from one root seed, so adding a consumer
/// never shifts the draws seen by another.
class SeedStreams
{
public:
    explicit SeedStreams(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::mt19937_64 stream(std::string_view name) const
    {
        std::uint64_t h = 1469598103934665603ULL; // FNV-1a
        for (unsigned char c : name)
        {
            h ^= c;
            h *= 1099511628211ULL;
        }
        std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
        return std::mt19937_64(seq);
    }

private:
    std::uint64_t seed_;
};

/// Small-height rationals p/q with |p| <= num_bound, 1 <= q <= den_bound.
inline Rational random_rational(std::mt19937_64& rng, int num_bound = 9, int den_bound = 5)
{
    std::uniform_int_distribution<int> p(-num_bound, num_bound);
    std::uniform_int_distribution<int> q(1, den_bound);
    return make_rational(p(rng), q(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int num_bound = 9, int den_bound = 5)
{
    Rational r;
    do
        r = random_rational(rng, num_bound, den_bound);
    while (sgn(r) == 0);
    return r;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, int num_bound = 9, int den_bound = 5)
{
    Vector v(n);
    for (auto& c : v)
        c = random_rational(rng, num_bound, den_bound);
    return v;
}

} // namespace nilharm
