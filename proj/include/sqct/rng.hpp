#pragma once

#include <cstdint>

#include "bigint.hpp"

namespace sqct
{

    /**
     * RandomSource: deterministic stream of uniform integers (splitmix64).
     * The same seed yields the same sequence on every platform; every
     * randomized routine takes one of these explicitly, there is no global
     * generator.
     */
    class RandomSource
    {
    private:
        std::uint64_t _state;

    public:
        explicit RandomSource(std::uint64_t seed = 0) : _state(seed) {}

        std::uint64_t next_u64()
        {
            std::uint64_t z = (_state += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        // Uniform in [0, n), n > 0, by rejection sampling.
        Integer below(const Integer &n)
        {
            if (n <= 0)
                throw std::domain_error("RandomSource::below: n must be positive");
            size_t bits = bit_length(n);
            size_t words = (bits + 63) / 64;
            while (true)
            {
                Integer x = 0;
                for (size_t i = 0; i < words; ++i)
                {
                    std::uint64_t w = next_u64();
                    x <<= 64;
                    x += Integer(static_cast<unsigned long>(w >> 32)) << 32;
                    x += static_cast<unsigned long>(w & 0xffffffffULL);
                }
                // keep only `bits` low bits
                Integer mask = (Integer(1) << static_cast<unsigned long>(bits)) - 1;
                x &= mask;
                if (x < n)
                    return x;
            }
        }

        // Uniform in [lo, hi] inclusive.
        Integer between(const Integer &lo, const Integer &hi)
        {
            if (lo > hi)
                throw std::domain_error("RandomSource::between: empty range");
            return lo + below(hi - lo + 1);
        }

        std::uint64_t below_u64(std::uint64_t n)
        {
            // n > 0; modulo bias negligible for test usage but avoid it anyway
            std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t x;
            do
            {
                x = next_u64();
            } while (x >= limit);
            return x % n;
        }
    };

} // namespace sqct
