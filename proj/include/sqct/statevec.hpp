#pragma once

#include <stdexcept>
#include <vector>

#include "ring.hpp"

namespace sqct
{

    /**
     * StateVec: an exact vector over RingScalar (dimensions 2, 4 and 8 occur).
     */
    class StateVec
    {
    private:
        std::vector<RingScalar> _entries;

    public:
        StateVec() = default;
        explicit StateVec(unsigned dim) : _entries(dim) {}
        explicit StateVec(std::vector<RingScalar> entries) : _entries(std::move(entries)) {}

        static StateVec basis(unsigned dim, unsigned index)
        {
            StateVec v(dim);
            v[index] = RingScalar::one();
            return v;
        }

        unsigned dim() const { return static_cast<unsigned>(_entries.size()); }

        RingScalar &operator[](unsigned i) { return _entries.at(i); }
        const RingScalar &operator[](unsigned i) const { return _entries.at(i); }

        bool operator==(const StateVec &o) const
        {
            if (dim() != o.dim())
                return false;
            for (unsigned i = 0; i < dim(); ++i)
                if (_entries[i] != o._entries[i])
                    return false;
            return true;
        }
        bool operator!=(const StateVec &o) const { return !(*this == o); }

        // Sum of |entry|^2 as (RingReal numerator, power-of-2 denominator 2^K).
        std::pair<RingReal, unsigned> norm_squared() const
        {
            unsigned K = 0;
            std::vector<RingScalar> norm;
            norm.reserve(_entries.size());
            for (const auto &e : _entries)
            {
                norm.push_back(e.normalized());
                K = std::max(K, norm.back().k());
            }
            RingReal total(0, 0);
            for (const auto &e : norm)
            {
                RingReal n = e.norm_numerator();
                total = total + n * pow2(K - e.k());
            }
            return {total, K};
        }

        bool is_unit_norm() const
        {
            auto [total, K] = norm_squared();
            return total == RingReal(pow2(K), 0);
        }

        // Largest minimal denominator exponent over the entries.
        unsigned lde() const
        {
            unsigned m = 0;
            for (const auto &e : _entries)
                m = std::max(m, e.lde());
            return m;
        }

        // Numerators after scaling every entry to the common exponent m.
        std::vector<RingInt> scaled_numerators(unsigned m) const
        {
            std::vector<RingInt> w;
            w.reserve(_entries.size());
            for (const auto &e : _entries)
                w.push_back(e.with_denom_exp(m).u());
            return w;
        }
    };

} // namespace sqct
