#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "statevec.hpp"

namespace sqct
{

    /**
     * TwoLevelGate: a generator acting on two basis slots i < j.
     *
     *   IX      : [[0, i], [i, 0]]
     *   HTM(m)  : (i/sqrt(2)) [[1, w^m], [w^-m, -1]]   (= T^-m (iH) T^m)
     *   WPOW(l) : diag(w^l, w^-l)
     *
     * All three blocks have determinant 1. inverse applies the adjoint.
     */
    struct TwoLevelGate
    {
        enum class Kind
        {
            IX,
            HTM,
            WPOW
        };

        Kind kind = Kind::IX;
        int param = 0; // m for HTM, l for WPOW, unused for IX
        unsigned i = 0, j = 1;
        bool inverse = false;

        static TwoLevelGate ix(unsigned i, unsigned j) { return {Kind::IX, 0, i, j, false}; }
        static TwoLevelGate htm(int m, unsigned i, unsigned j)
        {
            return {Kind::HTM, ((m % 8) + 8) % 8, i, j, false};
        }
        static TwoLevelGate wpow(int l, unsigned i, unsigned j)
        {
            return {Kind::WPOW, ((l % 8) + 8) % 8, i, j, false};
        }

        TwoLevelGate inverted() const
        {
            TwoLevelGate g = *this;
            g.inverse = !g.inverse;
            return g;
        }

        bool operator==(const TwoLevelGate &o) const = default;
    };

    inline StateVec apply_two_level(const TwoLevelGate &g, const StateVec &v)
    {
        if (g.j >= v.dim() || g.i >= g.j)
            throw std::domain_error("apply_two_level: bad indices");
        StateVec r = v;
        const RingScalar &x = v[g.i];
        const RingScalar &y = v[g.j];
        switch (g.kind)
        {
        case TwoLevelGate::Kind::IX:
        {
            int ph = g.inverse ? 6 : 2; // i or -i
            r[g.i] = y.omega_mul(ph).normalized();
            r[g.j] = x.omega_mul(ph).normalized();
            break;
        }
        case TwoLevelGate::Kind::HTM:
        {
            int ph = g.inverse ? 6 : 2;
            RingScalar a = (x + y.omega_mul(g.param)).omega_mul(ph).div_sqrt2();
            RingScalar b = (x.omega_mul(-g.param) - y).omega_mul(ph).div_sqrt2();
            r[g.i] = a.normalized();
            r[g.j] = b.normalized();
            break;
        }
        case TwoLevelGate::Kind::WPOW:
        {
            int l = g.inverse ? -g.param : g.param;
            r[g.i] = x.omega_mul(l).normalized();
            r[g.j] = y.omega_mul(-l).normalized();
            break;
        }
        }
        return r;
    }

    inline StateVec apply_sequence(const std::vector<TwoLevelGate> &gates, StateVec v)
    {
        for (const auto &g : gates)
            v = apply_two_level(g, v);
        return v;
    }

    // The gate's dim x dim matrix, built column-by-column from its action.
    template <typename Matrix>
    Matrix two_level_matrix(const TwoLevelGate &g, unsigned dim)
    {
        Matrix m(dim);
        for (unsigned c = 0; c < dim; ++c)
        {
            StateVec col = apply_two_level(g, StateVec::basis(dim, c));
            for (unsigned r = 0; r < dim; ++r)
                m.at(r, c) = col[r];
        }
        return m;
    }

    namespace detail
    {
        // Smallest r in 0..3 with w_i = w^r * w_j (mod 2), if any. Residues
        // mod 2 repeat with period 4 in r because w^4 = -1 = 1 (mod 2).
        inline std::optional<int> omega_match_mod2(const RingInt &wi, const RingInt &wj)
        {
            for (int r = 0; r < 4; ++r)
            {
                if (wi.congruent_mod2(wj.omega_mul(r)))
                    return r;
            }
            return std::nullopt;
        }

        // For a pair whose residues are not omega-multiples mod 2, pick m so
        // that both HTM outputs land in class (1,1); such m always exists for
        // the two odd-type orbits.
        inline int conversion_param(const RingInt &wi, const RingInt &wj)
        {
            for (int m = 0; m < 8; ++m)
            {
                RingInt sum = wi + wj.omega_mul(m);
                RingInt diff = wi.omega_mul(-m) - wj;
                if (!sum.divisible_by_sqrt2() || !diff.divisible_by_sqrt2())
                    continue;
                if (sum.div_sqrt2().residue_class().is_double_odd() &&
                    diff.div_sqrt2().residue_class().is_double_odd())
                    return m;
            }
            throw std::logic_error("conversion_param: no class-converting HTM exists");
        }

        // Number of odd coefficients distinguishes the two odd-type orbits
        // modulo 2 (one vs three odd coefficients).
        inline int odd_orbit(const RingInt &w)
        {
            unsigned r = w.residue_mod2();
            int pop = __builtin_popcount(r);
            if (pop == 1)
                return 1;
            if (pop == 3)
                return 2;
            throw std::logic_error("odd_orbit: entry is not odd-type");
        }
    } // namespace detail

    /**
     * One round of the column lemma: emits HTM gates making every entry of a
     * state with minimal denominator exponent m >= 1 divisible by sqrt(2), so
     * the exponent drops. Entries are paired by their residues mod 2 up to
     * powers of omega; a leftover pair of odd-type entries from distinct
     * residue orbits is first converted into class (1,1) by one extra HTM.
     */
    inline std::pair<std::vector<TwoLevelGate>, StateVec> reduce_step(const StateVec &v)
    {
        unsigned m = v.lde();
        if (m < 1)
            throw std::domain_error("reduce_step: state already has denominator exponent 0");
        std::vector<TwoLevelGate> gates;
        StateVec cur = v;

        while (true)
        {
            std::vector<RingInt> w = cur.scaled_numerators(m);
            std::vector<unsigned> odd1, odd2, dd;
            for (unsigned idx = 0; idx < cur.dim(); ++idx)
            {
                ResidueClass c = w[idx].residue_class();
                if (c.is_odd_type())
                    (detail::odd_orbit(w[idx]) == 1 ? odd1 : odd2).push_back(idx);
                else if (c.is_double_odd())
                    dd.push_back(idx);
            }
            if (odd1.empty() && odd2.empty() && dd.empty())
                break;
            if ((odd1.size() + odd2.size()) % 2 != 0 || dd.size() % 2 != 0)
                throw std::logic_error("reduce_step: impossible residue parity");

            std::vector<TwoLevelGate> round;
            auto pair_within = [&](const std::vector<unsigned> &idxs)
            {
                for (size_t p = 0; p + 1 < idxs.size(); p += 2)
                {
                    unsigned i = idxs[p], j = idxs[p + 1];
                    auto r = detail::omega_match_mod2(w[i], w[j]);
                    if (!r)
                        throw std::logic_error("reduce_step: same-orbit entries do not match mod 2");
                    round.push_back(TwoLevelGate::htm(*r, i, j));
                }
            };
            pair_within(odd1);
            pair_within(odd2);
            pair_within(dd);
            if (odd1.size() % 2 == 1)
            {
                // one leftover in each odd orbit: convert the pair to (1,1)
                unsigned i = odd1.back(), j = odd2.back();
                if (i > j)
                    std::swap(i, j);
                round.push_back(TwoLevelGate::htm(detail::conversion_param(w[i], w[j]), i, j));
            }
            for (const auto &g : round)
            {
                cur = apply_two_level(g, cur);
                gates.push_back(g);
            }
        }
        if (cur.lde() >= m)
            throw std::logic_error("reduce_step: denominator exponent did not decrease");
        return {gates, cur};
    }

    /**
     * Reduces an exact unit vector to e_0 (global phase included); applying
     * the returned gates in order maps v to exactly e_0.
     */
    inline std::vector<TwoLevelGate> column_reduce(const StateVec &v)
    {
        if (!v.is_unit_norm())
            throw std::domain_error("column_reduce: input is not an exact unit vector");
        std::vector<TwoLevelGate> gates;
        StateVec cur = v;
        while (cur.lde() >= 1)
        {
            auto [step_gates, next] = reduce_step(cur);
            gates.insert(gates.end(), step_gates.begin(), step_gates.end());
            cur = next;
        }

        // Endgame: exactly one entry remains and it is a unit w^l.
        std::vector<RingInt> w = cur.scaled_numerators(0);
        unsigned slot = cur.dim();
        for (unsigned idx = 0; idx < cur.dim(); ++idx)
        {
            if (w[idx].is_zero())
                continue;
            if (slot != cur.dim())
                throw std::logic_error("column_reduce: several entries remain at exponent 0");
            slot = idx;
        }
        if (slot == cur.dim())
            throw std::logic_error("column_reduce: zero vector");
        if (w[slot].norm() != RingReal(1, 0))
            throw std::logic_error("column_reduce: residual entry is not a unit");

        if (slot != 0)
        {
            TwoLevelGate g = TwoLevelGate::ix(0, slot);
            cur = apply_two_level(g, cur);
            gates.push_back(g);
        }
        int l = -1;
        for (int cand = 0; cand < 8; ++cand)
        {
            if (cur[0] == RingScalar(RingInt::omega_power(cand)))
            {
                l = cand;
                break;
            }
        }
        if (l < 0)
            throw std::logic_error("column_reduce: residual phase is not a power of omega");
        if (l != 0)
        {
            TwoLevelGate g = TwoLevelGate::wpow((8 - l) % 8, 0, 1);
            cur = apply_two_level(g, cur);
            gates.push_back(g);
        }
        if (cur != StateVec::basis(cur.dim(), 0))
            throw std::logic_error("column_reduce: did not reach e0");
        return gates;
    }

    /**
     * Inverse-flagged reversal of column_reduce: applying the result to e_0
     * yields exactly v.
     */
    inline std::vector<TwoLevelGate> prep_sequence(const StateVec &v)
    {
        std::vector<TwoLevelGate> gates = column_reduce(v);
        std::vector<TwoLevelGate> prep(gates.rbegin(), gates.rend());
        for (auto &g : prep)
            g.inverse = !g.inverse;
        return prep;
    }

} // namespace sqct
