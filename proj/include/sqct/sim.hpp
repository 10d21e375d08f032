#pragma once

#include <stdexcept>
#include <vector>

#include "angle.hpp"
#include "circuit.hpp"
#include "statevec.hpp"

namespace sqct
{

    /**
     * ExactMatrix: dense matrix over RingScalar, stored as columns. Circuit
     * simulation applies gates column-wise, so circuit_matrix(c) is the exact
     * product of the gate matrices in time order.
     */
    class ExactMatrix
    {
    private:
        unsigned _dim;
        std::vector<StateVec> _cols;

    public:
        explicit ExactMatrix(unsigned dim = 2) : _dim(dim)
        {
            _cols.reserve(dim);
            for (unsigned c = 0; c < dim; ++c)
                _cols.push_back(StateVec(dim));
        }

        static ExactMatrix identity(unsigned dim)
        {
            ExactMatrix m(dim);
            for (unsigned c = 0; c < dim; ++c)
                m._cols[c][c] = RingScalar::one();
            return m;
        }

        unsigned dim() const { return _dim; }

        StateVec &col(unsigned c) { return _cols.at(c); }
        const StateVec &col(unsigned c) const { return _cols.at(c); }

        RingScalar &at(unsigned r, unsigned c) { return _cols.at(c)[r]; }
        const RingScalar &at(unsigned r, unsigned c) const { return _cols.at(c)[r]; }

        bool operator==(const ExactMatrix &o) const
        {
            if (_dim != o._dim)
                return false;
            for (unsigned c = 0; c < _dim; ++c)
                if (_cols[c] != o._cols[c])
                    return false;
            return true;
        }
        bool operator!=(const ExactMatrix &o) const { return !(*this == o); }

        ExactMatrix operator*(const ExactMatrix &o) const
        {
            if (_dim != o._dim)
                throw std::domain_error("ExactMatrix: dimension mismatch");
            ExactMatrix r(_dim);
            for (unsigned c = 0; c < _dim; ++c)
                for (unsigned i = 0; i < _dim; ++i)
                {
                    RingScalar acc;
                    for (unsigned k = 0; k < _dim; ++k)
                        acc = acc + at(i, k) * o.at(k, c);
                    r.at(i, c) = acc.normalized();
                }
            return r;
        }

        StateVec operator*(const StateVec &v) const
        {
            if (v.dim() != _dim)
                throw std::domain_error("ExactMatrix: dimension mismatch");
            StateVec r(_dim);
            for (unsigned i = 0; i < _dim; ++i)
            {
                RingScalar acc;
                for (unsigned k = 0; k < _dim; ++k)
                    acc = acc + at(i, k) * v[k];
                r[i] = acc.normalized();
            }
            return r;
        }

        ExactMatrix dagger() const
        {
            ExactMatrix r(_dim);
            for (unsigned c = 0; c < _dim; ++c)
                for (unsigned i = 0; i < _dim; ++i)
                    r.at(i, c) = at(c, i).conj().normalized();
            return r;
        }

        bool is_unitary() const { return (*this).dagger() * (*this) == identity(_dim); }

        // diag(I_dim, *this): the controlled embedding on one more qubit.
        ExactMatrix controlled() const
        {
            ExactMatrix r = identity(2 * _dim);
            for (unsigned c = 0; c < _dim; ++c)
                for (unsigned i = 0; i < _dim; ++i)
                    r.at(_dim + i, _dim + c) = at(i, c);
            return r;
        }
    };

    namespace detail
    {
        // Qubit q corresponds to bit (n-1-q) of the basis index, so qubit 0 is
        // the most significant wire (index = 4 q0 + 2 q1 + q2 on 3 qubits).
        inline unsigned qubit_bit(unsigned n_qubits, unsigned q)
        {
            return n_qubits - 1 - q;
        }

        template <typename EntryOp2>
        void for_each_pair(unsigned dim, unsigned bit, EntryOp2 &&op)
        {
            unsigned mask = 1u << bit;
            for (unsigned idx = 0; idx < dim; ++idx)
                if (!(idx & mask))
                    op(idx, idx | mask);
        }
    } // namespace detail

    inline void apply_gate_in_place(const PrimGate &g, unsigned n_qubits, StateVec &v)
    {
        unsigned dim = 1u << n_qubits;
        if (v.dim() != dim)
            throw std::domain_error("apply_gate: dimension mismatch");
        using K = PrimGate::Kind;
        switch (g.kind)
        {
        case K::H:
        {
            unsigned bit = detail::qubit_bit(n_qubits, g.q0);
            detail::for_each_pair(dim, bit, [&](unsigned i0, unsigned i1)
                                  {
                RingScalar x = v[i0], y = v[i1];
                v[i0] = (x + y).div_sqrt2().normalized();
                v[i1] = (x - y).div_sqrt2().normalized(); });
            break;
        }
        case K::X:
        {
            unsigned bit = detail::qubit_bit(n_qubits, g.q0);
            detail::for_each_pair(dim, bit, [&](unsigned i0, unsigned i1)
                                  { std::swap(v[i0], v[i1]); });
            break;
        }
        case K::T:
        case K::TDG:
        case K::S:
        case K::SDG:
        case K::Z:
        {
            int ph = g.kind == K::T ? 1 : g.kind == K::TDG ? 7
                                      : g.kind == K::S     ? 2
                                      : g.kind == K::SDG   ? 6
                                                           : 4;
            unsigned bit = detail::qubit_bit(n_qubits, g.q0);
            detail::for_each_pair(dim, bit, [&](unsigned, unsigned i1)
                                  { v[i1] = v[i1].omega_mul(ph); });
            break;
        }
        case K::CNOT:
        {
            unsigned cbit = detail::qubit_bit(n_qubits, g.q0);
            unsigned tbit = detail::qubit_bit(n_qubits, g.q1);
            detail::for_each_pair(dim, tbit, [&](unsigned i0, unsigned i1)
                                  {
                if (i0 & (1u << cbit))
                    std::swap(v[i0], v[i1]); });
            break;
        }
        }
    }

    inline StateVec apply_gate(const PrimGate &g, unsigned n_qubits, StateVec v)
    {
        apply_gate_in_place(g, n_qubits, v);
        return v;
    }

    inline StateVec apply_circuit(const Circuit &c, StateVec v)
    {
        for (const auto &g : c.gates())
            apply_gate_in_place(g, c.n_qubits(), v);
        return v;
    }

    inline ExactMatrix apply_gate(const PrimGate &g, unsigned n_qubits, ExactMatrix m)
    {
        for (unsigned c = 0; c < m.dim(); ++c)
            apply_gate_in_place(g, n_qubits, m.col(c));
        return m;
    }

    // Exact product of the circuit's gates in time order.
    inline ExactMatrix circuit_matrix(const Circuit &c)
    {
        ExactMatrix m = ExactMatrix::identity(1u << c.n_qubits());
        for (const auto &g : c.gates())
            for (unsigned col = 0; col < m.dim(); ++col)
                apply_gate_in_place(g, c.n_qubits(), m.col(col));
        return m;
    }

    inline bool exact_equal(const StateVec &a, const StateVec &b) { return a == b; }
    inline bool exact_equal(const ExactMatrix &a, const ExactMatrix &b) { return a == b; }

    // Certified upper bound on ||a - b||; the squared norm is exact in
    // Z[sqrt(2)], only the final square root is interval-bounded.
    inline Dyadic certified_distance(const StateVec &a, const StateVec &b,
                                     unsigned precision_bits)
    {
        if (a.dim() != b.dim())
            throw std::domain_error("certified_distance: dimension mismatch");
        StateVec diff(a.dim());
        for (unsigned i = 0; i < a.dim(); ++i)
            diff[i] = (a[i] - b[i]).normalized();
        auto [num, K] = diff.norm_squared();
        Interval n2 = num.enclosure(precision_bits + K).mul_pow2(-static_cast<long>(K));
        if (n2.hi().sign() <= 0)
            return Dyadic::zero();
        return Interval::sqrt_upper(n2.hi(), precision_bits);
    }

    // Certified upper bound on || v - e^{i phi} e_slot ||.
    inline Dyadic distance_to_phase_state(const StateVec &v, const AngleSpec &phi,
                                          unsigned slot, unsigned precision_bits)
    {
        // sum_{i != slot} |v_i|^2 exactly, plus |v_slot - e^{i phi}|^2
        unsigned K = 0;
        std::vector<RingScalar> entries;
        entries.reserve(v.dim());
        for (unsigned i = 0; i < v.dim(); ++i)
        {
            entries.push_back(v[i].normalized());
            if (i != slot)
                K = std::max(K, entries.back().k());
        }
        RingReal rest(0, 0);
        for (unsigned i = 0; i < v.dim(); ++i)
            if (i != slot)
                rest = rest + entries[i].norm_numerator() * pow2(K - entries[i].k());
        Interval rest_iv = rest.enclosure(precision_bits + K).mul_pow2(-static_cast<long>(K));

        ComplexInterval vs = evaluate(entries[slot], precision_bits + 16);
        auto [c, s] = phi.cos_sin_enclosure(precision_bits + 16);
        Interval dre = vs.re() - c;
        Interval dim_ = vs.im() - s;
        Interval total = rest_iv + dre.square() + dim_.square();
        if (total.hi().sign() <= 0)
            return Dyadic::zero();
        return Interval::sqrt_upper(total.hi(), precision_bits);
    }

} // namespace sqct
