#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "compile.hpp"

namespace sqct
{

    /**
     * Unitary2: a 2x2 complex matrix with exact rational entries, as read
     * from a matrix file (eight whitespace-separated decimals, row-major
     * re/im pairs).
     */
    struct Unitary2
    {
        // entries[r][c] = (re, im)
        std::array<std::array<std::pair<Rational, Rational>, 2>, 2> e;

        static Unitary2 parse(const std::string &text)
        {
            std::istringstream is(text);
            std::vector<std::string> tokens;
            std::string tok;
            while (is >> tok)
                tokens.push_back(tok);
            if (tokens.size() != 8)
                throw std::invalid_argument("Unitary2: expected 8 decimal entries");
            Unitary2 u;
            size_t idx = 0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                {
                    u.e[r][c].first = parse_decimal(tokens[idx++]);
                    u.e[r][c].second = parse_decimal(tokens[idx++]);
                }
            return u;
        }

        bool entry_is_zero(int r, int c) const
        {
            return e[r][c].first == 0 && e[r][c].second == 0;
        }

        // Squared Frobenius norm of U^dag U - I, exactly.
        Rational unitarity_defect_squared() const
        {
            // (U^dag U)_{rc} = sum_k conj(u_{kr}) u_{kc}
            Rational defect = 0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                {
                    Rational re = 0, im = 0;
                    for (int k = 0; k < 2; ++k)
                    {
                        const auto &[ar, ai] = e[k][r];
                        const auto &[br, bi] = e[k][c];
                        re += ar * br + ai * bi;
                        im += ar * bi - ai * br;
                    }
                    if (r == c)
                        re -= 1;
                    defect += re * re + im * im;
                }
            return defect;
        }
    };

    /**
     * EulerDecomposition: U = e^{i alpha} P(beta) H P(gamma) H P(delta) with
     * P(t) = diag(1, e^{it}); angles are stored as exact decimal AngleSpecs so
     * each P block feeds straight into phase synthesis.
     */
    struct EulerDecomposition
    {
        AngleSpec alpha = AngleSpec::zero();
        AngleSpec beta = AngleSpec::zero();
        AngleSpec gamma = AngleSpec::zero();
        AngleSpec delta = AngleSpec::zero();
    };

    namespace detail
    {
        inline void mpfr_from_rational(mpfr_ptr out, const Rational &q)
        {
            mpfr_set_q(out, q.get_mpq_t(), MPFR_RNDN);
        }

        // Decimal string with `digits` significant digits (round to nearest).
        inline std::string mpfr_decimal(mpfr_srcptr x, unsigned digits)
        {
            if (mpfr_zero_p(x))
                return "0";
            mpfr_exp_t exp10;
            char *raw = mpfr_get_str(nullptr, &exp10, 10, digits, x, MPFR_RNDN);
            std::string s(raw);
            mpfr_free_str(raw);
            bool neg = !s.empty() && s[0] == '-';
            if (neg)
                s = s.substr(1);
            std::string out = (neg ? "-0." : "0.") + s + "e" + std::to_string(exp10);
            return out;
        }

        // arg(re + i*im) in [0, 2pi), at precision prec (round to nearest;
        // the result is only a candidate, certification happens later).
        inline void arg_mod_2pi(mpfr_ptr out, const Rational &re, const Rational &im,
                                mpfr_prec_t prec)
        {
            MpReal r(prec), i(prec), two_pi(prec);
            mpfr_from_rational(r.get(), re);
            mpfr_from_rational(i.get(), im);
            mpfr_atan2(out, i.get(), r.get(), MPFR_RNDN);
            mpfr_const_pi(two_pi.get(), MPFR_RNDN);
            mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
            if (mpfr_sgn(out) < 0)
                mpfr_add(out, out, two_pi.get(), MPFR_RNDN);
            if (mpfr_cmp(out, two_pi.get()) >= 0)
                mpfr_sub(out, out, two_pi.get(), MPFR_RNDN);
        }
    } // namespace detail

    /**
     * Extracts the Euler angles of a (numerically) unitary 2x2 matrix.
     * Branch cuts: gamma in [0, pi]; alpha, beta, delta in [0, 2pi);
     * diagonal / antidiagonal inputs take gamma in {0, pi} with delta = 0 and
     * the free parameter folded into beta.
     */
    inline EulerDecomposition euler_decompose(const Unitary2 &u, unsigned digits = 40)
    {
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(64 + 4 * digits);
        detail::MpReal alpha(prec), beta(prec), gamma(prec), delta(prec);
        detail::MpReal abar(prec), tmp(prec), two_pi(prec);
        mpfr_const_pi(two_pi.get(), MPFR_RNDN);
        mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);

        bool diag_like = u.entry_is_zero(0, 1) || u.entry_is_zero(1, 0);
        bool antidiag_like = u.entry_is_zero(0, 0) || u.entry_is_zero(1, 1);
        if (diag_like && antidiag_like)
            throw std::invalid_argument("euler_decompose: matrix has a zero row");

        mpfr_set_ui(delta.get(), 0, MPFR_RNDN);
        if (diag_like)
        {
            // gamma = 0; beta = arg(u11) - arg(u00); alpha = arg(u00)
            mpfr_set_ui(gamma.get(), 0, MPFR_RNDN);
            detail::arg_mod_2pi(abar.get(), u.e[0][0].first, u.e[0][0].second, prec);
            detail::arg_mod_2pi(tmp.get(), u.e[1][1].first, u.e[1][1].second, prec);
            mpfr_sub(beta.get(), tmp.get(), abar.get(), MPFR_RNDN);
            mpfr_set(alpha.get(), abar.get(), MPFR_RNDN);
        }
        else if (antidiag_like)
        {
            // gamma = pi; abar = arg(u01) + pi/2, delta = 0, so
            // beta = arg(u10) - arg(u01) and alpha = abar - gamma/2 = arg(u01)
            mpfr_const_pi(gamma.get(), MPFR_RNDN);
            detail::MpReal a01(prec), a10(prec);
            detail::arg_mod_2pi(a01.get(), u.e[0][1].first, u.e[0][1].second, prec);
            detail::arg_mod_2pi(a10.get(), u.e[1][0].first, u.e[1][0].second, prec);
            mpfr_sub(beta.get(), a10.get(), a01.get(), MPFR_RNDN);
            mpfr_set(alpha.get(), a01.get(), MPFR_RNDN);
        }
        else
        {
            // gamma = 2 atan2(|u01|, |u00|)
            detail::MpReal n00(prec), n01(prec), re(prec), im(prec);
            auto abs_entry = [&](int r, int c, mpfr_ptr out)
            {
                detail::mpfr_from_rational(re.get(), u.e[r][c].first);
                detail::mpfr_from_rational(im.get(), u.e[r][c].second);
                mpfr_hypot(out, re.get(), im.get(), MPFR_RNDN);
            };
            abs_entry(0, 0, n00.get());
            abs_entry(0, 1, n01.get());
            mpfr_atan2(gamma.get(), n01.get(), n00.get(), MPFR_RNDN);
            mpfr_mul_ui(gamma.get(), gamma.get(), 2, MPFR_RNDN);

            detail::MpReal half_pi(prec), a10(prec), a01(prec);
            mpfr_const_pi(half_pi.get(), MPFR_RNDN);
            mpfr_div_ui(half_pi.get(), half_pi.get(), 2, MPFR_RNDN);
            detail::arg_mod_2pi(abar.get(), u.e[0][0].first, u.e[0][0].second, prec);
            detail::arg_mod_2pi(a10.get(), u.e[1][0].first, u.e[1][0].second, prec);
            detail::arg_mod_2pi(a01.get(), u.e[0][1].first, u.e[0][1].second, prec);
            // beta = arg(u10) - abar + pi/2, delta = arg(u01) - abar + pi/2
            mpfr_sub(beta.get(), a10.get(), abar.get(), MPFR_RNDN);
            mpfr_add(beta.get(), beta.get(), half_pi.get(), MPFR_RNDN);
            mpfr_sub(delta.get(), a01.get(), abar.get(), MPFR_RNDN);
            mpfr_add(delta.get(), delta.get(), half_pi.get(), MPFR_RNDN);
            // alpha = abar - gamma/2
            mpfr_div_ui(tmp.get(), gamma.get(), 2, MPFR_RNDN);
            mpfr_sub(alpha.get(), abar.get(), tmp.get(), MPFR_RNDN);
        }

        auto normalize = [&](mpfr_ptr x)
        {
            while (mpfr_sgn(x) < 0)
                mpfr_add(x, x, two_pi.get(), MPFR_RNDN);
            while (mpfr_cmp(x, two_pi.get()) >= 0)
                mpfr_sub(x, x, two_pi.get(), MPFR_RNDN);
        };
        normalize(alpha.get());
        normalize(beta.get());
        normalize(delta.get());

        auto to_spec = [&](mpfr_srcptr x)
        {
            std::string s = detail::mpfr_decimal(x, digits);
            return AngleSpec::decimal(parse_decimal(s), s);
        };
        EulerDecomposition d;
        d.alpha = to_spec(alpha.get());
        d.beta = to_spec(beta.get());
        d.gamma = to_spec(gamma.get());
        d.delta = to_spec(delta.get());
        return d;
    }

    namespace detail
    {
        using CMat2 = std::array<std::array<ComplexInterval, 2>, 2>;

        inline CMat2 cmat_mul(const CMat2 &a, const CMat2 &b)
        {
            CMat2 r;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            return r;
        }

        inline ComplexInterval phase_enclosure(const AngleSpec &theta, unsigned bits)
        {
            auto [c, s] = theta.cos_sin_enclosure(bits);
            return ComplexInterval(c, s);
        }

        inline CMat2 euler_matrix_enclosure(const EulerDecomposition &d, unsigned bits,
                                            bool include_alpha)
        {
            Interval zero(Dyadic::zero()), one(Dyadic(1));
            Interval inv_s2 = inv_sqrt2_interval(bits + 8);
            ComplexInterval czero(zero, zero), cone(one, zero);
            ComplexInterval h_entry(inv_s2, zero);

            CMat2 H{{{h_entry, h_entry}, {h_entry, ComplexInterval(-inv_s2, zero)}}};
            auto pmat = [&](const AngleSpec &t)
            {
                CMat2 m{{{cone, czero}, {czero, phase_enclosure(t, bits)}}};
                return m;
            };
            CMat2 r = cmat_mul(pmat(d.beta), cmat_mul(H, cmat_mul(pmat(d.gamma),
                                                                  cmat_mul(H, pmat(d.delta)))));
            if (include_alpha)
            {
                ComplexInterval ph = phase_enclosure(d.alpha, bits);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        r[i][j] = r[i][j] * ph;
            }
            return r;
        }

        // Certified Frobenius-norm upper bound on (R - U') where U' is the
        // exact input scaled by e^{-i alpha} (or the input itself when
        // include_alpha). ||A||_2 <= ||A||_F makes this an operator bound.
        inline Dyadic reconstruction_residual(const EulerDecomposition &d, const Unitary2 &u,
                                              bool include_alpha, unsigned bits)
        {
            CMat2 r = euler_matrix_enclosure(d, bits, include_alpha);
            ComplexInterval phase = phase_enclosure(d.alpha, bits); // e^{+i alpha}
            Interval total(Dyadic::zero());
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                {
                    ComplexInterval uij(rational_interval(u.e[i][j].first, bits),
                                        rational_interval(u.e[i][j].second, bits));
                    if (!include_alpha)
                    {
                        // compare r against e^{-i alpha} U: multiply U by conj(phase)
                        ComplexInterval conj_ph(phase.re(), -phase.im());
                        uij = uij * conj_ph;
                    }
                    ComplexInterval diff = r[i][j] - uij;
                    total = total + diff.abs_squared();
                }
            return Interval::sqrt_upper(total.hi(), bits);
        }
    } // namespace detail

    /**
     * Per-block synthesis results plus the assembled circuit for a general
     * single-qubit unitary.
     */
    struct UnitaryReport
    {
        EulerDecomposition decomposition;
        bool exact_phase = false;
        Rational eps_target;
        Rational block_budget;
        std::vector<SynthesisReport> blocks;
        Dyadic recon_residual;   // certified || ideal(angles) - input ||
        Dyadic eps_total;        // sum of block certificates + residual
        size_t total_gates = 0;
        size_t t_count = 0;
        bool assembled_exact = false; // peepholed circuit == block product

        bool verified() const
        {
            if (!assembled_exact)
                return false;
            for (const auto &b : blocks)
                if (!b.verified())
                    return false;
            return true;
        }
    };

    /**
     * Synthesizes an arbitrary single-qubit unitary as Lambda blocks and
     * Hadamards on the data qubit: U ~ e^{i alpha} P(beta) H P(gamma) H
     * P(delta) with per-block budget eps/3, or eps/5 plus the two-block
     * X P(alpha) X P(alpha) global-phase construction with --exact-phase.
     * Without exact_phase the certificate is relative to U up to the global
     * phase e^{i alpha}.
     */
    inline std::pair<Circuit, UnitaryReport> synth_unitary(const Unitary2 &u,
                                                           const Rational &eps,
                                                           bool exact_phase,
                                                           std::uint64_t seed,
                                                           unsigned precision_bits = 128)
    {
        if (eps <= 0 || eps >= 1)
            throw std::domain_error("synth_unitary: eps must be in (0, 1)");
        // unitarity within 1e-3 * eps (Frobenius norm, exact arithmetic)
        Rational tol = eps / 1000;
        if (u.unitarity_defect_squared() > tol * tol)
            throw std::invalid_argument("synth_unitary: input matrix is not unitary "
                                        "within 1e-3 * eps");

        // enough digits that angle truncation is far below the budget
        Rational inv = 1 / eps;
        unsigned eps_digits = 0;
        while (inv >= 1)
        {
            inv /= 10;
            ++eps_digits;
        }
        unsigned digits = 36 + 2 * eps_digits;

        UnitaryReport rep;
        rep.exact_phase = exact_phase;
        rep.eps_target = eps;
        rep.decomposition = euler_decompose(u, digits);
        unsigned n_blocks = exact_phase ? 5 : 3;
        rep.block_budget = eps / n_blocks;
        rep.block_budget.canonicalize();

        Circuit full(3);
        std::vector<ExactMatrix> block_mats;
        std::uint64_t block_seed = seed;
        auto add_block = [&](const AngleSpec &theta)
        {
            auto [circ, block_rep] = synth_lambda(theta, rep.block_budget,
                                                  block_seed++, precision_bits);
            full.append(circ);
            block_mats.push_back(circuit_matrix(circ));
            rep.blocks.push_back(std::move(block_rep));
        };
        auto add_data_gate = [&](PrimGate::Kind kind)
        {
            full.push(kind, 0);
            Circuit single(3);
            single.push(kind, 0);
            block_mats.push_back(circuit_matrix(single));
        };

        add_block(rep.decomposition.delta);
        add_data_gate(PrimGate::Kind::H);
        add_block(rep.decomposition.gamma);
        add_data_gate(PrimGate::Kind::H);
        add_block(rep.decomposition.beta);
        if (exact_phase)
        {
            // e^{i alpha} I = X P(alpha) X P(alpha), each P approximated
            add_block(rep.decomposition.alpha);
            add_data_gate(PrimGate::Kind::X);
            add_block(rep.decomposition.alpha);
            add_data_gate(PrimGate::Kind::X);
        }

        Circuit assembled = peephole(full);
        ExactMatrix product = ExactMatrix::identity(8);
        for (auto it = block_mats.rbegin(); it != block_mats.rend(); ++it)
            product = product * *it;
        rep.assembled_exact = circuit_matrix(assembled) == product;
        if (!rep.assembled_exact)
            throw std::logic_error("synth_unitary: assembled circuit lost exactness");

        rep.recon_residual = detail::reconstruction_residual(rep.decomposition, u,
                                                             exact_phase, precision_bits);
        Dyadic total = rep.recon_residual;
        for (const auto &b : rep.blocks)
            total = total + b.eps_certified;
        rep.eps_total = total;
        rep.total_gates = assembled.size();
        rep.t_count = assembled.t_count();
        return {assembled, rep};
    }

} // namespace sqct
