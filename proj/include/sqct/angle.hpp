#pragma once

#include <mpfr.h>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "bigint.hpp"
#include "dyadic.hpp"

namespace sqct
{

    namespace detail
    {
        /// RAII wrapper for a single mpfr_t.
        class MpReal
        {
        private:
            mpfr_t _x;

        public:
            explicit MpReal(mpfr_prec_t prec) { mpfr_init2(_x, prec); }
            ~MpReal() { mpfr_clear(_x); }
            MpReal(const MpReal &) = delete;
            MpReal &operator=(const MpReal &) = delete;

            mpfr_ptr get() { return _x; }
            mpfr_srcptr get() const { return _x; }
        };

        inline Dyadic mpfr_to_dyadic(mpfr_srcptr x)
        {
            if (mpfr_zero_p(x))
                return Dyadic::zero();
            Integer m;
            mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
            return Dyadic(m, static_cast<long>(e));
        }

        inline void dyadic_to_mpfr(mpfr_ptr out, const Dyadic &d)
        {
            // exact as long as the target precision covers the mantissa
            if (mpfr_get_prec(out) < static_cast<mpfr_prec_t>(bit_length(d.mantissa()) + 2))
                mpfr_set_prec(out, static_cast<mpfr_prec_t>(bit_length(d.mantissa()) + 2));
            mpfr_set_z_2exp(out, d.mantissa().get_mpz_t(), d.exponent(), MPFR_RNDN);
        }
    } // namespace detail

    // Enclosure of pi.
    inline Interval pi_interval(unsigned bits)
    {
        detail::MpReal lo(bits + 8), hi(bits + 8);
        mpfr_const_pi(lo.get(), MPFR_RNDD);
        mpfr_const_pi(hi.get(), MPFR_RNDU);
        return Interval(detail::mpfr_to_dyadic(lo.get()), detail::mpfr_to_dyadic(hi.get()));
    }

    // Enclosure of q*pi for exact rational q.
    inline Interval rational_pi_interval(const Rational &q, unsigned bits)
    {
        if (q == 0)
            return Interval(Dyadic::zero());
        detail::MpReal pi_lo(bits + 8), pi_hi(bits + 8), lo(bits + 8), hi(bits + 8);
        mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
        mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
        if (q > 0)
        {
            mpfr_mul_q(lo.get(), pi_lo.get(), q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(hi.get(), pi_hi.get(), q.get_mpq_t(), MPFR_RNDU);
        }
        else
        {
            mpfr_mul_q(lo.get(), pi_hi.get(), q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(hi.get(), pi_lo.get(), q.get_mpq_t(), MPFR_RNDU);
        }
        return Interval(detail::mpfr_to_dyadic(lo.get()), detail::mpfr_to_dyadic(hi.get()));
    }

    // Enclosure of an exact rational.
    inline Interval rational_interval(const Rational &q, unsigned bits)
    {
        detail::MpReal lo(bits + 8), hi(bits + 8);
        mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
        return Interval(detail::mpfr_to_dyadic(lo.get()), detail::mpfr_to_dyadic(hi.get()));
    }

    // Enclosure of q/pi for exact rational q.
    inline Interval rational_div_pi_interval(const Rational &q, unsigned bits)
    {
        if (q == 0)
            return Interval(Dyadic::zero());
        unsigned prec = bits + 16;
        detail::MpReal pi_lo(prec), pi_hi(prec), num_lo(prec), num_hi(prec), lo(prec), hi(prec);
        mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
        mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
        mpfr_set_q(num_lo.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(num_hi.get(), q.get_mpq_t(), MPFR_RNDU);
        if (q > 0)
        {
            mpfr_div(lo.get(), num_lo.get(), pi_hi.get(), MPFR_RNDD);
            mpfr_div(hi.get(), num_hi.get(), pi_lo.get(), MPFR_RNDU);
        }
        else
        {
            mpfr_div(lo.get(), num_lo.get(), pi_lo.get(), MPFR_RNDD);
            mpfr_div(hi.get(), num_hi.get(), pi_hi.get(), MPFR_RNDU);
        }
        return Interval(detail::mpfr_to_dyadic(lo.get()), detail::mpfr_to_dyadic(hi.get()));
    }

    inline Integer dyadic_floor(const Dyadic &d)
    {
        if (d.exponent() >= 0)
            return d.mantissa() << static_cast<unsigned long>(d.exponent());
        Integer q;
        mpz_fdiv_q_2exp(q.get_mpz_t(), d.mantissa().get_mpz_t(),
                        static_cast<unsigned long>(-d.exponent()));
        return q;
    }

    // Floor of a real number given by interval approximations of increasing
    // precision. Requires the value not to be an integer (the caller handles
    // exact cases symbolically), otherwise refinement cannot terminate.
    inline Integer certified_floor(const std::function<Interval(unsigned)> &approx,
                                   unsigned start_bits = 64)
    {
        for (unsigned bits = start_bits; bits <= (1u << 20); bits *= 2)
        {
            Interval iv = approx(bits);
            Integer lo = dyadic_floor(iv.lo());
            Integer hi = dyadic_floor(iv.hi());
            if (lo == hi)
                return lo;
        }
        throw std::runtime_error("certified_floor: refinement did not converge "
                                 "(value appears to be an exact integer)");
    }

    /**
     * AngleSpec: a phase angle, either an exact rational multiple of pi or an
     * exact decimal value in radians, optionally shifted by an integer
     * multiple of pi/4 (the shifted form arises from octant reduction).
     * Evaluation to an enclosure is certified at any requested precision.
     */
    class AngleSpec
    {
    public:
        enum class Kind
        {
            rational_pi,   // (num/den) * pi
            decimal_shifted // dec - shift * pi/4
        };

    private:
        Kind _kind;
        Integer _num, _den;  // rational_pi
        Rational _dec;       // decimal_shifted
        Integer _shift;      // decimal_shifted
        std::string _source; // original text when parsed

        AngleSpec() : _kind(Kind::rational_pi), _num(0), _den(1), _shift(0) {}

    public:
        static AngleSpec zero() { return rational_pi(0, 1); }

        static AngleSpec rational_pi(Integer num, Integer den)
        {
            if (den == 0)
                throw std::invalid_argument("AngleSpec: zero denominator");
            if (den < 0)
            {
                den = -den;
                num = -num;
            }
            Integer g;
            mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (g > 1)
            {
                num /= g;
                den /= g;
            }
            AngleSpec s;
            s._kind = Kind::rational_pi;
            s._num = num;
            s._den = den;
            return s;
        }

        static AngleSpec decimal(const Rational &value, std::string source = "")
        {
            AngleSpec s;
            s._kind = Kind::decimal_shifted;
            s._dec = value;
            s._shift = 0;
            s._source = std::move(source);
            return s;
        }

        static AngleSpec decimal_shifted(const Rational &value, const Integer &shift)
        {
            if (value == 0)
                return rational_pi(-shift, 4);
            AngleSpec s;
            s._kind = Kind::decimal_shifted;
            s._dec = value;
            s._shift = shift;
            return s;
        }

        /// Parses `pi`, `pi/INT`, `INT*pi/INT`, or a decimal radian value,
        /// each with an optional leading sign.
        static AngleSpec parse(const std::string &text)
        {
            std::string s = text;
            bool neg = false;
            if (!s.empty() && (s[0] == '+' || s[0] == '-'))
            {
                neg = (s[0] == '-');
                s = s.substr(1);
            }
            if (s.empty())
                throw std::invalid_argument("AngleSpec: empty phase");

            auto finish = [&](AngleSpec a)
            {
                a._source = text;
                return a;
            };

            size_t pi_pos = s.find("pi");
            if (pi_pos == std::string::npos)
            {
                Rational r = parse_decimal(s);
                if (neg)
                    r = -r;
                AngleSpec a = decimal(r);
                a._source = text;
                return a;
            }

            Integer num = 1, den = 1;
            if (pi_pos > 0)
            {
                if (s[pi_pos - 1] != '*')
                    throw std::invalid_argument("AngleSpec: cannot parse '" + text + "'");
                std::string head = s.substr(0, pi_pos - 1);
                if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
                    throw std::invalid_argument("AngleSpec: cannot parse '" + text + "'");
                num = Integer(head, 10);
            }
            std::string tail = s.substr(pi_pos + 2);
            if (!tail.empty())
            {
                if (tail[0] != '/' || tail.size() < 2 ||
                    tail.find_first_not_of("0123456789", 1) != std::string::npos)
                    throw std::invalid_argument("AngleSpec: cannot parse '" + text + "'");
                den = Integer(tail.substr(1), 10);
                if (den == 0)
                    throw std::invalid_argument("AngleSpec: zero denominator in '" + text + "'");
            }
            if (neg)
                num = -num;
            return finish(rational_pi(num, den));
        }

        Kind kind() const { return _kind; }
        bool is_rational_pi() const { return _kind == Kind::rational_pi; }
        const Integer &num() const { return _num; }
        const Integer &den() const { return _den; }
        const Rational &dec() const { return _dec; }
        const Integer &shift() const { return _shift; }

        bool is_zero() const
        {
            return _kind == Kind::rational_pi ? _num == 0
                                              : (_dec == 0 && _shift == 0);
        }

        bool operator==(const AngleSpec &o) const
        {
            if (_kind != o._kind)
                return false;
            if (_kind == Kind::rational_pi)
                return _num == o._num && _den == o._den;
            return _dec == o._dec && _shift == o._shift;
        }

        Interval enclosure(unsigned bits) const
        {
            if (_kind == Kind::rational_pi)
                return rational_pi_interval(Rational(_num, _den), bits);
            Interval base = rational_interval(_dec, bits);
            if (_shift == 0)
                return base;
            return base - rational_pi_interval(Rational(_shift, 4), bits);
        }

        // Certified enclosures of cos(phi) and sin(phi) via Lipschitz widening
        // around one endpoint of the angle enclosure.
        std::pair<Interval, Interval> cos_sin_enclosure(unsigned bits) const
        {
            unsigned prec = bits + 24;
            Interval theta = enclosure(prec);
            Dyadic w = theta.width().round_up(32); // upper bound on |theta - lo|
            detail::MpReal t(prec), lo(prec), hi(prec);
            detail::dyadic_to_mpfr(t.get(), theta.lo());

            mpfr_cos(lo.get(), t.get(), MPFR_RNDD);
            mpfr_cos(hi.get(), t.get(), MPFR_RNDU);
            Interval c(detail::mpfr_to_dyadic(lo.get()) - w,
                       detail::mpfr_to_dyadic(hi.get()) + w);

            mpfr_sin(lo.get(), t.get(), MPFR_RNDD);
            mpfr_sin(hi.get(), t.get(), MPFR_RNDU);
            Interval s(detail::mpfr_to_dyadic(lo.get()) - w,
                       detail::mpfr_to_dyadic(hi.get()) + w);

            return {c.round_out(bits + 16), s.round_out(bits + 16)};
        }

        std::string to_string() const
        {
            if (!_source.empty())
                return _source;
            if (_kind == Kind::rational_pi)
            {
                if (_num == 0)
                    return "0";
                std::string s;
                if (_num == -1)
                    s = "-pi";
                else if (_num == 1)
                    s = "pi";
                else
                    s = _num.get_str() + "*pi";
                if (_den != 1)
                    s += "/" + _den.get_str();
                return s;
            }
            std::string s = Rational(_dec).get_str();
            if (_shift != 0)
                s += " - " + _shift.get_str() + "*pi/4";
            return s;
        }
    };

    /**
     * Octant reduction: phi = t*pi/4 + phi' (mod 2pi) with phi' in [0, pi/4)
     * and t in 0..7; t is maximal so exact multiples of pi/4 reduce to
     * phi' = 0. The t*pi/4 part is later realized exactly by T^t.
     */
    inline std::pair<AngleSpec, int> reduce_phase(const AngleSpec &phi)
    {
        if (phi.is_rational_pi())
        {
            // phi/(pi/4) = 4*num/den; reduce 4*num modulo 8*den
            Integer u = mod_floor(4 * phi.num(), 8 * phi.den());
            Integer t = u / phi.den();
            Integer rem = u - t * phi.den();
            AngleSpec reduced = AngleSpec::rational_pi(rem, 4 * phi.den());
            return {reduced, static_cast<int>(t.get_si())};
        }
        const Rational &r = phi.dec();
        const Integer &s = phi.shift();
        if (r == 0)
        {
            return reduce_phase(AngleSpec::rational_pi(-s, 4));
        }
        // j = floor(phi / (pi/4)) = floor(4r/pi) - s; 4r/pi is irrational for
        // rational r != 0, so the certified floor terminates.
        Rational q = Rational(4) * r;
        q.canonicalize();
        Integer j = certified_floor([&](unsigned bits)
                                    { return rational_div_pi_interval(q, bits); }) -
                    s;
        Integer t = mod_floor(j, 8);
        return {AngleSpec::decimal_shifted(r, j + s), static_cast<int>(t.get_si())};
    }

} // namespace sqct
