#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqct
{

    using Integer = mpz_class;
    using Rational = mpq_class;

    inline Integer pow2(unsigned long e)
    {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
        return r;
    }

    // Floor of the square root; n must be nonnegative.
    inline Integer isqrt(const Integer &n)
    {
        if (n < 0)
        {
            throw std::domain_error("isqrt: negative argument");
        }
        Integer r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        return r;
    }

    // Nonnegative remainder of a mod m (m > 0).
    inline Integer mod_floor(const Integer &a, const Integer &m)
    {
        Integer r;
        mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        return r;
    }

    inline Integer fdiv(const Integer &a, const Integer &m)
    {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        return q;
    }

    // Nearest integer to a/b, ties rounded toward +infinity.
    inline Integer rounddiv(const Integer &a, const Integer &b)
    {
        Integer two_a = 2 * a + b;
        return fdiv(two_a, 2 * b);
    }

    inline bool is_even(const Integer &n) { return mpz_even_p(n.get_mpz_t()) != 0; }
    inline bool is_odd(const Integer &n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

    inline Integer powmod(const Integer &base, const Integer &exp, const Integer &mod)
    {
        Integer r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
        return r;
    }

    inline size_t bit_length(const Integer &n)
    {
        return mpz_sizeinbase(n.get_mpz_t(), 2);
    }

    // Parses a decimal string (optionally signed, optional fractional part and
    // exponent, e.g. "0.125", "1e-3", "-2.5e4") into an exact rational.
    inline Rational parse_decimal(const std::string &text)
    {
        std::string s = text;
        bool negative = false;
        size_t pos = 0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
        {
            negative = (s[pos] == '-');
            ++pos;
        }
        std::string digits;
        long frac_digits = 0;
        bool seen_digit = false, seen_dot = false;
        for (; pos < s.size(); ++pos)
        {
            char c = s[pos];
            if (c >= '0' && c <= '9')
            {
                digits += c;
                seen_digit = true;
                if (seen_dot)
                    ++frac_digits;
            }
            else if (c == '.' && !seen_dot)
            {
                seen_dot = true;
            }
            else
            {
                break;
            }
        }
        long exponent = 0;
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E'))
        {
            ++pos;
            bool exp_neg = false;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
            {
                exp_neg = (s[pos] == '-');
                ++pos;
            }
            if (pos >= s.size())
                throw std::invalid_argument("parse_decimal: bad exponent in '" + text + "'");
            for (; pos < s.size(); ++pos)
            {
                if (s[pos] < '0' || s[pos] > '9')
                    break;
                exponent = exponent * 10 + (s[pos] - '0');
                if (exponent > 1000000)
                    throw std::invalid_argument("parse_decimal: exponent too large in '" + text + "'");
            }
            if (exp_neg)
                exponent = -exponent;
        }
        if (!seen_digit || pos != s.size())
            throw std::invalid_argument("parse_decimal: cannot parse '" + text + "'");

        Integer num(digits.empty() ? "0" : digits, 10);
        if (negative)
            num = -num;
        long ten_exp = exponent - frac_digits;
        Integer p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(ten_exp < 0 ? -ten_exp : ten_exp));
        Rational r;
        if (ten_exp >= 0)
            r = Rational(num * p10);
        else
            r = Rational(num, p10);
        r.canonicalize();
        return r;
    }

} // namespace sqct
