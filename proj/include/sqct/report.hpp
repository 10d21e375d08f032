#pragma once

#include <json.hpp>

#include "compile.hpp"
#include "euler.hpp"

namespace sqct
{

    using ordered_json = nlohmann::ordered_json;

    // Exact decimal rendering when the denominator divides a power of ten,
    // otherwise a 24-digit round-to-nearest approximation. Reports carry all
    // reals as decimal strings.
    inline std::string rational_to_decimal(const Rational &q, unsigned digits = 24)
    {
        if (q == 0)
            return "0";
        Integer den = q.get_den();
        unsigned long twos = mpz_scan1(den.get_mpz_t(), 0);
        Integer odd = den >> twos;
        unsigned long fives = 0;
        while (mod_floor(odd, 5) == 0)
        {
            odd /= 5;
            ++fives;
        }
        if (odd == 1)
        {
            // q = num / (2^a 5^b): scale to a pure power of ten
            unsigned long shift = std::max(twos, fives);
            Integer p10;
            mpz_ui_pow_ui(p10.get_mpz_t(), 10, shift);
            Integer scaled = q.get_num() * (p10 / den);
            Integer mag = abs(scaled);
            std::string s = mag.get_str();
            std::string sign = scaled < 0 ? "-" : "";
            if (shift == 0)
                return sign + s;
            if (s.size() <= shift)
                s.insert(0, shift + 1 - s.size(), '0');
            s.insert(s.size() - shift, ".");
            while (s.back() == '0')
                s.pop_back();
            if (s.back() == '.')
                s.pop_back();
            return sign + s;
        }
        detail::MpReal x(static_cast<mpfr_prec_t>(digits * 4 + 32));
        mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
        return detail::mpfr_decimal(x.get(), digits);
    }

    inline ordered_json report_to_json(const SynthesisReport &rep)
    {
        ordered_json counts = ordered_json::object();
        for (const auto &[name, n] : rep.gate_counts)
            counts[name] = n;
        return ordered_json{
            {"phi", rep.phi},
            {"octant", rep.octant},
            {"k", rep.k},
            {"eps_target", rational_to_decimal(rep.eps_target)},
            {"eps_bound", rep.eps_bound.to_decimal_string(24)},
            {"eps_certified", rep.eps_certified.to_decimal_string(24)},
            {"M", rep.M.get_str()},
            {"quad", {rep.quad.a.get_str(), rep.quad.b.get_str(),
                      rep.quad.c.get_str(), rep.quad.d.get_str()}},
            {"gate_counts", counts},
            {"t_count", rep.t_count},
            {"total_gates", rep.total_gates},
            {"two_level_count", rep.two_level_count},
            {"ancillae", rep.ancillae},
            {"seed", rep.seed},
            {"quad_trials", rep.quad_trials},
            {"verify", {{"prep_exact", rep.prep_exact},
                        {"controlled_block_exact", rep.controlled_block_exact}}},
        };
    }

    inline ordered_json report_to_json(const UnitaryReport &rep)
    {
        ordered_json blocks = ordered_json::array();
        for (const auto &b : rep.blocks)
            blocks.push_back(report_to_json(b));
        return ordered_json{
            {"decomposition", {{"alpha", rep.decomposition.alpha.to_string()},
                               {"beta", rep.decomposition.beta.to_string()},
                               {"gamma", rep.decomposition.gamma.to_string()},
                               {"delta", rep.decomposition.delta.to_string()}}},
            {"exact_phase", rep.exact_phase},
            {"eps_target", rational_to_decimal(rep.eps_target)},
            {"block_budget", rational_to_decimal(rep.block_budget)},
            {"recon_residual", rep.recon_residual.to_decimal_string(24)},
            {"eps_total", rep.eps_total.to_decimal_string(24)},
            {"total_gates", rep.total_gates},
            {"t_count", rep.t_count},
            {"ancillae", 2},
            {"verified", rep.verified()},
            {"blocks", blocks},
        };
    }

} // namespace sqct
