#include <doctest.h>

#include <cmath>
#include <complex>

#include <sqct/euler.hpp>
#include <sqct/report.hpp>

using namespace sqct;

namespace
{
    const char *h_matrix =
        "0.70710678118654752440084436210484903928 0\n"
        "0.70710678118654752440084436210484903928 0\n"
        "0.70710678118654752440084436210484903928 0\n"
        "-0.70710678118654752440084436210484903928 0\n";

    const char *t_matrix =
        "1 0\n0 0\n0 0\n"
        "0.70710678118654752440084436210484903928 "
        "0.70710678118654752440084436210484903928\n";

    double angle_value(const AngleSpec &a)
    {
        Interval iv = a.enclosure(96);
        return (iv.lo().to_double() + iv.hi().to_double()) / 2.0;
    }

    std::complex<double> entry_value(const RingScalar &s)
    {
        ComplexInterval iv = evaluate(s, 64);
        return {(iv.re().lo().to_double() + iv.re().hi().to_double()) / 2.0,
                (iv.im().lo().to_double() + iv.im().hi().to_double()) / 2.0};
    }

    // numeric distance of the circuit to U (x) I on the ancilla-|00> columns,
    // minimized over a global phase when up_to_phase is set
    double numeric_block_distance(const Circuit &c, std::complex<double> u00,
                                  std::complex<double> u01, std::complex<double> u10,
                                  std::complex<double> u11, bool up_to_phase)
    {
        ExactMatrix m = circuit_matrix(c);
        std::complex<double> a00 = entry_value(m.at(0, 0));
        std::complex<double> a40 = entry_value(m.at(4, 0));
        std::complex<double> a04 = entry_value(m.at(0, 4));
        std::complex<double> a44 = entry_value(m.at(4, 4));
        double rest = 0;
        for (unsigned r = 0; r < 8; ++r)
            if (r != 0 && r != 4)
            {
                rest += std::norm(entry_value(m.at(r, 0)));
                rest += std::norm(entry_value(m.at(r, 4)));
            }
        double best = 1e9;
        int steps = up_to_phase ? 3600 : 1;
        for (int i = 0; i < steps; ++i)
        {
            std::complex<double> ph = std::polar(1.0, 2 * M_PI * i / 3600.0);
            double d0 = std::norm(a00 - ph * u00) + std::norm(a40 - ph * u10);
            double d4 = std::norm(a04 - ph * u01) + std::norm(a44 - ph * u11);
            best = std::min(best, std::sqrt(d0 + d4 + rest));
        }
        return best;
    }
} // namespace

TEST_CASE("euler: matrix file parsing and unitarity defect")
{
    Unitary2 id = Unitary2::parse("1 0 0 0 0 0 1 0");
    CHECK(id.unitarity_defect_squared() == 0);

    Unitary2 h = Unitary2::parse(h_matrix);
    Rational defect = h.unitarity_defect_squared();
    CHECK(defect < Rational(Integer(1), Integer(1) << 100)); // entries good to ~1e-38

    CHECK_THROWS_AS(Unitary2::parse("1 0 0"), std::invalid_argument);
    CHECK_THROWS_AS(Unitary2::parse("1 0 0 0 0 0 x 0"), std::invalid_argument);

    Unitary2 bad = Unitary2::parse("1 0 1 0 1 0 1 0");
    CHECK_THROWS_AS(synth_unitary(bad, Rational(1, 100), false, 1),
                    std::invalid_argument);
}

TEST_CASE("euler: decomposition of H matches the known angles")
{
    Unitary2 h = Unitary2::parse(h_matrix);
    EulerDecomposition d = euler_decompose(h);
    // in the Lambda convention: alpha = 7pi/4, beta = gamma = delta = pi/2
    CHECK(std::abs(angle_value(d.alpha) - 7 * M_PI / 4) < 1e-12);
    CHECK(std::abs(angle_value(d.beta) - M_PI / 2) < 1e-12);
    CHECK(std::abs(angle_value(d.gamma) - M_PI / 2) < 1e-12);
    CHECK(std::abs(angle_value(d.delta) - M_PI / 2) < 1e-12);
    // physics convention alpha' = alpha + (beta+gamma+delta)/2 = pi/2 (mod 2pi)
    double alpha_p = std::fmod(angle_value(d.alpha) +
                                   (angle_value(d.beta) + angle_value(d.gamma) +
                                    angle_value(d.delta)) /
                                       2,
                               2 * M_PI);
    CHECK(std::abs(alpha_p - M_PI / 2) < 1e-12);
    // certified reconstruction residual is tiny
    CHECK(detail::reconstruction_residual(d, h, true, 128).to_double() < 1e-30);
}

TEST_CASE("euler: decomposition of diagonal and antidiagonal matrices")
{
    Unitary2 t = Unitary2::parse(t_matrix);
    EulerDecomposition dt = euler_decompose(t);
    CHECK(dt.gamma.is_zero());
    CHECK(dt.delta.is_zero());
    CHECK(std::abs(angle_value(dt.beta) - M_PI / 4) < 1e-12);
    CHECK(std::abs(angle_value(dt.alpha)) < 1e-12);

    // X: antidiagonal
    Unitary2 x = Unitary2::parse("0 0 1 0 1 0 0 0");
    EulerDecomposition dx = euler_decompose(x);
    CHECK(std::abs(angle_value(dx.gamma) - M_PI) < 1e-12);
    CHECK(dx.delta.is_zero());
    CHECK(detail::reconstruction_residual(dx, x, true, 128).to_double() < 1e-30);
}

TEST_CASE("euler: synth_unitary on the identity")
{
    Unitary2 id = Unitary2::parse("1 0 0 0 0 0 1 0");
    auto [circ, rep] = synth_unitary(id, Rational(1, 100), false, 3);
    CHECK(circ.empty());
    CHECK(rep.verified());
    CHECK(rep.eps_total.to_double() < 1e-25);
}

TEST_CASE("euler: synth_unitary on T reduces to a single block")
{
    Unitary2 t = Unitary2::parse(t_matrix);
    auto [circ, rep] = synth_unitary(t, Rational(1, 100), false, 5);
    CHECK(rep.verified());
    CHECK(rep.eps_total.compare_rational(Rational(1, 100)) <= 0);
    REQUIRE(rep.blocks.size() == 3);
    // delta and gamma blocks are empty, the H pair cancels in the peephole
    CHECK(rep.blocks[0].total_gates == 0);
    CHECK(rep.blocks[1].total_gates == 0);
    CHECK(rep.blocks[2].total_gates > 0);
    CHECK(circ.size() == rep.blocks[2].total_gates);

    double d = numeric_block_distance(circ, 1, 0, 0,
                                      std::polar(1.0, M_PI / 4), true);
    CHECK(d < 0.01);
}

TEST_CASE("euler: synth_unitary approximates H within budget")
{
    Unitary2 h = Unitary2::parse(h_matrix);
    auto [circ, rep] = synth_unitary(h, Rational(1, 100), false, 8);
    CHECK(rep.verified());
    CHECK(rep.blocks.size() == 3);
    CHECK(rep.eps_total.compare_rational(Rational(1, 100)) <= 0);
    double s = std::sqrt(0.5);
    double d = numeric_block_distance(circ, s, s, s, -s, true);
    CHECK(d < 0.01);

    // exact-phase variant: five blocks, no phase freedom in the check
    auto [circ2, rep2] = synth_unitary(h, Rational(1, 100), true, 8);
    CHECK(rep2.verified());
    CHECK(rep2.blocks.size() == 5);
    CHECK(rep2.eps_total.compare_rational(Rational(1, 100)) <= 0);
    double d2 = numeric_block_distance(circ2, s, s, s, -s, false);
    CHECK(d2 < 0.01);
}

TEST_CASE("euler: report json shape")
{
    Unitary2 t = Unitary2::parse(t_matrix);
    auto [circ, rep] = synth_unitary(t, Rational(1, 100), false, 5);
    ordered_json j = report_to_json(rep);
    CHECK(j["blocks"].size() == 3);
    CHECK(j["verified"] == true);
    CHECK(j["ancillae"] == 2);
    CHECK(j.contains("eps_total"));
    CHECK(j["decomposition"].contains("alpha"));

    CHECK(rational_to_decimal(Rational(1, 10)) == "0.1");
    CHECK(rational_to_decimal(Rational(3, 8)) == "0.375");
    CHECK(rational_to_decimal(Rational(-3, 200)) == "-0.015");
    CHECK(rational_to_decimal(Rational(42)) == "42");
    CHECK(rational_to_decimal(Rational(0)) == "0");
}
