// sqct: certified Clifford+T synthesis of controlled-phase operators on one
// data qubit and two ancillas.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sqct/compile.hpp>
#include <sqct/euler.hpp>
#include <sqct/report.hpp>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_certification = 1;
    constexpr int exit_input = 2;
    constexpr int exit_internal = 3;

    unsigned precision_bits_from_env()
    {
        const char *env = std::getenv("SQCT_PRECISION_BITS");
        if (!env)
            return 128;
        long v = std::atol(env);
        if (v < 16 || v > (1 << 20))
            throw std::invalid_argument("SQCT_PRECISION_BITS out of range");
        return static_cast<unsigned>(v);
    }

    sqct::Rational parse_eps(const std::string &text)
    {
        sqct::Rational eps = sqct::parse_decimal(text);
        if (eps <= 0 || eps >= 1)
            throw std::invalid_argument("eps must be in (0, 1)");
        return eps;
    }

    void write_text(const std::string &path, const std::string &content)
    {
        if (path.empty() || path == "-")
        {
            std::cout << content;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        os << content;
    }

    std::string read_text(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::invalid_argument("cannot read '" + path + "'");
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    }

    int run_synth(const std::string &phase_text, const std::string &eps_text,
                  std::uint64_t seed, const std::string &out_path,
                  const std::string &report_path)
    {
        sqct::AngleSpec phi = sqct::AngleSpec::parse(phase_text);
        sqct::Rational eps = parse_eps(eps_text);
        auto [circuit, report] = sqct::synth_lambda(phi, eps, seed,
                                                    precision_bits_from_env());
        write_text(out_path, circuit.emit());
        if (!report_path.empty())
            write_text(report_path, sqct::report_to_json(report).dump(2) + "\n");
        else
            std::cerr << "k=" << report.k
                      << " gates=" << report.total_gates
                      << " t_count=" << report.t_count
                      << " eps_certified=" << report.eps_certified.to_decimal_string(12)
                      << "\n";
        return report.verified() ? exit_ok : exit_internal;
    }

    int run_synth_unitary(const std::string &matrix_path, const std::string &eps_text,
                          bool exact_phase, std::uint64_t seed,
                          const std::string &out_path, const std::string &report_path)
    {
        sqct::Unitary2 u = sqct::Unitary2::parse(read_text(matrix_path));
        sqct::Rational eps = parse_eps(eps_text);
        auto [circuit, report] = sqct::synth_unitary(u, eps, exact_phase, seed,
                                                     precision_bits_from_env());
        write_text(out_path, circuit.emit());
        if (!report_path.empty())
            write_text(report_path, sqct::report_to_json(report).dump(2) + "\n");
        else
            std::cerr << "blocks=" << report.blocks.size()
                      << " gates=" << report.total_gates
                      << " eps_total=" << report.eps_total.to_decimal_string(12)
                      << "\n";
        return report.verified() ? exit_ok : exit_internal;
    }

    int run_verify(const std::string &circuit_path, const std::string &phase_text,
                   const std::string &eps_text)
    {
        sqct::Circuit circuit = sqct::Circuit::parse(read_text(circuit_path));
        if (circuit.n_qubits() != 3)
            throw std::invalid_argument("verify: expected a 3-qubit circuit");
        sqct::AngleSpec phi = sqct::AngleSpec::parse(phase_text);
        sqct::Rational eps = parse_eps(eps_text);
        unsigned bits = precision_bits_from_env();

        sqct::ExactMatrix u = sqct::circuit_matrix(circuit);
        // operator bound over inputs with ancillas in |00>:
        // sqrt(d0^2 + d4^2) with d0 = ||U e0 - e0||, d4 = ||U e4 - e^{i phi} e4||
        sqct::Dyadic d0 = sqct::certified_distance(u.col(0), sqct::StateVec::basis(8, 0), bits);
        sqct::Dyadic d4 = sqct::distance_to_phase_state(u.col(4), phi, 4, bits);
        sqct::Dyadic bound = sqct::Interval::sqrt_upper(d0 * d0 + d4 * d4, bits);

        bool ok = bound.compare_rational(eps) <= 0;
        std::cout << "{\"certified_bound\": \"" << bound.to_decimal_string(24)
                  << "\", \"eps\": \"" << sqct::rational_to_decimal(eps)
                  << "\", \"unitary\": " << (u.is_unitary() ? "true" : "false")
                  << ", \"pass\": " << (ok ? "true" : "false") << "}\n";
        return ok ? exit_ok : exit_certification;
    }

    int run_bench(const std::string &phase_text, const std::string &eps_list,
                  int trials, std::uint64_t seed, const std::string &csv_path)
    {
        sqct::AngleSpec phi = sqct::AngleSpec::parse(phase_text);
        std::vector<std::string> eps_texts;
        std::stringstream ss(eps_list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                eps_texts.push_back(item);
        if (eps_texts.empty())
            throw std::invalid_argument("bench: empty eps list");

        std::ostringstream csv;
        csv << "eps,k,total_gates,t_count,wall_time,quad_trials\n";
        std::uint64_t run_index = 0;
        for (const auto &eps_text : eps_texts)
        {
            sqct::Rational eps = parse_eps(eps_text);
            for (int trial = 0; trial < trials; ++trial, ++run_index)
            {
                std::uint64_t run_seed = seed + 1000003 * run_index;
                auto t0 = std::chrono::steady_clock::now();
                auto [circuit, report] = sqct::synth_lambda(
                    phi, eps, run_seed, precision_bits_from_env());
                auto t1 = std::chrono::steady_clock::now();
                double secs = std::chrono::duration<double>(t1 - t0).count();
                csv << eps_text << "," << report.k << "," << report.total_gates
                    << "," << report.t_count << "," << secs << ","
                    << report.quad_trials << "\n";
            }
        }
        write_text(csv_path, csv.str());
        return exit_ok;
    }

    int run_four_squares(const std::string &m_text, std::uint64_t seed, bool brute)
    {
        sqct::Integer m;
        try
        {
            m = sqct::Integer(m_text, 10);
        }
        catch (...)
        {
            throw std::invalid_argument("four-squares: cannot parse '" + m_text + "'");
        }
        if (m < 0)
            throw std::invalid_argument("four-squares: M must be nonnegative");
        sqct::QuadSolution s;
        if (brute)
        {
            s = sqct::four_squares_bruteforce(m);
        }
        else
        {
            sqct::RandomSource rng(seed);
            s = sqct::four_squares(m, rng);
        }
        std::cout << s.a << " " << s.b << " " << s.c << " " << s.d << "\n";
        return exit_ok;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sqct: certified Clifford+T synthesis of phase operators"};
    app.require_subcommand(1);

    std::string phase_text, eps_text, out_path, report_path, matrix_path;
    std::string circuit_path, eps_list = "1e-2,1e-3,1e-4", csv_path, m_text;
    std::string bench_phase = "pi/8";
    std::uint64_t seed = 0;
    int trials = 1;
    bool exact_phase = false, brute = false;

    CLI::App *synth = app.add_subcommand("synth", "synthesize Lambda(e^{i phi})");
    synth->add_option("--phase", phase_text, "phase: pi, pi/INT, INT*pi/INT or radians")
        ->required();
    synth->add_option("--eps", eps_text, "target precision in (0,1)")->required();
    synth->add_option("--seed", seed, "random seed");
    synth->add_option("-o,--output", out_path, "circuit file (default stdout)");
    synth->add_option("--report", report_path, "JSON report file");

    CLI::App *synthu = app.add_subcommand("synth-unitary",
                                          "synthesize an arbitrary 2x2 unitary");
    synthu->add_option("--matrix", matrix_path, "file with 8 decimals (re im pairs, row-major)")
        ->required();
    synthu->add_option("--eps", eps_text, "target precision in (0,1)")->required();
    synthu->add_flag("--exact-phase", exact_phase, "also synthesize the global phase");
    synthu->add_option("--seed", seed, "random seed");
    synthu->add_option("-o,--output", out_path, "circuit file (default stdout)");
    synthu->add_option("--report", report_path, "JSON report file");

    CLI::App *verify = app.add_subcommand("verify", "re-simulate and certify a circuit");
    verify->add_option("-c,--circuit", circuit_path, "circuit file")->required();
    verify->add_option("--phase", phase_text, "claimed phase")->required();
    verify->add_option("--eps", eps_text, "required precision")->required();

    CLI::App *bench = app.add_subcommand("bench", "gate-count and timing table");
    bench->add_option("--phase", bench_phase, "phase to synthesize (default pi/8)");
    bench->add_option("--eps-list", eps_list, "comma-separated eps values");
    bench->add_option("--trials", trials, "trials per eps");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--csv", csv_path, "output CSV (default stdout)");

    CLI::App *fsq = app.add_subcommand("four-squares", "decompose M as a^2+b^2+c^2+d^2");
    fsq->add_option("M", m_text, "nonnegative integer")->required();
    fsq->add_option("--seed", seed, "random seed");
    fsq->add_flag("--brute", brute, "use the brute-force oracle (M <= 10^6)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (synth->parsed())
            return run_synth(phase_text, eps_text, seed, out_path, report_path);
        if (synthu->parsed())
            return run_synth_unitary(matrix_path, eps_text, exact_phase, seed,
                                     out_path, report_path);
        if (verify->parsed())
            return run_verify(circuit_path, phase_text, eps_text);
        if (bench->parsed())
            return run_bench(bench_phase, eps_list, trials, seed, csv_path);
        if (fsq->parsed())
            return run_four_squares(m_text, seed, brute);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const std::exception &e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_input;
}
