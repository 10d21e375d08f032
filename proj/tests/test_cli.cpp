#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sqct/circuit.hpp>
#include <sqct/rng.hpp>
#include <sqct/target.hpp>

using namespace sqct;

namespace
{
    std::string tool_path = SQCT_TOOL_PATH;

    int run_tool(const std::string &args)
    {
        std::string cmd = tool_path + " " + args + " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string run_tool_stdout(const std::string &args, int *exit_code = nullptr)
    {
        std::string cmd = tool_path + " " + args + " 2>/dev/null";
        FILE *pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string out;
        char buf[4096];
        size_t n;
        while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
            out.append(buf, n);
        int status = pclose(pipe);
        if (exit_code)
            *exit_code = WEXITSTATUS(status);
        return out;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        REQUIRE(is.good());
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    }

    std::string tmp_file(const std::string &name)
    {
        return "/tmp/sqct_test_" + name;
    }
} // namespace

TEST_CASE("cli: circuit text format round trip")
{
    Circuit c(3);
    c.push(PrimGate::Kind::T, 0);
    c.push(PrimGate::Kind::H, 2);
    c.push_cnot(0, 1);
    c.push(PrimGate::Kind::SDG, 1);
    std::string text = c.emit();
    CHECK(text == "# sqct v1\n# qubits 3\n# ancillae 1 2\nT 0\nH 2\nCNOT 0 1\nSDG 1\n");
    Circuit back = Circuit::parse(text);
    CHECK(back == c);
    CHECK(back.emit() == text); // byte-identical re-emission

    RandomSource rng(81);
    for (int i = 0; i < 50; ++i)
    {
        Circuit r(3);
        for (int g = 0; g < 20; ++g)
        {
            unsigned q = static_cast<unsigned>(rng.below_u64(3));
            switch (rng.below_u64(4))
            {
            case 0:
                r.push(PrimGate::Kind::H, q);
                break;
            case 1:
                r.push(PrimGate::Kind::T, q);
                break;
            case 2:
                r.push(PrimGate::Kind::X, q);
                break;
            default:
                r.push_cnot(q, (q + 1) % 3);
                break;
            }
        }
        CHECK(Circuit::parse(r.emit()) == r);
    }
}

TEST_CASE("cli: circuit parse rejects malformed input")
{
    CHECK_THROWS_AS(Circuit::parse("T 0\n"), std::invalid_argument); // no header
    CHECK_THROWS_AS(Circuit::parse("# sqct v1\n# qubits 3\nFOO 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Circuit::parse("# sqct v1\n# qubits 3\nT 0 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Circuit::parse("# sqct v1\n# qubits 3\nCNOT 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Circuit::parse("# sqct v1\n# qubits 3\nT 5\n"),
                    std::domain_error);
    CHECK_THROWS_AS(Circuit::parse("# sqct v2\n# qubits 3\nT 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Circuit::parse("# sqct v1\n# qubits 3\r\nT 0\r\n"),
                    std::invalid_argument);
}

TEST_CASE("cli: synth command writes verified artifacts")
{
    std::string circ = tmp_file("c1.sqct"), rep = tmp_file("r1.json");
    int code = run_tool("synth --phase pi/8 --eps 0.1 --seed 7 -o " + circ +
                        " --report " + rep);
    CHECK(code == 0);
    std::string text = slurp(circ);
    Circuit parsed = Circuit::parse(text);
    CHECK(parsed.n_qubits() == 3);
    CHECK(slurp(rep).find("\"k\": 9") != std::string::npos);

    // determinism across invocations (same seed)
    std::string circ2 = tmp_file("c2.sqct"), rep2 = tmp_file("r2.json");
    CHECK(run_tool("synth --phase pi/8 --eps 0.1 --seed 7 -o " + circ2 +
                   " --report " + rep2) == 0);
    CHECK(slurp(circ2) == text);
    CHECK(slurp(rep2) == slurp(rep));

    // exact octant multiple: a single T gate
    std::string circ3 = tmp_file("c3.sqct");
    CHECK(run_tool("synth --phase pi/4 --eps 1e-3 -o " + circ3) == 0);
    Circuit t_only = Circuit::parse(slurp(circ3));
    REQUIRE(t_only.size() == 1);
    CHECK(t_only.gates()[0] == PrimGate{PrimGate::Kind::T, 0, 0});
}

TEST_CASE("cli: verify command round trip and failures")
{
    std::string circ = tmp_file("v1.sqct");
    REQUIRE(run_tool("synth --phase pi/8 --eps 0.1 --seed 7 -o " + circ) == 0);
    CHECK(run_tool("verify -c " + circ + " --phase pi/8 --eps 0.1") == 0);
    // wrong claimed phase: certification failure
    CHECK(run_tool("verify -c " + circ + " --phase pi/3 --eps 1e-3") == 1);

    // corrupted gate name: input error
    std::string bad = tmp_file("bad.sqct");
    std::ofstream(bad) << "# sqct v1\n# qubits 3\n# ancillae 1 2\nQQ 0\n";
    CHECK(run_tool("verify -c " + bad + " --phase pi/8 --eps 0.1") == 2);

    // parse errors in arguments
    CHECK(run_tool("synth --phase bogus --eps 0.1") == 2);
    CHECK(run_tool("synth --phase pi/8 --eps 2.0") == 2);
    CHECK(run_tool("synth --phase pi/8 --eps 0") == 2);
}

TEST_CASE("cli: four-squares subcommand")
{
    int code = 0;
    std::string out = run_tool_stdout("four-squares 390 --seed 1", &code);
    CHECK(code == 0);
    std::istringstream is(out);
    long a, b, c, d;
    REQUIRE((is >> a >> b >> c >> d));
    CHECK(a * a + b * b + c * c + d * d == 390);

    out = run_tool_stdout("four-squares 15 --brute", &code);
    CHECK(code == 0);
    CHECK(out == "3 2 1 1\n");

    CHECK(run_tool("four-squares -- -5") == 2);
    CHECK(run_tool("four-squares xyz") == 2);
}

TEST_CASE("cli: precision override via environment")
{
    std::string circ = tmp_file("envp.sqct");
    std::string cmd = "SQCT_PRECISION_BITS=256 " + tool_path +
                      " synth --phase pi/8 --eps 0.1 --seed 7 -o " + circ +
                      " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    // higher certification precision must not change the circuit bytes
    std::string base = tmp_file("envp_base.sqct");
    REQUIRE(run_tool("synth --phase pi/8 --eps 0.1 --seed 7 -o " + base) == 0);
    CHECK(slurp(circ) == slurp(base));

    std::string bad_cmd = "SQCT_PRECISION_BITS=4 " + tool_path +
                          " synth --phase pi/8 --eps 0.1 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad_cmd.c_str())) == 2);
}

TEST_CASE("cli: bench csv")
{
    std::string csv = tmp_file("bench.csv");
    int code = run_tool("bench --eps-list 1e-2,1e-3,1e-4 --trials 2 --seed 9 --csv " + csv);
    CHECK(code == 0);
    std::istringstream is(slurp(csv));
    std::string header;
    std::getline(is, header);
    CHECK(header == "eps,k,total_gates,t_count,wall_time,quad_trials");
    int rows = 0;
    std::string line;
    unsigned prev_k = 0;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        ++rows;
        std::stringstream ls(line);
        std::string eps_text, k_text;
        std::getline(ls, eps_text, ',');
        std::getline(ls, k_text, ',');
        unsigned k = static_cast<unsigned>(std::stoul(k_text));
        CHECK(k == choose_k(parse_decimal(eps_text)));
        CHECK(k >= prev_k); // k nondecreasing within the shrinking eps list
        prev_k = k;
    }
    CHECK(rows == 6);
}
