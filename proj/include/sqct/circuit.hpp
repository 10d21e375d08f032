#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqct
{

    /**
     * PrimGate: one primitive Clifford+T gate. Gate list index 0 is applied
     * first; CNOT lists control before target.
     */
    struct PrimGate
    {
        enum class Kind
        {
            H,
            T,
            TDG,
            S,
            SDG,
            X,
            Z,
            CNOT
        };

        Kind kind;
        unsigned q0 = 0; // target, or control for CNOT
        unsigned q1 = 0; // CNOT target

        bool operator==(const PrimGate &o) const = default;

        bool is_cnot() const { return kind == Kind::CNOT; }

        PrimGate adjoint() const
        {
            PrimGate g = *this;
            switch (kind)
            {
            case Kind::T:
                g.kind = Kind::TDG;
                break;
            case Kind::TDG:
                g.kind = Kind::T;
                break;
            case Kind::S:
                g.kind = Kind::SDG;
                break;
            case Kind::SDG:
                g.kind = Kind::S;
                break;
            default:
                break; // H, X, Z, CNOT are self-adjoint
            }
            return g;
        }
    };

    inline const char *gate_name(PrimGate::Kind k)
    {
        switch (k)
        {
        case PrimGate::Kind::H:
            return "H";
        case PrimGate::Kind::T:
            return "T";
        case PrimGate::Kind::TDG:
            return "TDG";
        case PrimGate::Kind::S:
            return "S";
        case PrimGate::Kind::SDG:
            return "SDG";
        case PrimGate::Kind::X:
            return "X";
        case PrimGate::Kind::Z:
            return "Z";
        case PrimGate::Kind::CNOT:
            return "CNOT";
        }
        return "?";
    }

    /**
     * Circuit: a time-ordered list of primitive gates on n_qubits wires.
     */
    class Circuit
    {
    private:
        unsigned _n_qubits;
        std::vector<PrimGate> _gates;

        void check(const PrimGate &g) const
        {
            if (g.q0 >= _n_qubits || (g.is_cnot() && g.q1 >= _n_qubits))
                throw std::domain_error("Circuit: gate operand out of range");
            if (g.is_cnot() && g.q0 == g.q1)
                throw std::domain_error("Circuit: CNOT control equals target");
        }

    public:
        explicit Circuit(unsigned n_qubits = 3) : _n_qubits(n_qubits) {}

        unsigned n_qubits() const { return _n_qubits; }
        const std::vector<PrimGate> &gates() const { return _gates; }
        size_t size() const { return _gates.size(); }
        bool empty() const { return _gates.empty(); }

        bool operator==(const Circuit &o) const
        {
            return _n_qubits == o._n_qubits && _gates == o._gates;
        }

        void push(PrimGate g)
        {
            check(g);
            _gates.push_back(g);
        }

        void push(PrimGate::Kind kind, unsigned q)
        {
            push(PrimGate{kind, q, 0});
        }

        void push_cnot(unsigned control, unsigned target)
        {
            push(PrimGate{PrimGate::Kind::CNOT, control, target});
        }

        void append(const Circuit &o)
        {
            if (o._n_qubits != _n_qubits)
                throw std::domain_error("Circuit::append: qubit count mismatch");
            for (const auto &g : o._gates)
                push(g);
        }

        // Reversed list with every primitive adjointed.
        Circuit adjoint() const
        {
            Circuit c(_n_qubits);
            for (auto it = _gates.rbegin(); it != _gates.rend(); ++it)
                c.push(it->adjoint());
            return c;
        }

        std::map<std::string, size_t> gate_counts() const
        {
            std::map<std::string, size_t> counts;
            for (const auto &g : _gates)
                ++counts[gate_name(g.kind)];
            return counts;
        }

        size_t t_count() const
        {
            size_t n = 0;
            for (const auto &g : _gates)
                if (g.kind == PrimGate::Kind::T || g.kind == PrimGate::Kind::TDG)
                    ++n;
            return n;
        }

        /// Text format: `# sqct v1` header, one gate per line, LF endings.
        std::string emit() const
        {
            std::ostringstream os;
            os << "# sqct v1\n# qubits " << _n_qubits << "\n";
            if (_n_qubits == 3)
                os << "# ancillae 1 2\n";
            for (const auto &g : _gates)
            {
                os << gate_name(g.kind) << " " << g.q0;
                if (g.is_cnot())
                    os << " " << g.q1;
                os << "\n";
            }
            return os.str();
        }

        static Circuit parse(const std::string &text)
        {
            std::istringstream is(text);
            std::string line;
            bool header_seen = false;
            unsigned n_qubits = 0;
            bool qubits_seen = false;
            Circuit c(3);
            std::vector<PrimGate> pending;
            while (std::getline(is, line))
            {
                if (!line.empty() && line.back() == '\r')
                    throw std::invalid_argument("Circuit::parse: CR line ending");
                if (line.empty())
                    continue;
                if (line[0] == '#')
                {
                    std::istringstream ls(line.substr(1));
                    std::string word;
                    ls >> word;
                    if (word == "sqct")
                    {
                        std::string version;
                        ls >> version;
                        if (version != "v1")
                            throw std::invalid_argument("Circuit::parse: unsupported version");
                        header_seen = true;
                    }
                    else if (word == "qubits")
                    {
                        if (!(ls >> n_qubits) || n_qubits == 0 || n_qubits > 8)
                            throw std::invalid_argument("Circuit::parse: bad qubit count");
                        qubits_seen = true;
                    }
                    // other comment lines (e.g. ancillae) are informational
                    continue;
                }
                std::istringstream ls(line);
                std::string name;
                ls >> name;
                PrimGate g{};
                if (name == "H")
                    g.kind = PrimGate::Kind::H;
                else if (name == "T")
                    g.kind = PrimGate::Kind::T;
                else if (name == "TDG")
                    g.kind = PrimGate::Kind::TDG;
                else if (name == "S")
                    g.kind = PrimGate::Kind::S;
                else if (name == "SDG")
                    g.kind = PrimGate::Kind::SDG;
                else if (name == "X")
                    g.kind = PrimGate::Kind::X;
                else if (name == "Z")
                    g.kind = PrimGate::Kind::Z;
                else if (name == "CNOT")
                    g.kind = PrimGate::Kind::CNOT;
                else
                    throw std::invalid_argument("Circuit::parse: unknown gate '" + name + "'");
                long a = -1, b = -1;
                if (!(ls >> a))
                    throw std::invalid_argument("Circuit::parse: missing operand");
                if (g.is_cnot() && !(ls >> b))
                    throw std::invalid_argument("Circuit::parse: CNOT needs two operands");
                std::string rest;
                if (ls >> rest)
                    throw std::invalid_argument("Circuit::parse: trailing tokens");
                if (a < 0 || (g.is_cnot() && b < 0))
                    throw std::invalid_argument("Circuit::parse: negative operand");
                g.q0 = static_cast<unsigned>(a);
                if (g.is_cnot())
                    g.q1 = static_cast<unsigned>(b);
                pending.push_back(g);
            }
            if (!header_seen || !qubits_seen)
                throw std::invalid_argument("Circuit::parse: missing header");
            Circuit out(n_qubits);
            for (const auto &g : pending)
                out.push(g);
            return out;
        }
    };

} // namespace sqct
