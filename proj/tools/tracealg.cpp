// Command-line front end: tracealg <subcommand> ...
// Exit status: 0 success or identity holds, 1 checked false (a witness is printed), 2 usage or input error.

#include "tracealg/tracealg.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace tracealg;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_error = 2;

std::string combination(const QVector& v, const std::vector<std::string>& labels)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        Rational mag = abs(v[i]);
        os << (first ? (v[i] < 0 ? "-" : "") : (v[i] < 0 ? " - " : " + "));
        first = false;
        if (mag != 1)
            os << mag.get_str() << "*";
        os << labels[i];
    }
    return first ? "0" : os.str();
}

TracePoly resolve_poly(const std::string& spec)
{
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) != 0)
        return parse_trace_poly(spec);
    std::string name = spec.substr(prefix.size());
    auto number = [&](std::size_t skip) {
        std::string digits = name.substr(skip);
        if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown builtin '" + name + "'");
        int k = std::stoi(digits);
        if (k < 1 || k > 8)
            throw std::invalid_argument("builtin degree must be in 1..8");
        return k;
    };
    if (name.rfind("chm", 0) == 0)
        return ch_multilinear(number(3));
    if (name.rfind("ch", 0) == 0)
        return ch_poly(number(2));
    if (name.rfind("T", 0) == 0)
        return t_multilinear(number(1));
    throw std::invalid_argument("unknown builtin '" + name + "' (use chN, chmN or TN)");
}

unsigned thread_count(unsigned requested)
{
    if (requested == 0)
        return std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

int cmd_chpoly(int n, bool multilinear)
{
    std::cout << render(multilinear ? ch_multilinear(n) : ch_poly(n)) << "\n";
    return exit_ok;
}

int cmd_polarize(const std::string& expr)
{
    std::cout << render(polarize(resolve_poly(expr))) << "\n";
    return exit_ok;
}

void print_witness(const MatrixAssignment& a, const TracePoly& p, std::size_t n)
{
    std::cout << "counterexample:\n";
    for (const auto& [v, m] : a)
        std::cout << "  x" << v << " = " << m << "\n";
    std::cout << "  value = " << eval(p, a, n) << "\n";
}

int cmd_verify(const std::string& spec, std::size_t n, unsigned trials, std::uint64_t seed, bool random_first)
{
    TracePoly p = resolve_poly(spec);
    if (random_first) {
        if (auto w = random_counterexample(p, n, trials, seed)) {
            std::cout << "not an identity for " << n << "x" << n << " matrices\n";
            print_witness(*w, p, n);
            return exit_false;
        }
    }
    auto value = eval(p, generic_assignment(p, n), n);
    if (value.is_zero()) {
        std::cout << "identity holds for " << n << "x" << n << " matrices (exact symbolic check)\n";
        return exit_ok;
    }
    std::cout << "not an identity for " << n << "x" << n << " matrices\n";
    if (auto w = random_counterexample(p, n, std::max(trials, 50u), seed)) {
        print_witness(*w, p, n);
    } else {
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k)
                if (!value(h, k).is_zero()) {
                    std::cout << "nonzero generic entry (" << h + 1 << ", " << k + 1 << "): " << value(h, k) << "\n";
                    return exit_false;
                }
    }
    return exit_false;
}

int cmd_algebra(const std::string& action, const std::string& path, unsigned nmax, unsigned parallel)
{
    auto in = algebra_from_json(read_json_file(path));
    const auto& a = in.algebra;
    if (action == "kernel") {
        auto k = trace_kernel(a);
        std::cout << "dim " << a.dim() << "\n";
        std::cout << "kernel dim " << k.dim() << "\n";
        for (const auto& v : k.basis())
            std::cout << "  " << combination(v, a.labels()) << "\n";
        if (!k.is_zero()) {
            auto q = quotient(a, k);
            std::cout << "quotient dim " << q.algebra.dim() << "\n";
        }
        return exit_ok;
    }
    if (action == "chdeg") {
        auto r = ch_degree(a, nmax, thread_count(parallel));
        if (r.degree) {
            std::cout << "ch_degree " << *r.degree << "\n";
            return exit_ok;
        }
        std::cout << "ch_degree none\n" << r.diagnostic << "\n";
        return exit_false;
    }
    if (action == "weights") {
        if (!in.blocks)
            throw InputError("weights needs a \"blocks\" field with the matrix-unit decomposition");
        try {
            auto w = recover_weights(a, *in.blocks);
            std::cout << "sizes";
            for (auto m : w.sizes)
                std::cout << " " << m;
            std::cout << "\nweights";
            for (auto x : w.weights)
                std::cout << " " << x;
            std::cout << "\nn " << w.n() << "\n";
            return exit_ok;
        } catch (const AlgebraError& e) {
            std::cout << e.what() << "\n";
            return exit_false;
        }
    }
    throw std::invalid_argument("unknown algebra action '" + action + "'");
}

void print_axiom(const char* name, const AxiomResult& r)
{
    std::cout << name << ": " << (r.skipped ? "skipped" : r.holds ? "pass" : "FAIL");
    if (!r.detail.empty())
        std::cout << " (" << r.detail << ")";
    std::cout << "\n";
}

int cmd_pseudochar(const std::string& group_path, const std::string& char_path, bool kernel, std::uint64_t seed)
{
    auto g = group_from_json(read_json_file(group_path));
    auto p = character_from_json(read_json_file(char_path), g);
    PseudoCharOptions opts;
    opts.seed = seed;
    auto rep = check_pseudocharacter(p, opts);
    print_axiom("t(1) = n", rep.unit);
    print_axiom("t(ab) = t(ba)", rep.central);
    print_axiom(("T_" + std::to_string(p.n + 1) + " = 0").c_str(), rep.vanishing);
    if (!rep.passed()) {
        std::cout << "not a pseudocharacter of degree " << p.n << "\n";
        return exit_false;
    }
    std::cout << "pseudocharacter of degree " << p.n << "\n";
    if (kernel) {
        auto k = pseudochar_kernel(p, opts);
        std::cout << "kernel dim " << k.kernel.dim() << "\n";
        std::cout << "quotient dim " << k.quotient.algebra.dim() << "\n";
        if (k.ch_degree)
            std::cout << "quotient ch_degree " << *k.ch_degree << "\n";
        else
            std::cout << k.note << "\n";
    }
    return exit_ok;
}

int cmd_strata(unsigned n, unsigned ell, const std::string& poset, bool dims)
{
    if (n < 1 || n > 12)
        throw std::invalid_argument("--n must be in 1..12");
    auto p = stratification_poset(n, ell);
    if (poset == "dot") {
        std::cout << to_dot(p);
    } else if (poset == "json") {
        std::cout << poset_to_json(p).dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            std::cout << p.nodes[i].label();
            if (dims)
                std::cout << "\tstratum " << p.dims[i].stratum << "\tsheet " << p.dims[i].sheet << "\tstabilizer "
                          << p.dims[i].stabilizer << " (projective " << p.dims[i].projective_stabilizer << ")";
            std::cout << "\n";
        }
        std::cout << "codimension-1 coverings: " << p.flagged_count() << "\n";
    }
    return p.codimension_rule_holds() ? exit_ok : exit_false;
}

int cmd_onevar(const std::vector<unsigned>& mult)
{
    auto m = diagonal_model(mult);
    const bool two = mult.size() == 2;
    auto name = two ? two_eigenvalue_name : diagonal_var_name;
    std::cout << "n " << m.n << "\n";
    for (unsigned j = 1; j <= m.n; ++j)
        std::cout << diagonal_var_name(coefficient_symbol(j)) << " = " << m.alpha[j].to_string(name) << "\n";
    bool ok = true;
    for (const auto& c : m.checks) {
        std::cout << (c.asserted ? "check " : "note  ") << (c.holds ? "holds" : "fails") << ": " << c.name << "\n";
        ok = ok && (!c.asserted || c.holds);
    }
    bool repeated = false;
    for (auto a : mult)
        repeated = repeated || a >= 2;
    if (repeated)
        std::cout << "relation " << discriminant_relation(mult).to_string(diagonal_var_name) << "\n";
    else
        std::cout << "relation none (all eigenvalues simple)\n";
    return ok ? exit_ok : exit_false;
}

std::vector<unsigned> parse_list(const std::string& s)
{
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 3)
            throw std::invalid_argument("--mult expects a comma-separated list of positive integers");
        out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (out.empty())
        throw std::invalid_argument("--mult is empty");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trace polynomials, Cayley-Hamilton identities and trace algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = default_seed;
    app.add_option("--seed", seed, "seed for every randomized path")->capture_default_str();

    int ch_n = 0;
    bool multilinear = false;
    auto* chpoly = app.add_subcommand("chpoly", "print the n-th Cayley-Hamilton polynomial");
    chpoly->add_option("--n", ch_n, "degree")->required()->check(CLI::Range(1, 8));
    chpoly->add_flag("--multilinear", multilinear, "print the multilinear form instead");

    std::string pol_expr;
    auto* pol = app.add_subcommand("polarize", "full polarization of a homogeneous one-variable polynomial");
    pol->add_option("--poly", pol_expr, "polynomial, e.g. 'x^2 - tr(x)*x' or builtin:ch2")->required();

    std::string ver_poly;
    std::size_t ver_size = 0;
    unsigned trials = 20;
    auto* verify = app.add_subcommand("verify", "test whether a trace polynomial vanishes on n x n matrices");
    verify->add_option("--poly", ver_poly, "expression or builtin:chN|chmN|TN")->required();
    verify->add_option("--size", ver_size, "matrix size")->required()->check(CLI::Range(1, 8));
    auto* random_opt = verify->add_option("--random", trials, "random trials before the symbolic check");

    std::string alg_action, alg_in;
    unsigned nmax = 6, parallel = 1;
    auto* algebra = app.add_subcommand("algebra", "finite-dimensional trace algebra given as JSON");
    algebra->add_option("action", alg_action, "kernel | chdeg | weights")
        ->required()
        ->check(CLI::IsMember({"kernel", "chdeg", "weights"}));
    algebra->add_option("--in", alg_in, "algebra JSON file")->required();
    algebra->add_option("--nmax", nmax, "largest CH degree tried")->capture_default_str()->check(CLI::Range(1, 12));
    algebra->add_option("--parallel", parallel, "worker threads for chdeg (0 = all cores)")->capture_default_str();

    std::string pc_action, pc_group, pc_char;
    bool pc_kernel = false;
    auto* pseudo = app.add_subcommand("pseudochar", "check a pseudocharacter of a finite group");
    pseudo->add_option("action", pc_action, "check")->required()->check(CLI::IsMember({"check"}));
    pseudo->add_option("--group", pc_group, "group JSON file")->required();
    pseudo->add_option("--char", pc_char, "character JSON file")->required();
    pseudo->add_flag("--kernel", pc_kernel, "also compute the trace kernel and quotient");

    unsigned st_n = 0, st_ell = 0;
    std::string st_poset;
    bool st_dims = false;
    auto* strata = app.add_subcommand("strata", "stratum types, dimensions and closure poset");
    strata->add_option("--n", st_n, "matrix size")->required();
    strata->add_option("--ell", st_ell, "number of matrices")->required();
    strata->add_option("--poset", st_poset, "dot | json")->check(CLI::IsMember({"dot", "json"}));
    strata->add_flag("--dims", st_dims, "print dimensions");

    std::string ov_mult;
    auto* onevar = app.add_subcommand("onevar", "diagonal model with repeated eigenvalues");
    onevar->add_option("--mult", ov_mult, "multiplicities, e.g. 1,2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (*chpoly)
            return cmd_chpoly(ch_n, multilinear);
        if (*pol)
            return cmd_polarize(pol_expr);
        if (*verify)
            return cmd_verify(ver_poly, ver_size, trials, seed, random_opt->count() > 0);
        if (*algebra)
            return cmd_algebra(alg_action, alg_in, nmax, parallel);
        if (*pseudo)
            return cmd_pseudochar(pc_group, pc_char, pc_kernel, seed);
        if (*strata)
            return cmd_strata(st_n, st_ell, st_poset, st_dims);
        if (*onevar)
            return cmd_onevar(parse_list(ov_mult));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
