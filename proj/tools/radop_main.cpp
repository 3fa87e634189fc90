#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "radop/json_io.hpp"
#include "radop/verify.hpp"

namespace {

using namespace radop;

struct GlobalFlags {
    double rel_tol = 1e-8;
    long long budget = 10'000'000;
    int truncation = 32;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
};

void emit(const GlobalFlags& flags, const std::string& text) {
    if (flags.out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(flags.out_path);
    if (!f) throw PreconditionError("cannot write to " + flags.out_path);
    f << text << "\n";
}

std::string hull_csv(const std::vector<Complex>& hull) {
    std::string csv = "re,im\n";
    char buf[64];
    for (const Complex& v : hull) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", v.real(), v.imag());
        csv += buf;
    }
    csv.pop_back();
    return csv;
}

SpaceSpec load_space(const std::string& path) { return space_from_json(load_json_file(path)); }

Symbol load_symbol(const std::string& spec, int dim) {
    // either a builtin name or a path to a symbol JSON
    if (spec == "one") return Symbol::one(dim);
    if (spec == "reciprocal-succ") return Symbol::reciprocal_succ(dim);
    return symbol_from_json(load_json_file(spec), dim);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"radial operators on Bergman, Hardy and Dirichlet spaces"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    GlobalFlags flags;
    app.add_option("--rel-tol", flags.rel_tol, "relative tolerance");
    app.add_option("--budget", flags.budget, "evaluation budget");
    app.add_option("--N", flags.truncation, "truncation bound");
    app.add_option("--seed", flags.seed, "random seed");
    app.add_option("--format", flags.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", flags.out_path, "output file (default stdout)");

    // norms
    auto* cmd_norms = app.add_subcommand("norms", "monomial norm table");
    std::string norms_space;
    cmd_norms->add_option("--space", norms_space, "space JSON file")->required();

    // apply
    auto* cmd_apply = app.add_subcommand("apply", "apply a radial operator");
    std::string apply_space, apply_symbol, apply_f, apply_z;
    bool apply_integral_route = false;
    cmd_apply->add_option("--space", apply_space)->required();
    cmd_apply->add_option("--symbol", apply_symbol, "builtin name or symbol JSON")->required();
    cmd_apply->add_option("--f", apply_f, "Laurent polynomial JSON")->required();
    cmd_apply->add_option("--z", apply_z, "evaluation point re,im[;re,im...]");
    cmd_apply->add_flag("--integral", apply_integral_route,
                        "also evaluate the integral representation at z");

    // spectrum / numrange
    auto* cmd_spectrum = app.add_subcommand("spectrum", "sampled spectrum report");
    auto* cmd_numrange = app.add_subcommand("numrange", "numerical-range hull");
    std::string spec_space, spec_symbol;
    double cluster_tol = 1e-6;
    for (auto* cmd : {cmd_spectrum, cmd_numrange}) {
        cmd->add_option("--space", spec_space)->required();
        cmd->add_option("--symbol", spec_symbol)->required();
    }
    cmd_spectrum->add_option("--cluster-tol", cluster_tol, "limit-point cluster tolerance");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    int trials = 100;
    cmd_verify->add_option("--suite", suite, "suite name or 'all'")->required();
    cmd_verify->add_option("--trials", trials, "trial count");

    // algebra
    auto* cmd_algebra = app.add_subcommand("algebra", "evaluate a symbol expression");
    std::string expr;
    std::vector<std::string> loads;
    int algebra_dim = 1;
    cmd_algebra->add_option("--expr", expr, "expression over named symbols")->required();
    cmd_algebra->add_option("--load", loads, "name=path (or name=builtin) bindings");
    cmd_algebra->add_option("--dim", algebra_dim, "symbol dimension");

    // feasible
    auto* cmd_feasible = app.add_subcommand("feasible", "kernel-series feasibility probe");
    std::string feas_space;
    int feas_samples = 20;
    cmd_feasible->add_option("--space", feas_space)->required();
    cmd_feasible->add_option("--samples", feas_samples);

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "inclusion-chain membership");
    std::string classify_coeffs;
    cmd_classify->add_option("--coeffs", classify_coeffs, "coefficient polynomial JSON")
        ->required();

    // cache
    auto* cmd_cache = app.add_subcommand("cache", "norm cache info");
    bool cache_clear = false;
    cmd_cache->add_flag("--clear", cache_clear, "remove the cache file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    if (cmd_norms->parsed()) {
        const SpaceSpec space = load_space(norms_space);
        const IndexSet set = enumerate_allowable(space, IndexBox(space.dim(), flags.truncation));
        NormCache cache(NormCache::default_path());
        const NormComputeOptions options{48, flags.rel_tol};
        const MonomialNormTable table = build_norm_table(space, set, &cache, nullptr, options);
        emit(flags, norm_table_to_json(table).dump(2));
        return 0;
    }

    if (cmd_apply->parsed()) {
        const SpaceSpec space = load_space(apply_space);
        const Symbol symbol = load_symbol(apply_symbol, space.dim());
        const LaurentPoly f = poly_from_json(load_json_file(apply_f));
        const RadialOperator op(space, symbol);
        const LaurentPoly result = apply_diagonal(op, f);
        Json j;
        j["diagonal"] = poly_to_json(result);
        if (!apply_z.empty()) {
            std::vector<Complex> z;
            std::size_t pos = 0;
            while (pos < apply_z.size()) {
                std::size_t semi = apply_z.find(';', pos);
                if (semi == std::string::npos) semi = apply_z.size();
                const std::string part = apply_z.substr(pos, semi - pos);
                const std::size_t comma = part.find(',');
                if (comma == std::string::npos) throw ParseError("--z expects re,im[;re,im...]");
                z.emplace_back(std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1)));
                pos = semi + 1;
            }
            if (static_cast<int>(z.size()) != space.dim())
                throw DimensionMismatch("--z dimension does not match the space");
            const Complex diag_val = result.eval(z);
            j["diagonal_at_z"] = complex_to_json(diag_val);
            if (apply_integral_route) {
                Complex integral;
                if (space.kind() == SpaceSpec::Kind::Bergman) {
                    IntegralApplyOptions options;
                    options.series_tol = 0.1 * flags.rel_tol;
                    options.term_budget = static_cast<std::size_t>(flags.budget);
                    integral = apply_integral(op, f, z, options);
                } else {
                    const AlgebraElement g(space, symbol);
                    integral = space.kind() == SpaceSpec::Kind::HardyDisk
                                   ? hardy_apply(g, f, z[0])
                                   : dirichlet_apply(g, f, z[0]);
                }
                j["integral_at_z"] = complex_to_json(integral);
                j["difference"] = std::abs(integral - diag_val);
            }
        }
        emit(flags, j.dump(2));
        return 0;
    }

    if (cmd_spectrum->parsed() || cmd_numrange->parsed()) {
        const SpaceSpec space = load_space(spec_space);
        const Symbol symbol = load_symbol(spec_symbol, space.dim());
        const RadialOperator op(space, symbol);
        const IndexSet probe = enumerate_allowable(space, IndexBox(space.dim(), flags.truncation));
        const SpectrumReport report = spectrum_report(op, probe, cluster_tol);
        if (cmd_numrange->parsed() && flags.format == "csv") {
            emit(flags, hull_csv(report.hull));
            return 0;
        }
        if (cmd_numrange->parsed()) {
            Json j;
            Json hull = Json::array();
            for (const Complex& v : report.hull) hull.push_back(complex_to_json(v));
            j["hull"] = std::move(hull);
            emit(flags, j.dump(2));
            return 0;
        }
        if (flags.format == "csv") {
            emit(flags, hull_csv(report.hull));
            return 0;
        }
        emit(flags, spectrum_to_json(report).dump(2));
        return 0;
    }

    if (cmd_verify->parsed()) {
        const auto checks = run_verify_suite(suite, {trials, flags.seed, flags.rel_tol});
        bool all_pass = true;
        double worst = 0.0;
        std::string worst_name;
        for (const VerifyCheck& c : checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.residual
                      << " tol=" << c.tolerance << "\n";
            if (!c.pass) all_pass = false;
            if (c.residual >= worst) {
                worst = c.residual;
                worst_name = c.name;
            }
        }
        std::cout << "worst residual: " << worst << " (" << worst_name << ")\n";
        return all_pass ? 0 : 4;
    }

    if (cmd_algebra->parsed()) {
        std::map<std::string, Symbol> env;
        for (const std::string& binding : loads) {
            const std::size_t eq = binding.find('=');
            if (eq == std::string::npos) throw ParseError("--load expects name=path");
            env.emplace(binding.substr(0, eq), load_symbol(binding.substr(eq + 1), algebra_dim));
        }
        const Symbol result = parse_symbol_expression(expr, env);
        const IndexSet probe = IndexSet::full_box(IndexBox(algebra_dim, flags.truncation));
        const SupNormReport norm = sup_norm(result, probe);
        Json j;
        j["symbol"] = symbol_to_json(result);
        j["norm"] = norm.value;
        j["norm_exact"] = norm.exact;
        emit(flags, j.dump(2));
        return 0;
    }

    if (cmd_feasible->parsed()) {
        const SpaceSpec space = load_space(feas_space);
        if (space.kind() != SpaceSpec::Kind::Bergman)
            throw PreconditionError("feasibility probes apply to Bergman spaces");
        const FeasibilityReport report =
            feasibility_probe(space.domain(), space.weight(), feas_samples, flags.seed,
                              flags.rel_tol);
        emit(flags, feasibility_to_json(report).dump(2));
        return 0;
    }

    if (cmd_classify->parsed()) {
        const LaurentPoly coeffs = poly_from_json(load_json_file(classify_coeffs));
        emit(flags, membership_to_json(classify_membership(coeffs, flags.truncation)).dump(2));
        return 0;
    }

    if (cmd_cache->parsed()) {
        NormCache cache(NormCache::default_path());
        if (cache_clear) {
            cache.clear();
            std::cout << "cleared " << cache.path() << "\n";
            return 0;
        }
        Json j;
        j["path"] = cache.path();
        j["entries"] = cache.entry_count();
        emit(flags, j.dump(2));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const radop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
