#include "radop/verify.hpp"

#include <cmath>
#include <random>

namespace radop {

namespace {

struct CheckList {
    std::vector<VerifyCheck> checks;
    void add(std::string name, double residual, double tol) {
        checks.push_back({std::move(name), residual <= tol, residual, tol});
    }
};

std::vector<SpaceSpec> verify_spaces() {
    return {
        SpaceSpec::bergman(make_disk(), WeightSpec::constant(1.0)),
        SpaceSpec::bergman(make_polydisc(2), WeightSpec::constant(1.0)),
        SpaceSpec::bergman(make_poly_annulus(2, 0.5, 1.0), WeightSpec::constant(1.0)),
    };
}

LaurentPoly seeded_poly(const IndexSet& pool, std::mt19937_64& gen, int max_terms) {
    LaurentPoly f(pool.dim());
    const int terms = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_terms));
    for (int t = 0; t < terms; ++t) {
        const std::size_t rank = static_cast<std::size_t>(gen() % pool.size());
        f.set_coefficient(pool.at(rank),
                          f.coefficient(pool.at(rank)) +
                              Complex{2.0 * unit_real(gen()) - 1.0, 2.0 * unit_real(gen()) - 1.0});
    }
    return f;
}

void suite_unitarity(CheckList& out, const VerifyOptions& options) {
    std::mt19937_64 gen(options.seed);
    for (const SpaceSpec& space : verify_spaces()) {
        const IndexSet set = enumerate_allowable(space, IndexBox(space.dim(), 4));
        double worst_coeff = 0.0, worst_norm = 0.0;
        const int rounds = std::max(1, options.trials / 10);
        for (int t = 0; t < rounds; ++t) {
            const LaurentPoly f = seeded_poly(set, gen, 6);
            const auto seq = analysis_transform(space, f, set);
            const LaurentPoly back = synthesis_transform(space, seq, set);
            worst_coeff = std::max(worst_coeff, LaurentPoly::coeff_distance(f, back));
            double parseval = 0.0;
            for (const Complex& v : seq) parseval += std::norm(v);
            NormProvider norms(space);
            double direct = 0.0;
            for (const auto& [alpha, c] : f.terms()) direct += std::norm(c) * norms.norm_sq(alpha);
            worst_norm = std::max(worst_norm,
                                  std::abs(parseval - direct) / std::max(1.0, std::abs(direct)));
        }
        out.add("unitarity/coeff-roundtrip/" + space.domain().name, worst_coeff, 1e-14);
        out.add("unitarity/norm-preservation/" + space.domain().name, worst_norm, 1e-10);
    }
}

void suite_commutation(CheckList& out, const VerifyOptions& options) {
    for (const SpaceSpec& space : verify_spaces()) {
        const RadialOperator op(space, Symbol::reciprocal_succ(space.dim()));
        const double r = radiality_residual(op, options.trials, options.seed);
        out.add("commutation/" + space.domain().name, r, 1e-12);
    }
}

void suite_adjoint(CheckList& out, const VerifyOptions& options) {
    std::mt19937_64 gen(options.seed);
    const SpaceSpec disk = SpaceSpec::bergman(make_disk(), WeightSpec::constant(1.0));
    const RadialOperator op(disk, Symbol::closed_form(
                                      1,
                                      [](const MultiIndex& m) {
                                          return Complex{0.0, 1.0} /
                                                 (static_cast<double>(m.sup_norm()) + 1.0);
                                      },
                                      DecayClass::VanishingAtInfinity));
    const RadialOperator adj = adjoint(op);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double r = 0.6 * unit_real(gen());
        const double phi = 2.0 * M_PI * unit_real(gen());
        const Complex zeta = std::polar(r, phi);
        const Complex via_symbol = inducing_function_eval(adj, std::vector<Complex>{zeta}, 1e-10);
        const Complex via_gstar =
            std::conj(inducing_function_eval(op, std::vector<Complex>{std::conj(zeta)}, 1e-10));
        worst = std::max(worst, std::abs(via_symbol - via_gstar));
    }
    out.add("adjoint/gstar-route", worst, 1e-8);
}

void suite_representation(CheckList& out, const VerifyOptions& options) {
    std::mt19937_64 gen(options.seed);
    const SpaceSpec disk = SpaceSpec::bergman(make_disk(), WeightSpec::constant(1.0));
    const RadialOperator op(disk, Symbol::reciprocal_succ(1));
    const IndexSet pool = enumerate_allowable(disk, IndexBox(1, 4));
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
        const LaurentPoly f = seeded_poly(pool, gen, 4);
        const Complex z = std::polar(0.6 * unit_real(gen()), 2.0 * M_PI * unit_real(gen()));
        const std::vector<Complex> zv{z};
        const Complex integral = apply_integral(op, f, zv);
        const Complex diagonal = apply_diagonal(op, f).eval(zv);
        worst = std::max(worst, std::abs(integral - diagonal));
    }
    out.add("representation/disk", worst, 1e-6);
}

void suite_algebra_laws(CheckList& out, const VerifyOptions& options) {
    std::mt19937_64 gen(options.seed);
    const IndexSet probe = IndexSet::range_1d(0, 32);
    double worst_assoc = 0.0, worst_cstar = 0.0, worst_submult = 0.0;
    for (int t = 0; t < options.trials; ++t) {
        auto dyadic = [&gen]() {
            return Complex{static_cast<double>(static_cast<int>(gen() % 33) - 16) / 8.0,
                           static_cast<double>(static_cast<int>(gen() % 33) - 16) / 8.0};
        };
        auto rand_symbol = [&]() {
            std::map<std::vector<int>, Complex> entries;
            const int k = 1 + static_cast<int>(gen() % 4);
            for (int i = 0; i < k; ++i) entries[{static_cast<int>(gen() % 8)}] = dyadic();
            return Symbol::finite(1, std::move(entries));
        };
        const Symbol a = rand_symbol(), b = rand_symbol(), c = rand_symbol();
        const Symbol ab_c = pointwise_product(pointwise_product(a, b), c);
        const Symbol a_bc = pointwise_product(a, pointwise_product(b, c));
        for (const MultiIndex& m : probe.members())
            worst_assoc = std::max(worst_assoc, std::abs(ab_c.value(m) - a_bc.value(m)));
        const SupNormReport na = sup_norm(a, probe);
        const SupNormReport nsq = sup_norm(pointwise_product(conjugate(a), a), probe);
        worst_cstar = std::max(worst_cstar, std::abs(nsq.value_sq - na.value_sq * na.value_sq));
        const SupNormReport nb = sup_norm(b, probe);
        const SupNormReport nab = sup_norm(pointwise_product(a, b), probe);
        worst_submult = std::max(worst_submult, nab.value_sq - na.value_sq * nb.value_sq);
    }
    out.add("algebra/associativity(dyadic)", worst_assoc, 0.0);
    // C*-identity and submultiplicativity compared on squared sup norms,
    // where dyadic entries keep the arithmetic exact
    out.add("algebra/cstar-identity(dyadic)", worst_cstar, 0.0);
    out.add("algebra/submultiplicativity", worst_submult, 0.0);
}

void suite_hardy_dirichlet(CheckList& out, const VerifyOptions& options) {
    (void)options;
    const AlgebraElement hardy_one(SpaceSpec::hardy_disk(), Symbol::one(1));
    const AlgebraElement dirich_one(SpaceSpec::dirichlet_disk(), Symbol::one(1));
    double worst_h = 0.0, worst_d = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const LaurentPoly f = LaurentPoly::monomial(MultiIndex{k});
        const Complex z{0.5, 0.0};
        const Complex want = std::pow(z, k);
        worst_h = std::max(worst_h, std::abs(hardy_apply(hardy_one, f, z) - want));
        worst_d = std::max(worst_d, std::abs(dirichlet_apply(dirich_one, f, z) - want));
    }
    out.add("hardy/identity-operator", worst_h, 1e-6);
    out.add("dirichlet/identity-operator", worst_d, 1e-6);
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"unitarity", "commutation", "adjoint", "representation", "algebra-laws",
            "hardy-dirichlet"};
}

std::vector<VerifyCheck> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& options) {
    CheckList out;
    if (suite == "unitarity")
        suite_unitarity(out, options);
    else if (suite == "commutation")
        suite_commutation(out, options);
    else if (suite == "adjoint")
        suite_adjoint(out, options);
    else if (suite == "representation")
        suite_representation(out, options);
    else if (suite == "algebra-laws")
        suite_algebra_laws(out, options);
    else if (suite == "hardy-dirichlet")
        suite_hardy_dirichlet(out, options);
    else if (suite == "all") {
        for (const std::string& name : verify_suite_names()) {
            auto checks = run_verify_suite(name, options);
            out.checks.insert(out.checks.end(), checks.begin(), checks.end());
        }
    } else {
        throw ParseError("unknown verify suite '" + suite + "'");
    }
    return out.checks;
}

} // namespace radop
