// Timing comparison of the serial reference path against the OpenMP path
// for the data-parallel kernels: quadrature reduction, norm-table build,
// spectrum sampling, and the integral representation. Both paths use the
// same blocked reduction, so their outputs are required to match exactly.

#include <chrono>
#include <cstdio>
#include <functional>

#include "radop/operators.hpp"
#include "radop/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace radop;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Row {
    const char* name;
    double serial_ms;
    double parallel_ms;
    bool identical;
};

void print_row(const Row& r) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", r.name, r.serial_ms, r.parallel_ms,
                r.serial_ms / r.parallel_ms, r.identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    // 1. domain quadrature on the polydisc
    {
        const DomainSpec domain = make_polydisc(2);
        const WeightSpec weight = WeightSpec::constant(1.0);
        const QuadratureRule rule = shadow_rule(domain, 96);
        auto integrand = [](std::span<const Complex> w) {
            return w[0] * std::conj(w[1]) + std::norm(w[0]) * std::norm(w[1]);
        };
        Complex serial_v, parallel_v;
        const double ts = time_ms([&] {
            set_parallel_enabled(false);
            serial_v = integrate_domain(integrand, domain, weight, rule, 24).value;
        });
        const double tp = time_ms([&] {
            set_parallel_enabled(true);
            parallel_v = integrate_domain(integrand, domain, weight, rule, 24).value;
        });
        print_row({"integrate_domain 96x96x24^2", ts, tp, serial_v == parallel_v});
    }

    // 2. norm table over a quadrature-backed space (custom weight forces it)
    {
        const DomainSpec domain = make_polydisc(2);
        const WeightSpec weight = WeightSpec::custom(
            [](std::span<const double> r) { return 1.0 + 0.5 * r[0] * r[0] + 0.25 * r[1]; }, true);
        const SpaceSpec space = SpaceSpec::bergman(domain, weight);
        const IndexSet set = enumerate_allowable(space, IndexBox(2, 10));
        MonomialNormTable ts_table, tp_table;
        const double ts = time_ms([&] {
            set_parallel_enabled(false);
            ts_table = build_norm_table(space, set);
        });
        const double tp = time_ms([&] {
            set_parallel_enabled(true);
            tp_table = build_norm_table(space, set);
        });
        bool same = ts_table.size() == tp_table.size();
        for (std::size_t i = 0; same && i < ts_table.size(); ++i)
            same = ts_table.entry(i).value == tp_table.entry(i).value;
        print_row({"norm table 21x21", ts, tp, same});
    }

    // 3. spectrum sampling over a large 1-D probe
    {
        const SpaceSpec space = SpaceSpec::bergman(make_disk(), WeightSpec::constant(1.0));
        const RadialOperator op(space, Symbol::reciprocal_succ(1));
        const IndexSet probe = IndexSet::range_1d(0, 2'000'000);
        SpectrumReport rs, rp;
        const double ts = time_ms([&] {
            set_parallel_enabled(false);
            rs = spectrum_report(op, probe, 1e-6);
        });
        const double tp = time_ms([&] {
            set_parallel_enabled(true);
            rp = spectrum_report(op, probe, 1e-6);
        });
        const bool same = rs.values == rp.values && rs.limit_points == rp.limit_points;
        print_row({"spectrum probe 2e6", ts, tp, same});
    }

    // 4. integral representation on the polydisc
    {
        const SpaceSpec space = SpaceSpec::bergman(make_polydisc(2), WeightSpec::constant(1.0));
        const RadialOperator op(space, Symbol::one(2));
        LaurentPoly f(2);
        f.set_coefficient(MultiIndex{2, 1}, Complex{1.0, 0.5});
        f.set_coefficient(MultiIndex{0, 3}, Complex{-0.25, 0.0});
        const std::vector<Complex> z{{0.35, 0.1}, {-0.2, 0.4}};
        Complex vs, vp;
        const double ts = time_ms([&] {
            set_parallel_enabled(false);
            vs = apply_integral(op, f, z);
        });
        const double tp = time_ms([&] {
            set_parallel_enabled(true);
            vp = apply_integral(op, f, z);
        });
        print_row({"apply_integral polydisc", ts, tp, vs == vp});
    }

    set_parallel_enabled(true);
    return 0;
}
