#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "radop/laurent.hpp"
#include "radop/norms.hpp"

using namespace radop;
using Complex = std::complex<double>;

namespace {

SpaceSpec disk_space() { return SpaceSpec::bergman(make_disk(), WeightSpec::constant(1.0)); }

} // namespace

TEST_CASE("disk monomial norms match the antiderivative oracle") {
    const SpaceSpec disk = disk_space();
    CHECK(monomial_norm_sq(disk, MultiIndex{0}) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(monomial_norm_sq(disk, MultiIndex{5}) ==
          doctest::Approx(oracle::disk_norm_sq(5)).epsilon(1e-14));
    CHECK_THROWS_AS(monomial_norm_sq(disk, MultiIndex{-1}), NotAllowable);
}

TEST_CASE("hardy and dirichlet sequence norms") {
    const SpaceSpec hardy = SpaceSpec::hardy_disk();
    const SpaceSpec dirichlet = SpaceSpec::dirichlet_disk();
    for (int m = 0; m <= 8; ++m) CHECK(monomial_norm_sq(hardy, MultiIndex{m}) == 1.0);
    CHECK(monomial_norm_sq(dirichlet, MultiIndex{0}) == 1.0);
    CHECK(monomial_norm_sq(dirichlet, MultiIndex{4}) == 4.0);
}

TEST_CASE("hartogs triangle closed form vs iterated oracle") {
    const SpaceSpec space = SpaceSpec::bergman(make_hartogs_triangle(), WeightSpec::constant(1.0));
    CHECK(monomial_norm_sq(space, MultiIndex{0, -1}) ==
          doctest::Approx(oracle::hartogs_norm_sq(0, -1)).epsilon(1e-13));
    CHECK(monomial_norm_sq(space, MultiIndex{1, 0}) ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
}

TEST_CASE("ball closed form vs brute-force oracle") {
    const SpaceSpec space = SpaceSpec::bergman(make_ball(2), WeightSpec::constant(1.0));
    CHECK(monomial_norm_sq(space, MultiIndex{1, 0}) ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            CHECK(monomial_norm_sq(space, MultiIndex{a, b}) ==
                  doctest::Approx(oracle::ball2_norm_sq(a, b)).epsilon(1e-9));
}

TEST_CASE("coordinate functional norms are reciprocals") {
    const SpaceSpec disk = disk_space();
    CHECK(coordinate_norm_sq(disk, MultiIndex{0}) == doctest::Approx(1.0 / M_PI));
    CHECK(coordinate_norm_sq(disk, MultiIndex{3}) == doctest::Approx(4.0 / M_PI));
    const SpaceSpec hardy = SpaceSpec::hardy_disk();
    for (int m = 0; m <= 5; ++m) CHECK(coordinate_norm_sq(hardy, MultiIndex{m}) == 1.0);
    for (int m = 0; m <= 10; ++m)
        CHECK(coordinate_norm_sq(disk, MultiIndex{m}) * monomial_norm_sq(disk, MultiIndex{m}) ==
              doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("quadrature fallback matches a hand oracle for a smooth custom weight") {
    // omega = 1 + c r^2 on the disk: 2 pi int r^{2m+1} (1 + c r^2) dr
    const double c = 0.5;
    const SpaceSpec quad = SpaceSpec::bergman(
        make_disk(),
        WeightSpec::custom(
            [c](std::span<const double> r) { return 1.0 + c * r[0] * r[0]; }, true));
    for (int m = 0; m <= 6; ++m) {
        const NormEntry b = monomial_norm_entry(quad, MultiIndex{m}, {64, 1e-10});
        CHECK(b.provenance.kind == NormProvenance::Kind::Quadrature);
        const double want = 2.0 * M_PI * (1.0 / (2.0 * m + 2.0) + c / (2.0 * m + 4.0));
        CHECK(b.value == doctest::Approx(want).epsilon(1e-12));
    }

    // singular radial-power weights go through the substitution rule
    const double s = -0.5;
    const SpaceSpec closed = SpaceSpec::bergman(make_disk(), WeightSpec::radial_power({s}));
    const QuadratureRule rule =
        weighted_shadow_rule(make_disk(), WeightSpec::radial_power({s}), 48);
    for (int m = 0; m <= 6; ++m) {
        const double cf = monomial_norm_sq(closed, MultiIndex{m});
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], 2 * m + 1);
        CHECK(2.0 * M_PI * acc == doctest::Approx(cf).epsilon(1e-11));
    }
}

TEST_CASE("norm table: build and provenance") {
    const SpaceSpec disk = disk_space();
    const IndexSet set = enumerate_allowable(disk, IndexBox(1, 3));
    const MonomialNormTable table = build_norm_table(disk, set);
    REQUIRE(table.size() == 4);
    CHECK(table.value(MultiIndex{0}) == doctest::Approx(M_PI));
    CHECK(table.value(MultiIndex{1}) == doctest::Approx(M_PI / 2.0));
    CHECK(table.value(MultiIndex{2}) == doctest::Approx(M_PI / 3.0));
    CHECK(table.value(MultiIndex{3}) == doctest::Approx(M_PI / 4.0));
    CHECK(table.entry(MultiIndex{2}).provenance.kind == NormProvenance::Kind::ClosedForm);

    const SpaceSpec polydisc = SpaceSpec::bergman(make_polydisc(2), WeightSpec::constant(1.0));
    const IndexSet set2 = enumerate_allowable(polydisc, IndexBox(2, 1));
    const MonomialNormTable table2 = build_norm_table(polydisc, set2);
    for (const MultiIndex& m : set2.members())
        CHECK(table2.value(m) ==
              doctest::Approx(M_PI * M_PI / ((m[0] + 1.0) * (m[1] + 1.0))).epsilon(1e-14));
}

TEST_CASE("warm cache serves entries without recomputation") {
    const auto dir = std::filesystem::temp_directory_path() / "radop_cache_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "cache.json").string();
    std::filesystem::remove(path);

    // custom weight forces quadrature so cache hits are observable
    const SpaceSpec space = SpaceSpec::bergman(
        make_disk(),
        WeightSpec::custom([](std::span<const double> r) { return 1.0 + r[0] * r[0]; }, true));
    const IndexSet set = enumerate_allowable(space, IndexBox(1, 4));

    NormCache cold(path);
    BuildStats cold_stats;
    const MonomialNormTable t1 = build_norm_table(space, set, &cold, &cold_stats);
    CHECK(cold_stats.quadrature == set.size());
    CHECK(cold_stats.cache_hits == 0);

    NormCache warm(path);
    BuildStats warm_stats;
    const MonomialNormTable t2 = build_norm_table(space, set, &warm, &warm_stats);
    CHECK(warm_stats.cache_hits == set.size());
    CHECK(warm_stats.quadrature == 0);
    for (std::size_t i = 0; i < set.size(); ++i) CHECK(t1.entry(i).value == t2.entry(i).value);

    {
        std::ofstream f(path);
        f << "{ not json";
    }
    NormCache corrupt(path);
    CHECK(corrupt.entry_count() == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("hardy norm identity for polynomials of degree <= 8") {
    // |f(0)|^2 + int |f'|^2 log(1/|w|^2) dA = sum |c_m|^2 with normalized dA
    const QuadratureRule rule = geometric_panel_rule(0.0, 1.0, 30, 12);
    const DomainSpec disk = make_disk();
    const WeightSpec one = WeightSpec::constant(1.0);
    const std::vector<Complex> coeffs{{0.5, 0.25}, {1.0, -1.0}, {0.0, 0.0},
                                      {0.25, 2.0}, {0.0, -0.5}, {1.5, 0.0},
                                      {0.5, 0.5},  {0.0, 1.0},  {-0.75, 0.5}};
    auto fprime = [&](Complex w) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = coeffs.size(); m-- > 1;)
            acc = acc * w + static_cast<double>(m) * coeffs[m];
        return acc;
    };
    const auto rep = integrate_domain(
        [&](std::span<const Complex> w) {
            return Complex{std::norm(fprime(w[0])) * std::log(1.0 / std::norm(w[0])) / M_PI, 0.0};
        },
        disk, one, rule, 32);
    double want = 0.0;
    for (const Complex& c : coeffs) want += std::norm(c);
    const double got = std::norm(coeffs[0]) + rep.value.real();
    CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("closed form vs quadrature across the catalog, |alpha| <= 10") {
    auto quad_route = [](const SpaceSpec& space, const MultiIndex& alpha, int pts) {
        const QuadratureRule rule = weighted_shadow_rule(space.domain(), space.weight(), pts);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto r = rule.node(i);
            double v = rule.weights[i];
            for (int j = 0; j < alpha.dim(); ++j)
                v *= std::pow(r[static_cast<std::size_t>(j)], 2.0 * alpha[j] + 1.0);
            acc += v;
        }
        double scale = 1.0;
        for (int j = 0; j < space.dim(); ++j) scale *= 2.0 * M_PI;
        return scale * acc;
    };

    const SpaceSpec disk = disk_space();
    for (int m = 0; m <= 10; ++m) {
        const double cf = monomial_norm_sq(disk, MultiIndex{m});
        CHECK(std::abs(quad_route(disk, MultiIndex{m}, 32) - cf) / cf < 1e-8);
    }
    // annulus: all integer exponents, including the log case m = -1
    const SpaceSpec annulus =
        SpaceSpec::bergman(make_poly_annulus(1, 0.5, 1.0), WeightSpec::constant(1.0));
    for (int m = -10; m <= 10; ++m) {
        const double cf = monomial_norm_sq(annulus, MultiIndex{m});
        CHECK(std::abs(quad_route(annulus, MultiIndex{m}, 32) - cf) / cf < 1e-8);
    }
    const SpaceSpec weighted =
        SpaceSpec::bergman(make_polydisc(2), WeightSpec::radial_power({0.5, -0.25}));
    for (int a = 0; a <= 10; a += 2)
        for (int b = 0; b <= 10; b += 5) {
            const double cf = monomial_norm_sq(weighted, MultiIndex{a, b});
            CHECK(std::abs(quad_route(weighted, MultiIndex{a, b}, 48) - cf) / cf < 1e-8);
        }
}

TEST_CASE("distinct monomials are orthogonal under the domain integral") {
    const SpaceSpec space = SpaceSpec::bergman(make_hartogs_triangle(), WeightSpec::constant(1.0));
    const QuadratureRule rule = shadow_rule(space.domain(), 16);
    const MultiIndex a{1, 0}, b{0, 1};
    const auto rep = integrate_domain(
        [&](std::span<const Complex> w) {
            return complex_power(w, a) * std::conj(complex_power(w, b));
        },
        space.domain(), space.weight(), rule, 8);
    CHECK(std::abs(rep.value) < 1e-12);
}
