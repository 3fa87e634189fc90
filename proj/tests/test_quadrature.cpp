#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "radop/quadrature.hpp"

using namespace radop;
using Complex = std::complex<double>;

TEST_CASE("gauss rule exactness degree") {
    // 2 nodes integrate cubics exactly
    const std::vector<std::pair<double, double>> unit{{0.0, 1.0}};
    const QuadratureRule r2 = gauss_rule(unit, 2);
    double acc = 0.0;
    for (std::size_t i = 0; i < r2.size(); ++i)
        acc += r2.weights[i] * std::pow(r2.nodes[i], 3);
    CHECK(acc == doctest::Approx(0.25).epsilon(1e-14));

    const QuadratureRule r16 = gauss_rule(unit, 16);
    double m7 = 0.0;
    for (std::size_t i = 0; i < r16.size(); ++i)
        m7 += r16.weights[i] * std::pow(r16.nodes[i], 7);
    CHECK(m7 == doctest::Approx(oracle::unit_power_moment(7)).epsilon(1e-15));

    const std::vector<std::pair<double, double>> square{{0.0, 1.0}, {0.0, 1.0}};
    CHECK(gauss_rule(square, 4).size() == 16);
}

TEST_CASE("integrate_shadow on the disk shadow") {
    const DomainSpec disk = make_disk();
    const QuadratureRule rule = shadow_rule(disk, 24);
    const auto one = integrate_shadow([](std::span<const double>) { return 1.0; }, disk, rule);
    CHECK(std::abs(one.value.real() - 1.0) < 1e-12);
    const auto lin = integrate_shadow([](std::span<const double> r) { return r[0]; }, disk, rule);
    CHECK(std::abs(lin.value.real() - 0.5) < 1e-12);
    const auto m3 =
        integrate_shadow([](std::span<const double> r) { return std::pow(r[0], 7.0); }, disk, rule);
    CHECK(std::abs(m3.value.real() - oracle::unit_power_moment(7)) < 1e-12);
    CHECK(one.evaluations > 0);
}

TEST_CASE("shadow rules cover ball and simplex geometry") {
    const DomainSpec ball = make_ball(2);
    const auto quarter =
        integrate_shadow([](std::span<const double>) { return 1.0; }, ball, shadow_rule(ball, 32));
    CHECK(std::abs(quarter.value.real() - M_PI / 4.0) < 1e-12);

    const DomainSpec hartogs = make_hartogs_triangle();
    const auto half = integrate_shadow([](std::span<const double>) { return 1.0; }, hartogs,
                                       shadow_rule(hartogs, 16));
    CHECK(std::abs(half.value.real() - 0.5) < 1e-13);
    // every node obeys the ordering constraint
    const QuadratureRule rule = shadow_rule(hartogs, 8);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto r = rule.node(i);
        CHECK(r[0] <= r[1]);
        CHECK(r[1] < 1.0);
    }
}

TEST_CASE("integrate_domain: area, orthogonality, Hartogs moment") {
    const WeightSpec one = WeightSpec::constant(1.0);
    const DomainSpec disk = make_disk();
    const QuadratureRule rule = shadow_rule(disk, 32);
    const auto area =
        integrate_domain([](std::span<const Complex>) { return Complex{1.0, 0.0}; }, disk, one,
                         rule, 8);
    CHECK(std::abs(area.value - Complex{M_PI, 0.0}) < 1e-10);

    // phase orthogonality: w^2 conj(w)^3 integrates to zero
    const auto orth = integrate_domain(
        [](std::span<const Complex> w) { return w[0] * w[0] * std::conj(w[0] * w[0] * w[0]); },
        disk, one, rule, 8);
    CHECK(std::abs(orth.value) < 1e-12);

    const DomainSpec hartogs = make_hartogs_triangle();
    const auto moment = integrate_domain(
        [](std::span<const Complex> w) { return Complex{std::norm(w[0]), 0.0}; }, hartogs, one,
        shadow_rule(hartogs, 16), 4);
    CHECK(std::abs(moment.value.real() - M_PI * M_PI / 6.0) < 1e-10);
}

TEST_CASE("polar-reduction consistency for a monomial") {
    const DomainSpec ball = make_ball(2);
    const WeightSpec one = WeightSpec::constant(1.0);
    const int a1 = 2, a2 = 1;
    const auto via_domain = integrate_domain(
        [&](std::span<const Complex> w) {
            return Complex{std::pow(std::abs(w[0]), 2 * a1) * std::pow(std::abs(w[1]), 2 * a2),
                           0.0};
        },
        ball, one, shadow_rule(ball, 32), 4);
    const auto via_shadow = integrate_shadow(
        [&](std::span<const double> r) {
            return std::pow(r[0], 2 * a1) * std::pow(r[1], 2 * a2) * r[0] * r[1];
        },
        ball, shadow_rule(ball, 32));
    const double scaled = 4.0 * M_PI * M_PI * via_shadow.value.real();
    CHECK(std::abs(via_domain.value.real() - scaled) <
          1e-10 * std::max(1.0, std::abs(scaled)));
}

TEST_CASE("weighted rule removes the radial-power endpoint singularity") {
    const DomainSpec disk = make_disk();
    const WeightSpec w = WeightSpec::radial_power({-0.5});
    const QuadratureRule rule = weighted_shadow_rule(disk, w, 32);
    // 2 pi int_0^1 r^{2m+1} (1-r^2)^{-1/2} dr = pi B(m+1, 1/2)
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        acc += rule.weights[i] * std::pow(rule.nodes[i], 3);
    const double expect = 0.5 * std::exp(std::lgamma(2.0) + std::lgamma(0.5) - std::lgamma(2.5));
    CHECK(acc == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("geometric panels resolve the log singularity") {
    const QuadratureRule rule = geometric_panel_rule(0.0, 1.0, 30, 12);
    for (int a = 1; a <= 8; ++a) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], a) * std::log(1.0 / rule.nodes[i]);
        CHECK(std::abs(acc - oracle::log_moment(a)) < 1e-12);
    }
}

TEST_CASE("NonFinite surfaces bad integrands") {
    const DomainSpec disk = make_disk();
    const QuadratureRule rule = shadow_rule(disk, 8);
    CHECK_THROWS_AS(
        integrate_shadow([](std::span<const double> r) { return 1.0 / (r[0] - r[0]); }, disk, rule),
        NonFinite);
}

TEST_CASE("monte carlo rule: volume and convergence under doubling") {
    const DomainSpec ball = make_ball(2);
    // sign test over 30 seeds: doubling samples should usually reduce error
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto run = [&](std::size_t count) {
            const QuadratureRule rule = monte_carlo_shadow_rule(ball, count, seed);
            const auto rep = integrate_shadow(
                [](std::span<const double> r) { return r[0] * r[0] + r[1]; }, ball, rule);
            const double exact = oracle::simpson(
                [](double x) {
                    const double h = std::sqrt(1.0 - x * x);
                    return x * x * h + h * h / 2.0;
                },
                0.0, 1.0, 2000);
            return std::abs(rep.value.real() - exact);
        };
        if (run(8000) <= run(1000)) ++improved;
    }
    // binomial(30, 1/2): >= 20 successes rejects "no improvement" at 95%
    CHECK(improved >= 20);

    const QuadratureRule rule = monte_carlo_shadow_rule(ball, 20000, 1);
    double vol = 0.0;
    for (double w : rule.weights) vol += w;
    CHECK(vol == doctest::Approx(M_PI / 4.0).epsilon(0.05));
}

TEST_CASE("adaptive rule integrates a custom shadow and respects its budget") {
    const DomainSpec custom{
        "half-square", 2,
        ShadowRegion::custom(
            2, [](std::span<const double> r) { return r[0] + r[1] < 1.0; }, {{0.0, 1.0}, {0.0, 1.0}})};
    const auto rep = integrate_shadow([](std::span<const double>) { return 1.0; }, custom,
                                      adaptive_rule(custom), {1e-4, 2'000'000});
    CHECK(std::abs(rep.value.real() - 0.5) < 1e-3);
    CHECK_THROWS_AS(integrate_shadow([](std::span<const double> r) { return r[0]; }, custom,
                                     adaptive_rule(custom), {1e-12, 2'000}),
                    BudgetExhausted);
}
