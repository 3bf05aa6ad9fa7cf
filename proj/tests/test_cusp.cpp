#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "taut/cusp.hpp"

using namespace std::complex_literals;
using taut::GermSeries;
using taut::SequenceShape;

namespace {
constexpr double kPi = std::numbers::pi;

/// Exact polynomial composition h(k(z)), for the norm-multiplicativity
/// property; compositions of polynomial germs are again polynomial.
GermSeries compose(const GermSeries& h, const GermSeries& k) {
    const auto& ha = h.coefficients();
    const auto& ka = k.coefficients();
    std::vector<std::complex<double>> kpoly(ka.size() + 1, 0.0);
    for (std::size_t i = 0; i < ka.size(); ++i) kpoly[i + 1] = ka[i];
    std::vector<std::complex<double>> cur{1.0};
    std::vector<std::complex<double>> result{0.0};
    for (std::size_t p = 0; p < ha.size(); ++p) {
        // cur = kpoly^{p+1}
        std::vector<std::complex<double>> next(cur.size() + kpoly.size() - 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = 0; j < kpoly.size(); ++j) next[i + j] += cur[i] * kpoly[j];
        cur = next;
        if (result.size() < cur.size()) result.resize(cur.size(), 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) result[i] += ha[p] * cur[i];
    }
    // strip the zero constant term and trailing zeros
    std::vector<std::complex<double>> coeffs(result.begin() + 1, result.end());
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    return GermSeries(coeffs);
}
}  // namespace

TEST_CASE("horocycle_length") {
    CHECK(taut::horocycle_length(std::exp(-2.0 * kPi)) == Approx(1.0).epsilon(1e-13));
    CHECK(taut::horocycle_length(std::exp(-1.0)) == Approx(2.0 * kPi).epsilon(1e-13));
    CHECK(taut::horocycle_length(std::exp(-4.0 * kPi)) == Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(taut::horocycle_length(0.0), std::domain_error);
    CHECK_THROWS_AS(taut::horocycle_length(1.0), std::domain_error);
    CHECK_THROWS_AS(taut::horocycle_length(2.0), std::domain_error);
}

TEST_CASE("cusp_density") {
    CHECK(taut::cusp_density(std::exp(-1.0)) == Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(taut::cusp_density(std::exp(-2.0)) ==
          Approx(std::exp(2.0) / 2.0).epsilon(1e-13));
    // blow-up toward the unit circle
    double prev = 0.0;
    for (double r : {0.9, 0.99, 0.999, 0.9999}) {
        double d = taut::cusp_density(r);
        CHECK(d > prev);
        prev = d;
    }
    CHECK(prev > 1000.0);
    CHECK_THROWS_AS(taut::cusp_density(0.0), std::domain_error);
    CHECK_THROWS_AS(taut::cusp_density(1.0 + 0.0i), std::domain_error);
}

TEST_CASE("germ construction and norm") {
    CHECK_THROWS_AS(GermSeries({}), std::invalid_argument);
    CHECK_THROWS_AS(GermSeries({0.0 + 0.0i, 1.0 + 0.0i}), std::invalid_argument);
    CHECK(taut::germ_norm(GermSeries::linear(1.0)) == 1.0);
    CHECK(taut::germ_norm(GermSeries::linear(2.0)) == 2.0);  // h = z/r, r = 1/2
    GermSeries twisted({std::polar(1.0, 0.9), 0.0 + 0.0i, 5.0 + 0.0i});
    CHECK(taut::germ_norm(twisted) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm of a composition multiplies") {
    GermSeries h({2.0 + 1.0i, 0.5 + 0.0i});
    GermSeries k({0.0 + 3.0i, 0.25i, 1.0 + 0.0i});
    CHECK(taut::germ_norm(compose(h, k)) ==
          Approx(taut::germ_norm(h) * taut::germ_norm(k)).epsilon(1e-12));
    GermSeries id = GermSeries::linear(1.0);
    CHECK(taut::germ_norm(compose(h, id)) == Approx(taut::germ_norm(h)).epsilon(1e-12));
}

TEST_CASE("metric_ratio closed forms") {
    GermSeries id = GermSeries::linear(1.0);
    CHECK(taut::metric_ratio(id, 1e-4 + 0.0i) == Approx(1.0).epsilon(1e-14));
    CHECK(taut::metric_ratio(id, std::polar(1e-7, 2.0)) == Approx(1.0).epsilon(1e-14));

    // h = z/r: ratio = (log|z| / (log|z| - log r))^2 exactly
    for (double r : {2.0, 0.5, 5.0}) {
        GermSeries h = GermSeries::linear(1.0 / r);
        for (double az : {1e-3, 1e-5, 1e-8}) {
            double L = std::log(az);
            double expected = (L / (L - std::log(r))) * (L / (L - std::log(r)));
            CHECK(taut::metric_ratio(h, std::polar(az, 1.1)) ==
                  Approx(expected).epsilon(1e-12));
        }
    }

    // h = z + z^2 stays within 1e-3 of 1 at |z| = 1e-6
    GermSeries hp({1.0 + 0.0i, 1.0 + 0.0i});
    CHECK(taut::metric_ratio(hp, 1e-6 + 0.0i) == Approx(1.0).margin(1e-3));
}

TEST_CASE("metric_ratio domain guards") {
    GermSeries h({1.0 + 0.0i, 1.0 + 0.0i});
    CHECK_THROWS_AS(taut::metric_ratio(h, 0.0 + 0.0i), std::domain_error);
    CHECK_THROWS_AS(taut::metric_ratio(h, 1.5 + 0.0i), std::domain_error);
    // outside the truncation radius: trailing term above 1% of leading
    CHECK_THROWS_AS(taut::metric_ratio(h, 0.5 + 0.0i), std::domain_error);
    CHECK_NOTHROW(taut::metric_ratio(h, 0.009 + 0.0i));
    CHECK_THROWS_AS(taut::metric_ratio(h, 0.011 + 0.0i), std::domain_error);
    // |h(z)| >= 1
    CHECK_THROWS_AS(taut::metric_ratio(GermSeries::linear(3.0), 0.4 + 0.0i),
                    std::domain_error);

    // trailing zero coefficients do not widen the reliable radius
    GermSeries padded({1.0 + 0.0i, 1.0 + 0.0i, 0.0 + 0.0i, 0.0 + 0.0i});
    CHECK(padded.top_index() == 2);
    CHECK_THROWS_AS(taut::metric_ratio(padded, 0.011 + 0.0i), std::domain_error);
    // and every tail term is guarded, not just the last
    GermSeries spiky({1.0 + 0.0i, 5.0 + 0.0i, 1e-30 + 0.0i});
    CHECK_FALSE(taut::within_truncation_radius(spiky, 0.01 + 0.0i));
    CHECK(taut::within_truncation_radius(spiky, 1e-5 + 0.0i));
}

TEST_CASE("rotation invariance for radial germs") {
    GermSeries h = GermSeries::linear(2.0);
    double base = taut::metric_ratio(h, 1e-5 + 0.0i);
    for (double phase : {0.3, 1.2, 2.9}) {
        GermSeries rotated = GermSeries::linear(std::polar(2.0, phase));
        CHECK(taut::metric_ratio(rotated, std::polar(1e-5, phase + 0.5)) ==
              Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("ratio_expansion_residual") {
    GermSeries id = GermSeries::linear(1.0);
    CHECK(taut::ratio_expansion_residual(id, 1e-5 + 0.0i) == Approx(0.0).margin(1e-14));

    // closed form for h = z/r
    double r = 2.0;
    GermSeries h = GermSeries::linear(1.0 / r);
    for (double az : {1e-3, 1e-6}) {
        double L = std::log(az);
        double expected = (L / (L - std::log(r))) * (L / (L - std::log(r))) - 1.0 +
                          2.0 * std::log(1.0 / r) / L;
        CHECK(taut::ratio_expansion_residual(h, std::polar(az, 0.4)) ==
              Approx(expected).margin(1e-14));
    }
}

TEST_CASE("residual stays O(1/log^2) along shrinking radii") {
    struct Case {
        GermSeries h;
        double bound;  // 3c^2 + 2|c|^3 slack, c = log|a1|; see the 1/L tail
    };
    auto germ_bound = [](double a1) {
        double c = std::abs(std::log(a1));
        return 3 * c * c + 2 * c * c * c + 1.0;
    };
    std::vector<Case> cases{
        {GermSeries::linear(2.0), germ_bound(2.0)},
        {GermSeries::linear(0.5), germ_bound(0.5)},
        {GermSeries::linear(3.0), germ_bound(3.0)},
        {GermSeries({2.0 + 0.0i, 0.0 + 0.0i, 1.0 + 0.0i}), germ_bound(2.0)},
        {GermSeries({1.0 + 0.0i, 0.25 + 0.0i}), 1.0},
    };
    for (const auto& c : cases) {
        for (int k = 3; k <= 8; ++k) {
            double az = std::pow(10.0, -k);
            double L2 = std::log(az) * std::log(az);
            CHECK(std::abs(taut::ratio_expansion_residual(c.h, std::polar(az, 0.2))) * L2 <=
                  c.bound);
        }
    }
}

TEST_CASE("limit_norm_estimate reaches 2 log|h'(0)|") {
    auto seq = taut::radial_sequence(1e-3, 1e-8, 6);
    REQUIRE(seq.size() == 6);
    CHECK(std::abs(seq[1]) == Approx(1e-4).epsilon(1e-12));

    GermSeries id = GermSeries::linear(1.0);
    auto rep = taut::limit_norm_estimate(id, seq);
    CHECK(rep.target == 0.0);
    CHECK(rep.estimate == Approx(0.0).margin(1e-12));
    CHECK(rep.converged);

    // z/r with r = 1/2: limit 2 log 2
    auto rep2 = taut::limit_norm_estimate(GermSeries::linear(2.0), seq);
    CHECK(rep2.target == Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(rep2.estimate - rep2.target) < 1e-3);
    CHECK(rep2.converged);
    // the raw tail sample alone is not inside 1e-3: extrapolation earns it
    CHECK(std::abs(rep2.raw_final - rep2.target) > 1e-3);

    auto rep3 = taut::limit_norm_estimate(GermSeries::linear(0.5), seq);
    CHECK(std::abs(rep3.estimate - 2.0 * std::log(0.5)) < 1e-3);

    // perturbed germ: 3z + z^2 -> 2 log 3 within 1e-2
    GermSeries g3({3.0 + 0.0i, 1.0 + 0.0i});
    auto rep4 = taut::limit_norm_estimate(g3, seq, 1e-2);
    CHECK(std::abs(rep4.estimate - 2.0 * std::log(3.0)) < 1e-2);
    CHECK(rep4.converged);

    CHECK_THROWS_AS(taut::limit_norm_estimate(id, {}), std::invalid_argument);
    CHECK_THROWS_AS(
        taut::limit_norm_estimate(id, {1e-3 + 0.0i, 1e-2 + 0.0i}),  // not decreasing
        std::invalid_argument);
}

TEST_CASE("schwarz monotonicity shapes") {
    std::vector<double> grid;
    for (int k = 0; k < 10; ++k) grid.push_back(0.3 + 0.07 * k);

    // unimodular germ: isometry, ratio constant 1
    auto rep = taut::schwarz_monotonicity_check(GermSeries::linear(std::polar(1.0, 0.8)),
                                                grid, 64);
    CHECK(rep.max_shape == SequenceShape::constant_unity);
    CHECK(rep.min_shape == SequenceShape::constant_unity);

    // expanding germ z/r, r = 1/2: ratio > 1, max strictly increasing in l
    auto rep2 = taut::schwarz_monotonicity_check(GermSeries::linear(2.0), grid, 64);
    CHECK(rep2.max_shape == SequenceShape::strictly_increasing);

    // contracting germ: ratio < 1 with max below 1 decaying
    auto rep3 = taut::schwarz_monotonicity_check(GermSeries::linear(0.5), grid, 64);
    CHECK(rep3.max_shape == SequenceShape::strictly_decreasing);
    for (double m : rep3.max_ratio) CHECK(m < 1.0);

    // perturbed near-isometry: max rises, min falls, never mixed
    GermSeries hp({1.0 + 0.0i, 0.25 + 0.0i});
    auto rep4 = taut::schwarz_monotonicity_check(hp, grid, 128);
    CHECK(rep4.max_shape == SequenceShape::strictly_increasing);
    CHECK(rep4.min_shape == SequenceShape::strictly_decreasing);

    CHECK_THROWS_AS(taut::schwarz_monotonicity_check(hp, {0.5}, 64), std::invalid_argument);
    CHECK_THROWS_AS(taut::schwarz_monotonicity_check(hp, {0.5, 0.4}, 64),
                    std::invalid_argument);
}

TEST_CASE("sequence classification tolerances") {
    CHECK(taut::classify_sequence({1.0, 1.0 + 1e-12, 1.0 - 1e-12}, 1e-9) ==
          SequenceShape::constant_unity);
    CHECK(taut::classify_sequence({1.0, 1.1, 1.2}, 1e-9) ==
          SequenceShape::strictly_increasing);
    CHECK(taut::classify_sequence({1.2, 1.1, 0.9}, 1e-9) ==
          SequenceShape::strictly_decreasing);
    CHECK(taut::classify_sequence({1.0, 1.4, 1.2}, 1e-9) == SequenceShape::mixed);
}
