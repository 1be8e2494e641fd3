#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "algothermo/random.hpp"
#include "algothermo/wrapper_automaton.hpp"
#include "oracle.hpp"

using namespace algothermo;

namespace {

Marker marker(const char* text) { return Marker(BitString::from_string(text)); }

// Largest real root of z^3 - 2 z^2 + 1 by bisection on [1.5, 2].
double cubic_root() {
    double lo = 1.5;
    double hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * mid * mid - 2 * mid * mid + 1 > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("automaton for 011") {
    const WrapperAutomaton a(marker("011"));
    REQUIRE(a.state_count() == 3);
    CHECK(a.next(0, 0) == 1);
    CHECK(a.next(0, 1) == 0);
    CHECK(a.next(1, 0) == 1);
    CHECK(a.next(1, 1) == 2);
    CHECK(a.next(2, 0) == 1);
    CHECK(a.next(2, 1) == WrapperAutomaton::kDead);
    for (const auto& row : a.transfer_matrix()) {
        int sum = 0;
        for (int v : row) {
            CHECK(v >= 0);
            CHECK(v <= 2);
            sum += v;
        }
        CHECK(sum <= 2);
    }
}

TEST_CASE("count_avoiding examples") {
    const WrapperAutomaton a(marker("011"));
    CHECK(a.count_avoiding(0) == 1);
    CHECK(a.count_avoiding(3) == 7);
    CHECK(a.count_avoiding(4) == 12);
    const WrapperAutomaton zero(marker("0"));
    CHECK(zero.state_count() == 1);
    for (int n = 0; n < 20; ++n) CHECK(zero.count_avoiding(n) == 1);
}

TEST_CASE("count_avoiding equals brute force for every admissible marker up to 4 bits") {
    int markers = 0;
    for (int h = 1; h <= 4; ++h) {
        for (std::uint64_t w = 0; w < (1U << h); ++w) {
            const std::string m = oracle::bits_of(w, h);
            if (!oracle::trivially_autocorrelated(m)) continue;
            ++markers;
            const WrapperAutomaton a(Marker(BitString::from_string(m)));
            for (int n = 0; n <= 14; ++n) CHECK(a.count_avoiding(n) == oracle::avoiding(m, n));
        }
    }
    CHECK(markers == 14);
}

TEST_CASE("wrapper counts") {
    const WrapperAutomaton a(marker("011"));
    CHECK(a.wrapper_count(0) == 0);
    CHECK(a.wrapper_count(2) == 0);
    CHECK(a.wrapper_count(3) == 1);
    CHECK(a.wrapper_count(4) == 2);
    CHECK(a.wrapper_count(5) == 4);
    CHECK(a.wrapper_count(6) == 7);
    CHECK(a.wrapper_count(7) == 12);
    const WrapperAutomaton zero(marker("0"));
    for (int d = 1; d < 30; ++d) CHECK(zero.wrapper_count(d) == 1);

    // brute force: strings of length d whose first marker occurrence ends at d
    for (int d = 0; d <= 12; ++d) {
        std::uint64_t brute = 0;
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << d); ++w) {
            const std::string s = oracle::bits_of(w, d);
            const auto at = s.find("011");
            if (at != std::string::npos && at + 3 == s.size()) ++brute;
        }
        CHECK(a.wrapper_count(d) == brute);
    }
    CHECK_THROWS_AS(a.count_avoiding(200), std::overflow_error);
}

TEST_CASE("growth rate") {
    const GrowthRate g = growth_rate(WrapperAutomaton(marker("011")));
    CHECK(g.converged);
    CHECK_FALSE(g.finite_family);
    CHECK(std::abs(g.mu - std::numbers::phi) <= 1e-9);
    CHECK(std::abs(g.mu - cubic_root()) <= 1e-9);
    CHECK(std::abs(g.alpha - 0.6942) < 1e-4);

    const GrowthRate one = growth_rate(WrapperAutomaton(marker("0")));
    CHECK(std::abs(one.mu - 1.0) <= 1e-9);
    CHECK(std::abs(one.alpha) <= 1e-9);

    const WrapperAutomaton a4(marker("0001"));
    const GrowthRate g4 = growth_rate(a4);
    const double ratio = static_cast<double>(a4.wrapper_count(31)) / static_cast<double>(a4.wrapper_count(30));
    CHECK(std::abs(g4.mu - ratio) <= 1e-4);
    CHECK(g4.mu > 1.0);
    CHECK(g4.mu < 2.0);

    const WrapperAutomaton a3(marker("011"));
    const double r3 = static_cast<double>(a3.wrapper_count(31)) / static_cast<double>(a3.wrapper_count(30));
    CHECK(std::abs(g.mu - r3) <= 1e-4);
}

TEST_CASE("effective degeneracy") {
    const double alpha = std::log2(std::numbers::phi);
    DegeneracySpectrum flat{3, {1, 0, 0, 0}};
    CHECK(effective_degeneracy(flat, alpha, 3) == 1.0);

    const DegeneracySpectrum s{3, {1, 0, 1, 0, 5}};
    const double expected = 1.0 + std::pow(2.0, -2 * alpha) + 5.0 * std::pow(2.0, -4 * alpha);
    CHECK(std::abs(effective_degeneracy(s, alpha, 4) - expected) <= 1e-14);
    CHECK(effective_degeneracy(s, alpha, 0) == 1.0);

    double previous = 0.0;
    for (int lambda = 0; lambda <= 4; ++lambda) {
        const double value = effective_degeneracy(s, alpha, lambda);
        CHECK(value >= previous);
        previous = value;
    }
    CHECK_THROWS_AS(effective_degeneracy(s, alpha, 5), std::domain_error);
    CHECK_THROWS_AS(effective_degeneracy(s, 1.0, 2), std::domain_error);
    CHECK_THROWS_AS(effective_degeneracy(s, -0.1, 2), std::domain_error);
    CHECK(effective_degeneracy_unstable(s, 0.0, 4));
    CHECK_FALSE(effective_degeneracy_unstable(s, alpha, 4));
    CHECK_FALSE(effective_degeneracy_unstable(flat, 0.0, 3));
}

TEST_CASE("sample_wrapper") {
    const WrapperAutomaton a(marker("011"));
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(a.sample_wrapper(3, seed).str() == "011");
    CHECK_THROWS_AS(a.sample_wrapper(2, 1), std::domain_error);
    CHECK(a.sample_wrapper(9, 5) == a.sample_wrapper(9, 5));

    for (int d = 4; d <= 8; ++d) {
        std::map<std::string, int> counts;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i) {
            const BitString w = a.sample_wrapper(d, derive_seed(99, static_cast<std::uint64_t>(i)));
            REQUIRE(static_cast<int>(w.size()) == d);
            REQUIRE(w.find(BitString::from_string("011")) + 3 == w.size());
            ++counts[w.str()];
        }
        const auto cells = static_cast<double>(a.wrapper_count(d));
        CHECK(counts.size() == a.wrapper_count(d));
        const double expected = draws / cells;
        double chi2 = 0.0;
        for (const auto& [w, k] : counts) chi2 += (k - expected) * (k - expected) / expected;
        if (cells > 1) {
            const boost::math::chi_squared dist(cells - 1);
            CHECK(chi2 <= boost::math::quantile(dist, 0.99));
        }
    }
}
