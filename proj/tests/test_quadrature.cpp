#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "algothermo/quadrature.hpp"

using algothermo::gauss_legendre;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 3, 5, 8, 16, 64}) {
        const auto rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(std::abs(sum - 1.0 / (k + 1)) <= 1e-13);
        }
    }
}

TEST_CASE("known nodes and mapped intervals") {
    const auto two = gauss_legendre(2, -1.0, 1.0);
    CHECK(std::abs(two.nodes[0] + 1.0 / std::sqrt(3.0)) <= 1e-15);
    CHECK(std::abs(two.weights[1] - 1.0) <= 1e-15);

    const auto rule = gauss_legendre(64, 0.0, 3.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::exp(-rule.nodes[i]);
    CHECK(std::abs(sum - (1.0 - std::exp(-3.0))) <= 1e-14);
    CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
}
