#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "algothermo/errors.hpp"
#include "algothermo/jarzynski.hpp"
#include "oracle.hpp"

using namespace algothermo;

namespace {

const MachineModel& model() {
    static const MachineModel m = MachineModel::build(Universe(4), Marker(BitString::from_string("011")), 19);
    return m;
}

Protocol protocol(int steps, double coupling, int trajectories = 1000) {
    Protocol p;
    p.x = 0;
    p.y = 1;
    p.beta = 1.0;
    p.coupling = coupling;
    p.excess = 4;
    p.schedule = Protocol::uniform_schedule(steps);
    p.sweeps = 200;
    p.trajectories = trajectories;
    p.seed = 17;
    return p;
}

}  // namespace

TEST_CASE("protocol validation") {
    Protocol p = protocol(4, 5.0);
    CHECK_NOTHROW(p.validate());
    CHECK(p.schedule == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    p.schedule = {0.0, 0.6, 0.5, 1.0};
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p.schedule = {0.1, 1.0};
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = protocol(4, 5.0, 1);
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = protocol(4, 5.0);
    p.beta = 0.0;
    CHECK_THROWS_AS(JarzynskiSampler(model(), p), std::domain_error);
    CHECK_THROWS_AS(Protocol::uniform_schedule(0), std::domain_error);
}

TEST_CASE("state space counts the admissible programs") {
    const oracle::Census census = oracle::Census::build(4, "011", 14);
    const StateSpace space = StateSpace::build(model(), 0, 1, 4);
    CHECK(space.max_length() == 14);
    std::uint64_t expected = 0;
    for (int len = 1; len <= 14; ++len) expected += census.count(0b01, len);
    CHECK(space.program_count() == expected);
    for (const AdmissibleState& s : space.states()) {
        CHECK(s.wrapper_length >= 3);
        CHECK(s.length <= 14);
        CHECK(model().table.cores()[s.core].output.contains(0));
        CHECK(s.contains_y == model().table.cores()[s.core].output.contains(1));
    }
    CHECK_THROWS_AS(StateSpace::build(model(), 0, 1, 13), BoundError);
}

TEST_CASE("stationary distribution matches the coupled buckets") {
    const JarzynskiSampler sampler(model(), protocol(4, 5.0));
    const CoupledBuckets b = coupled_buckets(model(), 0, 1, 1.0, 4);
    for (double lambda : {0.0, 0.5, 1.0}) {
        const auto pi = sampler.stationary_distribution(lambda);
        CHECK(std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0) <= 1e-12);
        double with_y = 0.0;
        for (std::size_t i = 0; i < pi.size(); ++i) with_y += sampler.space().states()[i].contains_y ? pi[i] : 0.0;
        const double expected = std::exp(b.log_with_y - b.log_partition(lambda, Coupling::finite(5.0)));
        CHECK(std::abs(with_y - expected) <= 1e-12);
    }
}

TEST_CASE("acceptance is certain without coupling") {
    const JarzynskiSampler at_zero(model(), protocol(4, 5.0));
    const JarzynskiSampler free(model(), protocol(4, 0.0));
    std::size_t state = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng a(seed);
        Rng b(seed);
        const std::size_t proposal = at_zero.draw_initial(b);
        CHECK(at_zero.equilibrium_step(state, 0.0, a) == proposal);
        Rng c(seed);
        CHECK(free.equilibrium_step(state, 0.7, c) == proposal);
        state = proposal;
    }
}

TEST_CASE("detailed balance: long-run frequencies match the exact distribution") {
    const JarzynskiSampler sampler(model(), protocol(4, 5.0));
    const double lambda = 0.5;
    const auto pi = sampler.stationary_distribution(lambda);
    std::vector<double> counts(pi.size(), 0.0);
    Rng rng(2024);
    std::size_t state = sampler.draw_initial(rng);
    const int sweeps = 100000;
    // y-states reject most proposals at this lambda (runs of ~9 sweeps), so
    // the chain is thinned well past its correlation time
    const int thin = 50;
    for (int t = 1; t <= sweeps; ++t) {
        state = sampler.equilibrium_step(state, lambda, rng);
        if (t % thin == 0) counts[state] += 1.0;
    }
    const double samples = sweeps / thin;

    // merge states (in order) until each bin expects at least 5 samples
    std::vector<std::pair<double, double>> cells;
    double observed = 0.0;
    double expected = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        observed += counts[i];
        expected += pi[i] * samples;
        if (expected >= 5.0) {
            cells.emplace_back(observed, expected);
            observed = expected = 0.0;
        }
    }
    cells.back().first += observed;
    cells.back().second += expected;
    double chi2 = 0.0;
    for (const auto& [o, e] : cells) chi2 += (o - e) * (o - e) / e;
    const int bins = static_cast<int>(cells.size());
    REQUIRE(bins >= 10);
    const boost::math::chi_squared dist(bins - 1);
    CHECK(chi2 <= boost::math::quantile(dist, 0.99));
}

TEST_CASE("instantaneous switch reproduces free-energy perturbation") {
    const JarzynskiSampler sampler(model(), protocol(1, 5.0));
    const auto pi0 = sampler.stationary_distribution(0.0);
    double exact_mean = 0.0;
    for (std::size_t i = 0; i < pi0.size(); ++i) {
        exact_mean += pi0[i] * std::exp(-(sampler.energy(i, 1.0) - sampler.energy(i, 0.0)));
    }
    const CoupledBuckets b = coupled_buckets(model(), 0, 1, 1.0, 4);
    CHECK(std::abs(std::log(exact_mean) - (b.log_partition(1.0, Coupling::finite(5.0)) -
                                           b.log_partition(0.0, Coupling::finite(5.0)))) <= 1e-12);

    const WorkEstimate e = estimate(model(), protocol(1, 5.0, 20000));
    double mean = 0.0;
    double square = 0.0;
    for (double w : e.works) {
        const double v = std::exp(-w);
        mean += v;
        square += v * v;
    }
    mean /= 20000.0;
    const double se = std::sqrt((square / 20000.0 - mean * mean) / 19999.0);
    CHECK(std::abs(mean - exact_mean) <= 4.0 * se);
}

TEST_CASE("degenerate ensembles give zero work") {
    Protocol p = protocol(8, 5.0, 50);
    p.x = 2;
    p.y = 2;
    const WorkEstimate all_y = estimate(model(), p);
    for (double w : all_y.works) CHECK(w == 0.0);
    CHECK(all_y.delta_f_exact == 0.0);

    p.excess = 0;
    const JarzynskiSampler single(model(), p);
    CHECK(single.space().states().size() == 1);
    const WorkEstimate e = estimate(model(), p);
    CHECK(e.delta_f_estimate == e.delta_f_exact);
    CHECK(e.standard_error == 0.0);
    CHECK(e.mean_work_error == 0.0);
}

TEST_CASE("slow and fast protocols") {
    const WorkEstimate slow = estimate(model(), protocol(64, 20.0));
    CHECK(std::abs(slow.delta_f_estimate - slow.delta_f_exact) <= 3.0 * slow.standard_error);
    CHECK(slow.dissipation >= -3.0 * slow.mean_work_error);
    CHECK(slow.trajectories == 1000);

    const WorkEstimate fast = estimate(model(), protocol(2, 20.0));
    CHECK(std::abs(fast.delta_f_estimate - fast.delta_f_exact) <= 3.0 * fast.standard_error);
    CHECK(fast.dissipation > 3.0 * std::max(fast.standard_error, fast.mean_work_error));
    CHECK(fast.dissipation > slow.dissipation);
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
    const Protocol p = protocol(16, 10.0, 200);
    const WorkEstimate a = estimate(model(), p, 1);
    const WorkEstimate b = estimate(model(), p, 1);
    const WorkEstimate c = estimate(model(), p, 3);
    CHECK(a.works == b.works);
    CHECK(a.works == c.works);
    CHECK(a.delta_f_estimate == c.delta_f_estimate);
    CHECK(a.standard_error == c.standard_error);
}

TEST_CASE("summary statistics") {
    const WorkEstimate e = summarize_works({1.0, 1.0, 1.0}, 2.0, 1.0);
    CHECK(e.delta_f_estimate == 1.0);
    CHECK(e.standard_error == 0.0);
    CHECK(e.dissipation == 0.0);

    const WorkEstimate f = summarize_works({0.0, 2.0}, 1.0, 0.0);
    CHECK(std::abs(f.delta_f_estimate + std::log((1.0 + std::exp(-2.0)) / 2.0)) <= 1e-15);
    CHECK(f.mean_work == 1.0);
    CHECK(std::abs(f.mean_work_error - 1.0) <= 1e-15);
    CHECK(std::abs(f.standard_error - 2.0 / 2.0 * 1.0) <= 1e-12);
    CHECK_THROWS_AS(summarize_works({1.0}, 1.0, 0.0), std::domain_error);
}
