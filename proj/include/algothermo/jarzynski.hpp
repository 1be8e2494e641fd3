#pragma once

// Non-equilibrium estimate of the coupled free-energy difference
// F(1) - F(0) from work along a lambda schedule.
//
// Programs are collapsed to (core, wrapper length d) states weighted by the
// wrapper count a_d: the energy depends on |p| and the y-flag of the core
// only, so the wrapper bits marginalize out exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "algothermo/ensemble.hpp"
#include "algothermo/random.hpp"

namespace algothermo {

struct Protocol {
    int x = 0;
    int y = 1;
    double beta = 1.0;
    double coupling = 20.0;  // J, finite
    int excess = 4;
    std::vector<double> schedule = uniform_schedule(64);
    int sweeps = 200;  // Metropolis updates after each switch
    int trajectories = 1000;
    std::uint64_t seed = 1;

    // 0, 1/steps, ..., 1.
    static std::vector<double> uniform_schedule(int steps);

    // Throws std::domain_error unless the schedule runs strictly upward from
    // exactly 0 to exactly 1, beta > 0, J >= 0 finite, sweeps >= 0 and
    // trajectories >= 2.
    void validate() const;
};

struct AdmissibleState {
    std::size_t core = 0;  // index into ProgramTable::cores()
    int wrapper_length = 0;
    int length = 0;        // wrapper_length + core length
    bool contains_y = false;
    std::uint64_t multiplicity = 0;  // a_d
};

// Every (core, d) with core output containing x, d >= h and
// d + |core| <= ground({x,y}) + excess.
class StateSpace {
public:
    // Throws UnsatisfiableError if no state is admissible, BoundError if the
    // window exceeds the enumeration.
    static StateSpace build(const MachineModel& model, int x, int y, int excess);

    std::span<const AdmissibleState> states() const noexcept { return states_; }
    int max_length() const noexcept { return max_length_; }

    // Sum of multiplicities: the number of admissible programs.
    std::uint64_t program_count() const noexcept;

private:
    std::vector<AdmissibleState> states_;
    int max_length_ = 0;
};

class JarzynskiSampler {
public:
    // Throws as Protocol::validate and StateSpace::build.
    JarzynskiSampler(const MachineModel& model, Protocol protocol);

    const StateSpace& space() const noexcept { return space_; }
    const Protocol& protocol() const noexcept { return protocol_; }

    // E_lambda = |p| + J lambda (1 - s_y).
    double energy(std::size_t state, double lambda) const;

    // Exact draw from the lambda = 0 ensemble, which is also the proposal.
    std::size_t draw_initial(Rng& rng) const;

    // One independence-sampler Metropolis update targeting lambda.
    std::size_t equilibrium_step(std::size_t state, double lambda, Rng& rng) const;

    // Accumulated work of one switching trajectory.
    double run_trajectory(Rng& rng) const;

    // Exact pi(state | lambda).
    std::vector<double> stationary_distribution(double lambda) const;

private:
    Protocol protocol_;
    StateSpace space_;
    std::vector<double> proposal_;  // normalized a_d e^{-beta |p|}
    std::vector<double> proposal_cdf_;
};

struct WorkEstimate {
    double delta_f_estimate = 0.0;  // -ln<e^{-beta W}> / beta
    double standard_error = 0.0;    // jackknife error of delta_f_estimate
    double mean_work = 0.0;
    double mean_work_error = 0.0;   // standard error of the mean work
    double delta_f_exact = 0.0;
    double dissipation = 0.0;       // mean_work - delta_f_exact
    std::size_t trajectories = 0;
    std::vector<double> works;      // in trajectory order
};

// Statistics of a set of works. Throws std::domain_error for fewer than two.
WorkEstimate summarize_works(std::vector<double> works, double beta, double delta_f_exact);

// Runs the protocol's trajectories (seeded per trajectory, so the result does
// not depend on `threads`).
WorkEstimate estimate(const MachineModel& model, const Protocol& protocol, int threads = 1);

}  // namespace algothermo
