#include "algothermo/jarzynski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "algothermo/errors.hpp"

namespace algothermo {

std::vector<double> Protocol::uniform_schedule(int steps) {
    if (steps < 1) throw std::domain_error("schedule needs at least one step");
    std::vector<double> schedule(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) schedule[static_cast<std::size_t>(k)] = static_cast<double>(k) / steps;
    schedule.back() = 1.0;
    return schedule;
}

void Protocol::validate() const {
    if (schedule.size() < 2 || schedule.front() != 0.0 || schedule.back() != 1.0) {
        throw std::domain_error("lambda schedule must start at exactly 0 and end at exactly 1");
    }
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        if (!(schedule[k] > schedule[k - 1])) throw std::domain_error("lambda schedule must be strictly increasing");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("beta must be positive");
    if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw std::domain_error("coupling must be finite");
    if (sweeps < 0) throw std::domain_error("sweeps must be non-negative");
    if (trajectories < 2) throw std::domain_error("at least two trajectories are needed");
    if (excess < 0) throw std::domain_error("excess cutoff must be non-negative");
}

StateSpace StateSpace::build(const MachineModel& model, int x, int y, int excess) {
    const ObjectSet with_x = ObjectSet::single(x);
    if (!model.universe().contains(x) || !model.universe().contains(y)) {
        throw std::domain_error("objects outside universe");
    }
    StateSpace space;
    space.max_length_ = ground_length(model.table, with_x.with(y)) + excess;
    const int h = model.marker_length();
    if (space.max_length_ - h > model.table.max_core_length()) {
        throw BoundError("window of " + std::to_string(space.max_length_) + " bits exceeds the enumerated cores");
    }
    const auto cores = model.table.cores();
    for (std::size_t i = 0; i < cores.size(); ++i) {
        const CoreEntry& core = cores[i];
        if (!core.output.contains(x)) continue;
        for (int d = h; d + core.length <= space.max_length_; ++d) {
            space.states_.push_back({i, d, d + core.length, core.output.contains(y), model.automaton.wrapper_count(d)});
        }
    }
    if (space.states_.empty()) throw UnsatisfiableError("no admissible program in the window");
    return space;
}

std::uint64_t StateSpace::program_count() const noexcept {
    std::uint64_t total = 0;
    for (const AdmissibleState& s : states_) total += s.multiplicity;
    return total;
}

namespace {

Protocol validated(Protocol protocol) {
    protocol.validate();
    return protocol;
}

}  // namespace

JarzynskiSampler::JarzynskiSampler(const MachineModel& model, Protocol protocol)
    : protocol_(validated(std::move(protocol))),
      space_(StateSpace::build(model, protocol_.x, protocol_.y, protocol_.excess)) {
    const auto states = space_.states();
    const int shortest = std::min_element(states.begin(), states.end(), [](const auto& a, const auto& b) {
                             return a.length < b.length;
                         })->length;
    proposal_.reserve(states.size());
    proposal_cdf_.reserve(states.size());
    double running = 0.0;
    for (const AdmissibleState& s : states) {
        proposal_.push_back(static_cast<double>(s.multiplicity) * std::exp(-protocol_.beta * (s.length - shortest)));
        running += proposal_.back();
        proposal_cdf_.push_back(running);
    }
    for (double& p : proposal_) p /= running;
    for (double& c : proposal_cdf_) c /= running;
    proposal_cdf_.back() = 1.0;
}

double JarzynskiSampler::energy(std::size_t state, double lambda) const {
    const AdmissibleState& s = space_.states()[state];
    return s.length + (s.contains_y ? 0.0 : protocol_.coupling * lambda);
}

std::size_t JarzynskiSampler::draw_initial(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(proposal_cdf_.begin(), proposal_cdf_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - proposal_cdf_.begin(),
                                                             static_cast<std::ptrdiff_t>(proposal_cdf_.size()) - 1));
}

std::size_t JarzynskiSampler::equilibrium_step(std::size_t state, double lambda, Rng& rng) const {
    const std::size_t proposal = draw_initial(rng);
    const auto states = space_.states();
    // The proposal already carries a_d e^{-beta |p|}; only the coupling term
    // remains in the acceptance ratio.
    if (states[proposal].contains_y || !states[state].contains_y) return proposal;
    const double accept = std::exp(-protocol_.beta * protocol_.coupling * lambda);
    return rng.uniform() < accept ? proposal : state;
}

double JarzynskiSampler::run_trajectory(Rng& rng) const {
    const auto& schedule = protocol_.schedule;
    std::size_t state = draw_initial(rng);
    double work = 0.0;
    for (std::size_t k = 0; k + 1 < schedule.size(); ++k) {
        work += energy(state, schedule[k + 1]) - energy(state, schedule[k]);
        // Relaxing after the final switch cannot change the work.
        if (k + 2 == schedule.size()) break;
        for (int sweep = 0; sweep < protocol_.sweeps; ++sweep) state = equilibrium_step(state, schedule[k + 1], rng);
    }
    return work;
}

std::vector<double> JarzynskiSampler::stationary_distribution(double lambda) const {
    const auto states = space_.states();
    std::vector<double> pi;
    pi.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        pi.push_back(proposal_[i] * (states[i].contains_y ? 1.0 : std::exp(-protocol_.beta * protocol_.coupling * lambda)));
    }
    const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& p : pi) p /= total;
    return pi;
}

WorkEstimate summarize_works(std::vector<double> works, double beta, double delta_f_exact) {
    if (works.size() < 2) throw std::domain_error("at least two works are needed");
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    const auto n = static_cast<double>(works.size());
    const double w_min = *std::min_element(works.begin(), works.end());

    std::vector<double> boltzmann(works.size());
    double sum = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < works.size(); ++i) {
        boltzmann[i] = std::exp(-beta * (works[i] - w_min));
        sum += boltzmann[i];
        mean += works[i];
    }
    mean /= n;

    WorkEstimate out;
    out.trajectories = works.size();
    out.delta_f_estimate = w_min - std::log(sum / n) / beta;
    out.mean_work = mean;
    out.delta_f_exact = delta_f_exact;
    out.dissipation = mean - delta_f_exact;

    std::vector<double> leave_one_out(works.size());
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < works.size(); ++i) {
        const double rest = std::max(sum - boltzmann[i], std::numeric_limits<double>::min());
        leave_one_out[i] = w_min - std::log(rest / (n - 1.0)) / beta;
        loo_mean += leave_one_out[i];
    }
    loo_mean /= n;
    double jack = 0.0;
    double spread = 0.0;
    for (std::size_t i = 0; i < works.size(); ++i) {
        jack += (leave_one_out[i] - loo_mean) * (leave_one_out[i] - loo_mean);
        spread += (works[i] - mean) * (works[i] - mean);
    }
    out.standard_error = std::sqrt((n - 1.0) / n * jack);
    out.mean_work_error = std::sqrt(spread / (n - 1.0) / n);
    out.works = std::move(works);
    return out;
}

WorkEstimate estimate(const MachineModel& model, const Protocol& protocol, int threads) {
    const JarzynskiSampler sampler(model, protocol);
    const double exact = coupled_buckets(model, protocol.x, protocol.y, protocol.beta, protocol.excess)
                             .free_energy_difference(Coupling::finite(protocol.coupling));

    const auto count = static_cast<std::size_t>(protocol.trajectories);
    std::vector<double> works(count);
    auto run_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t t = begin; t < count; t += stride) {
            Rng rng(derive_seed(protocol.seed, t));
            works[t] = sampler.run_trajectory(rng);
        }
    };
    const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 64));
    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
    }
    return summarize_works(std::move(works), protocol.beta, exact);
}

}  // namespace algothermo
