#include "algothermo/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "algothermo/errors.hpp"

namespace algothermo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// ln sum_l counts[l] e^{-beta l}
double log_boltzmann_sum(const std::vector<std::uint64_t>& counts, double beta) {
    double hi = kNegInf;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        if (counts[l] != 0) hi = std::max(hi, std::log(static_cast<double>(counts[l])) - beta * static_cast<double>(l));
    }
    if (hi == kNegInf) return kNegInf;
    double sum = 0.0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        if (counts[l] != 0) sum += std::exp(std::log(static_cast<double>(counts[l])) - beta * static_cast<double>(l) - hi);
    }
    return hi + std::log(sum);
}

void require_object(const Universe& universe, int id) {
    if (!universe.contains(id)) {
        throw std::domain_error("object id " + std::to_string(id) + " outside universe of size " +
                                std::to_string(universe.size()));
    }
}

void require_beta(double beta, bool allow_zero) {
    if (!(beta > 0.0 || (allow_zero && beta == 0.0)) || !std::isfinite(beta)) {
        throw std::domain_error("inverse temperature must be " + std::string(allow_zero ? "non-negative" : "positive") +
                                ", got " + std::to_string(beta));
    }
}

}  // namespace

MachineModel MachineModel::build(Universe universe, Marker marker, int max_core_length) {
    WrapperAutomaton automaton(marker);
    GrowthRate growth = growth_rate(automaton);
    return {ProgramTable::enumerate(std::move(universe), std::move(marker), max_core_length), std::move(automaton),
            growth};
}

std::vector<std::uint64_t> program_counts(const MachineModel& model, ObjectSet target, int max_length) {
    const int h = model.marker_length();
    if (max_length - h > model.table.max_core_length()) {
        throw BoundError("programs up to " + std::to_string(max_length) + " bits need cores up to " +
                         std::to_string(max_length - h) + " bits; enumeration stops at " +
                         std::to_string(model.table.max_core_length()));
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(max_length, -1) + 1), 0);
    if (max_length < h) return counts;

    const auto cores = model.table.covering_counts(target);
    std::vector<std::uint64_t> wrappers(static_cast<std::size_t>(max_length) + 1);
    for (int d = 0; d <= max_length; ++d) wrappers[static_cast<std::size_t>(d)] = model.automaton.wrapper_count(d);

    for (int length = h; length <= max_length; ++length) {
        std::uint64_t total = 0;
        for (int core = 1; core <= length - h; ++core) {
            total += cores[static_cast<std::size_t>(core)] * wrappers[static_cast<std::size_t>(length - core)];
        }
        counts[static_cast<std::size_t>(length)] = total;
    }
    return counts;
}

double CutoffPartition::value() const { return std::exp(log_value); }

CutoffPartition partition_within(const MachineModel& model, ObjectSet target, double beta, int max_length) {
    require_beta(beta, true);
    const int ground = ground_length(model.table, target);
    CutoffPartition z;
    z.beta = beta;
    z.constraint = target;
    z.ground_length = ground;
    z.max_length = max_length;
    z.excess = max_length - ground;
    z.log_value = log_boltzmann_sum(program_counts(model, target, max_length), beta);
    return z;
}

CutoffPartition partition_function(const MachineModel& model, ObjectSet target, double beta, int excess) {
    if (excess < 0) throw std::domain_error("excess cutoff must be non-negative");
    return partition_within(model, target, beta, ground_length(model.table, target) + excess);
}

double free_energy(const CutoffPartition& z, double beta) {
    require_beta(beta, false);
    return -z.log_value / beta;
}

Coupling Coupling::finite(double strength) {
    if (!(strength >= 0.0) || !std::isfinite(strength)) {
        throw std::domain_error("coupling strength must be finite and non-negative");
    }
    return {strength, false};
}

Coupling Coupling::hard() { return {std::numeric_limits<double>::infinity(), true}; }

double CoupledBuckets::log_partition(double lambda, Coupling coupling) const {
    if (coupling.is_hard()) return lambda > 0.0 ? log_with_y : log_add(log_with_y, log_without_y);
    if (log_without_y == kNegInf) return log_with_y;
    return log_add(log_with_y, log_without_y - beta * coupling.strength() * lambda);
}

double CoupledBuckets::force(double lambda, Coupling coupling) const {
    if (coupling.is_hard()) throw std::domain_error("generalized force is undefined for a hard constraint");
    if (log_without_y == kNegInf) return 0.0;
    const double log_z = log_partition(lambda, coupling);
    return coupling.strength() * std::exp(log_without_y - beta * coupling.strength() * lambda - log_z);
}

double CoupledBuckets::free_energy_difference(Coupling coupling) const {
    require_beta(beta, false);
    return -(log_partition(1.0, coupling) - log_partition(0.0, coupling)) / beta;
}

double CoupledBuckets::hard_constraint_gap(double coupling) const {
    require_beta(beta, false);
    const Coupling soft = Coupling::finite(coupling);
    if (log_without_y == kNegInf) return 0.0;
    return std::log1p(std::exp(log_without_y - beta * soft.strength() - log_with_y)) / beta;
}

CoupledBuckets coupled_buckets(const MachineModel& model, int x, int y, double beta, int excess) {
    require_object(model.universe(), x);
    require_object(model.universe(), y);
    require_beta(beta, true);
    if (excess < 0) throw std::domain_error("excess cutoff must be non-negative");
    const ObjectSet with_x = ObjectSet::single(x);
    const ObjectSet with_xy = with_x.with(y);
    const int max_length = ground_length(model.table, with_xy) + excess;

    const auto all = program_counts(model, with_x, max_length);
    const auto both = program_counts(model, with_xy, max_length);
    std::vector<std::uint64_t> only_x(all.size());
    for (std::size_t l = 0; l < all.size(); ++l) only_x[l] = all[l] - both[l];

    return {x, y, beta, excess, max_length, log_boltzmann_sum(both, beta), log_boltzmann_sum(only_x, beta)};
}

CutoffPartition coupled_partition(const MachineModel& model, int x, int y, const EnsembleParams& params) {
    if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) throw std::domain_error("lambda must lie in [0, 1]");
    const CoupledBuckets buckets = coupled_buckets(model, x, y, params.beta, params.excess);
    CutoffPartition z;
    z.beta = params.beta;
    z.constraint = ObjectSet::single(x);
    z.ground_length = ground_length(model.table, z.constraint);
    z.max_length = buckets.max_length;
    z.excess = params.excess;
    z.log_value = buckets.log_partition(params.lambda, params.coupling);
    return z;
}

double generalized_force(const MachineModel& model, int x, int y, const EnsembleParams& params) {
    if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) throw std::domain_error("lambda must lie in [0, 1]");
    if (params.coupling.is_hard()) throw std::domain_error("generalized force is undefined for a hard constraint");
    return coupled_buckets(model, x, y, params.beta, params.excess).force(params.lambda, params.coupling);
}

int degeneracy_excess(int window_excess) noexcept { return std::max(window_excess - 1, 0); }

WorkDecomposition reversible_work_direct(const MachineModel& model, int x, int y, double beta, int excess) {
    require_beta(beta, false);
    require_object(model.universe(), x);
    require_object(model.universe(), y);
    const ObjectSet sx = ObjectSet::single(x);
    const ObjectSet sxy = sx.with(y);

    WorkDecomposition out;
    out.beta = beta;
    out.excess = excess;
    out.log_z_x = partition_function(model, sx, beta, excess).log_value;
    out.log_z_xy = partition_function(model, sxy, beta, excess).log_value;
    out.work = (out.log_z_x - out.log_z_xy) / beta;
    out.depth = ground_length(model.table, sxy) - ground_length(model.table, sx);

    const int delta_max = degeneracy_excess(excess);
    out.degeneracy_x = effective_degeneracy(multiplicity_spectrum(model.table, sx, delta_max), model.growth.alpha, delta_max);
    out.degeneracy_xy =
        effective_degeneracy(multiplicity_spectrum(model.table, sxy, delta_max), model.growth.alpha, delta_max);
    out.diversity = -std::log(out.degeneracy_xy / out.degeneracy_x) / beta;
    return out;
}

IntegratedWork reversible_work_ti(const MachineModel& model, int x, int y, double beta, double coupling, int excess,
                                  int nodes) {
    require_beta(beta, false);
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw std::domain_error("thermodynamic integration needs a finite positive coupling");
    }
    if (nodes < 2) throw std::domain_error("thermodynamic integration needs at least two nodes");
    const Coupling j = Coupling::finite(coupling);
    const CoupledBuckets buckets = coupled_buckets(model, x, y, beta, excess);

    IntegratedWork out;
    out.rule = gauss_legendre(nodes);
    out.forces.reserve(out.rule.nodes.size());
    for (std::size_t i = 0; i < out.rule.nodes.size(); ++i) {
        out.forces.push_back(buckets.force(out.rule.nodes[i], j));
        out.work += out.rule.weights[i] * out.forces.back();
    }
    out.endpoint_difference = buckets.free_energy_difference(j);
    return out;
}

CutoffPartition solomonoff_weight(const MachineModel& model, ObjectSet target, int excess) {
    return partition_function(model, target, kCriticalBeta, excess);
}

double kraft_sum(const MachineModel& model, int max_length) {
    const auto counts = program_counts(model, ObjectSet{}, max_length);
    double sum = 0.0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        sum += std::ldexp(static_cast<double>(counts[l]), -static_cast<int>(l));
    }
    return sum;
}

std::uint64_t count_common_subsets(int universe_size, int x, int y) {
    const std::uint64_t both = (std::uint64_t{1} << x) | (std::uint64_t{1} << y);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe_size); ++mask) {
        if ((mask & both) == both) ++count;
    }
    return count;
}

std::uint64_t udt_pair_count(const Universe& universe, int x, int y) {
    require_object(universe, x);
    require_object(universe, y);
    if (x == y) throw std::domain_error("shared-predicate count concerns two distinct objects");
    const std::uint64_t count = std::uint64_t{1} << (universe.size() - 2);
    if (universe.size() <= 20 && count_common_subsets(universe.size(), x, y) != count) {
        throw std::logic_error("subset enumeration disagrees with 2^(n-2)");
    }
    return count;
}

HighTemperatureReport high_temp_decomposition(const MachineModel& model, int x, int y, double beta, int excess) {
    HighTemperatureReport out;
    out.decomposition = reversible_work_direct(model, x, y, beta, excess);
    out.boltzmann_ratio = std::exp(out.decomposition.log_z_xy - out.decomposition.log_z_x);
    const ObjectSet sx = ObjectSet::single(x);
    const double log_count_x = partition_function(model, sx, 0.0, excess).log_value;
    const double log_count_xy = partition_function(model, sx.with(y), 0.0, excess).log_value;
    out.count_ratio = std::exp(log_count_xy - log_count_x);
    out.prediction_error = std::abs(out.decomposition.work - out.decomposition.predicted());
    return out;
}

int information_distance(const MachineModel& model, int x, int y) {
    require_object(model.universe(), x);
    require_object(model.universe(), y);
    const ObjectSet sx = ObjectSet::single(x);
    const ObjectSet sy = ObjectSet::single(y);
    const int joint = ground_length(model.table, sx | sy);
    return std::max(joint - ground_length(model.table, sx), joint - ground_length(model.table, sy));
}

}  // namespace algothermo
