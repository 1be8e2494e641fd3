#pragma once

// Exact equilibrium quantities over the toy machine's program ensembles.
//
// Energies are program lengths in bits, logarithms are natural, so the
// critical point sits at beta = ln 2 where e^{-beta |p|} = 2^{-|p|}.
//
// Two window conventions are used:
//  * per-target ("excess") windows |p| <= ground(S) + excess, for single
//    partition functions and the direct reversible work;
//  * a shared window |p| <= ground({x,y}) + excess for the coupled ensemble,
//    which keeps the state space independent of the coupling parameter.

#include <cstdint>
#include <numbers>
#include <vector>

#include "algothermo/machine.hpp"
#include "algothermo/quadrature.hpp"
#include "algothermo/wrapper_automaton.hpp"

namespace algothermo {

inline constexpr double kCriticalBeta = std::numbers::ln2;

// Enumerated cores, wrapper automaton and its growth rate for one machine.
struct MachineModel {
    ProgramTable table;
    WrapperAutomaton automaton;
    GrowthRate growth;

    static MachineModel build(Universe universe, Marker marker, int max_core_length);

    const Universe& universe() const noexcept { return table.universe(); }
    int marker_length() const noexcept { return table.marker().length(); }
};

// Number of programs of each total length 0..max_length whose output
// contains `target` (the empty target counts every halting program).
// Throws BoundError if max_length needs cores beyond the enumeration.
std::vector<std::uint64_t> program_counts(const MachineModel& model, ObjectSet target, int max_length);

struct CutoffPartition {
    double log_value = 0.0;  // ln Z
    double beta = 0.0;
    ObjectSet constraint;
    int ground_length = 0;
    int max_length = 0;  // inclusive window bound on |p|
    int excess = 0;      // max_length - ground_length

    double value() const;
};

// Z = sum over programs p with output containing `target` and
// |p| <= ground(target) + excess of e^{-beta |p|}. beta = 0 gives the exact
// count. Throws std::domain_error for beta < 0 or excess < 0.
CutoffPartition partition_function(const MachineModel& model, ObjectSet target, double beta, int excess);

// Same sum over an absolute window |p| <= max_length.
CutoffPartition partition_within(const MachineModel& model, ObjectSet target, double beta, int max_length);

// F = -ln(Z) / beta. Throws std::domain_error for beta <= 0.
double free_energy(const CutoffPartition& z, double beta);

class Coupling {
public:
    static Coupling finite(double strength);
    static Coupling hard();

    bool is_hard() const noexcept { return hard_; }
    double strength() const noexcept { return strength_; }

private:
    Coupling(double strength, bool hard) : strength_(strength), hard_(hard) {}

    double strength_;
    bool hard_;
};

struct EnsembleParams {
    double beta = 1.0;
    int excess = 0;
    Coupling coupling = Coupling::finite(1.0);
    double lambda = 0.0;
};

// Admissible programs of the coupled ensemble (output contains x, shared
// window) split by whether the output also contains y:
//   Z(lambda) = Z_with + e^{-beta J lambda} Z_without.
struct CoupledBuckets {
    int x = 0;
    int y = 0;
    double beta = 0.0;
    int excess = 0;
    int max_length = 0;
    double log_with_y = 0.0;
    double log_without_y = 0.0;  // -inf when every admissible program contains y

    // ln Z(lambda). A hard coupling keeps only y-programs for lambda > 0.
    double log_partition(double lambda, Coupling coupling) const;

    // Phi_lambda = J <1 - s_y>_lambda. Throws std::domain_error for hard coupling.
    double force(double lambda, Coupling coupling) const;

    // F(1) - F(0) of the coupled ensemble.
    double free_energy_difference(Coupling coupling) const;

    // F_hard(1) - F_J(1) = ln(1 + e^{-beta J} Z_without / Z_with) / beta,
    // evaluated without cancellation so it stays resolvable at large J.
    double hard_constraint_gap(double coupling) const;
};

// Throws std::domain_error for beta < 0 or ids outside the universe.
CoupledBuckets coupled_buckets(const MachineModel& model, int x, int y, double beta, int excess);

CutoffPartition coupled_partition(const MachineModel& model, int x, int y, const EnsembleParams& params);

double generalized_force(const MachineModel& model, int x, int y, const EnsembleParams& params);

// Exact reversible work F(x,y) - F(x) under per-target windows, with the
// low-temperature depth and the degeneracy-based diversity term.
struct WorkDecomposition {
    double beta = 0.0;
    int excess = 0;
    double work = 0.0;
    double depth = 0.0;      // ground({x,y}) - ground({x})
    double diversity = 0.0;  // -ln(m~_{x,y} / m~_x) / beta
    double log_z_x = 0.0;
    double log_z_xy = 0.0;
    double degeneracy_x = 0.0;   // m~_x
    double degeneracy_xy = 0.0;  // m~_{x,y}

    double predicted() const noexcept { return depth + diversity; }
};

// Alternatives at the window edge carry only the minimal wrapper, so the
// degeneracy of an excess window counts alternatives up to excess - 1.
int degeneracy_excess(int window_excess) noexcept;

WorkDecomposition reversible_work_direct(const MachineModel& model, int x, int y, double beta, int excess);

struct IntegratedWork {
    double work = 0.0;                  // quadrature of Phi over [0, 1]
    double endpoint_difference = 0.0;   // F(1) - F(0) of the soft ensemble
    QuadratureRule rule;
    std::vector<double> forces;         // Phi at each node
};

// Gauss-Legendre thermodynamic integration of the generalized force.
// Throws std::domain_error for non-positive coupling or nodes < 2.
IntegratedWork reversible_work_ti(const MachineModel& model, int x, int y, double beta, double coupling,
                                  int excess, int nodes = 64);

// Partition function at beta = ln 2, i.e. sum of 2^{-|p|}.
CutoffPartition solomonoff_weight(const MachineModel& model, ObjectSet target, int excess);

// Sum of 2^{-|p|} over every halting program with |p| <= max_length.
double kraft_sum(const MachineModel& model, int max_length);

// Subsets of an n-object universe containing both x and y, by enumeration.
std::uint64_t count_common_subsets(int universe_size, int x, int y);

// 2^{n-2}; cross-checked by enumeration for n <= 20 (std::logic_error on
// mismatch). Throws std::domain_error for x == y or ids outside the universe.
std::uint64_t udt_pair_count(const Universe& universe, int x, int y);

struct HighTemperatureReport {
    WorkDecomposition decomposition;
    double boltzmann_ratio = 0.0;  // e^{-beta W} = Z(x,y) / Z(x)
    double count_ratio = 0.0;      // same ratio at beta = 0
    double prediction_error = 0.0; // |W - (depth + diversity)|
};

HighTemperatureReport high_temp_decomposition(const MachineModel& model, int x, int y, double beta, int excess);

// max(ground(x,y) - ground(x), ground(x,y) - ground(y)).
int information_distance(const MachineModel& model, int x, int y);

}  // namespace algothermo
