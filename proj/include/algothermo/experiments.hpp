#pragma once

// Scripted studies over the default desk-scale machine: beta sweeps across
// the three temperature regimes, force profiles along lambda, convergence of
// the degeneracy prediction with the excess window, and Jarzynski runs.
// Everything is emitted as CSV in deterministic grid order.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "algothermo/ensemble.hpp"
#include "algothermo/jarzynski.hpp"

namespace algothermo {

struct SweepSpec {
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> betas;  // sorted, positive, contains ln 2
    std::vector<int> excesses;
    double coupling = 20.0;
    int quadrature_nodes = 64;
    double small_beta = 1e-3;
    std::filesystem::path output_dir = "out";

    // Sorts and deduplicates the grid and inserts ln 2 when missing.
    void normalize();

    // Throws std::domain_error when an invariant is violated.
    void validate() const;
};

enum class Regime { LowTemperature, Critical, HighTemperature };

Regime classify(double beta) noexcept;
const char* regime_name(Regime regime) noexcept;

struct SweepRow {
    int x = 0;
    int y = 0;
    Regime regime = Regime::Critical;
    WorkDecomposition decomposition;
    double low_t_residual = 0.0;       // |W - depth|
    double solomonoff_bits = 0.0;      // -log2(M(x,y) / M(x)) in the same windows
    double neg_log_count_ratio = 0.0;  // -ln(N(x,y) / N(x)) in the same windows
};

// Rows ordered by beta, then pair, then excess.
std::vector<SweepRow> beta_sweep(const MachineModel& model, const SweepSpec& spec);

struct ForceRow {
    double lambda = 0.0;
    double weight = 0.0;  // quadrature weight
    double force = 0.0;
};

struct ForceProfile {
    int x = 0;
    int y = 0;
    IntegratedWork integration;
    std::vector<ForceRow> rows;
};

ForceProfile lambda_profile(const MachineModel& model, int x, int y, double beta, double coupling, int excess,
                            int nodes);

struct ConvergenceRow {
    int excess = 0;
    double work = 0.0;
    double predicted = 0.0;
    double abs_error = 0.0;
    double depth = 0.0;
    double degeneracy_x = 0.0;
    double degeneracy_xy = 0.0;
};

std::vector<ConvergenceRow> lambda_convergence(const MachineModel& model, int x, int y, double small_beta,
                                               const std::vector<int>& excesses);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_force_csv(const std::vector<ForceProfile>& profiles, std::ostream& out);
void write_convergence_csv(int x, int y, const std::vector<ConvergenceRow>& rows, std::ostream& out, bool header);
void write_trajectory_csv(const WorkEstimate& estimate, std::ostream& out);
void write_jarzynski_summary_csv(const Protocol& protocol, const WorkEstimate& estimate, std::ostream& out);

// sweep.csv, force.csv, convergence.csv, plot_results.py and README.md
// under spec.output_dir.
void write_sweep_outputs(const MachineModel& model, const SweepSpec& spec);

// jarzynski.csv and jarzynski_summary.csv under `output_dir`.
void write_jarzynski_outputs(const Protocol& protocol, const WorkEstimate& estimate,
                             const std::filesystem::path& output_dir);

// Column documentation written next to the CSVs.
std::string output_readme();
std::string plot_script();

// Shortest round-trip decimal form, so output is byte-reproducible.
std::string format_number(double value);

}  // namespace algothermo
