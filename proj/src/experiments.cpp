#include "algothermo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace algothermo {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

void SweepSpec::normalize() {
    betas.push_back(kCriticalBeta);
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
}

void SweepSpec::validate() const {
    if (pairs.empty()) throw std::domain_error("sweep needs at least one pair");
    if (betas.empty() || !(betas.front() > 0.0)) throw std::domain_error("beta grid must be strictly positive");
    for (std::size_t i = 1; i < betas.size(); ++i) {
        if (!(betas[i] > betas[i - 1])) throw std::domain_error("beta grid must be strictly increasing");
    }
    if (!std::binary_search(betas.begin(), betas.end(), kCriticalBeta)) {
        throw std::domain_error("beta grid must contain ln 2");
    }
    if (excesses.empty()) throw std::domain_error("sweep needs at least one excess window");
    if (!(coupling > 0.0)) throw std::domain_error("coupling must be positive");
    if (!(small_beta > 0.0)) throw std::domain_error("small beta must be positive");
}

Regime classify(double beta) noexcept {
    if (beta == kCriticalBeta) return Regime::Critical;
    return beta > kCriticalBeta ? Regime::LowTemperature : Regime::HighTemperature;
}

const char* regime_name(Regime regime) noexcept {
    switch (regime) {
        case Regime::LowTemperature:
            return "low_temperature";
        case Regime::Critical:
            return "critical";
        case Regime::HighTemperature:
            return "high_temperature";
    }
    return "unknown";
}

std::vector<SweepRow> beta_sweep(const MachineModel& model, const SweepSpec& spec) {
    spec.validate();

    // beta-independent pieces per (pair, excess)
    struct Fixed {
        double solomonoff_bits;
        double neg_log_count_ratio;
    };
    std::vector<Fixed> fixed;
    for (const auto& [x, y] : spec.pairs) {
        const ObjectSet sx = ObjectSet::single(x);
        for (int excess : spec.excesses) {
            const double m_x = solomonoff_weight(model, sx, excess).log_value;
            const double m_xy = solomonoff_weight(model, sx.with(y), excess).log_value;
            const double n_x = partition_function(model, sx, 0.0, excess).log_value;
            const double n_xy = partition_function(model, sx.with(y), 0.0, excess).log_value;
            fixed.push_back({-(m_xy - m_x) / std::numbers::ln2, -(n_xy - n_x)});
        }
    }

    std::vector<SweepRow> rows;
    for (double beta : spec.betas) {
        std::size_t k = 0;
        for (const auto& [x, y] : spec.pairs) {
            for (int excess : spec.excesses) {
                SweepRow row;
                row.x = x;
                row.y = y;
                row.regime = classify(beta);
                row.decomposition = reversible_work_direct(model, x, y, beta, excess);
                row.low_t_residual = std::abs(row.decomposition.work - row.decomposition.depth);
                row.solomonoff_bits = fixed[k].solomonoff_bits;
                row.neg_log_count_ratio = fixed[k].neg_log_count_ratio;
                rows.push_back(row);
                ++k;
            }
        }
    }
    return rows;
}

ForceProfile lambda_profile(const MachineModel& model, int x, int y, double beta, double coupling, int excess,
                            int nodes) {
    ForceProfile profile{x, y, reversible_work_ti(model, x, y, beta, coupling, excess, nodes), {}};
    for (std::size_t i = 0; i < profile.integration.forces.size(); ++i) {
        profile.rows.push_back(
            {profile.integration.rule.nodes[i], profile.integration.rule.weights[i], profile.integration.forces[i]});
    }
    return profile;
}

std::vector<ConvergenceRow> lambda_convergence(const MachineModel& model, int x, int y, double small_beta,
                                               const std::vector<int>& excesses) {
    std::vector<ConvergenceRow> rows;
    for (int excess : excesses) {
        const HighTemperatureReport report = high_temp_decomposition(model, x, y, small_beta, excess);
        const WorkDecomposition& d = report.decomposition;
        rows.push_back({excess, d.work, d.predicted(), report.prediction_error, d.depth, d.degeneracy_x,
                        d.degeneracy_xy});
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "beta,x,y,excess,regime,work,depth,diversity,predicted,low_t_residual,solomonoff_bits,beta_work,"
           "neg_log_count_ratio,degeneracy_x,degeneracy_xy\n";
    for (const SweepRow& r : rows) {
        const WorkDecomposition& d = r.decomposition;
        out << format_number(d.beta) << ',' << r.x << ',' << r.y << ',' << d.excess << ',' << regime_name(r.regime)
            << ',' << format_number(d.work) << ',' << format_number(d.depth) << ',' << format_number(d.diversity)
            << ',' << format_number(d.predicted()) << ',' << format_number(r.low_t_residual) << ','
            << format_number(r.solomonoff_bits) << ',' << format_number(d.beta * d.work) << ','
            << format_number(r.neg_log_count_ratio) << ',' << format_number(d.degeneracy_x) << ','
            << format_number(d.degeneracy_xy) << '\n';
    }
}

void write_force_csv(const std::vector<ForceProfile>& profiles, std::ostream& out) {
    out << "x,y,lambda,weight,force\n";
    for (const ForceProfile& p : profiles) {
        for (const ForceRow& r : p.rows) {
            out << p.x << ',' << p.y << ',' << format_number(r.lambda) << ',' << format_number(r.weight) << ','
                << format_number(r.force) << '\n';
        }
    }
}

void write_convergence_csv(int x, int y, const std::vector<ConvergenceRow>& rows, std::ostream& out, bool header) {
    if (header) out << "x,y,excess,work,predicted,abs_error,depth,degeneracy_x,degeneracy_xy\n";
    for (const ConvergenceRow& r : rows) {
        out << x << ',' << y << ',' << r.excess << ',' << format_number(r.work) << ',' << format_number(r.predicted)
            << ',' << format_number(r.abs_error) << ',' << format_number(r.depth) << ','
            << format_number(r.degeneracy_x) << ',' << format_number(r.degeneracy_xy) << '\n';
    }
}

void write_trajectory_csv(const WorkEstimate& estimate, std::ostream& out) {
    out << "trajectory,work\n";
    for (std::size_t t = 0; t < estimate.works.size(); ++t) out << t << ',' << format_number(estimate.works[t]) << '\n';
}

void write_jarzynski_summary_csv(const Protocol& protocol, const WorkEstimate& estimate, std::ostream& out) {
    out << "x,y,beta,coupling,excess,steps,sweeps,trajectories,seed,delta_f_estimate,standard_error,mean_work,"
           "mean_work_error,dissipation,delta_f_exact\n";
    out << protocol.x << ',' << protocol.y << ',' << format_number(protocol.beta) << ','
        << format_number(protocol.coupling) << ',' << protocol.excess << ',' << protocol.schedule.size() - 1 << ','
        << protocol.sweeps << ',' << estimate.trajectories << ',' << protocol.seed << ','
        << format_number(estimate.delta_f_estimate) << ',' << format_number(estimate.standard_error) << ','
        << format_number(estimate.mean_work) << ',' << format_number(estimate.mean_work_error) << ','
        << format_number(estimate.dissipation) << ',' << format_number(estimate.delta_f_exact) << '\n';
}

void write_sweep_outputs(const MachineModel& model, const SweepSpec& spec) {
    spec.validate();
    std::filesystem::create_directories(spec.output_dir);

    {
        auto out = open_output(spec.output_dir / "sweep.csv");
        write_sweep_csv(beta_sweep(model, spec), out);
    }
    {
        std::vector<ForceProfile> profiles;
        const double beta = 1.0;
        for (const auto& [x, y] : spec.pairs) {
            const int excess = *std::max_element(spec.excesses.begin(), spec.excesses.end());
            profiles.push_back(lambda_profile(model, x, y, beta, spec.coupling, std::min(excess, 4),
                                              spec.quadrature_nodes));
        }
        auto out = open_output(spec.output_dir / "force.csv");
        write_force_csv(profiles, out);
    }
    {
        auto out = open_output(spec.output_dir / "convergence.csv");
        bool header = true;
        for (const auto& [x, y] : spec.pairs) {
            write_convergence_csv(x, y, lambda_convergence(model, x, y, spec.small_beta, spec.excesses), out, header);
            header = false;
        }
    }
    open_output(spec.output_dir / "plot_results.py") << plot_script();
    open_output(spec.output_dir / "README.md") << output_readme();
}

void write_jarzynski_outputs(const Protocol& protocol, const WorkEstimate& estimate,
                             const std::filesystem::path& output_dir) {
    std::filesystem::create_directories(output_dir);
    {
        auto out = open_output(output_dir / "jarzynski.csv");
        write_trajectory_csv(estimate, out);
    }
    auto out = open_output(output_dir / "jarzynski_summary.csv");
    write_jarzynski_summary_csv(protocol, estimate, out);
}

std::string output_readme() {
    return R"(# Output files

All energies are program lengths in bits; logarithms are natural. The
critical inverse temperature is beta = ln 2.

## sweep.csv

One row per (beta, pair, excess window), ordered by beta, then pair, then excess.

| column | meaning |
|---|---|
| beta | inverse temperature |
| x, y | object ids; the work adds y to a description of x |
| excess | excess window: programs up to ground length + excess |
| regime | low_temperature (beta > ln 2), critical (beta = ln 2), high_temperature (beta < ln 2) |
| work | exact reversible work F(x,y) - F(x) with per-target windows |
| depth | ground(x,y) - ground(x) |
| diversity | -ln(m~(x,y) / m~(x)) / beta, effective degeneracies over alternatives up to excess - 1 |
| predicted | depth + diversity |
| low_t_residual | abs(work - depth); tends to ln(m(x,y)/m(x))/beta at large beta |
| solomonoff_bits | -log2(M(x,y) / M(x)) with M the 2^-|p| sums over the same windows; equals work at beta = ln 2 |
| beta_work | beta * work |
| neg_log_count_ratio | -ln(N(x,y) / N(x)), program counts over the same windows; beta_work tends to it as beta -> 0 |
| degeneracy_x, degeneracy_xy | effective degeneracies m~(x), m~(x,y) |

## force.csv

Generalized force along the coupling parameter at beta = 1 on the
Gauss-Legendre nodes (shared window ground(x,y) + min(max excess, 4)).

| column | meaning |
|---|---|
| x, y | pair |
| lambda | quadrature node in (0, 1) |
| weight | quadrature weight |
| force | J <1 - s_y>_lambda |

The weighted sum of force over a pair is the thermodynamic-integration work.

## convergence.csv

High-temperature prediction against the exact work at the small beta.

| column | meaning |
|---|---|
| x, y | pair |
| excess | excess window |
| work | exact work |
| predicted | depth + diversity |
| abs_error | abs(work - predicted) |
| depth | ground(x,y) - ground(x) |
| degeneracy_x, degeneracy_xy | effective degeneracies |

## jarzynski.csv

| column | meaning |
|---|---|
| trajectory | trajectory index (seeded independently) |
| work | accumulated switching work |

## jarzynski_summary.csv

Protocol parameters followed by delta_f_estimate (-ln<e^{-beta W}>/beta),
standard_error (jackknife), mean_work, mean_work_error, dissipation
(mean_work - delta_f_exact) and delta_f_exact.

## plot_results.py

Matplotlib script: `python3 plot_results.py` in this directory writes PNGs
for whichever CSVs are present.
)";
}

std::string plot_script() {
    return R"PY(#!/usr/bin/env python3
"""Plots for the CSV files in this directory."""
import csv
import math
import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def rows(name):
    with open(name, newline="") as f:
        return list(csv.DictReader(f))


def plot_sweep():
    data = rows("sweep.csv")
    excess = max(int(r["excess"]) for r in data)
    series = defaultdict(list)
    for r in data:
        if int(r["excess"]) == excess:
            series[(r["x"], r["y"])].append((float(r["beta"]), float(r["work"]), float(r["depth"])))
    fig, ax = plt.subplots()
    for (x, y), pts in sorted(series.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"{x}->{y}")
    ax.set_xscale("log")
    ax.set_yscale("symlog")
    ax.axvline(math.log(2), color="grey", linestyle="--")
    ax.set_xlabel("beta")
    ax.set_ylabel("reversible work")
    ax.legend(fontsize="small", ncol=2)
    fig.savefig("sweep.png", dpi=150)


def plot_force():
    series = defaultdict(list)
    for r in rows("force.csv"):
        series[(r["x"], r["y"])].append((float(r["lambda"]), float(r["force"])))
    fig, ax = plt.subplots()
    for (x, y), pts in sorted(series.items()):
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"{x}->{y}")
    ax.set_xlabel("lambda")
    ax.set_ylabel("generalized force")
    ax.legend(fontsize="small", ncol=2)
    fig.savefig("force.png", dpi=150)


def plot_convergence():
    series = defaultdict(list)
    for r in rows("convergence.csv"):
        series[(r["x"], r["y"])].append((int(r["excess"]), float(r["abs_error"])))
    fig, ax = plt.subplots()
    for (x, y), pts in sorted(series.items()):
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=f"{x}->{y}")
    ax.set_xlabel("excess window")
    ax.set_ylabel("|work - (depth + diversity)|")
    ax.legend(fontsize="small", ncol=2)
    fig.savefig("convergence.png", dpi=150)


def plot_jarzynski():
    works = [float(r["work"]) for r in rows("jarzynski.csv")]
    summary = rows("jarzynski_summary.csv")[0]
    fig, ax = plt.subplots()
    ax.hist(works, bins=40)
    ax.axvline(float(summary["delta_f_exact"]), color="black", label="exact delta F")
    ax.axvline(float(summary["mean_work"]), color="red", linestyle="--", label="mean work")
    ax.set_xlabel("work")
    ax.legend()
    fig.savefig("jarzynski.png", dpi=150)


if __name__ == "__main__":
    for name, fn in [("sweep.csv", plot_sweep), ("force.csv", plot_force),
                     ("convergence.csv", plot_convergence), ("jarzynski.csv", plot_jarzynski)]:
        if os.path.exists(name):
            fn()
)PY";
}

}  // namespace algothermo
