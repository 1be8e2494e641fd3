// algothermo: command-line front end.
//
//   algothermo [--config FILE] [overrides] <command> [command options]
//
// Exit status: 0 success, 2 invalid configuration or arguments, 3 a target
// with no program in bound (or a window past the enumeration), 1 otherwise.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "algothermo/config.hpp"
#include "algothermo/ensemble.hpp"
#include "algothermo/errors.hpp"
#include "algothermo/experiments.hpp"
#include "algothermo/jarzynski.hpp"
#include "algothermo/machine.hpp"
#include "algothermo/wrapper_automaton.hpp"

namespace at = algothermo;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<int> n;
    std::optional<std::string> marker;
    std::optional<int> max_core_length;
    std::optional<int> excess;
    std::optional<std::uint64_t> seed;
    std::optional<double> coupling;
    std::optional<int> threads;
    std::optional<std::string> output_dir;
};

at::Config resolve(const Overrides& o) {
    nlohmann::json doc = nlohmann::json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw at::ConfigError("config: cannot open " + o.config_path);
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw at::ConfigError("config: " + o.config_path + ": " + e.what());
        }
        if (!doc.is_object()) throw at::ConfigError("config: <root>: expected an object");
    }
    if (o.n) doc["universe"]["size"] = *o.n;
    if (o.marker) doc["marker"] = *o.marker;
    if (o.max_core_length) doc["max_core_length"] = *o.max_core_length;
    if (o.excess) doc["excess"] = *o.excess;
    if (o.seed) doc["protocol"]["seed"] = *o.seed;
    if (o.coupling) doc["coupling"] = *o.coupling;
    if (o.threads) doc["threads"] = *o.threads;
    if (o.output_dir) doc["output_dir"] = *o.output_dir;
    return at::Config::from_json(doc);
}

at::MachineModel build_model(const at::Config& c) {
    return at::MachineModel::build(c.universe(), c.marker_bits(), c.max_core_length);
}

void check_pair(const at::Config& c, int x, int y) {
    if (x < 0 || x >= c.universe_size || y < 0 || y >= c.universe_size) {
        throw std::invalid_argument(fmt::format("objects must be in [0, {})", c.universe_size));
    }
    if (x == y) throw std::invalid_argument("x and y must differ");
}

// Targets given as "0,2"; all singletons and pairs when none are requested.
std::vector<at::ObjectSet> parse_targets(const at::Config& c, const std::vector<std::string>& specs) {
    std::vector<at::ObjectSet> targets;
    if (specs.empty()) {
        for (int i = 0; i < c.universe_size; ++i) targets.push_back(at::ObjectSet::single(i));
        for (int i = 0; i < c.universe_size; ++i) {
            for (int j = i + 1; j < c.universe_size; ++j) targets.push_back(at::ObjectSet::of({i, j}));
        }
        return targets;
    }
    for (const std::string& spec : specs) {
        at::ObjectSet set;
        std::stringstream in(spec);
        std::string item;
        while (std::getline(in, item, ',')) {
            int id = 0;
            try {
                std::size_t used = 0;
                id = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad target '" + spec + "'");
            }
            if (id < 0 || id >= c.universe_size) throw std::invalid_argument("target id out of range in '" + spec + "'");
            set = set.with(id);
        }
        if (set.empty()) throw std::invalid_argument("empty target '" + spec + "'");
        targets.push_back(set);
    }
    return targets;
}

void cmd_enumerate(const at::Config& c, const std::vector<std::string>& target_specs, int spectrum_excess,
                   const std::string& export_path) {
    const auto targets = parse_targets(c, target_specs);
    const at::MachineModel model = build_model(c);
    const at::ProgramTable& table = model.table;

    std::cout << fmt::format("universe n={} marker={} h={} max_core_length={}\n", c.universe_size, c.marker,
                             model.marker_length(), c.max_core_length);
    std::cout << "core_length,cores\n";
    std::vector<std::uint64_t> per_length(static_cast<std::size_t>(c.max_core_length) + 1, 0);
    for (const at::CoreEntry& e : table.cores()) ++per_length[static_cast<std::size_t>(e.length)];
    for (std::size_t len = 0; len < per_length.size(); ++len) {
        if (per_length[len] > 0) std::cout << len << ',' << per_length[len] << '\n';
    }
    std::cout << fmt::format("total_cores={}\n\n", table.cores().size());

    std::cout << "target,ground_core_length,ground_length,m,spectrum\n";
    for (at::ObjectSet target : targets) {
        const auto k0 = table.ground_core_length(target);
        if (!k0) {
            std::cout << fmt::format("\"{}\",,,0,\n", target.to_string());
            continue;
        }
        const int reach = std::min(spectrum_excess, c.max_core_length - *k0);
        const at::DegeneracySpectrum spectrum = at::multiplicity_spectrum(table, target, reach);
        std::string counts;
        for (std::size_t i = 0; i < spectrum.counts.size(); ++i) {
            counts += (i == 0 ? "" : " ") + std::to_string(spectrum.counts[i]);
        }
        std::cout << fmt::format("\"{}\",{},{},{},{}\n", target.to_string(), *k0, at::ground_length(table, target),
                                 spectrum.ground_multiplicity(), counts);
    }

    if (!export_path.empty()) {
        std::ofstream out(export_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + export_path);
        at::write_core_csv(table, out);
        std::cout << "\nwrote " << export_path << '\n';
    }
}

void print_decomposition(const at::WorkDecomposition& d) {
    std::cout << fmt::format("work={}\n", at::format_number(d.work));
    std::cout << fmt::format("depth={}\n", at::format_number(d.depth));
    std::cout << fmt::format("diversity={}\n", at::format_number(d.diversity));
    std::cout << fmt::format("predicted={}\n", at::format_number(d.predicted()));
    std::cout << fmt::format("ln_z_x={}\nln_z_xy={}\n", at::format_number(d.log_z_x), at::format_number(d.log_z_xy));
    std::cout << fmt::format("degeneracy_x={}\ndegeneracy_xy={}\n", at::format_number(d.degeneracy_x),
                             at::format_number(d.degeneracy_xy));
}

at::Protocol make_protocol(const at::Config& c, int x, int y, double beta, int excess) {
    at::Protocol p;
    p.x = x;
    p.y = y;
    p.beta = beta;
    p.coupling = c.coupling;
    p.excess = excess;
    p.schedule = at::Protocol::uniform_schedule(c.protocol.steps);
    p.sweeps = c.protocol.sweeps;
    p.trajectories = c.protocol.trajectories;
    p.seed = c.protocol.seed;
    return p;
}

void print_estimate(const at::WorkEstimate& e) {
    std::cout << fmt::format("delta_f_estimate={}\n", at::format_number(e.delta_f_estimate));
    std::cout << fmt::format("standard_error={}\n", at::format_number(e.standard_error));
    std::cout << fmt::format("mean_work={}\n", at::format_number(e.mean_work));
    std::cout << fmt::format("mean_work_error={}\n", at::format_number(e.mean_work_error));
    std::cout << fmt::format("delta_f_exact={}\n", at::format_number(e.delta_f_exact));
    std::cout << fmt::format("dissipation={}\n", at::format_number(e.dissipation));
    std::cout << fmt::format("trajectories={}\n", e.trajectories);
}

void cmd_work(const at::Config& c, int x, int y, double beta, std::optional<int> excess_opt, const std::string& mode) {
    check_pair(c, x, y);
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
    const int excess = excess_opt.value_or(c.excess);
    if (excess < 0) throw std::invalid_argument("excess must be non-negative");
    const at::MachineModel model = build_model(c);

    const auto header = [&] {
        std::cout << fmt::format("x={} y={} beta={} excess={} mode={}\n", x, y, at::format_number(beta), excess, mode);
    };
    if (mode == "direct") {
        const at::WorkDecomposition d = at::reversible_work_direct(model, x, y, beta, excess);
        header();
        print_decomposition(d);
        if (beta == at::kCriticalBeta) {
            // at beta = ln 2 the work in these units is already a bit count
            const double m_x = at::solomonoff_weight(model, at::ObjectSet::single(x), excess).log_value;
            const double m_xy = at::solomonoff_weight(model, at::ObjectSet::of({x, y}), excess).log_value;
            std::cout << fmt::format("solomonoff_bits={}\n", at::format_number(-(m_xy - m_x) * std::numbers::log2e));
        }
    } else if (mode == "ti") {
        const at::IntegratedWork ti = at::reversible_work_ti(model, x, y, beta, c.coupling, excess, c.quadrature_nodes);
        header();
        std::cout << fmt::format("coupling={}\nnodes={}\n", at::format_number(c.coupling), ti.rule.nodes.size());
        std::cout << fmt::format("work={}\n", at::format_number(ti.work));
        std::cout << fmt::format("endpoint_difference={}\n", at::format_number(ti.endpoint_difference));
        std::cout << fmt::format("quadrature_error={}\n", at::format_number(std::abs(ti.work - ti.endpoint_difference)));
        std::cout << "lambda,weight,force\n";
        for (std::size_t i = 0; i < ti.forces.size(); ++i) {
            std::cout << at::format_number(ti.rule.nodes[i]) << ',' << at::format_number(ti.rule.weights[i]) << ','
                      << at::format_number(ti.forces[i]) << '\n';
        }
    } else {
        const at::WorkEstimate e = at::estimate(model, make_protocol(c, x, y, beta, excess), c.threads);
        header();
        std::cout << fmt::format("coupling={}\nsteps={}\nsweeps={}\nseed={}\n", at::format_number(c.coupling),
                                 c.protocol.steps, c.protocol.sweeps, c.protocol.seed);
        print_estimate(e);
    }
}

void cmd_sweep(const at::Config& c) {
    const at::MachineModel model = build_model(c);
    at::SweepSpec spec;
    spec.pairs = c.resolved_pairs();
    spec.betas = c.beta_grid;
    spec.excesses = c.excess_list;
    spec.coupling = c.coupling;
    spec.quadrature_nodes = c.quadrature_nodes;
    spec.small_beta = c.small_beta;
    spec.output_dir = c.output_dir;
    spec.normalize();
    at::write_sweep_outputs(model, spec);
    for (const char* name : {"sweep.csv", "force.csv", "convergence.csv", "plot_results.py", "README.md"}) {
        std::cout << "wrote " << (spec.output_dir / name).string() << '\n';
    }
}

void cmd_jarzynski(const at::Config& c, int x, int y, double beta) {
    check_pair(c, x, y);
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
    const at::MachineModel model = build_model(c);
    const at::Protocol protocol = make_protocol(c, x, y, beta, c.excess);
    const at::WorkEstimate e = at::estimate(model, protocol, c.threads);
    at::write_jarzynski_outputs(protocol, e, c.output_dir);
    std::cout << fmt::format("x={} y={} beta={} coupling={} excess={} steps={} sweeps={} seed={}\n", x, y,
                             at::format_number(beta), at::format_number(c.coupling), c.excess, c.protocol.steps,
                             c.protocol.sweeps, c.protocol.seed);
    print_estimate(e);
    const std::filesystem::path dir = c.output_dir;
    std::cout << "wrote " << (dir / "jarzynski.csv").string() << '\n';
    std::cout << "wrote " << (dir / "jarzynski_summary.csv").string() << '\n';
}

void cmd_wrapper_stats(const at::Config& c, int max_length) {
    if (max_length < 0) throw std::invalid_argument("max length must be non-negative");
    const at::WrapperAutomaton automaton(c.marker_bits());
    std::cout << "d,a_d\n";
    for (int d = 0; d <= max_length; ++d) std::cout << d << ',' << automaton.wrapper_count(d) << '\n';
    const at::GrowthRate g = at::growth_rate(automaton);
    std::cout << "\nmarker,mu,alpha,iterations,converged\n";
    std::cout << c.marker << ',' << at::format_number(g.mu) << ',' << at::format_number(g.alpha) << ','
              << g.iterations << ',' << (g.converged ? "true" : "false") << '\n';
}

void cmd_udt(const at::Config& c) {
    const at::Universe universe = c.universe();
    const int n = universe.size();
    const std::uint64_t expected = std::uint64_t{1} << (n - 2);
    std::uint64_t pairs = 0;
    bool identical = true;
    std::optional<std::uint64_t> first;
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const std::uint64_t count = at::udt_pair_count(universe, x, y);
            if (!first) first = count;
            identical = identical && count == *first && count == expected;
            ++pairs;
        }
    }
    std::cout << fmt::format("n={} pairs={} shared_predicates={}\n", n, pairs, *first);
    std::cout << fmt::format("{}, {}\n", *first,
                             identical ? "identical across all pairs" : "NOT identical across pairs");
    if (!identical) throw std::logic_error("pair counts differ");
}

double parse_beta(const std::string& text) {
    if (text == "ln2") return at::kCriticalBeta;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("beta must be a positive number or ln2, got '" + text + "'");
    }
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algorithmic thermodynamics on a toy regular universal machine"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("-c,--config", o.config_path, "JSON configuration file");
    app.add_option("--n", o.n, "universe size");
    app.add_option("--marker", o.marker, "wrapper marker bits");
    app.add_option("--max-core-length", o.max_core_length, "enumeration bound on core length");
    app.add_option("--excess", o.excess, "excess window above the ground length");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--coupling", o.coupling, "coupling strength J");
    app.add_option("--threads", o.threads, "worker cap");
    app.add_option("--output-dir", o.output_dir, "output directory");

    auto* enumerate = app.add_subcommand("enumerate", "core counts, ground lengths and degeneracy spectra");
    std::vector<std::string> targets;
    int spectrum_excess = 8;
    std::string export_path;
    enumerate->add_option("-t,--target", targets, "target set such as 0,1 (repeatable)");
    enumerate->add_option("--spectrum", spectrum_excess, "largest excess in the printed spectra")->check(CLI::NonNegativeNumber);
    enumerate->add_option("--export", export_path, "write every core as CSV");

    auto* work = app.add_subcommand("work", "reversible work for one pair");
    int x = 0;
    int y = 1;
    std::string beta_text = "1";
    std::optional<int> work_excess;
    std::string mode = "direct";
    work->add_option("--x", x, "object already described")->required();
    work->add_option("--y", y, "object to add")->required();
    work->add_option("--beta", beta_text, "inverse temperature; \"ln2\" for the critical point");
    work->add_option("--window", work_excess, "excess window (default: config excess)");
    work->add_option("--mode", mode, "direct | ti | jarzynski")->check(CLI::IsMember({"direct", "ti", "jarzynski"}));

    auto* sweep = app.add_subcommand("sweep", "beta sweep, force profiles and convergence tables");

    auto* jarzynski = app.add_subcommand("jarzynski", "non-equilibrium estimate of the coupled free energy");
    jarzynski->add_option("--x", x, "object already described");
    jarzynski->add_option("--y", y, "object to add");
    jarzynski->add_option("--beta", beta_text, "inverse temperature; \"ln2\" for the critical point");

    auto* wrapper_stats = app.add_subcommand("wrapper-stats", "wrapper counts a_d and growth rate");
    int max_length = 20;
    wrapper_stats->add_option("--max-length", max_length, "largest wrapper length listed");

    auto* udt = app.add_subcommand("udt", "shared-predicate count for every pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const at::Config config = resolve(o);
        const double beta = parse_beta(beta_text);
        if (*enumerate) cmd_enumerate(config, targets, spectrum_excess, export_path);
        if (*work) cmd_work(config, x, y, beta, work_excess, mode);
        if (*sweep) cmd_sweep(config);
        if (*jarzynski) cmd_jarzynski(config, x, y, beta);
        if (*wrapper_stats) cmd_wrapper_stats(config, max_length);
        if (*udt) cmd_udt(config);
    } catch (const at::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const at::UnsatisfiableError& e) {
        std::cerr << "error: unsatisfiable: " << e.what() << '\n';
        return 3;
    } catch (const at::BoundError& e) {
        std::cerr << "error: bound: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
