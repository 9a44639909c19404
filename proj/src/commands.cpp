// Copyright 2026 The vibronic-qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vibronic/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "vibronic/error.hpp"
#include "vibronic/oracle.hpp"
#include "vibronic/qpe.hpp"
#include "vibronic/qubit_mapper.hpp"
#include "vibronic/repro.hpp"
#include "vibronic/spectrum_io.hpp"
#include "vibronic/thermal.hpp"

#ifndef VIBRONIC_DATA_DIR
#define VIBRONIC_DATA_DIR "data"
#endif

namespace vibronic {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string problem_file;
    std::string cutoffs;
    std::string route = "qp";
    std::string encoding = "binary";
    std::size_t t = 12;
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    std::string backend = "exact";
    double sigma = kDefaultSigma;
    std::string convention = "stddev";
    double bin_width = kDefaultBinWidth;
    double histogram_width = 50.0;
    double min_intensity = 1e-14;
    std::optional<double> temperature;
    std::optional<double> beta;
    std::string output_dir;
    std::string prefix;
    std::size_t jobs = 1;
    std::size_t qubit_cap = kDefaultQubitCap;
    double margin = kDefaultPhaseMargin;
};

std::vector<std::size_t> parse_level_list(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size() || item.find('-') != std::string::npos)
            throw InvalidArgument(fmt::format("cutoff '{}' is not a non-negative integer", item));
        out.push_back(v);
    }
    if (out.empty())
        throw InvalidArgument("empty cutoff list");
    return out;
}

ModeCutoffs resolve_cutoffs(const std::string &text, const VibronicProblem &problem) {
    if (text.empty())
        throw InvalidArgument("--cutoffs is required");
    auto levels = parse_level_list(text);
    if (levels.size() == 1)
        return ModeCutoffs::uniform(problem.num_modes(), levels[0]);
    if (levels.size() != problem.num_modes())
        throw InvalidArgument(
            fmt::format("{} cutoffs given for a {}-mode problem", levels.size(), problem.num_modes()));
    return {levels};
}

fs::path output_dir(const RunConfig &c) {
    if (!c.output_dir.empty())
        return c.output_dir;
    if (const char *env = std::getenv(kOutputDirEnv); env && *env)
        return env;
    return ".";
}

std::string prefix_for(const RunConfig &c) {
    return c.prefix.empty() ? fs::path(c.problem_file).stem().string() : c.prefix;
}

template <class Fn> std::string render(Fn &&fn) {
    std::ostringstream ss;
    fn(ss);
    return ss.str();
}

struct Context {
    std::ostream &out;
    std::ostream &err;
    bool warnings = false;

    void warn(const std::string &msg) {
        err << "warning: " << msg << '\n';
        warnings = true;
    }
    int code() const { return warnings ? kExitWarnings : kExitOk; }
};

VibronicProblem load(const RunConfig &c, Context &ctx) {
    if (c.problem_file.empty())
        throw InvalidArgument("--problem is required");
    auto problem = load_problem(c.problem_file);
    for (const auto &w : validate(problem).warnings)
        ctx.err << "note: " << w << '\n';
    return problem;
}

std::optional<ThermalConfig> thermal_from(const RunConfig &c, const VibronicProblem &problem) {
    if (c.temperature && c.beta)
        throw InvalidArgument("give either --temperature-K or --beta, not both");
    if (c.temperature)
        return ThermalConfig::from_temperature(*c.temperature);
    if (c.beta)
        return ThermalConfig::from_beta(*c.beta);
    return problem.thermal;
}

QpeOptions qpe_options(const RunConfig &c) {
    QpeOptions o;
    o.t = c.t;
    o.shots = c.shots;
    o.seed = c.seed;
    o.backend = EvolutionBackend::parse(c.backend);
    o.qubit_cap = c.qubit_cap;
    o.jobs = c.jobs;
    o.phase_margin = c.margin;
    return o;
}

void write_outputs(Context &ctx, const fs::path &dir, const std::string &name, const std::string &text) {
    const auto path = dir / name;
    write_file(path, text);
    ctx.out << "wrote " << path.string() << '\n';
}

int cmd_exact(const RunConfig &c, Context &ctx) {
    const auto problem = load(c, ctx);
    const auto cutoffs = resolve_cutoffs(c.cutoffs, problem);
    const auto route = parse_route(c.route);
    const auto convention = parse_broadening_convention(c.convention);
    const auto thermal = thermal_from(c, problem);
    const bool finite_t = thermal && !thermal->is_zero_temperature();
    const auto sticks = finite_t ? thermal_fcp_oracle(problem, cutoffs, *thermal, route)
                                 : exact_fcp(problem, cutoffs, route);
    const auto binned = bin(sticks, c.bin_width);
    const auto broadened = broaden(binned, c.sigma, convention);

    const auto dir = output_dir(c);
    const auto prefix = prefix_for(c);
    // The stick file lists visible transitions; binning and leakage use all of them.
    StickSpectrum visible;
    for (const auto &s : sticks.sticks)
        if (s.intensity > c.min_intensity)
            visible.sticks.push_back(s);
    write_outputs(ctx, dir, prefix + "_sticks.csv", render([&](auto &s) { write_stick_csv(s, visible); }));
    write_outputs(ctx, dir, prefix + "_binned.csv", render([&](auto &s) { write_binned_csv(s, binned); }));
    write_outputs(ctx, dir, prefix + "_broadened.csv", render([&](auto &s) { write_broadened_csv(s, broadened); }));
    nlohmann::json meta = to_json(sticks.metadata);
    meta["sigma_cm1"] = c.sigma;
    meta["sigma_convention"] = std::string(to_string(convention));
    meta["bin_width_cm1"] = c.bin_width;
    meta["leakage"] = sticks.leakage();
    meta["sticks"] = visible.sticks.size();
    meta["eigenstates"] = sticks.sticks.size();
    meta["min_intensity"] = c.min_intensity;
    if (finite_t)
        meta["beta_invcm"] = thermal->beta();
    write_outputs(ctx, dir, prefix + "_meta.json", meta.dump(2) + "\n");
    ctx.out << fmt::format("{} sticks above {:g} of {} eigenstates, leakage {:.3e}\n", visible.sticks.size(),
                           c.min_intensity, sticks.sticks.size(), sticks.leakage());
    return ctx.code();
}

void write_sampled(Context &ctx, const RunConfig &c, const SampledSpectrum &s, const std::string &tag,
                   const nlohmann::json &extra) {
    const auto dir = output_dir(c);
    const auto prefix = prefix_for(c) + "_" + tag;
    write_outputs(ctx, dir, prefix + ".csv", render([&](auto &o) { write_sampled_csv(o, s); }));
    write_outputs(ctx, dir, prefix + "_shots.csv", render([&](auto &o) { write_shots_csv(o, s); }));
    write_outputs(ctx, dir, prefix + "_histogram.csv",
                  render([&](auto &o) { write_binned_csv(o, s.histogram(c.histogram_width)); }));
    auto meta = sampled_metadata(s);
    for (const auto &[k, v] : extra.items())
        meta[k] = v;
    meta["histogram_width_cm1"] = c.histogram_width;
    write_outputs(ctx, dir, prefix + "_meta.json", meta.dump(2) + "\n");
    ctx.out << fmt::format("{} shots, {} accepted, resolution {:.4g} cm^-1\n", s.shots, s.records.size(),
                           s.phase_map.resolution());
    if (s.discarded > 0)
        ctx.warn(fmt::format("{} shots discarded on invalid initial-register outcomes", s.discarded));
}

int cmd_qpe(const RunConfig &c, Context &ctx) {
    const auto problem = load(c, ctx);
    const auto cutoffs = resolve_cutoffs(c.cutoffs, problem);
    const auto route = parse_route(c.route);
    const auto s = run_qpe(problem, cutoffs, parse_encoding(c.encoding), qpe_options(c), route);
    write_sampled(ctx, c, s, "qpe",
                  {{"label", problem.label}, {"cutoffs", cutoffs.max_levels}, {"route", std::string(to_string(route))}});
    return ctx.code();
}

int cmd_thermal(const RunConfig &c, Context &ctx) {
    const auto problem = load(c, ctx);
    const auto thermal = thermal_from(c, problem);
    if (!thermal)
        throw InvalidArgument("thermal needs --temperature-K or --beta (or a temperature in the problem file)");
    const auto cutoffs = resolve_cutoffs(c.cutoffs, problem);
    const auto route = parse_route(c.route);
    const auto s = run_qpe_thermal(problem, cutoffs, parse_encoding(c.encoding), qpe_options(c), *thermal, route);
    write_sampled(ctx, c, s, "thermal",
                  {{"label", problem.label},
                   {"cutoffs", cutoffs.max_levels},
                   {"route", std::string(to_string(route))},
                   {"beta_invcm", thermal->beta()},
                   {"temperature_K", thermal->temperature()},
                   {"energy_of_shot", "energy_of_j - E_A(initial_levels)"}});
    return ctx.code();
}

int cmd_map(const RunConfig &c, const std::string &target, Context &ctx) {
    const auto problem = load(c, ctx);
    const auto cutoffs = resolve_cutoffs(c.cutoffs, problem);
    const auto route = parse_route(c.route);
    const QubitLayout layout(parse_encoding(c.encoding), cutoffs);
    const auto report = build_hamiltonian(problem, cutoffs, route);
    const auto ps = map_operator(report.hamiltonian, layout);
    const fs::path path = target.empty() ? output_dir(c) / (prefix_for(c) + "_pauli.txt") : fs::path(target);
    write_outputs(ctx, path.parent_path().empty() ? fs::path(".") : path.parent_path(), path.filename().string(),
                  render([&](auto &o) { write_pauli_text(o, ps, layout); }));
    const auto res = resource_count(ps);
    ctx.out << fmt::format("{} qubits, {} terms, greedy layer depth {}\n", layout.num_qubits(), res.term_count,
                           res.layer_depth);
    for (const auto &[w, n] : res.weight_histogram)
        ctx.out << fmt::format("  weight {}: {} terms\n", w, n);
    return ctx.code();
}

struct ConvergeArgs {
    std::size_t vary_mode = 1;
    std::string fixed;
    std::size_t held_level = 30;
    double threshold = 1e-4;
    std::size_t start = 1;
    std::size_t max_level = 200;
};

int cmd_converge(const RunConfig &c, const ConvergeArgs &a, Context &ctx) {
    const auto problem = load(c, ctx);
    if (a.vary_mode < 1 || a.vary_mode > problem.num_modes())
        throw InvalidArgument(fmt::format("--vary-mode {} outside 1..{}", a.vary_mode, problem.num_modes()));
    const std::size_t varied = a.vary_mode - 1;
    SweepOptions o;
    o.route = parse_route(c.route);
    o.threshold = a.threshold;
    o.sigma = c.sigma;
    o.convention = parse_broadening_convention(c.convention);
    o.start_level = a.start;
    o.max_level = a.max_level;
    o.jobs = c.jobs;
    ModeCutoffs fixed;
    if (!a.fixed.empty()) {
        fixed = resolve_cutoffs(a.fixed, problem);
    } else {
        auto aux = o;
        aux.start_level = 1;
        fixed = auxiliary_fixed_cutoffs(problem, varied, a.held_level, aux);
    }
    ctx.out << fmt::format("fixed cutoffs {} (mode {} varied)\n", fmt::join(fixed.max_levels, ","), a.vary_mode);
    const auto r = converge_sweep(problem, varied, fixed, o);
    std::ostringstream trace;
    trace << "level,l1_previous,leakage\n";
    for (const auto &s : r.trace)
        trace << s.level << ',' << fmt::format("{:.15g}", s.l1_previous) << ',' << fmt::format("{:.15g}", s.leakage)
              << '\n';
    write_outputs(ctx, output_dir(c), prefix_for(c) + "_converge.csv", trace.str());
    for (const auto &w : r.warnings)
        ctx.warn(w);
    if (!r.converged) {
        ctx.warn(fmt::format("no convergence below {:g} up to level {}", a.threshold, a.max_level));
    } else {
        ctx.out << fmt::format("converged: L_max* = {} (highest kept level; {} levels)\n", r.converged_level,
                               r.converged_level + 1);
    }
    return ctx.code();
}

int cmd_compare(const RunConfig &c, const std::string &a, const std::string &b, Context &ctx) {
    const auto conv = parse_broadening_convention(c.convention);
    const auto da = as_density(load_spectrum(a), c.sigma, conv);
    const auto db = as_density(load_spectrum(b), c.sigma, conv);
    ctx.out << fmt::format("{:.10g}\n", l1_distance(da, db));
    return ctx.code();
}

int cmd_repro(const RunConfig &c, const std::string &study, const std::string &data_dir, Context &ctx) {
    ReproOptions o;
    o.data_dir = data_dir;
    o.route = parse_route(c.route);
    o.sigma = c.sigma;
    o.convention = parse_broadening_convention(c.convention);
    o.jobs = c.jobs;
    const auto dir = output_dir(c);
    if (study != "truncation" && study != "anharmonic" && study != "all")
        throw InvalidArgument(fmt::format("--study must be truncation, anharmonic or all, got '{}'", study));
    if (study == "truncation" || study == "all") {
        std::ostringstream table;
        table << "label,varied_mode,approximate_cutoffs,reference_cutoffs,l1,target_l1,approximate_leakage,"
                 "reference_leakage\n";
        ctx.out << "truncation study (sigma " << c.sigma << ", " << c.convention << ")\n";
        for (const auto &row : run_truncation_study(o)) {
            const auto &cfg = row.config;
            table << fmt::format("{},{},{},{},{:.6g},{:.6g},{:.3e},{:.3e}\n", row.label, cfg.varied_mode + 1,
                                 fmt::join(cfg.approximate.max_levels, " "), fmt::join(cfg.reference.max_levels, " "),
                                 row.l1, cfg.target_l1, row.approximate_leakage, row.reference_leakage);
            ctx.out << fmt::format("  {:<6} approx [{}] vs ref [{}]: L1 = {:.4f} (target {:.3f})\n", row.label,
                                   fmt::join(cfg.approximate.max_levels, ","), fmt::join(cfg.reference.max_levels, ","),
                                   row.l1, cfg.target_l1);
            const auto stem = fs::path(cfg.file).stem().string();
            write_file(dir / ("repro_" + stem + "_approx_broadened.csv"),
                       render([&](auto &s) { write_broadened_csv(s, broadened_fcp(row.approximate, o.sigma, o.convention)); }));
            write_file(dir / ("repro_" + stem + "_reference_broadened.csv"),
                       render([&](auto &s) { write_broadened_csv(s, broadened_fcp(row.reference, o.sigma, o.convention)); }));
        }
        write_outputs(ctx, dir, "repro_truncation.csv", table.str());
    }
    if (study == "anharmonic" || study == "all") {
        const auto study = run_anharmonic_study(o);
        std::ostringstream table;
        table << "cutoffs,l1_previous,hermiticity_deviation,leakage\n";
        ctx.out << "anharmonic study\n";
        for (const auto &s : study.ladder) {
            table << fmt::format("{},{:.6g},{:.3e},{:.3e}\n", fmt::join(s.cutoffs.max_levels, " "), s.l1_previous,
                                 s.hermiticity_deviation, s.leakage);
            ctx.out << fmt::format("  [{}]: successive L1 {:.3e}\n", fmt::join(s.cutoffs.max_levels, ","),
                                   s.l1_previous);
        }
        ctx.out << fmt::format("  harmonic vs anharmonic L1 = {:.4f}\n", study.harmonic_l1);
        table << fmt::format("harmonic_vs_anharmonic,{:.6g},,\n", study.harmonic_l1);
        write_outputs(ctx, dir, "repro_anharmonic.csv", table.str());
        write_file(dir / "repro_so2_anharmonic_broadened.csv",
                   render([&](auto &s) { write_broadened_csv(s, broadened_fcp(study.anharmonic, o.sigma, o.convention)); }));
        write_file(dir / "repro_so2_harmonic_broadened.csv",
                   render([&](auto &s) { write_broadened_csv(s, broadened_fcp(study.harmonic, o.sigma, o.convention)); }));
        if (!(study.ladder.back().l1_previous < 1e-3))
            ctx.warn("anharmonic ladder has not converged below 1e-3");
    }
    return ctx.code();
}

void add_problem_flags(CLI::App *app, RunConfig &c, bool cutoffs = true) {
    app->add_option("--problem", c.problem_file, "Problem JSON file")->required();
    if (cutoffs)
        app->add_option("--cutoffs", c.cutoffs, "Highest kept level per mode, comma separated, or one for all")
            ->required();
    app->add_option("--route", c.route, "Hamiltonian construction: qp or ladder")->capture_default_str();
    app->add_option("--prefix", c.prefix, "Output file prefix (default: problem file stem)");
}

void add_broadening_flags(CLI::App *app, RunConfig &c) {
    app->add_option("--sigma", c.sigma, "Gaussian width, cm^-1")->capture_default_str();
    app->add_option("--sigma-convention", c.convention, "stddev or fwhm")->capture_default_str();
}

void add_qpe_flags(CLI::App *app, RunConfig &c) {
    app->add_option("--encoding", c.encoding, "binary or unary")->capture_default_str();
    app->add_option("--t", c.t, "Phase-register qubits")->capture_default_str();
    app->add_option("--shots", c.shots, "Measurement shots")->capture_default_str();
    app->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
    app->add_option("--backend", c.backend, "exact or trotter:<order>:<steps>")->capture_default_str();
    app->add_option("--qubit-cap", c.qubit_cap, "Maximum emulated qubits")->capture_default_str();
    app->add_option("--margin", c.margin, "Phase-map safety margin")->capture_default_str();
    app->add_option("--histogram-width", c.histogram_width, "Histogram bin width, cm^-1")->capture_default_str();
}

void add_thermal_flags(CLI::App *app, RunConfig &c) {
    app->add_option("--temperature-K", c.temperature, "Initial-surface temperature, K");
    app->add_option("--beta", c.beta, "Inverse temperature, (cm^-1)^-1");
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Vibronic spectra by exact diagonalization and emulated phase estimation"};
    app.require_subcommand(1);
    RunConfig c;
    app.add_option("--output-dir", c.output_dir,
                   fmt::format("Output directory (default: ${} or the working directory)", kOutputDirEnv));
    app.add_option("--jobs", c.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    auto *exact = app.add_subcommand("exact", "Stick, binned and broadened spectra by full diagonalization");
    add_problem_flags(exact, c);
    add_broadening_flags(exact, c);
    add_thermal_flags(exact, c);
    exact->add_option("--bin-width", c.bin_width, "Stick bin width, cm^-1")->capture_default_str();
    exact->add_option("--min-intensity", c.min_intensity, "Smallest intensity listed in the stick file")
        ->capture_default_str();

    auto *qpe = app.add_subcommand("qpe", "Sampled spectrum from emulated phase estimation");
    add_problem_flags(qpe, c);
    add_qpe_flags(qpe, c);

    auto *thermal = app.add_subcommand("thermal", "Finite-temperature sampled spectrum");
    add_problem_flags(thermal, c);
    add_qpe_flags(thermal, c);
    add_thermal_flags(thermal, c);

    std::string map_output;
    auto *map = app.add_subcommand("map", "Pauli decomposition of the Hamiltonian");
    add_problem_flags(map, c);
    map->add_option("--encoding", c.encoding, "binary or unary")->capture_default_str();
    map->add_option("--output", map_output, "Output file (default: <output-dir>/<prefix>_pauli.txt)");

    ConvergeArgs conv;
    auto *converge = app.add_subcommand("converge", "Cutoff sweep on one mode");
    add_problem_flags(converge, c, false);
    add_broadening_flags(converge, c);
    converge->add_option("--vary-mode", conv.vary_mode, "Swept mode, 1-based")->capture_default_str();
    converge->add_option("--fixed-cutoffs", conv.fixed, "Cutoffs of the other modes (default: auxiliary sweeps)");
    converge->add_option("--held-level", conv.held_level, "Level held during auxiliary sweeps")->capture_default_str();
    converge->add_option("--threshold", conv.threshold, "Successive L1 threshold")->capture_default_str();
    converge->add_option("--start", conv.start, "First level")->capture_default_str();
    converge->add_option("--max-level", conv.max_level, "Last level")->capture_default_str();

    std::string file_a, file_b;
    auto *compare = app.add_subcommand("compare", "L1 distance between two spectrum CSVs");
    compare->add_option("a", file_a, "First spectrum CSV")->required();
    compare->add_option("b", file_b, "Second spectrum CSV")->required();
    add_broadening_flags(compare, c);

    std::string study = "all";
    std::string data_dir = VIBRONIC_DATA_DIR;
    auto *repro = app.add_subcommand("repro", "Truncation and anharmonic studies end to end");
    repro->add_option("--study", study, "truncation, anharmonic or all")->capture_default_str();
    repro->add_option("--data-dir", data_dir, "Directory with the bundled problem files")->capture_default_str();
    repro->add_option("--route", c.route, "Hamiltonian construction: qp or ladder");
    add_broadening_flags(repro, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    Context ctx{out, err};
    try {
        if (*exact)
            return cmd_exact(c, ctx);
        if (*qpe)
            return cmd_qpe(c, ctx);
        if (*thermal)
            return cmd_thermal(c, ctx);
        if (*map)
            return cmd_map(c, map_output, ctx);
        if (*converge)
            return cmd_converge(c, conv, ctx);
        if (*compare)
            return cmd_compare(c, file_a, file_b, ctx);
        if (repro->parsed()) {
            if (c.route == "qp" && repro->count("--route") == 0)
                c.route = "ladder";
            return cmd_repro(c, study, data_dir, ctx);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace vibronic
