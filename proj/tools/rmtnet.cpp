// rmtnet: level statistics of random-network spectra.
//
//   rmtnet generate --n 1000 --p 0.1 [--blocks 500,500 --q 0] [--count 20] [--seed S] [--out DIR]
//   rmtnet run CONFIG [--set section.key=value ...] [--out DIR] [--threads T]
//   rmtnet reproduce-fig {1|2|3} [--seed S] [--out DIR] [--threads T]
//   rmtnet analyze EDGE_LIST [--set section.key=value ...] [--out DIR]
//   rmtnet theory CURVE --grid LO:HI:STEP [--n N --a A] [--out FILE]
//
// The default output directory is $RMTNET_OUTPUT_DIR, else ./rmtnet_out.
// Exit codes: 0 ok, 2 configuration, 3 numerical, 4 i/o.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmtnet/config.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/pipeline.hpp"
#include "rmtnet/spectrum.hpp"
#include "rmtnet/theory.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;

int exit_code(rmtnet::error::category c) {
    switch (c) {
        case rmtnet::error::category::config: return exit_config;
        case rmtnet::error::category::numerical: return exit_numerical;
        case rmtnet::error::category::io: return exit_io;
    }
    return exit_numerical;
}

std::string default_output_dir() {
    if (const char* env = std::getenv("RMTNET_OUTPUT_DIR"); env && *env) return env;
    return "rmtnet_out";
}

std::vector<std::size_t> parse_blocks(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& item : rmtnet::detail::split_list(text))
        out.push_back(rmtnet::detail::parse_uint("--blocks", item));
    if (out.empty()) throw rmtnet::config_error("--blocks is empty");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = rmtnet::csv::split(text, ':');
    if (parts.size() != 3) throw rmtnet::config_error("--grid must be LO:HI:STEP");
    const double lo = rmtnet::detail::parse_double("--grid", parts[0]);
    const double hi = rmtnet::detail::parse_double("--grid", parts[1]);
    const double step = rmtnet::detail::parse_double("--grid", parts[2]);
    if (!(step > 0.0) || !(hi >= lo)) throw rmtnet::config_error("--grid needs LO <= HI and STEP > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw rmtnet::config_error("--grid has too many points");
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; ++k) g[k] = lo + step * static_cast<double>(k);
    return g;
}

int report(const rmtnet::ResultBundle& b, const std::string& dir) {
    std::cout << "wrote " << b.files.size() << " files to " << dir << "\n";
    if (b.ok()) return exit_ok;
    for (const auto& f : b.failures)
        std::cerr << "FAILED member " << f.member << " stage " << f.stage << (f.method.empty() ? "" : " method ")
                  << f.method << ": " << f.message << "\n";
    return exit_code(b.failures.front().category);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level statistics of random-network adjacency spectra"};
    app.set_version_flag("--version", std::string(rmtnet::version));
    app.require_subcommand(1);

    std::string out_dir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> sets;

    auto* gen = app.add_subcommand("generate", "Write an ensemble of random networks as edge lists");
    rmtnet::EnsembleSpec spec;
    std::string blocks;
    bool with_spectra = false;
    gen->add_option("--n", spec.n, "Number of nodes")->required();
    gen->add_option("--p", spec.p_intra, "Connection probability (within blocks)")->required();
    gen->add_option("--blocks", blocks, "Comma-separated block sizes (default: one block)");
    gen->add_option("--q", spec.q_inter, "Connection probability between blocks");
    gen->add_option("--count", spec.count, "Ensemble size")->capture_default_str();
    gen->add_option("--seed", seed, "Ensemble seed");
    gen->add_option("--out", out_dir, "Output directory");
    gen->add_flag("--spectra", with_spectra, "Also write eigenvalue CSVs");
    gen->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    std::string config_path;
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--set", sets, "Override, section.key=value (repeatable)");
    run->add_option("--out", out_dir, "Output directory (overrides the config)");
    run->add_option("--threads", threads, "Worker threads (overrides the config)");

    auto* fig = app.add_subcommand("reproduce-fig", "Run a canned figure configuration");
    int figure = 0;
    fig->add_option("which", figure, "Figure id")->required()->check(CLI::IsMember({1, 2, 3}));
    fig->add_option("--seed", seed, "Ensemble seed");
    fig->add_option("--out", out_dir, "Output directory");
    fig->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* analyze = app.add_subcommand("analyze", "Single-network statistics from an edge list");
    std::string edge_list;
    analyze->add_option("edge-list", edge_list, "Edge list file")->required();
    analyze->add_option("--set", sets, "Override, section.key=value (repeatable)");
    analyze->add_option("--out", out_dir, "Output directory");

    auto* th = app.add_subcommand("theory", "Sample a reference curve on a grid");
    std::string curve, grid, theory_out;
    std::optional<double> th_n, th_a;
    std::string curve_help = "One of:";
    for (const auto& [id, name] : rmtnet::theory::curve_names()) curve_help += " " + name;
    th->add_option("curve", curve, curve_help)->required();
    th->add_option("--grid", grid, "LO:HI:STEP")->required();
    th->add_option("--n", th_n, "Level count (semicircle_density)");
    th->add_option("--a", th_a, "Radius (semicircle_density)");
    th->add_option("--out", theory_out, "Output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (gen->parsed()) {
            spec.seed = seed;
            spec.block_sizes = blocks.empty() ? std::vector<std::size_t>{spec.n} : parse_blocks(blocks);
            spec.validate();
            const std::string dir = out_dir.empty() ? default_output_dir() : out_dir;
            rmtnet::OutputWriter w(dir);
            const auto members = rmtnet::generate_ensemble(spec, threads);
            for (std::size_t i = 0; i < members.size(); ++i) {
                const auto name = "member_" + rmtnet::detail::padded(i);
                w.write(name + ".edges", [&](std::ostream& o) { rmtnet::write_edge_list(o, members[i]); });
                if (with_spectra)
                    w.write(name + ".csv", [&](std::ostream& o) {
                        rmtnet::write_spectrum_csv(o, rmtnet::eigenvalues(members[i], name));
                    });
            }
            rmtnet::write_manifest(w, {}, {{"ensemble",
                                            {{"count", spec.count},
                                             {"n", spec.n},
                                             {"p", spec.p_intra},
                                             {"blocks", spec.block_sizes},
                                             {"q", spec.q_inter},
                                             {"seed", spec.seed}}}});
            std::cout << "wrote " << members.size() << " networks to " << dir << "\n";
            return exit_ok;
        }

        if (run->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw rmtnet::io_error("cannot open config " + config_path);
            rmtnet::ExperimentConfig base;
            base.output.dir = default_output_dir();
            auto cfg = rmtnet::parse_config(in, base);
            for (const auto& s : sets) rmtnet::apply_override(cfg, s);
            if (!out_dir.empty()) cfg.output.dir = out_dir;
            if (run->count("--threads")) cfg.threads = threads;
            cfg.validate();
            return report(rmtnet::run_experiment(cfg), cfg.output.dir);
        }

        if (fig->parsed()) {
            const std::string dir = out_dir.empty() ? default_output_dir() : out_dir;
            return report(rmtnet::reproduce_figure(figure, seed, dir, threads), dir);
        }

        if (analyze->parsed()) {
            const std::string dir = out_dir.empty() ? default_output_dir() : out_dir;
            return report(rmtnet::analyze_file(edge_list, sets, dir), dir);
        }

        if (th->parsed()) {
            rmtnet::theory::TheoryCurveSpec ts{rmtnet::theory::parse_curve(curve), th_n, th_a};
            const auto c = rmtnet::theory::sample(ts, parse_grid(grid));
            if (theory_out.empty()) {
                rmtnet::write_curve_csv(std::cout, c);
            } else {
                std::ofstream out(theory_out, std::ios::binary);
                if (!out) throw rmtnet::io_error("cannot open " + theory_out + " for writing");
                rmtnet::write_curve_csv(out, c);
                out.close();
                if (!out) throw rmtnet::io_error("failed writing " + theory_out);
            }
            return exit_ok;
        }
    } catch (const rmtnet::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return exit_numerical;
    }
    return exit_config;
}
