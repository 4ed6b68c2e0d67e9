#pragma once

// Experiment orchestration: spectra -> trim -> unfold -> statistics ->
// ensemble averages -> CSV files, method sidecars and a JSON manifest.
//
// Per-member work fans out over threads; every member writes only its own
// slot, and reductions and file writes run afterwards in member order, so the
// output bytes do not depend on the thread count.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "rmtnet/config.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/fluctuation.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/parallel.hpp"
#include "rmtnet/random.hpp"
#include "rmtnet/spectrum.hpp"
#include "rmtnet/theory.hpp"
#include "rmtnet/unfolding.hpp"

#ifndef RMTNET_VERSION
#define RMTNET_VERSION "0.0.0"
#endif

namespace rmtnet {

inline constexpr const char* version = RMTNET_VERSION;

// Window-seed tags: seed for (statistic, member, L index) is
// mix_seed(run seed, {tag, member, index}); the same windows are reused for
// every unfolding method.
inline constexpr std::uint64_t sigma2_seed_tag = 1;
inline constexpr std::uint64_t delta3_seed_tag = 2;

struct MemberFailure {
    std::size_t member = 0;
    std::string stage;   // generate, eigen, trim, unfold, nnsd, sigma2, delta3
    std::string method;  // empty for stages before unfolding
    std::string message;
    error::category category = error::category::numerical;
};

struct FileRecord {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct MethodResult {
    std::string label;
    UnfoldingMethod method;
    std::vector<std::size_t> members;                // members that completed this method
    std::vector<std::vector<double>> levels;         // unfolded levels, per completed member
    std::vector<std::vector<double>> spacing_lists;  // per completed member
    std::optional<SpacingHistogram> nnsd;
    std::optional<StatCurve> sigma2;
    std::optional<StatCurve> delta3;

    std::vector<double> pooled_spacings() const {
        std::vector<double> all;
        for (const auto& s : spacing_lists) all.insert(all.end(), s.begin(), s.end());
        return all;
    }
};

struct NamedDensity {
    std::string name;
    DensityHistogram histogram;
    bool rescaled = false;
};

struct ResultBundle {
    ExperimentConfig config;
    std::string config_echo;
    std::vector<Spectrum> spectra;  // raw, per member (empty slot on failure)
    std::vector<NamedDensity> densities;
    std::vector<MethodResult> methods;
    std::vector<StatCurve> theory;
    std::vector<MemberFailure> failures;
    std::vector<FileRecord> files;
    std::string version = rmtnet::version;
    std::string created_utc;

    bool ok() const noexcept { return failures.empty(); }

    const MethodResult& method(const std::string& label) const {
        for (const auto& m : methods)
            if (m.label == label) return m;
        throw config_error("no results for method '" + label + "'");
    }
};

// ---- file helpers --------------------------------------------------------------

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw io_error("SHA-256 digest failed");
    std::ostringstream o;
    for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return o.str();
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw io_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

// Single writer: serializes into memory, writes, and records the hash.
class OutputWriter {
public:
    explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) { ensure_directory(dir_); }

    const std::filesystem::path& dir() const noexcept { return dir_; }
    const std::vector<FileRecord>& records() const noexcept { return records_; }

    template <typename Fn>
    void write(const std::string& relative, Fn&& fill) {
        std::ostringstream buf;
        fill(buf);
        put(relative, buf.str());
    }

    void put(const std::string& relative, const std::string& content) {
        const auto path = dir_ / relative;
        if (path.has_parent_path()) ensure_directory(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + path.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) throw io_error("failed writing " + path.string());
        for (auto& r : records_)
            if (r.path == relative) {
                r = {relative, sha256_hex(content), content.size()};
                return;
            }
        records_.push_back({relative, sha256_hex(content), content.size()});
    }

    // Records files already written to this directory by another writer.
    void adopt(const std::vector<FileRecord>& files) { records_.insert(records_.end(), files.begin(), files.end()); }

private:
    std::filesystem::path dir_;
    std::vector<FileRecord> records_;
};

inline std::string category_name(error::category c) {
    switch (c) {
        case error::category::config: return "config";
        case error::category::numerical: return "numerical";
        case error::category::io: return "io";
    }
    return "?";
}

// Manifest for one output directory. Lists every file written, including the
// config echoes; status is FAILED if any member failed at any stage.
inline void write_manifest(OutputWriter& w, const std::vector<const ResultBundle*>& bundles,
                           const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json m;
    bool ok = true;
    auto failures = nlohmann::json::array();
    auto runs = nlohmann::json::array();
    for (const auto* b : bundles) {
        ok = ok && b->ok();
        for (const auto& f : b->failures)
            failures.push_back({{"member", f.member},
                                {"stage", f.stage},
                                {"method", f.method},
                                {"category", category_name(f.category)},
                                {"message", f.message}});
        runs.push_back({{"seed", b->config.seed}, {"members", b->config.ensemble.count}});
    }
    m["tool"] = "rmtnet";
    m["version"] = rmtnet::version;
    m["created_utc"] = bundles.empty() ? utc_timestamp() : bundles.front()->created_utc;
    m["status"] = ok ? "OK" : "FAILED";
    m["runs"] = runs;
    m["failures"] = failures;
    for (const auto& [k, v] : extra.items()) m[k] = v;
    auto files = nlohmann::json::array();
    for (const auto& r : w.records()) files.push_back({{"path", r.path}, {"sha256", r.sha256}, {"bytes", r.bytes}});
    m["files"] = files;
    w.put("manifest.json", m.dump(2) + "\n");
}

// ---- core run --------------------------------------------------------------------

using SpectrumSource = std::function<Spectrum(std::size_t member)>;

struct RunOptions {
    std::string config_echo_name = "config.ini";
    bool write_manifest = true;
    nlohmann::json manifest_extra = nlohmann::json::object();
};

namespace detail {

struct MethodWork {
    bool ok = false;
    UnfoldedSpectrum unfolded;
    std::vector<double> spacings;
    std::vector<double> sigma2;
    std::vector<double> delta3;
};

struct MemberWork {
    std::optional<Spectrum> raw;
    std::optional<Spectrum> bulk;  // top levels dropped only
    std::vector<MethodWork> methods;
    std::vector<MemberFailure> failures;
    std::exception_ptr first_error;
};

inline std::vector<double> grid(double lo, double hi, std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    return g;
}

inline std::string padded(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03zu", i);
    return buf;
}

// Semicircle mixture for the block model with q = 0: weights n_b / n.
inline double block_density(const EnsembleSpec& e, double radius_scale, double x) {
    double d = 0.0;
    const double n = static_cast<double>(e.n);
    for (auto nb : e.block_sizes) {
        const double w = static_cast<double>(nb) / n;
        d += w * theory::semicircle_density(1.0, radius_scale * std::sqrt(static_cast<double>(nb)), x);
    }
    return d;
}

inline bool two_equal_blocks(const EnsembleSpec& e) {
    return e.block_sizes.size() == 2 && e.block_sizes[0] == e.block_sizes[1] && e.q_inter == 0.0;
}

}  // namespace detail

inline ResultBundle run_on_spectra(const ExperimentConfig& cfg, std::size_t members, const SpectrumSource& source,
                                   const RunOptions& opts = {}) {
    cfg.validate();
    const auto& st = cfg.statistics;
    const auto& ens = cfg.ensemble;
    const std::size_t drop = cfg.trim.resolved_drop_top(ens.block_sizes.size());
    const auto L_grid = st.L_grid();

    std::vector<UnfoldingMethod> methods;
    if (st.any_unfolded())
        for (const auto& m : cfg.methods) methods.push_back(resolve_method(m, ens, drop));

    ResultBundle bundle;
    bundle.config = cfg;
    bundle.config_echo = to_ini(cfg);
    bundle.created_utc = utc_timestamp();

    std::vector<detail::MemberWork> work(members);
    parallel_for(members, cfg.threads, [&](std::size_t i) {
        auto& w = work[i];
        auto fail = [&](const char* stage, const std::string& method, const error& e) {
            w.failures.push_back({i, stage, method, e.what(), e.kind()});
            if (!w.first_error) w.first_error = std::current_exception();
        };
        const char* stage = "eigen";
        try {
            w.raw = source(i);
            stage = "trim";
            w.bulk = trim_spectrum(*w.raw, drop, 0.0);
        } catch (const error& e) {
            fail(stage, {}, e);
            return;
        }
        if (methods.empty()) return;

        Spectrum trimmed;
        try {
            trimmed = trim_spectrum(*w.raw, drop, cfg.trim.edge_fraction);
        } catch (const error& e) {
            fail("trim", {}, e);
            return;
        }
        w.methods.resize(methods.size());
        for (std::size_t m = 0; m < methods.size(); ++m) {
            auto& mw = w.methods[m];
            const auto label = method_label(methods[m]);
            stage = "unfold";
            try {
                mw.unfolded = unfold(trimmed, methods[m]);
                const auto levels = std::span<const double>(mw.unfolded.levels);
                if (st.nnsd) {
                    stage = "nnsd";
                    mw.spacings = spacings(levels);
                }
                if (st.sigma2) {
                    stage = "sigma2";
                    for (std::size_t k = 0; k < L_grid.size(); ++k)
                        mw.sigma2.push_back(number_variance(levels, L_grid[k], st.window_samples,
                                                            mix_seed(cfg.seed, {sigma2_seed_tag, i, k}))
                                                .variance);
                }
                if (st.delta3) {
                    stage = "delta3";
                    for (std::size_t k = 0; k < L_grid.size(); ++k)
                        mw.delta3.push_back(delta3_direct(levels, L_grid[k], st.window_samples,
                                                          mix_seed(cfg.seed, {delta3_seed_tag, i, k})));
                }
                mw.ok = true;
            } catch (const error& e) {
                fail(stage, label, e);
            }
        }
    });

    // ---- reductions (member order) ----
    std::exception_ptr first_error;
    for (std::size_t i = 0; i < members; ++i) {
        if (!first_error) first_error = work[i].first_error;
        for (auto& f : work[i].failures) bundle.failures.push_back(std::move(f));
        bundle.spectra.push_back(work[i].raw.value_or(Spectrum{}));
    }

    if (st.density) {
        std::vector<Spectrum> pool;
        for (const auto& w : work)
            if (w.bulk) pool.push_back(*w.bulk);
        if (!pool.empty()) {
            auto h = density_histogram(pool, st.density_bins);
            const bool rescale = st.density_rescale && ens.p_intra > 0.0 && ens.p_intra < 1.0;
            if (rescale) h = rescale_density(h, ens.n, ens.p_intra);
            bundle.densities.push_back({cfg.output.density_stem, std::move(h), rescale});
        }
    }

    for (std::size_t m = 0; m < methods.size(); ++m) {
        MethodResult r{method_label(methods[m]), methods[m], {}, {}, {}, std::nullopt, std::nullopt, std::nullopt};
        std::vector<std::vector<double>> s2, d3;
        for (std::size_t i = 0; i < members; ++i) {
            if (work[i].methods.size() <= m || !work[i].methods[m].ok) continue;
            auto& mw = work[i].methods[m];
            r.members.push_back(i);
            r.levels.push_back(std::move(mw.unfolded.levels));
            if (st.nnsd) r.spacing_lists.push_back(std::move(mw.spacings));
            if (st.sigma2) s2.push_back(std::move(mw.sigma2));
            if (st.delta3) d3.push_back(std::move(mw.delta3));
        }
        if (r.members.empty()) continue;
        if (st.nnsd) r.nnsd = nnsd(r.spacing_lists, st.nnsd_bin_width);
        if (st.sigma2) r.sigma2 = ensemble_average(L_grid, s2, CurveKind::sigma2, r.label);
        if (st.delta3) r.delta3 = ensemble_average(L_grid, d3, CurveKind::delta3, r.label);
        bundle.methods.push_back(std::move(r));
    }

    // ---- theory references ----
    if (cfg.output.theory) {
        using theory::CurveId;
        auto add = [&](CurveId id, const std::vector<double>& g) {
            bundle.theory.push_back(theory::sample({id, std::nullopt, std::nullopt}, g));
        };
        const bool two = detail::two_equal_blocks(ens);
        if (st.nnsd) {
            const auto g = detail::grid(0.0, 5.0, 501);
            add(CurveId::goe_nnsd, g);
            add(CurveId::poisson_nnsd, g);
            if (two) add(CurveId::two_goe_nnsd, g);
        }
        if (st.sigma2) {
            add(CurveId::goe_sigma2, L_grid);
            add(CurveId::poisson_sigma2, L_grid);
            if (two) add(CurveId::two_goe_sigma2, L_grid);
        }
        if (st.delta3) {
            add(CurveId::goe_delta3, L_grid);
            add(CurveId::poisson_delta3, L_grid);
            if (two) add(CurveId::two_goe_delta3, L_grid);
        }
        if (!bundle.densities.empty() && (ens.block_sizes.size() == 1 || ens.q_inter == 0.0)) {
            const auto& d = bundle.densities.front();
            const double sigma = bernoulli_sigma(ens.p_intra);
            // rescaled units put a block of size n_b at radius 2 sqrt(n_b / n)
            const double scale = d.rescaled ? 2.0 / std::sqrt(static_cast<double>(ens.n)) : 2.0 * sigma;
            if (scale > 0.0) {
                const auto& e = d.histogram.bin_edges;
                StatCurve c{detail::grid(e.front(), e.back(), 401), {}, {}, CurveKind::theory, "semicircle_density"};
                for (double x : c.L_values) c.means.push_back(detail::block_density(ens, scale, x));
                c.std_errors.assign(c.L_values.size(), 0.0);
                bundle.theory.push_back(std::move(c));
            }
        }
    }

    // ---- single writer ----
    OutputWriter w(cfg.output.dir);
    w.put(opts.config_echo_name, bundle.config_echo);
    const auto& out = cfg.output;
    auto sidecar = [&](const MethodResult& r, const char* statistic, std::size_t member_count) {
        nlohmann::json j{{"statistic", statistic},
                         {"method", method_label(r.method)},
                         {"unfolding", to_json(r.method)},
                         {"trim", {{"drop_top", drop}, {"edge_fraction", cfg.trim.edge_fraction}}},
                         {"members", member_count},
                         {"seed", cfg.seed}};
        if (std::string(statistic) == "nnsd") j["bin_width"] = st.nnsd_bin_width;
        else j["window_samples"] = st.window_samples;
        return j.dump(2) + "\n";
    };

    for (const auto& d : bundle.densities)
        w.write(d.name + ".csv", [&](std::ostream& o) { write_density_csv(o, d.histogram); });
    for (const auto& r : bundle.methods) {
        if (r.nnsd) {
            w.write(out.nnsd_stem + "_" + r.label + ".csv", [&](std::ostream& o) { write_spacing_csv(o, *r.nnsd); });
            w.put(out.nnsd_stem + "_" + r.label + ".method.json", sidecar(r, "nnsd", r.members.size()));
        }
        if (r.sigma2) {
            w.write(out.sigma2_stem + "_" + r.label + ".csv", [&](std::ostream& o) { write_curve_csv(o, *r.sigma2); });
            w.put(out.sigma2_stem + "_" + r.label + ".method.json", sidecar(r, "sigma2", r.members.size()));
        }
        if (r.delta3) {
            w.write(out.delta3_stem + "_" + r.label + ".csv", [&](std::ostream& o) { write_curve_csv(o, *r.delta3); });
            w.put(out.delta3_stem + "_" + r.label + ".method.json", sidecar(r, "delta3", r.members.size()));
        }
    }
    for (const auto& c : bundle.theory) {
        std::string stem = out.density_stem;
        if (c.method.find("nnsd") != std::string::npos) stem = out.nnsd_stem;
        else if (c.method.find("sigma2") != std::string::npos) stem = out.sigma2_stem;
        else if (c.method.find("delta3") != std::string::npos) stem = out.delta3_stem;
        w.write(stem + "_theory_" + c.method + ".csv", [&](std::ostream& o) { write_curve_csv(o, c); });
    }
    if (out.export_spectra)
        for (std::size_t i = 0; i < bundle.spectra.size(); ++i)
            if (!bundle.spectra[i].values.empty())
                w.write("spectra/member_" + detail::padded(i) + ".csv",
                        [&](std::ostream& o) { write_spectrum_csv(o, bundle.spectra[i]); });
    if (out.export_unfolded)
        for (const auto& r : bundle.methods) {
            for (std::size_t k = 0; k < r.members.size(); ++k)
                w.write("unfolded/" + r.label + "_member_" + detail::padded(r.members[k]) + ".csv", [&](std::ostream& o) {
                    write_unfolded_csv(o, UnfoldedSpectrum{r.levels[k], r.method, {}, std::nullopt});
                });
            w.put("unfolded/" + r.label + ".method.json", sidecar(r, "unfolded", r.members.size()));
        }

    bundle.files = w.records();
    if (opts.write_manifest) {
        write_manifest(w, {&bundle}, opts.manifest_extra);
        bundle.files = w.records();
    }

    // Nothing usable came out: surface the first member error to the caller.
    if (first_error && bundle.densities.empty() && bundle.methods.empty()) std::rethrow_exception(first_error);
    return bundle;
}

inline ResultBundle run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
    cfg.validate();
    const auto& ens = cfg.ensemble;
    return run_on_spectra(cfg, ens.count, [&](std::size_t i) {
        return eigenvalues(generate_member(ens, i), "member " + std::to_string(i));
    }, opts);
}

// ---- canned figure runs -------------------------------------------------------

inline ExperimentConfig figure_config(int which, std::uint64_t seed, const std::string& dir) {
    ExperimentConfig c;
    c.seed = c.ensemble.seed = seed;
    c.output.dir = dir;
    c.trim.edge_fraction = 0.0;
    c.statistics.nnsd = true;
    c.statistics.delta3 = true;
    c.statistics.sigma2 = false;
    switch (which) {
        case 2:
            c.methods = {parse_method("exact"), parse_method("poly3"), parse_method("poly4"), parse_method("poly5")};
            c.output.nnsd_stem = "fig2a";
            c.output.delta3_stem = "fig2b";
            return c;
        case 3:
            c.ensemble.block_sizes = {500, 500};
            c.methods = {parse_method("block_exact"), parse_method("poly3"), parse_method("poly4"),
                         parse_method("poly5")};
            c.output.nnsd_stem = "fig3a";
            c.output.delta3_stem = "fig3b";
            return c;
        default: throw config_error("figure id must be 1, 2 or 3, got " + std::to_string(which));
    }
}

inline constexpr double figure1_p[] = {0.001, 0.01, 0.1};

inline std::string p_tag(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

inline ResultBundle reproduce_figure(int which, std::uint64_t seed, const std::string& dir, unsigned threads = 0) {
    if (which == 2 || which == 3) {
        auto c = figure_config(which, seed, dir);
        c.threads = threads;
        return run_experiment(c, {"fig" + std::to_string(which) + ".ini", true, {{"figure", which}}});
    }
    if (which != 1) throw config_error("figure id must be 1, 2 or 3, got " + std::to_string(which));

    ResultBundle merged;
    std::vector<ResultBundle> parts;
    for (double p : figure1_p) {
        ExperimentConfig c;
        c.seed = c.ensemble.seed = seed;
        c.ensemble.p_intra = p;
        c.threads = threads;
        c.methods.clear();
        c.statistics = StatisticsConfig{};
        c.statistics.density = true;
        c.statistics.nnsd = c.statistics.delta3 = c.statistics.sigma2 = false;
        c.output.dir = dir;
        c.output.theory = false;
        c.output.density_stem = "fig1_density_p" + p_tag(p);
        parts.push_back(run_experiment(c, {"fig1_p" + p_tag(p) + ".ini", false, {}}));
    }

    OutputWriter w(dir);
    for (const auto& b : parts) w.adopt(b.files);

    // Rescaled semicircle: radius 2, unit area.
    StatCurve sc{detail::grid(-2.5, 2.5, 501), {}, {}, CurveKind::theory, "semicircle_density"};
    for (double x : sc.L_values) sc.means.push_back(theory::semicircle_density(1.0, 2.0, x));
    sc.std_errors.assign(sc.L_values.size(), 0.0);
    w.write("fig1_semicircle.csv", [&](std::ostream& o) { write_curve_csv(o, sc); });

    merged.config = parts.back().config;
    merged.config_echo = parts.back().config_echo;
    merged.created_utc = parts.front().created_utc;
    for (auto& b : parts) {
        for (auto& d : b.densities) merged.densities.push_back(std::move(d));
        for (auto& f : b.failures) merged.failures.push_back(std::move(f));
    }
    merged.theory.push_back(std::move(sc));
    std::vector<const ResultBundle*> ptrs;
    for (const auto& b : parts) ptrs.push_back(&b);
    write_manifest(w, ptrs, {{"figure", 1}});
    merged.files = w.records();
    return merged;
}

// ---- single network ------------------------------------------------------------

inline ExperimentConfig analyze_defaults(const std::string& dir) {
    ExperimentConfig c;
    c.ensemble.count = 1;
    c.methods = {parse_method("poly3"), parse_method("poly4"), parse_method("poly5")};
    c.trim.drop_top = 1;
    c.statistics.density = true;
    c.statistics.density_rescale = false;
    c.statistics.nnsd = c.statistics.sigma2 = c.statistics.delta3 = true;
    c.output.dir = dir;
    return c;
}

// Overrides use "section.key=value"; ensemble settings come from the file and
// cannot be overridden.
inline ResultBundle analyze_file(const std::filesystem::path& edge_list, const std::vector<std::string>& overrides,
                                 const std::string& dir) {
    std::ifstream in(edge_list, std::ios::binary);
    if (!in) throw io_error("cannot open edge list " + edge_list.string());
    std::ostringstream raw;
    raw << in.rdbuf();
    std::istringstream text(raw.str());
    auto ingest = ingest_edge_list(text);

    auto cfg = analyze_defaults(dir);
    for (const auto& o : overrides) {
        if (o.rfind("ensemble.", 0) == 0) throw config_error("ensemble settings are fixed by the input file");
        apply_override(cfg, o);
    }
    const std::size_t n = ingest.matrix.size();
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    cfg.ensemble.count = 1;
    cfg.ensemble.n = n;
    cfg.ensemble.block_sizes = {n};
    cfg.ensemble.p_intra = static_cast<double>(ingest.matrix.edge_count()) / pairs;
    cfg.ensemble.q_inter = 0.0;

    nlohmann::json extra{{"input",
                          {{"path", edge_list.string()},
                           {"sha256", sha256_hex(raw.str())},
                           {"nodes", n},
                           {"edges", ingest.matrix.edge_count()},
                           {"self_loops_dropped", ingest.self_loops_dropped},
                           {"duplicate_edges", ingest.duplicate_edges}}}};
    const auto spectrum = eigenvalues(ingest.matrix, edge_list.filename().string());
    return run_on_spectra(cfg, 1, [&](std::size_t) { return spectrum; }, {"config.ini", true, extra});
}

}  // namespace rmtnet
