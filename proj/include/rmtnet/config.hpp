#pragma once

// Experiment configuration.
//
// Grammar: INI-style text. Sections in [brackets], one `key = value` per
// line, full-line comments starting with '#' or ';'. Lists are
// comma-separated. Unknown sections or keys are rejected.
//
//   [run]         seed, threads
//   [ensemble]    count, n, p, blocks, q
//   [unfolding]   methods, drop_top (integer or "auto" = block count), edge_fraction
//   [statistics]  density, density_bins, density_rescale, nnsd, nnsd_bin_width,
//                 sigma2, delta3, L_min, L_max, L_step, window_samples
//   [output]      dir, density_stem, nnsd_stem, sigma2_stem, delta3_stem,
//                 theory, export_spectra, export_unfolded
//
// Method names: exact, block_exact, poly<d>, poly<d>_noconst (d in 1..9).

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rmtnet/csv.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/unfolding.hpp"

namespace rmtnet {

struct MethodChoice {
    enum class Kind { exact, block_exact, polynomial } kind = Kind::exact;
    int degree = 3;
    bool include_constant = true;

    friend bool operator==(const MethodChoice&, const MethodChoice&) = default;
};

inline MethodChoice parse_method(const std::string& name) {
    if (name == "exact") return {MethodChoice::Kind::exact};
    if (name == "block_exact") return {MethodChoice::Kind::block_exact};
    if (name.rfind("poly", 0) == 0) {
        std::string rest = name.substr(4);
        bool constant = true;
        if (const auto pos = rest.find("_noconst"); pos != std::string::npos && pos + 8 == rest.size()) {
            constant = false;
            rest.erase(pos);
        }
        if (rest.size() == 1 && rest[0] >= '1' && rest[0] <= '9')
            return {MethodChoice::Kind::polynomial, rest[0] - '0', constant};
    }
    throw config_error("unknown unfolding method '" + name + "'");
}

inline std::string to_string(const MethodChoice& m) {
    switch (m.kind) {
        case MethodChoice::Kind::exact: return "exact";
        case MethodChoice::Kind::block_exact: return "block_exact";
        case MethodChoice::Kind::polynomial:
            return "poly" + std::to_string(m.degree) + (m.include_constant ? "" : "_noconst");
    }
    return "?";
}

struct TrimPolicy {
    std::optional<std::size_t> drop_top;  // nullopt: one level per block
    double edge_fraction = 0.02;

    std::size_t resolved_drop_top(std::size_t block_count) const { return drop_top.value_or(block_count); }

    friend bool operator==(const TrimPolicy&, const TrimPolicy&) = default;
};

struct StatisticsConfig {
    bool density = false;
    std::size_t density_bins = 75;
    bool density_rescale = true;
    bool nnsd = true;
    double nnsd_bin_width = 0.1;
    bool sigma2 = false;
    bool delta3 = true;
    double L_min = 0.5;
    double L_max = 50.0;
    double L_step = 0.5;
    std::size_t window_samples = 200;

    bool any_unfolded() const noexcept { return nnsd || sigma2 || delta3; }

    std::vector<double> L_grid() const {
        std::vector<double> g;
        for (std::size_t k = 0;; ++k) {
            const double L = L_min + L_step * static_cast<double>(k);
            if (L > L_max + 1e-9 * L_step) break;
            g.push_back(L);
        }
        return g;
    }

    friend bool operator==(const StatisticsConfig&, const StatisticsConfig&) = default;
};

struct OutputConfig {
    std::string dir = "rmtnet_out";
    std::string density_stem = "density";
    std::string nnsd_stem = "nnsd";
    std::string sigma2_stem = "sigma2";
    std::string delta3_stem = "delta3";
    bool theory = true;
    bool export_spectra = false;
    bool export_unfolded = false;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
    EnsembleSpec ensemble;
    std::vector<MethodChoice> methods{{MethodChoice::Kind::exact}};
    TrimPolicy trim;
    StatisticsConfig statistics;
    OutputConfig output;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency; never affects results

    void validate() const {
        ensemble.validate();
        const auto& st = statistics;
        if (!(st.density || st.any_unfolded())) throw config_error("enable at least one statistic");
        if (st.any_unfolded() && methods.empty()) throw config_error("list at least one unfolding method");
        if (!(trim.edge_fraction >= 0.0 && trim.edge_fraction <= 0.2))
            throw config_error("edge_fraction must lie in [0, 0.2]");
        if (st.density_bins < 2) throw config_error("density_bins must be >= 2");
        if (!(st.nnsd_bin_width > 0.0)) throw config_error("nnsd_bin_width must be positive");
        if (!(st.L_min > 0.0 && st.L_step > 0.0 && st.L_max >= st.L_min))
            throw config_error("L grid needs 0 < L_min <= L_max and L_step > 0");
        if (st.window_samples < 10) throw config_error("window_samples must be >= 10");
        for (const auto& m : methods)
            if (m.kind == MethodChoice::Kind::polynomial && (m.degree < 1 || m.degree > max_polynomial_degree))
                throw config_error("polynomial degree must lie in [1, 9]");
        std::set<std::string> seen;
        for (const auto& m : methods)
            if (!seen.insert(to_string(m)).second) throw config_error("duplicate method " + to_string(m));
    }

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
        return a.ensemble.count == b.ensemble.count && a.ensemble.n == b.ensemble.n &&
               a.ensemble.p_intra == b.ensemble.p_intra && a.ensemble.block_sizes == b.ensemble.block_sizes &&
               a.ensemble.q_inter == b.ensemble.q_inter && a.ensemble.seed == b.ensemble.seed &&
               a.methods == b.methods && a.trim == b.trim && a.statistics == b.statistics &&
               a.output == b.output && a.seed == b.seed && a.threads == b.threads;
    }
};

// Concrete unfolding method for an ensemble, given how many top levels are
// dropped. Bulk level counts are shared out in proportion to block size.
inline UnfoldingMethod resolve_method(const MethodChoice& m, const EnsembleSpec& ens, std::size_t drop_top) {
    const double n = static_cast<double>(ens.n);
    const double kept = (n - static_cast<double>(drop_top)) / n;
    const double sigma = bernoulli_sigma(ens.p_intra);
    switch (m.kind) {
        case MethodChoice::Kind::exact:
            if (!(sigma > 0.0)) throw config_error("exact unfolding needs 0 < p < 1");
            return SemicircleExact{n - static_cast<double>(drop_top), semicircle_radius(n, sigma)};
        case MethodChoice::Kind::block_exact: {
            if (!(sigma > 0.0)) throw config_error("exact unfolding needs 0 < p < 1");
            BlockSemicircle b;
            for (auto nb : ens.block_sizes) {
                const double size = static_cast<double>(nb);
                b.blocks.emplace_back(size * kept, semicircle_radius(size, sigma));
            }
            return b;
        }
        case MethodChoice::Kind::polynomial: return PolynomialFit{m.degree, m.include_constant};
    }
    throw config_error("unhandled method");
}

// ---- text form ---------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error(key + ": expected a boolean, got '" + v + "'");
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        return csv::to_double(v);
    } catch (const error&) {
        throw config_error(key + ": expected a number, got '" + v + "'");
    }
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw config_error(key + ": expected a non-negative integer, got '" + v + "'");
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw config_error(key + ": integer out of range '" + v + "'");
    }
}

}  // namespace detail

// Applies one `section.key = value` assignment. Used by the file parser and
// by command-line overrides.
inline void apply_setting(ExperimentConfig& c, const std::string& section, const std::string& key,
                          const std::string& value) {
    using namespace detail;
    const std::string k = section + "." + key;
    auto& e = c.ensemble;
    auto& st = c.statistics;
    auto& out = c.output;

    if (k == "run.seed") c.seed = e.seed = parse_uint(k, value);
    else if (k == "run.threads") c.threads = static_cast<unsigned>(parse_uint(k, value));
    else if (k == "ensemble.count") e.count = parse_uint(k, value);
    else if (k == "ensemble.n") e.n = parse_uint(k, value);
    else if (k == "ensemble.p") e.p_intra = parse_double(k, value);
    else if (k == "ensemble.q") e.q_inter = parse_double(k, value);
    else if (k == "ensemble.blocks") {
        e.block_sizes.clear();
        for (const auto& b : split_list(value)) e.block_sizes.push_back(parse_uint(k, b));
    } else if (k == "unfolding.methods") {
        c.methods.clear();
        for (const auto& m : split_list(value)) c.methods.push_back(parse_method(m));
    } else if (k == "unfolding.drop_top") {
        if (value == "auto") c.trim.drop_top.reset();
        else c.trim.drop_top = parse_uint(k, value);
    } else if (k == "unfolding.edge_fraction") c.trim.edge_fraction = parse_double(k, value);
    else if (k == "statistics.density") st.density = parse_bool(k, value);
    else if (k == "statistics.density_bins") st.density_bins = parse_uint(k, value);
    else if (k == "statistics.density_rescale") st.density_rescale = parse_bool(k, value);
    else if (k == "statistics.nnsd") st.nnsd = parse_bool(k, value);
    else if (k == "statistics.nnsd_bin_width") st.nnsd_bin_width = parse_double(k, value);
    else if (k == "statistics.sigma2") st.sigma2 = parse_bool(k, value);
    else if (k == "statistics.delta3") st.delta3 = parse_bool(k, value);
    else if (k == "statistics.L_min") st.L_min = parse_double(k, value);
    else if (k == "statistics.L_max") st.L_max = parse_double(k, value);
    else if (k == "statistics.L_step") st.L_step = parse_double(k, value);
    else if (k == "statistics.window_samples") st.window_samples = parse_uint(k, value);
    else if (k == "output.dir") out.dir = value;
    else if (k == "output.density_stem") out.density_stem = value;
    else if (k == "output.nnsd_stem") out.nnsd_stem = value;
    else if (k == "output.sigma2_stem") out.sigma2_stem = value;
    else if (k == "output.delta3_stem") out.delta3_stem = value;
    else if (k == "output.theory") out.theory = parse_bool(k, value);
    else if (k == "output.export_spectra") out.export_spectra = parse_bool(k, value);
    else if (k == "output.export_unfolded") out.export_unfolded = parse_bool(k, value);
    else throw config_error("unknown setting '" + k + "'");
}

// "section.key=value"
inline void apply_override(ExperimentConfig& c, const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw config_error("override must look like section.key=value, got '" + assignment + "'");
    apply_setting(c, assignment.substr(0, dot), assignment.substr(dot + 1, eq - dot - 1), assignment.substr(eq + 1));
}

// Parses the text form over `base`. When `n` is given but `blocks` is not,
// the ensemble is a single block of size n.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw config_error(std::string(e.message()) + " at line " + std::to_string(e.line()));
    }
    ExperimentConfig c = std::move(base);
    bool blocks_given = false;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw config_error("setting '" + section + "' outside a section");
        for (const auto& [key, leaf] : body) {
            if (!leaf.empty()) throw config_error("nested key under " + section + "." + key);
            apply_setting(c, section, key, leaf.data());
            if (section == "ensemble" && key == "blocks") blocks_given = true;
        }
    }
    if (!blocks_given) c.ensemble.block_sizes = {c.ensemble.n};
    c.validate();
    return c;
}

inline ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {}) {
    std::istringstream in(text);
    return parse_config(in, std::move(base));
}

// Canonical text form; parse_config(to_ini(c)) == c.
inline std::string to_ini(const ExperimentConfig& c) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::ostringstream o;
    o << "[run]\nseed = " << c.seed << "\nthreads = " << c.threads << "\n\n";
    o << "[ensemble]\ncount = " << c.ensemble.count << "\nn = " << c.ensemble.n << "\np = " << csv::fmt(c.ensemble.p_intra)
      << "\nblocks = ";
    for (std::size_t i = 0; i < c.ensemble.block_sizes.size(); ++i) o << (i ? ", " : "") << c.ensemble.block_sizes[i];
    o << "\nq = " << csv::fmt(c.ensemble.q_inter) << "\n\n";
    o << "[unfolding]\nmethods = ";
    for (std::size_t i = 0; i < c.methods.size(); ++i) o << (i ? ", " : "") << to_string(c.methods[i]);
    o << "\ndrop_top = " << (c.trim.drop_top ? std::to_string(*c.trim.drop_top) : std::string("auto"))
      << "\nedge_fraction = " << csv::fmt(c.trim.edge_fraction) << "\n\n";
    const auto& s = c.statistics;
    o << "[statistics]\ndensity = " << b(s.density) << "\ndensity_bins = " << s.density_bins
      << "\ndensity_rescale = " << b(s.density_rescale) << "\nnnsd = " << b(s.nnsd)
      << "\nnnsd_bin_width = " << csv::fmt(s.nnsd_bin_width) << "\nsigma2 = " << b(s.sigma2)
      << "\ndelta3 = " << b(s.delta3) << "\nL_min = " << csv::fmt(s.L_min) << "\nL_max = " << csv::fmt(s.L_max)
      << "\nL_step = " << csv::fmt(s.L_step) << "\nwindow_samples = " << s.window_samples << "\n\n";
    const auto& out = c.output;
    o << "[output]\ndir = " << out.dir << "\ndensity_stem = " << out.density_stem << "\nnnsd_stem = " << out.nnsd_stem
      << "\nsigma2_stem = " << out.sigma2_stem << "\ndelta3_stem = " << out.delta3_stem
      << "\ntheory = " << b(out.theory) << "\nexport_spectra = " << b(out.export_spectra)
      << "\nexport_unfolded = " << b(out.export_unfolded) << "\n";
    return o.str();
}

}  // namespace rmtnet
