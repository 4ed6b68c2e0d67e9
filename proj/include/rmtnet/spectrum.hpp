#pragma once

// Adjacency spectra, the empirical staircase, and pooled density histograms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmtnet/csv.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/network.hpp"

namespace rmtnet {

struct Spectrum {
    std::vector<double> values;  // ascending
    std::size_t source_n = 0;
    std::string source_meta;

    std::size_t size() const noexcept { return values.size(); }
};

// All eigenvalues of the adjacency matrix, ascending. Householder
// tridiagonalization followed by implicit symmetric QR; no eigenvectors.
inline Spectrum eigenvalues(const AdjacencyMatrix& a, std::string meta = {}) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eigenvalue iteration did not converge (n=" + std::to_string(a.size()) + ", " +
                              meta + ")");

    Spectrum s;
    s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(s.values.begin(), s.values.end());
    s.source_n = a.size();
    s.source_meta = std::move(meta);
    return s;
}

// Number of levels <= e.
inline std::size_t staircase(std::span<const double> sorted_levels, double e) {
    return static_cast<std::size_t>(std::upper_bound(sorted_levels.begin(), sorted_levels.end(), e) -
                                    sorted_levels.begin());
}

inline std::size_t staircase(const Spectrum& s, double e) { return staircase(std::span<const double>(s.values), e); }

// Removes the drop_top largest levels, then floor(edge_fraction * remaining)
// from each end.
inline Spectrum trim_spectrum(const Spectrum& s, std::size_t drop_top, double edge_fraction) {
    if (!(edge_fraction >= 0.0 && edge_fraction <= 0.2))
        throw invalid_parameter("edge_fraction must lie in [0, 0.2]");
    if (drop_top >= s.size()) throw insufficient_levels("cannot drop " + std::to_string(drop_top) + " of " +
                                                        std::to_string(s.size()) + " levels");
    const std::size_t remaining = s.size() - drop_top;
    const auto edge = static_cast<std::size_t>(std::floor(edge_fraction * static_cast<double>(remaining)));
    if (remaining < 2 * edge + 10)
        throw insufficient_levels("trimmed spectrum would keep " + std::to_string(remaining - 2 * edge) +
                                  " levels, need at least 10");

    Spectrum out;
    out.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(edge),
                      s.values.begin() + static_cast<std::ptrdiff_t>(remaining - edge));
    out.source_n = s.source_n;
    out.source_meta = s.source_meta;
    return out;
}

// ---- density histograms ------------------------------------------------------

struct DensityHistogram {
    std::vector<double> bin_edges;  // bin_count + 1 ascending edges
    std::vector<double> densities;  // per unit E
    std::size_t total_weight = 0;   // levels that fell inside the range

    std::size_t bin_count() const noexcept { return densities.size(); }

    double area() const {
        double a = 0.0;
        for (std::size_t b = 0; b < densities.size(); ++b) a += densities[b] * (bin_edges[b + 1] - bin_edges[b]);
        return a;
    }
};

constexpr std::size_t default_density_bins = 75;

// Pooled unit-area density of all supplied levels. Without an explicit range
// the pool's [min, max] is widened by one nominal bin width on each side.
// Levels outside an explicit range are not counted.
inline DensityHistogram density_histogram(std::span<const Spectrum> specs, std::size_t bin_count = default_density_bins,
                                          std::optional<std::pair<double, double>> range = std::nullopt) {
    if (bin_count < 2) throw invalid_parameter("density histogram needs at least 2 bins");
    double lo = INFINITY, hi = -INFINITY;
    std::size_t pooled = 0;
    for (const auto& s : specs) {
        pooled += s.size();
        if (!s.values.empty()) {
            lo = std::min(lo, s.values.front());
            hi = std::max(hi, s.values.back());
        }
    }
    if (pooled == 0) throw empty_input("no eigenvalues to histogram");

    if (range) {
        std::tie(lo, hi) = *range;
        if (!(hi > lo)) throw invalid_parameter("histogram range must have hi > lo");
    } else if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    } else {
        const double w0 = (hi - lo) / static_cast<double>(bin_count);
        lo -= w0;
        hi += w0;
    }

    DensityHistogram h;
    h.bin_edges.resize(bin_count + 1);
    const double width = (hi - lo) / static_cast<double>(bin_count);
    for (std::size_t b = 0; b <= bin_count; ++b) h.bin_edges[b] = lo + width * static_cast<double>(b);
    h.bin_edges.back() = hi;

    std::vector<std::size_t> counts(bin_count, 0);
    for (const auto& s : specs) {
        for (double v : s.values) {
            if (v < lo || v > hi) continue;
            auto b = static_cast<std::size_t>((v - lo) / width);
            counts[std::min(b, bin_count - 1)]++;
            ++h.total_weight;
        }
    }
    if (h.total_weight == 0) throw empty_input("no eigenvalues inside histogram range");

    h.densities.resize(bin_count);
    for (std::size_t b = 0; b < bin_count; ++b)
        h.densities[b] = static_cast<double>(counts[b]) / (static_cast<double>(h.total_weight) *
                                                           (h.bin_edges[b + 1] - h.bin_edges[b]));
    return h;
}

// Rescales E by [Np(1-p)]^{-1/2} and rho by [Np(1-p)]^{1/2}.
inline DensityHistogram rescale_density(const DensityHistogram& h, std::size_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw invalid_parameter("rescaling needs p in (0,1); variance p(1-p) is degenerate");
    const double factor = 1.0 / std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    DensityHistogram out = h;
    for (auto& e : out.bin_edges) e *= factor;
    for (auto& d : out.densities) d /= factor;
    return out;
}

// ---- CSV -----------------------------------------------------------------

inline void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < s.size(); ++i) out << i << ',' << csv::fmt(s.values[i]) << '\n';
}

inline Spectrum read_spectrum_csv(std::istream& in, std::string meta = {}) {
    Spectrum s;
    for (const auto& row : csv::read(in, "index,eigenvalue")) {
        if (row.size() != 2) throw io_error("spectrum CSV rows need 2 fields");
        s.values.push_back(csv::to_double(row[1]));
    }
    if (!std::is_sorted(s.values.begin(), s.values.end())) throw io_error("spectrum CSV is not ascending");
    s.source_n = s.values.size();
    s.source_meta = std::move(meta);
    return s;
}

inline void write_density_csv(std::ostream& out, const DensityHistogram& h) {
    out << "E_lo,E_hi,density\n";
    for (std::size_t b = 0; b < h.bin_count(); ++b)
        out << csv::fmt(h.bin_edges[b]) << ',' << csv::fmt(h.bin_edges[b + 1]) << ',' << csv::fmt(h.densities[b])
            << '\n';
}

}  // namespace rmtnet
