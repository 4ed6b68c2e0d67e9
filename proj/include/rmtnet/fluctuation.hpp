#pragma once

// Fluctuation statistics of unfolded spectra: nearest-neighbour spacings,
// number variance, spectral rigidity, ensemble averaging, and KS distances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rmtnet/csv.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/random.hpp"
#include "rmtnet/unfolding.hpp"

namespace rmtnet {

inline constexpr std::size_t default_window_samples = 200;
inline constexpr double default_nnsd_bin_width = 0.1;
inline constexpr double default_integral_step = 0.05;

// L = 0.5, 1.0, ..., 50.0
inline std::vector<double> default_l_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 100; ++k) g.push_back(0.5 * k);
    return g;
}

// ---- spacings --------------------------------------------------------------

inline std::vector<double> spacings(std::span<const double> levels) {
    if (levels.size() < 2) throw insufficient_levels("spacings need at least 2 levels");
    std::vector<double> s(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) s[i] = levels[i + 1] - levels[i];
    return s;
}

inline std::vector<double> spacings(const UnfoldedSpectrum& u) { return spacings(std::span<const double>(u.levels)); }

struct SpacingHistogram {
    std::vector<double> bin_edges;
    std::vector<double> densities;
    std::size_t sample_count = 0;

    double area() const {
        double a = 0.0;
        for (std::size_t b = 0; b < densities.size(); ++b) a += densities[b] * (bin_edges[b + 1] - bin_edges[b]);
        return a;
    }
};

// Pooled unit-area histogram over [0, s_max rounded up to a bin edge].
inline SpacingHistogram nnsd(const std::vector<std::vector<double>>& spacing_lists,
                             double bin_width = default_nnsd_bin_width) {
    if (!(bin_width > 0.0)) throw invalid_parameter("NNSD bin width must be positive");
    std::size_t total = 0;
    double smax = 0.0;
    for (const auto& list : spacing_lists) {
        total += list.size();
        for (double s : list) {
            if (s < 0.0) throw domain_error("negative spacing in NNSD input");
            smax = std::max(smax, s);
        }
    }
    if (total == 0) throw empty_input("no spacings to histogram");

    // A spacing exactly on the top edge gets its own bin so the range stays closed.
    const auto bins = static_cast<std::size_t>(std::floor(smax / bin_width)) + 1;
    SpacingHistogram h;
    h.sample_count = total;
    h.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.bin_edges[b] = bin_width * static_cast<double>(b);

    std::vector<std::size_t> counts(bins, 0);
    for (const auto& list : spacing_lists)
        for (double s : list) counts[std::min(static_cast<std::size_t>(s / bin_width), bins - 1)]++;

    h.densities.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        h.densities[b] = static_cast<double>(counts[b]) / (static_cast<double>(total) * bin_width);
    return h;
}

// ---- window statistics -------------------------------------------------------

struct CountMoments {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

inline void check_window_args(std::span<const double> levels, double L, std::size_t window_samples) {
    if (!(L > 0.0)) throw invalid_parameter("window length L must be positive");
    if (window_samples < 10) throw invalid_parameter("need at least 10 windows");
    if (levels.size() < 2) throw insufficient_levels("window statistics need at least 2 levels");
    const double span = levels.back() - levels.front();
    if (span < 2.0 * L)
        throw interval_too_long("L = " + csv::fmt(L) + " exceeds half the unfolded span " + csv::fmt(span));
}

}  // namespace detail

// Window starts are uniform on [eps_min, eps_max - L]; counts use [a, a + L).
inline CountMoments number_variance(std::span<const double> levels, double L,
                                    std::size_t window_samples = default_window_samples, std::uint64_t seed = 0) {
    detail::check_window_args(levels, L, window_samples);
    engine eng(seed);
    const double lo = levels.front(), hi = levels.back() - L;
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> counts(window_samples);
    for (auto& c : counts) {
        const double a = uniform(eng, lo, hi);
        const auto first = std::lower_bound(levels.begin(), levels.end(), a);
        const auto last = std::lower_bound(first, levels.end(), a + L);
        c = static_cast<double>(last - first);
        sum += c;
    }
    const double n = static_cast<double>(window_samples);
    const double mean = sum / n;
    for (double c : counts) sumsq += (c - mean) * (c - mean);
    return {mean, sumsq / (n - 1.0)};
}

inline CountMoments number_variance(const UnfoldedSpectrum& u, double L,
                                    std::size_t window_samples = default_window_samples, std::uint64_t seed = 0) {
    return number_variance(std::span<const double>(u.levels), L, window_samples, seed);
}

// min over (A, B) of (1/L) int_a^{a+L} (N(e) - A - B e)^2 de for the closed
// staircase N. With x = e - a and steps at x_1 <= ... <= x_k inside (0, L]:
//   I0 = sum (L - x_j),  I1 = sum (L^2 - x_j^2) / 2,  I2 = sum (2j - 1)(L - x_j)
//   L * delta = I2 - (4/L) I0^2 + (12/L^2) I0 I1 - (12/L^3) I1^2
// The count of levels at or below a only shifts N by a constant and drops out.
inline double delta3_window(std::span<const double> levels, double a, double L) {
    const auto first = std::upper_bound(levels.begin(), levels.end(), a);
    const auto last = std::upper_bound(first, levels.end(), a + L);
    double i0 = 0.0, i1 = 0.0, i2 = 0.0;
    double j = 1.0;
    for (auto it = first; it != last; ++it, j += 1.0) {
        const double x = *it - a;
        i0 += L - x;
        i1 += 0.5 * (L * L - x * x);
        i2 += (2.0 * j - 1.0) * (L - x);
    }
    const double v = (i2 - 4.0 * i0 * i0 / L + 12.0 * i0 * i1 / (L * L) - 12.0 * i1 * i1 / (L * L * L)) / L;
    return std::max(v, 0.0);  // rounding can leave -1e-16 for exact fits
}

inline double delta3_direct(std::span<const double> levels, double L,
                            std::size_t window_samples = default_window_samples, std::uint64_t seed = 0) {
    detail::check_window_args(levels, L, window_samples);
    engine eng(seed);
    const double lo = levels.front(), hi = levels.back() - L;
    double sum = 0.0;
    for (std::size_t w = 0; w < window_samples; ++w) sum += delta3_window(levels, uniform(eng, lo, hi), L);
    return sum / static_cast<double>(window_samples);
}

inline double delta3_direct(const UnfoldedSpectrum& u, double L, std::size_t window_samples = default_window_samples,
                            std::uint64_t seed = 0) {
    return delta3_direct(std::span<const double>(u.levels), L, window_samples, seed);
}

// ---- curves ----------------------------------------------------------------

enum class CurveKind { sigma2, delta3, theory };

inline std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::sigma2: return "sigma2";
        case CurveKind::delta3: return "delta3";
        case CurveKind::theory: return "theory";
    }
    return "?";
}

struct StatCurve {
    std::vector<double> L_values;
    std::vector<double> means;
    std::vector<double> std_errors;
    CurveKind kind = CurveKind::theory;
    std::string method;

    std::size_t size() const noexcept { return L_values.size(); }
};

// Delta_3(L) = (2/L^4) int_0^L (L^3 - 2 L^2 r + r^3) Sigma^2(r) dr by the
// composite trapezoid rule on the supplied grid, with Sigma^2(0) = 0. If L
// falls between grid points the integrand is closed with a linearly
// interpolated Sigma^2(L).
inline double delta3_via_integral(std::span<const double> r, std::span<const double> sigma2, double L,
                                  double max_step = default_integral_step) {
    if (!(L > 0.0)) throw domain_error("Delta_3 integral needs L > 0");
    if (r.size() != sigma2.size() || r.empty()) throw domain_error("sigma2 grid and values differ in length");
    const double tol = 1e-9 * std::max(1.0, L);
    if (r.front() < 0.0 || r.front() > max_step + tol) throw domain_error("sigma2 grid does not start near 0");
    if (r.back() < L - tol) throw domain_error("sigma2 grid ends before L = " + csv::fmt(L));
    for (std::size_t k = 1; k < r.size(); ++k)
        if (!(r[k] > r[k - 1]) || r[k] - r[k - 1] > max_step + tol)
            throw domain_error("sigma2 grid step exceeds " + csv::fmt(max_step) + " or is not ascending");

    const double L2 = L * L, L3 = L2 * L;
    auto weight = [&](double x) { return L3 - 2.0 * L2 * x + x * x * x; };

    double prev_r = 0.0, prev_f = 0.0;  // Sigma^2(0) = 0
    double integral = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k] <= 0.0) continue;
        if (r[k] >= L - tol) {
            double s_at_L = sigma2[k];
            if (std::abs(r[k] - L) > tol) {
                const double r0 = k ? r[k - 1] : 0.0, s0 = k ? sigma2[k - 1] : 0.0;
                s_at_L = s0 + (sigma2[k] - s0) * (L - r0) / (r[k] - r0);
            }
            const double f = weight(L) * s_at_L;
            integral += 0.5 * (f + prev_f) * (L - prev_r);
            return 2.0 / (L2 * L2) * integral;
        }
        const double f = weight(r[k]) * sigma2[k];
        integral += 0.5 * (f + prev_f) * (r[k] - prev_r);
        prev_r = r[k];
        prev_f = f;
    }
    throw domain_error("sigma2 grid does not reach L");
}

inline double delta3_via_integral(const StatCurve& sigma2, double L, double max_step = default_integral_step) {
    return delta3_via_integral(std::span<const double>(sigma2.L_values), std::span<const double>(sigma2.means), L,
                               max_step);
}

// Mean and standard error (sample std / sqrt(M)) per grid point, summed in
// member order.
inline StatCurve ensemble_average(const std::vector<double>& L_grid, const std::vector<std::vector<double>>& members,
                                  CurveKind kind, std::string method = {}) {
    if (members.empty()) throw empty_input("no ensemble members to average");
    for (std::size_t m = 0; m < members.size(); ++m)
        if (members[m].size() != L_grid.size())
            throw alignment_error("member " + std::to_string(m) + " has " + std::to_string(members[m].size()) +
                                  " values for a grid of " + std::to_string(L_grid.size()));

    StatCurve c{L_grid, std::vector<double>(L_grid.size(), 0.0), std::vector<double>(L_grid.size(), 0.0), kind,
                std::move(method)};
    const double count = static_cast<double>(members.size());
    for (std::size_t k = 0; k < L_grid.size(); ++k) {
        double sum = 0.0;
        for (const auto& m : members) sum += m[k];
        const double mean = sum / count;
        double ss = 0.0;
        for (const auto& m : members) ss += (m[k] - mean) * (m[k] - mean);
        c.means[k] = mean;
        c.std_errors[k] = members.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
    }
    return c;
}

inline StatCurve ensemble_average(const std::vector<StatCurve>& members) {
    if (members.empty()) throw empty_input("no ensemble members to average");
    std::vector<std::vector<double>> values;
    for (const auto& m : members) {
        if (m.L_values != members.front().L_values) throw alignment_error("members use different L grids");
        values.push_back(m.means);
    }
    return ensemble_average(members.front().L_values, values, members.front().kind, members.front().method);
}

// ---- Kolmogorov–Smirnov -------------------------------------------------------

// sup |F_n - F| for a sample against a continuous CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw empty_input("KS distance of an empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

// sup |F_a - F_b| for two empirical distributions.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw empty_input("KS distance of an empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// ---- CSV -------------------------------------------------------------------

inline void write_curve_csv(std::ostream& out, const StatCurve& c) {
    out << "L,mean,stderr,kind,method\n";
    for (std::size_t k = 0; k < c.size(); ++k)
        out << csv::fmt(c.L_values[k]) << ',' << csv::fmt(c.means[k]) << ',' << csv::fmt(c.std_errors[k]) << ','
            << to_string(c.kind) << ',' << c.method << '\n';
}

inline void write_spacing_csv(std::ostream& out, const SpacingHistogram& h) {
    out << "s_lo,s_hi,density\n";
    for (std::size_t b = 0; b < h.densities.size(); ++b)
        out << csv::fmt(h.bin_edges[b]) << ',' << csv::fmt(h.bin_edges[b + 1]) << ',' << csv::fmt(h.densities[b])
            << '\n';
}

}  // namespace rmtnet
