#pragma once

// Unfolding: eps_i = I_av(E_i), mapping a raw spectrum onto a dimensionless
// scale with unit mean spacing. I_av is either the semicircle cumulative
// count (one bulk or a union of independent bulks) or a least-squares
// polynomial fit of the empirical staircase.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rmtnet/error.hpp"
#include "rmtnet/spectrum.hpp"

namespace rmtnet {

// ---- semicircle ------------------------------------------------------------

// a = 2 sigma sqrt(n). For G(n, p), sigma = sqrt(p (1 - p)).
inline double semicircle_radius(double n, double sigma) {
    if (!(n >= 1.0)) throw invalid_parameter("semicircle radius needs n >= 1");
    if (!(sigma > 0.0)) throw invalid_parameter("semicircle radius needs sigma > 0");
    return 2.0 * sigma * std::sqrt(n);
}

inline double bernoulli_sigma(double p) { return std::sqrt(p * (1.0 - p)); }

// Expected number of levels <= e for an n-level semicircle of radius a.
// Clamped to 0 below -a and n above a.
inline double semicircle_cdf(double n, double a, double e) {
    if (!(a > 0.0)) throw invalid_parameter("semicircle radius must be positive");
    if (e <= -a) return 0.0;
    if (e >= a) return n;
    const double root = std::sqrt(a * a - e * e);
    // arctan(e / sqrt(a^2 - e^2)) == asin(e / a), which stays finite at the edges
    return n * (0.5 + e * root / (std::numbers::pi * a * a) + std::asin(e / a) / std::numbers::pi);
}

using SemicircleBlock = std::pair<double, double>;  // (n_b, a_b)

inline double block_semicircle_cdf(const std::vector<SemicircleBlock>& blocks, double e) {
    if (blocks.empty()) throw invalid_spec("block list is empty");
    double total = 0.0;
    for (auto [nb, ab] : blocks) total += semicircle_cdf(nb, ab, e);
    return total;
}

// ---- methods ---------------------------------------------------------------

struct SemicircleExact {
    double n_eff = 0.0;
    double a = 0.0;
};

struct BlockSemicircle {
    std::vector<SemicircleBlock> blocks;
};

struct PolynomialFit {
    int degree = 3;
    bool include_constant = true;
};

using UnfoldingMethod = std::variant<SemicircleExact, BlockSemicircle, PolynomialFit>;

inline constexpr int max_polynomial_degree = 9;

inline void validate(const UnfoldingMethod& m) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SemicircleExact>) {
                if (!(v.a > 0.0)) throw invalid_parameter("semicircle radius must be positive");
                if (!(v.n_eff > 0.0)) throw invalid_parameter("semicircle level count must be positive");
            } else if constexpr (std::is_same_v<T, BlockSemicircle>) {
                if (v.blocks.empty()) throw invalid_spec("block list is empty");
                for (auto [nb, ab] : v.blocks)
                    if (!(ab > 0.0) || !(nb > 0.0)) throw invalid_parameter("block (n, a) must be positive");
            } else {
                if (v.degree < 1 || v.degree > max_polynomial_degree)
                    throw invalid_parameter("polynomial degree must lie in [1, 9]");
            }
        },
        m);
}

// Short identifier used in file names: exact, block_exact, poly3, poly3_noconst.
inline std::string method_label(const UnfoldingMethod& m) {
    if (std::holds_alternative<SemicircleExact>(m)) return "exact";
    if (std::holds_alternative<BlockSemicircle>(m)) return "block_exact";
    const auto& p = std::get<PolynomialFit>(m);
    return "poly" + std::to_string(p.degree) + (p.include_constant ? "" : "_noconst");
}

inline nlohmann::json to_json(const UnfoldingMethod& m) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SemicircleExact>) {
                return {{"variant", "SemicircleExact"}, {"n_eff", v.n_eff}, {"a", v.a}};
            } else if constexpr (std::is_same_v<T, BlockSemicircle>) {
                auto blocks = nlohmann::json::array();
                for (auto [nb, ab] : v.blocks) blocks.push_back({{"n", nb}, {"a", ab}});
                return {{"variant", "BlockSemicircle"}, {"blocks", blocks}};
            } else {
                return {{"variant", "PolynomialFit"}, {"degree", v.degree}, {"include_constant", v.include_constant}};
            }
        },
        m);
}

// ---- polynomial staircase fit ---------------------------------------------

// Least-squares polynomial for the staircase, evaluated in the mapped
// variable x = (E - center) / half_width for conditioning.
struct PolynomialCdf {
    std::vector<double> mapped;        // coefficients of x^0..x^d (x^0 is 0 without constant)
    double center = 0.0;
    double half_width = 1.0;
    std::vector<double> coefficients;  // the same polynomial in powers of E
    double residual_rms = 0.0;

    int degree() const noexcept { return static_cast<int>(mapped.size()) - 1; }

    double operator()(double e) const noexcept {
        const double x = (e - center) / half_width;
        double acc = 0.0;
        for (auto it = mapped.rbegin(); it != mapped.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double derivative(double e) const noexcept {
        const double x = (e - center) / half_width;
        double acc = 0.0;
        for (std::size_t k = mapped.size() - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * mapped[k];
        return acc / half_width;
    }
};

namespace detail {

// Expands sum m_k ((E - c)/h)^k into powers of E.
inline std::vector<double> to_power_basis(const std::vector<double>& mapped, double c, double h) {
    const std::size_t d = mapped.size() - 1;
    std::vector<double> out(d + 1, 0.0);
    for (std::size_t k = 0; k <= d; ++k) {
        const double scale = mapped[k] / std::pow(h, static_cast<double>(k));
        double binom = 1.0;  // C(k, j)
        for (std::size_t j = 0; j <= k; ++j) {
            out[j] += scale * binom * std::pow(-c, static_cast<double>(k - j));
            binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
    }
    return out;
}

}  // namespace detail

// Fits (E_i, i - 1/2), i = 1..m, with a degree-d polynomial.
inline PolynomialCdf fit_polynomial_cdf(std::span<const double> levels, int degree, bool include_constant = true) {
    if (degree < 1 || degree > max_polynomial_degree) throw invalid_parameter("polynomial degree must lie in [1, 9]");
    const std::size_t m = levels.size();
    const auto d = static_cast<std::size_t>(degree);
    if (m < 10 * (d + 1))
        throw insufficient_levels("degree-" + std::to_string(degree) + " fit needs at least " +
                                  std::to_string(10 * (d + 1)) + " levels, got " + std::to_string(m));

    const auto [lo_it, hi_it] = std::minmax_element(levels.begin(), levels.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw fit_error("degenerate spectrum: all levels equal");

    PolynomialCdf fit;
    if (include_constant) {
        fit.center = 0.5 * (hi + lo);
        fit.half_width = 0.5 * (hi - lo);
    } else {
        fit.center = 0.0;
        fit.half_width = std::max(std::abs(lo), std::abs(hi));
    }

    const std::size_t first = include_constant ? 0 : 1;
    const auto cols = static_cast<Eigen::Index>(d + 1 - first);
    Eigen::MatrixXd design(static_cast<Eigen::Index>(m), cols);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double x = (levels[i] - fit.center) / fit.half_width;
        double pw = include_constant ? 1.0 : x;
        for (Eigen::Index c = 0; c < cols; ++c) {
            design(static_cast<Eigen::Index>(i), c) = pw;
            pw *= x;
        }
        rhs(static_cast<Eigen::Index>(i)) = static_cast<double>(i) + 0.5;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < cols) throw fit_error("rank-deficient staircase fit (rank " + std::to_string(qr.rank()) + " < " +
                                          std::to_string(cols) + ")");
    const Eigen::VectorXd sol = qr.solve(rhs);

    fit.mapped.assign(d + 1, 0.0);
    for (Eigen::Index c = 0; c < cols; ++c) fit.mapped[static_cast<std::size_t>(c) + first] = sol(c);
    fit.coefficients = detail::to_power_basis(fit.mapped, fit.center, fit.half_width);

    const Eigen::VectorXd resid = design * sol - rhs;
    fit.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(m));
    return fit;
}

inline PolynomialCdf fit_polynomial_cdf(const Spectrum& s, int degree, bool include_constant = true) {
    return fit_polynomial_cdf(std::span<const double>(s.values), degree, include_constant);
}

// Throws monotonicity_error naming the first subinterval of [lo, hi] where
// the fitted staircase fails to increase. The derivative is sampled on a
// uniform grid and at every retained level.
inline void check_monotone(const PolynomialCdf& fit, std::span<const double> levels, std::size_t grid = 4096) {
    const double lo = levels.front(), hi = levels.back();
    std::vector<double> pts;
    pts.reserve(grid + 1 + levels.size());
    for (std::size_t k = 0; k <= grid; ++k)
        pts.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid));
    pts.insert(pts.end(), levels.begin(), levels.end());
    std::sort(pts.begin(), pts.end());

    std::optional<double> bad_lo;
    double bad_hi = lo;
    for (double e : pts) {
        if (fit.derivative(e) <= 0.0) {
            if (!bad_lo) bad_lo = e;
            bad_hi = e;
        } else if (bad_lo) {
            break;
        }
    }
    if (bad_lo)
        throw monotonicity_error(*bad_lo, bad_hi,
                                 "fitted staircase (degree " + std::to_string(fit.degree()) +
                                     ") is not increasing on E in [" + csv::fmt(*bad_lo) + ", " + csv::fmt(bad_hi) +
                                     "]; trim more edge levels or change the degree");
}

// ---- unfolding -------------------------------------------------------------

struct UnfoldedSpectrum {
    std::vector<double> levels;  // ascending, dimensionless
    UnfoldingMethod method;
    std::string source_meta;
    std::optional<PolynomialCdf> fit;

    std::size_t size() const noexcept { return levels.size(); }

    double mean_spacing() const {
        if (levels.size() < 2) return 0.0;
        return (levels.back() - levels.front()) / static_cast<double>(levels.size() - 1);
    }
};

inline constexpr double min_mean_spacing = 0.9;
inline constexpr double max_mean_spacing = 1.1;

inline UnfoldedSpectrum unfold(const Spectrum& s, const UnfoldingMethod& method) {
    validate(method);
    if (s.size() < 2) throw insufficient_levels("unfolding needs at least 2 levels");

    UnfoldedSpectrum u{{}, method, s.source_meta, std::nullopt};
    u.levels.resize(s.size());

    if (const auto* sc = std::get_if<SemicircleExact>(&method)) {
        for (std::size_t i = 0; i < s.size(); ++i) u.levels[i] = semicircle_cdf(sc->n_eff, sc->a, s.values[i]);
    } else if (const auto* bs = std::get_if<BlockSemicircle>(&method)) {
        for (std::size_t i = 0; i < s.size(); ++i) u.levels[i] = block_semicircle_cdf(bs->blocks, s.values[i]);
    } else {
        const auto& pf = std::get<PolynomialFit>(method);
        auto fit = fit_polynomial_cdf(s, pf.degree, pf.include_constant);
        check_monotone(fit, s.values);
        for (std::size_t i = 0; i < s.size(); ++i) u.levels[i] = fit(s.values[i]);
        u.fit = std::move(fit);
    }

    if (!std::is_sorted(u.levels.begin(), u.levels.end()))
        throw monotonicity_error(s.values.front(), s.values.back(), "unfolded levels are not ascending");
    const double ms = u.mean_spacing();
    if (!(ms >= min_mean_spacing && ms <= max_mean_spacing))
        throw unfolding_quality_error("mean spacing " + csv::fmt(ms) + " outside [0.9, 1.1] for method " +
                                      method_label(method));
    return u;
}

inline void write_unfolded_csv(std::ostream& out, const UnfoldedSpectrum& u) {
    out << "index,epsilon\n";
    for (std::size_t i = 0; i < u.size(); ++i) out << i << ',' << csv::fmt(u.levels[i]) << '\n';
}

}  // namespace rmtnet
