#pragma once

// Reference curves: semicircle density, GOE / Poisson / two-GOE spacing
// distributions, and GOE number variance and rigidity.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rmtnet/error.hpp"
#include "rmtnet/fluctuation.hpp"
#include "rmtnet/special_functions.hpp"
#include "rmtnet/unfolding.hpp"

namespace rmtnet::theory {

using std::numbers::pi;

inline double semicircle_density(double n, double a, double e) {
    if (!(a > 0.0)) throw invalid_parameter("semicircle radius must be positive");
    if (std::abs(e) > a) return 0.0;
    return 2.0 * n / (pi * a * a) * std::sqrt(a * a - e * e);
}

namespace detail {
inline void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) throw domain_error(std::string(what) + " needs a non-negative argument");
}
}  // namespace detail

// ---- spacing distributions ---------------------------------------------------

inline double wigner_surmise(double s) {
    detail::require_nonnegative(s, "wigner_surmise");
    return pi / 2.0 * s * std::exp(-pi * s * s / 4.0);
}

inline double wigner_cdf(double s) {
    detail::require_nonnegative(s, "wigner_cdf");
    return -std::expm1(-pi * s * s / 4.0);
}

// Gap probability whose second derivative is the surmise.
inline double wigner_gap(double s) { return erfc(std::sqrt(pi) * s / 2.0); }

inline double poisson_nnsd(double s) {
    detail::require_nonnegative(s, "poisson_nnsd");
    return std::exp(-s);
}

inline double poisson_cdf(double s) {
    detail::require_nonnegative(s, "poisson_cdf");
    return -std::expm1(-s);
}

inline double poisson_sigma2(double L) {
    detail::require_nonnegative(L, "poisson_sigma2");
    return L;
}

inline double poisson_delta3(double L) {
    detail::require_nonnegative(L, "poisson_delta3");
    return L / 15.0;
}

// Two independent surmise-level sequences of equal weight:
// P2(s) = d^2/ds^2 [E_W(s/2)]^2.
inline double two_goe_nnsd(double s) {
    detail::require_nonnegative(s, "two_goe_nnsd");
    return 0.5 * std::exp(-pi * s * s / 8.0) +
           pi * s / 8.0 * std::exp(-pi * s * s / 16.0) * erfc(std::sqrt(pi) * s / 4.0);
}

// 1 + d/ds [E_W(s/2)]^2
inline double two_goe_cdf(double s) {
    detail::require_nonnegative(s, "two_goe_cdf");
    return 1.0 - std::exp(-pi * s * s / 16.0) * erfc(std::sqrt(pi) * s / 4.0);
}

// ---- long-range statistics ---------------------------------------------------

// GOE number variance:
//   (2/pi^2) [ ln(2 pi L) + gamma + 1 + Si(pi L)^2 / 2 - (pi/2) Si(pi L)
//              - cos(2 pi L) - Ci(2 pi L) + pi^2 L (1 - (2/pi) Si(2 pi L)) ]
inline double sigma2_goe(double L) {
    detail::require_nonnegative(L, "sigma2_goe");
    if (L == 0.0) return 0.0;
    const double x = 2.0 * pi * L;
    const double si_half = sin_integral(pi * L);
    const double bracket = std::log(x) + euler_gamma + 1.0 + 0.5 * si_half * si_half - pi / 2.0 * si_half -
                           std::cos(x) - cos_integral(x) + pi * pi * L * (1.0 - 2.0 / pi * sin_integral(x));
    return 2.0 / (pi * pi) * bracket;
}

inline constexpr double delta3_goe_step = 0.01;

// Rigidity from sigma2_goe through the Sigma^2 -> Delta_3 integral.
inline double delta3_goe(double L) {
    if (!(L > 0.0)) throw domain_error("delta3_goe needs L > 0");
    const auto steps = static_cast<std::size_t>(std::ceil(L / delta3_goe_step - 1e-9));
    std::vector<double> r(steps), s2(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        r[k] = std::min(L, delta3_goe_step * static_cast<double>(k + 1));
        s2[k] = sigma2_goe(r[k]);
    }
    return delta3_via_integral(r, s2, L, delta3_goe_step);
}

// Superposition of two independent, equally weighted GOE sequences.
inline double two_goe_sigma2(double L) { return 2.0 * sigma2_goe(L / 2.0); }
inline double two_goe_delta3(double L) { return 2.0 * delta3_goe(L / 2.0); }

// ---- named curves ------------------------------------------------------------

enum class CurveId {
    goe_nnsd,
    poisson_nnsd,
    two_goe_nnsd,
    goe_sigma2,
    goe_delta3,
    poisson_sigma2,
    poisson_delta3,
    two_goe_sigma2,
    two_goe_delta3,
    semicircle_density
};

inline const std::vector<std::pair<CurveId, std::string>>& curve_names() {
    static const std::vector<std::pair<CurveId, std::string>> names{
        {CurveId::goe_nnsd, "goe_nnsd"},           {CurveId::poisson_nnsd, "poisson_nnsd"},
        {CurveId::two_goe_nnsd, "two_goe_nnsd"},   {CurveId::goe_sigma2, "goe_sigma2"},
        {CurveId::goe_delta3, "goe_delta3"},       {CurveId::poisson_sigma2, "poisson_sigma2"},
        {CurveId::poisson_delta3, "poisson_delta3"}, {CurveId::two_goe_sigma2, "two_goe_sigma2"},
        {CurveId::two_goe_delta3, "two_goe_delta3"},
        {CurveId::semicircle_density, "semicircle_density"}};
    return names;
}

inline std::string to_string(CurveId id) {
    for (const auto& [k, name] : curve_names())
        if (k == id) return name;
    return "?";
}

inline CurveId parse_curve(const std::string& name) {
    for (const auto& [k, n] : curve_names())
        if (n == name) return k;
    throw config_error("unknown theory curve '" + name + "'");
}

struct TheoryCurveSpec {
    CurveId kind = CurveId::goe_nnsd;
    std::optional<double> n;  // semicircle_density only
    std::optional<double> a;

    bool needs_parameters() const noexcept { return kind == CurveId::semicircle_density; }

    void validate() const {
        if (needs_parameters() != (n.has_value() && a.has_value()))
            throw config_error(needs_parameters() ? "semicircle_density needs n and a"
                                                  : "curve " + to_string(kind) + " takes no (n, a) parameters");
        if (a && !(*a > 0.0)) throw invalid_parameter("semicircle radius must be positive");
    }
};

inline double evaluate(const TheoryCurveSpec& spec, double x) {
    switch (spec.kind) {
        case CurveId::goe_nnsd: return wigner_surmise(x);
        case CurveId::poisson_nnsd: return poisson_nnsd(x);
        case CurveId::two_goe_nnsd: return two_goe_nnsd(x);
        case CurveId::goe_sigma2: return sigma2_goe(x);
        case CurveId::goe_delta3: return delta3_goe(x);
        case CurveId::poisson_sigma2: return poisson_sigma2(x);
        case CurveId::poisson_delta3: return poisson_delta3(x);
        case CurveId::two_goe_sigma2: return two_goe_sigma2(x);
        case CurveId::two_goe_delta3: return two_goe_delta3(x);
        case CurveId::semicircle_density: return semicircle_density(spec.n.value(), spec.a.value(), x);
    }
    throw config_error("unhandled curve");
}

// Samples a curve on a grid as a StatCurve (stderr 0).
inline StatCurve sample(const TheoryCurveSpec& spec, const std::vector<double>& grid) {
    spec.validate();
    StatCurve c{grid, {}, std::vector<double>(grid.size(), 0.0), CurveKind::theory, to_string(spec.kind)};
    c.means.reserve(grid.size());
    for (double x : grid) c.means.push_back(evaluate(spec, x));
    return c;
}

// Bin-averaged reference density: (F(hi) - F(lo)) / (hi - lo) per bin.
inline std::vector<double> bin_average(const std::vector<double>& edges, const std::function<double(double)>& cdf) {
    std::vector<double> out;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b)
        out.push_back((cdf(edges[b + 1]) - cdf(edges[b])) / (edges[b + 1] - edges[b]));
    return out;
}

}  // namespace rmtnet::theory
