#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pseudorank {

// Self-contained CDFs and quantiles for the standard normal, Student-t,
// chi-square and F families. Incomplete beta/gamma are evaluated by series
// and modified-Lentz continued fractions; quantiles by bracketed
// root-finding on the cdf. Accuracy targets: 1e-10 absolute for the normal,
// 1e-8 for t / chi-square / F over df in [1, 1e4].

namespace detail {

inline double log_gamma(double x)
{
    // Lanczos, g = 7, 9 coefficients.
    static constexpr double coef[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    x -= 1.0;
    double a = coef[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

/// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cf(double a, double b, double x)
{
    constexpr int max_iter = 500;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

inline double reg_inc_beta(double a, double b, double x)
{
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

/// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
inline double reg_gamma_p(double a, double x)
{
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {
        // series
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    // continued fraction for Q, Lentz
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    return 1.0 - q;
}

inline double reg_gamma_q(double a, double x)
{
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - reg_gamma_p(a, x);
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

} // namespace detail

inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

inline double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// Standard normal quantile: Acklam's rational initial guess polished by one
/// Halley step against erfc, good to ~1e-15 over (0,1).
inline double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0,1)");
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double dd[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                     2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }
    // one Halley refinement
    const double e = normal_cdf(x) - p;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

inline double t_cdf(double x, double df)
{
    if (df <= 0.0) throw std::domain_error("t_cdf: df must be positive");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double z = df / (df + x * x);
    const double tail = 0.5 * detail::reg_inc_beta(0.5 * df, 0.5, z);
    return x > 0.0 ? 1.0 - tail : tail;
}

/// Upper tail P(T > x); avoids cancellation for large x.
inline double t_sf(double x, double df)
{
    return t_cdf(-x, df);
}

inline double chi_square_cdf(double x, double df)
{
    if (df <= 0.0) throw std::domain_error("chi_square_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return detail::reg_gamma_p(0.5 * df, 0.5 * x);
}

inline double chi_square_sf(double x, double df)
{
    if (df <= 0.0) throw std::domain_error("chi_square_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return detail::reg_gamma_q(0.5 * df, 0.5 * x);
}

inline double f_cdf(double x, double df1, double df2)
{
    if (df1 <= 0.0 || df2 <= 0.0) throw std::domain_error("f_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return detail::reg_inc_beta(0.5 * df1, 0.5 * df2, df1 * x / (df1 * x + df2));
}

inline double f_sf(double x, double df1, double df2)
{
    if (df1 <= 0.0 || df2 <= 0.0) throw std::domain_error("f_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return detail::reg_inc_beta(0.5 * df2, 0.5 * df1, df2 / (df1 * x + df2));
}

enum class DistFamily { normal, t, chi_square, f };

/// Parametric family tag for the generic cdf/quantile entry points.
struct DistributionFunctionSpec {
    DistFamily family{DistFamily::normal};
    double df1{0.0}; // t / chi-square df, or F numerator df
    double df2{0.0}; // F denominator df

    static DistributionFunctionSpec normal() { return {DistFamily::normal, 0.0, 0.0}; }
    static DistributionFunctionSpec t(double df) { return {DistFamily::t, df, 0.0}; }
    static DistributionFunctionSpec chi_square(double df) { return {DistFamily::chi_square, df, 0.0}; }
    static DistributionFunctionSpec f(double d1, double d2) { return {DistFamily::f, d1, d2}; }
};

inline double cdf(const DistributionFunctionSpec& spec, double x)
{
    switch (spec.family) {
        case DistFamily::normal: return normal_cdf(x);
        case DistFamily::t: return t_cdf(x, spec.df1);
        case DistFamily::chi_square: return chi_square_cdf(x, spec.df1);
        case DistFamily::f: return f_cdf(x, spec.df1, spec.df2);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Quantile by bracket expansion + bisection on the cdf. Monotone in q by
/// construction; round-trips cdf(quantile(q)) = q to ~1e-12.
inline double quantile(const DistributionFunctionSpec& spec, double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("quantile: q must lie in (0,1)");
    if (spec.family == DistFamily::normal) return normal_quantile(q);

    double lo, hi;
    if (spec.family == DistFamily::t) {
        lo = -1.0; hi = 1.0;
        while (t_cdf(lo, spec.df1) > q) lo *= 2.0;
        while (t_cdf(hi, spec.df1) < q) hi *= 2.0;
    } else {
        lo = 0.0; hi = 1.0;
        while (cdf(spec, hi) < q) hi *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (cdf(spec, mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace pseudorank
