#pragma once

#include <cstdint>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pseudorank {

/// Exact rational number on 64-bit integers.
///
/// Invariant: den > 0 and gcd(|num|, den) == 1. Intermediate products are
/// carried in 128-bit arithmetic; a result that cannot be reduced back into
/// 64 bits throws std::overflow_error.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator, std::int64_t denominator = 1)
    {
        if (denominator == 0) throw std::domain_error("Rational: zero denominator");
        if (denominator < 0) { numerator = -numerator; denominator = -denominator; }
        const std::int64_t g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
        num_ = g ? numerator / g : 0;
        den_ = g ? denominator / g : 1;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const
    {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Best rational approximation of x with denominator <= max_den
    /// (continued-fraction expansion). Recovers 1/6 from the closest double
    /// and similar "nice" constants; throws if no approximant lands within
    /// tol of x.
    static Rational from_double(double x, std::int64_t max_den = 1000000, double tol = 1e-9)
    {
        if (!std::isfinite(x)) throw std::domain_error("Rational::from_double: non-finite input");
        const bool neg = x < 0;
        double y = neg ? -x : x;
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double frac = y;
        for (int iter = 0; iter < 64; ++iter) {
            const double fl = std::floor(frac);
            if (fl > static_cast<double>(max_den)) break;
            const auto a = static_cast<std::int64_t>(fl);
            const std::int64_t p2 = a * p1 + p0;
            const std::int64_t q2 = a * q1 + q0;
            if (q2 > max_den) break;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            const double rem = frac - fl;
            if (rem < 1e-15) break;
            frac = 1.0 / rem;
        }
        if (q1 == 0 || std::abs(static_cast<double>(p1) / static_cast<double>(q1) - y) > tol)
            throw std::domain_error("Rational::from_double: no rational within tolerance");
        return {neg ? -p1 : p1, q1};
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b)
    {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d)
    {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b)
    {
        while (b != 0) { const i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    std::int64_t num_{0};
    std::int64_t den_{1};
};

} // namespace pseudorank
