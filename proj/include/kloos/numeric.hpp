#pragma once

/**
 * @file numeric.hpp
 * @brief Error-tracked reals, compensated summation and per-modulus trig tables.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>

#include "kloos/arith.hpp"

namespace kloos {

inline constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2; // 2^-53

/// A real value with a certified bound on its absolute error.
struct KloostermanValue {
    double value = 0.0;
    double abs_error = 0.0;

    friend KloostermanValue operator*(const KloostermanValue& x, const KloostermanValue& y) {
        const double v = x.value * y.value;
        const double e = std::abs(x.value) * y.abs_error + std::abs(y.value) * x.abs_error +
                         x.abs_error * y.abs_error + std::abs(v) * unit_roundoff;
        return {v, e};
    }

    friend KloostermanValue operator+(const KloostermanValue& x, const KloostermanValue& y) {
        const double v = x.value + y.value;
        return {v, x.abs_error + y.abs_error + std::abs(v) * unit_roundoff};
    }

    KloostermanValue scaled(double s) const {
        const double v = value * s;
        return {v, std::abs(s) * abs_error + std::abs(v) * unit_roundoff};
    }

    /// Whether the exact value lies within tol of `target`.
    bool agrees_with(double target, double tol) const {
        return std::abs(value - target) <= tol + abs_error;
    }
};

inline KloostermanValue pow(KloostermanValue x, unsigned k) {
    KloostermanValue r{1.0, 0.0};
    for (unsigned i = 0; i < k; ++i) r = r * x;
    return r;
}

/**
 * Neumaier-compensated accumulator that also tracks an error bound.
 *
 * Each added term carries its own error; the bound covers the term errors
 * plus the compensated-summation residual (2u|S| + O(n u^2) sum |x_i|).
 */
class CompensatedSum {
public:
    void add(double x, double err = 0.0) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
        term_err_ += err;
        abs_total_ += std::abs(x);
        ++n_;
    }

    double value() const { return sum_ + comp_; }

    double error_bound() const {
        const double u = unit_roundoff;
        const double nn = static_cast<double>(n_);
        return term_err_ + 2 * u * std::abs(value()) + 2 * nn * nn * u * u * abs_total_;
    }

    KloostermanValue result() const { return {value(), error_bound()}; }
    std::size_t terms() const { return n_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double term_err_ = 0.0;
    double abs_total_ = 0.0;
    std::size_t n_ = 0;
};

/// Per-entry error bound of a tabulated cos/sin value (correctly rounded long double, then to double).
inline constexpr double trig_entry_error = 2 * unit_roundoff;

/**
 * cos(2 pi j / q) and sin(2 pi j / q) for j in [0, q).
 *
 * Angles are formed as 2 pi (j / q) in long double from the reduced residue,
 * so entries are accurate to about one double ulp for any q.
 */
class UnitCircle {
public:
    explicit UnitCircle(u64 q) : q_(q), cos_(q), sin_(q) {
        const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        for (u64 j = 0; j < q; ++j) {
            const long double angle = two_pi * (static_cast<long double>(j) / static_cast<long double>(q));
            cos_[j] = static_cast<double>(std::cos(angle));
            sin_[j] = static_cast<double>(std::sin(angle));
        }
    }

    u64 modulus() const { return q_; }
    double cos(u64 j) const { return cos_[j]; }
    double sin(u64 j) const { return sin_[j]; }
    const std::vector<double>& cos_table() const { return cos_; }

private:
    u64 q_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

inline constexpr u64 max_tabulated_modulus = u64{1} << 24;

/// Thread-local cache of unit-circle tables; small moduli only.
inline std::shared_ptr<const UnitCircle> unit_circle(u64 q) {
    if (q == 0 || q > max_tabulated_modulus)
        throw error(errc::limit_too_large, "trig table modulus out of range");
    thread_local std::map<u64, std::shared_ptr<const UnitCircle>> cache;
    thread_local std::size_t cached_entries = 0;
    if (auto it = cache.find(q); it != cache.end()) return it->second;
    if (cached_entries + q > (u64{1} << 24)) {
        cache.clear();
        cached_entries = 0;
    }
    auto table = std::make_shared<const UnitCircle>(q);
    cache.emplace(q, table);
    cached_entries += q;
    return table;
}

/// e_q(j) = exp(2 pi i j / q) for an arbitrary reduced residue, without a table.
inline std::complex<double> e_q(u64 j, u64 q) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double angle = two_pi * (static_cast<long double>(j % q) / static_cast<long double>(q));
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

} // namespace kloos
