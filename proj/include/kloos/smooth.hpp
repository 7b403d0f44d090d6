#pragma once

/**
 * @file smooth.hpp
 * @brief Dickman's function, smooth-number counts and divisor sums of primorials.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "kloos/arith.hpp"
#include "kloos/numeric.hpp"
#include "kloos/sieve.hpp"

namespace kloos {

/**
 * rho(u) on a uniform grid over [0, u_max].
 *
 * rho = 1 on [0, 1] and u rho'(u) = -rho(u - 1) beyond. The delayed term
 * always falls on a grid node, so each step is the trapezoid rule applied to
 * known values. Solves at h, h/2 and h/4 run in long double (the absolute
 * error of the raw trapezoid does not shrink with rho) and are combined by
 * two levels of Richardson extrapolation; `richardson_gap` keeps the largest
 * relative change made by the second level for u <= 10.
 */
class DickmanTable {
public:
    explicit DickmanTable(unsigned per_unit = 1024, double u_max = 50.0)
        : per_unit_(per_unit), u_max_(u_max) {
        if (per_unit == 0 || u_max < 1.0) throw error(errc::invalid_argument, "bad Dickman grid");
        const auto r1 = solve(per_unit);
        const auto r2 = solve(2 * per_unit);
        const auto r4 = solve(4 * per_unit);
        values_.resize(r1.size());
        for (std::size_t i = 0; i < r1.size(); ++i) {
            const long double a = (4 * r2[2 * i] - r1[i]) / 3, b = (4 * r4[4 * i] - r2[2 * i]) / 3;
            const long double v = (16 * b - a) / 15;
            values_[i] = static_cast<double>(v);
            if (i <= 10 * static_cast<std::size_t>(per_unit)) gap_ = std::max(gap_, static_cast<double>(std::abs(v - b) / v));
        }
    }

    double step() const { return 1.0 / per_unit_; }
    double u_max() const { return u_max_; }
    const std::vector<double>& values() const { return values_; }
    double richardson_gap() const { return gap_; }

    /// rho(u) by cubic interpolation inside the unit interval containing u.
    double operator()(double u) const {
        if (u < 0.0) throw error(errc::invalid_argument, "rho needs u >= 0");
        if (u > u_max_) throw error(errc::out_of_table, "u beyond the tabulated range");
        if (u <= 1.0) return 1.0;
        const double x = u * per_unit_;
        const std::size_t last = values_.size() - 1;
        std::size_t i = static_cast<std::size_t>(std::floor(x));
        if (i >= last) return values_[last];
        if (x == static_cast<double>(i)) return values_[i];
        // stencil of 4 nodes inside [j, j+1]: rho is smooth there, kinked at integers
        const std::size_t lo_unit = (i / per_unit_) * per_unit_;
        const std::size_t hi_unit = std::min(lo_unit + per_unit_, last);
        std::size_t s = i >= lo_unit + 1 ? i - 1 : lo_unit;
        if (s + 3 > hi_unit) s = hi_unit - 3;
        double r = 0.0;
        for (std::size_t a = s; a < s + 4; ++a) {
            double w = 1.0;
            for (std::size_t b = s; b < s + 4; ++b)
                if (b != a) w *= (x - static_cast<double>(b)) / (static_cast<double>(a) - static_cast<double>(b));
            r += w * values_[a];
        }
        return r;
    }

    /// integral of rho over [A, u_max]: trapezoid on the grid, 3-point Gauss on the partial cell.
    double tail_integral(double A) const {
        if (A < 0.0) throw error(errc::invalid_argument, "integral needs A >= 0");
        if (A >= u_max_) return 0.0;
        const double h = step();
        const std::size_t first = static_cast<std::size_t>(std::ceil(A * per_unit_));
        CompensatedSum sum;
        const double head = first * h - A;
        if (head > 0.0) {
            const double mid = A + head / 2, half = head / 2, g = std::sqrt(0.6);
            sum.add(half * (5.0 * (*this)(mid - g * half) + 8.0 * (*this)(mid) + 5.0 * (*this)(mid + g * half)) / 9.0);
        }
        for (std::size_t i = first; i + 1 < values_.size(); ++i) sum.add(h * (values_[i] + values_[i + 1]) / 2);
        return sum.value();
    }

private:
    std::vector<long double> solve(unsigned n) const {
        const std::size_t total = static_cast<std::size_t>(std::llround(u_max_ * n));
        std::vector<long double> r(total + 1, 1.0L);
        const long double h = 1.0L / n;
        for (std::size_t i = n + 1; i <= total; ++i) {
            const long double u0 = (i - 1) * h, u1 = i * h;
            r[i] = r[i - 1] - h / 2 * (r[i - 1 - n] / u0 + r[i - n] / u1);
        }
        return r;
    }

    unsigned per_unit_;
    double u_max_;
    std::vector<double> values_;
    double gap_ = 0.0;
};

inline const DickmanTable& dickman_table() {
    static const DickmanTable table;
    return table;
}

/// Dickman's rho for 0 <= u <= 50.
inline double dickman_rho(double u) { return dickman_table()(u); }

/// c(A) = integral of rho over [A, infinity); c(0) = e^gamma.
inline double rho_integral(double A) {
    if (A < 0.0 || A > 20.0) throw error(errc::invalid_argument, "rho_integral needs 0 <= A <= 20");
    return dickman_table().tail_integral(A);
}

struct PsiCounts {
    u64 psi = 0;  // y-smooth n <= x
    u64 psi2 = 0; // squarefree y-smooth n <= x
};

inline constexpr u64 max_psi_limit = 10'000'000;

/// Counts of y-smooth and squarefree y-smooth integers in [1, x].
inline PsiCounts psi_counts(u64 x, u64 y) {
    if (y < 2 || y > x) throw error(errc::invalid_argument, "psi counts need 2 <= y <= x");
    if (x > max_psi_limit) throw error(errc::limit_too_large, "psi counts limited to x <= 10^7");
    std::vector<std::uint32_t> rest(x + 1);
    for (u64 n = 0; n <= x; ++n) rest[n] = static_cast<std::uint32_t>(n);
    std::vector<bool> square_free(x + 1, true);
    for_each_prime(x, [&](u64 p) {
        if (p <= y)
            for (u64 n = p; n <= x; n += p)
                while (rest[n] % p == 0) rest[n] /= static_cast<std::uint32_t>(p);
        if (p <= x / p)
            for (u64 n = p * p; n <= x; n += p * p) square_free[n] = false;
    });
    PsiCounts out;
    for (u64 n = 1; n <= x; ++n) {
        if (rest[n] != 1) continue;
        ++out.psi;
        if (square_free[n]) ++out.psi2;
    }
    return out;
}

struct PrimorialSigma {
    double sigma = 0.0;      // S - S1
    double S = 0.0;          // prod_{p <= X} (1 + 1/p)
    double S1 = 0.0;         // sum of 1/d over d | q, d <= threshold
    double prediction = 0.0; // c(A) ln X
    double threshold = 0.0;  // (ln q)^A
    double log_q = 0.0;
};

inline constexpr u64 max_primorial_X = 2000;
inline constexpr double max_primorial_threshold = 1e7;

/**
 * Divisor sum of 1/d over d | q with d > (ln q)^A, q the product of primes
 * up to X. ln q is summed in compensated arithmetic; S1 enumerates the
 * squarefree X-smooth d up to the threshold in increasing-prime order.
 */
inline PrimorialSigma primorial_sigma(u64 X, double A) {
    if (X < 2) throw error(errc::invalid_argument, "primorial needs X >= 2");
    if (A <= 0.0) throw error(errc::invalid_argument, "A must be positive");
    if (X > max_primorial_X || std::pow(static_cast<double>(X), A) > max_primorial_threshold)
        throw error(errc::enumeration_too_large, "need X <= 2000 and X^A <= 10^7");
    const auto primes = primes_up_to(X).primes;
    CompensatedSum log_q;
    long double S = 1.0L;
    for (u64 p : primes) {
        log_q.add(std::log(static_cast<double>(p)));
        S *= 1.0L + 1.0L / static_cast<long double>(p);
    }
    PrimorialSigma out;
    out.log_q = log_q.value();
    out.threshold = std::pow(out.log_q, A);
    const u64 limit = static_cast<u64>(std::floor(out.threshold));
    CompensatedSum s1;
    // depth-first over squarefree products with increasing primes
    struct Frame {
        std::size_t next;
        u64 d;
    };
    std::vector<Frame> stack{{0, 1}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        s1.add(1.0 / static_cast<double>(f.d));
        const auto end = std::upper_bound(primes.begin(), primes.end(), limit / f.d) - primes.begin();
        for (std::size_t j = static_cast<std::size_t>(end); j-- > f.next;) stack.push_back({j + 1, f.d * primes[j]});
    }
    out.S = static_cast<double>(S);
    out.S1 = s1.value();
    out.sigma = out.S - out.S1;
    out.prediction = rho_integral(A) * std::log(static_cast<double>(X));
    return out;
}

} // namespace kloos
