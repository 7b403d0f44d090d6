#pragma once

/**
 * @file expsum.hpp
 * @brief Complete and incomplete exponential sums modulo q.
 *
 * Kloosterman sums S(a,b;q) by direct summation, by Salie's closed form on odd
 * prime powers and by CRT composition; Ramanujan sums (closed and direct),
 * quadratic Gauss sums, and the Jacobi-twisted sums w_q(a) = u_q(a) + i v_q(a).
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "kloos/arith.hpp"
#include "kloos/numeric.hpp"
#include "kloos/sieve.hpp"

namespace kloos {

/// Real and imaginary parts of the Jacobi-twisted additive character sum.
struct TwistedValue {
    double u = 0.0;
    double v = 0.0;
};

/// A complex sum whose parts carry separate error bounds.
struct ComplexValue {
    KloostermanValue re;
    KloostermanValue im;

    double abs() const { return std::hypot(re.value, im.value); }
    double abs_error() const { return re.abs_error + im.abs_error; }
};

namespace detail {

inline std::vector<u64> units_up_to(u64 limit, const FactoredModulus& q) {
    std::vector<u64> out;
    out.reserve(static_cast<std::size_t>(std::min<u64>(limit, q.value())));
    for (u64 n = 1; n <= limit; ++n)
        if (is_unit(n, q)) out.push_back(n);
    return out;
}

/// sum over units n <= limit of e_q(a n^-1 + b n).
inline ComplexValue kloosterman_partial(i64 a, i64 b, const FactoredModulus& q, u64 limit) {
    const u64 m = q.value();
    if (m == 1) return {{1.0, 0.0}, {0.0, 0.0}};
    const u64 ar = reduce(a, m), br = reduce(b, m);
    const auto units = units_up_to(limit, q);
    const auto inverses = batch_inverse(units, m);
    CompensatedSum re, im;
    if (m <= max_tabulated_modulus) {
        const auto circle = unit_circle(m);
        for (std::size_t i = 0; i < units.size(); ++i) {
            const u64 idx = (mul_mod(ar, inverses[i] % m, m) + mul_mod(br, units[i], m)) % m;
            re.add(circle->cos(idx), trig_entry_error);
            im.add(circle->sin(idx), trig_entry_error);
        }
    } else {
        for (std::size_t i = 0; i < units.size(); ++i) {
            const u64 idx = (mul_mod(ar, inverses[i] % m, m) + mul_mod(br, units[i], m)) % m;
            const auto z = e_q(idx, m);
            re.add(z.real(), trig_entry_error);
            im.add(z.imag(), trig_entry_error);
        }
    }
    return {re.result(), im.result()};
}

} // namespace detail

/**
 * S(a,b;q) by summing cos(2 pi (a n^-1 + b n)/q) over units n in [1, q].
 *
 * The sine part is accumulated as well; a complete sum is real, so a sine
 * total exceeding the error bound indicates a defect and throws.
 */
inline KloostermanValue kloosterman_direct(i64 a, i64 b, const FactoredModulus& q) {
    if (q.is_one()) return {1.0, 0.0};
    const auto s = detail::kloosterman_partial(a, b, q, q.value());
    if (std::abs(s.im.value) > s.im.abs_error + s.re.abs_error)
        throw std::logic_error("complete Kloosterman sum has a non-negligible imaginary part");
    return s.re;
}

/// Salie's value 2 sqrt(q) cos(...) from a chosen square root nu of ab modulo q = p^n.
inline KloostermanValue salie_from_root(u64 nu, u64 p, unsigned n) {
    const u64 q = ipow(p, n);
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    // 4 pi nu / q == 2 pi (2 nu mod q) / q
    const long double angle = two_pi * (static_cast<long double>(mul_mod(2, nu % q, q)) / static_cast<long double>(q));
    const long double amp = 2.0L * std::sqrt(static_cast<long double>(q));
    long double value;
    if (n % 2 == 0) {
        value = amp * std::cos(angle);
    } else {
        const int chi = jacobi(static_cast<i64>(nu % q), q);
        const long double shift = (p % 4 == 1) ? 0.0L : std::numbers::pi_v<long double> / 2;
        value = amp * chi * std::cos(angle + shift);
    }
    return {static_cast<double>(value), static_cast<double>(amp) * 4 * unit_roundoff};
}

/// S(a,b;p^n) for odd p, n >= 2, p not dividing ab, from Salie's closed form.
inline KloostermanValue kloosterman_salie(i64 a, i64 b, u64 p, unsigned n) {
    if (p == 2) throw error(errc::even_prime, "Salie closed form needs an odd prime");
    if (!is_prime(p)) throw error(errc::invalid_argument, "p must be prime");
    if (n < 2) throw error(errc::exponent_too_small, "Salie closed form needs n >= 2");
    const u64 q = ipow(p, n);
    const u64 c = mul_mod(reduce(a, q), reduce(b, q), q);
    if (c % p == 0) throw error(errc::not_coprime, "p divides ab");
    const auto nu = sqrt_mod_prime_power(static_cast<i64>(c), p, n);
    if (!nu) return {0.0, 0.0};
    return salie_from_root(*nu, p, n);
}

/**
 * S(a,b;q) as a product over the prime-power factors r_i of q:
 *   S(a,b;q) = prod_i S(a R_i^-1, b R_i^-1; r_i),  R_i = q / r_i.
 *
 * Each factor uses Salie's closed form when it applies (odd p, n >= 2,
 * p not dividing the arguments), otherwise a direct sum on r_i.
 */
inline KloostermanValue kloosterman_crt(i64 a, i64 b, const FactoredModulus& q) {
    if (q.is_one()) return {1.0, 0.0};
    if (q.is_prime_power()) {
        const auto& f = q.factors().front();
        const u64 r = q.value();
        const u64 ar = reduce(a, r), br = reduce(b, r);
        if (f.prime != 2 && f.exponent >= 2 && ar % f.prime != 0 && br % f.prime != 0)
            return kloosterman_salie(static_cast<i64>(ar), static_cast<i64>(br), f.prime, f.exponent);
        return kloosterman_direct(static_cast<i64>(ar), static_cast<i64>(br), q);
    }
    KloostermanValue result{1.0, 0.0};
    for (const auto& f : q.factors()) {
        const u64 r = f.value();
        const u64 rest = q.value() / r;
        const u64 rest_inv = mod_inverse(static_cast<i64>(rest % r), r);
        const u64 u = mul_mod(reduce(a, r), rest_inv, r);
        const u64 v = mul_mod(reduce(b, r), rest_inv, r);
        result = result * kloosterman_crt(static_cast<i64>(u), static_cast<i64>(v),
                                          FactoredModulus::from_factors({f}));
    }
    return result;
}

/// Incomplete sum over units n in [1, N], N <= q. Complex-valued in general.
inline ComplexValue kloosterman_incomplete(i64 a, i64 b, u64 q, u64 N) {
    if (N < 1 || N > q) throw error(errc::invalid_argument, "incomplete sum needs 1 <= N <= q");
    return detail::kloosterman_partial(a, b, factorize(q), N);
}

/// c_q(a) = phi(q) mu(q/d) / phi(q/d), d = gcd(q, a).
inline i64 ramanujan_closed(const FactoredModulus& q, i64 a) {
    if (q.is_one()) return 1;
    const u64 d = gcd(q.value(), reduce(a, q.value()));
    const FactoredModulus quotient = q.divisor(q.value() / d);
    return static_cast<i64>(q.phi() / quotient.phi()) * quotient.mu();
}

inline constexpr u64 max_ramanujan_direct = 1'000'000;

/// c_q(a) by compensated summation of cos(2 pi a f / q) over units f, rounded.
inline i64 ramanujan_direct(u64 q, i64 a) {
    if (q == 0) throw error(errc::invalid_argument, "modulus must be positive");
    if (q > max_ramanujan_direct) throw error(errc::limit_too_large, "direct Ramanujan sum limited to q <= 10^6");
    if (q == 1) return 1;
    const auto fq = factorize(q);
    const auto circle = unit_circle(q);
    const u64 ar = reduce(a, q);
    CompensatedSum sum;
    u64 idx = 0;
    for (u64 f = 1; f <= q; ++f) {
        idx += ar;
        if (idx >= q) idx -= q;
        if (is_unit(f, fq)) sum.add(circle->cos(idx), trig_entry_error);
    }
    const double v = sum.value();
    const double rounded = std::nearbyint(v);
    if (std::abs(v - rounded) >= 1e-6 * static_cast<double>(q))
        throw error(errc::rounding_unsafe, "direct Ramanujan sum is not close to an integer");
    return static_cast<i64>(rounded);
}

/**
 * Quadratic Gauss sum sum_{g=1}^{p} (g/p) e_p(g) by direct summation.
 *
 * The result is checked against sqrt(p) (p = 1 mod 4) or i sqrt(p) (p = 3 mod 4).
 */
inline std::complex<double> gauss_sum(u64 p) {
    if (p == 2) throw error(errc::even_prime, "Gauss sum needs an odd prime");
    if (!is_prime(p)) throw error(errc::invalid_argument, "p must be prime");
    CompensatedSum re, im;
    for (u64 g = 1; g < p; ++g) {
        const auto z = e_q(g, p);
        const int chi = jacobi(static_cast<i64>(g), p);
        re.add(chi * z.real());
        im.add(chi * z.imag());
    }
    const std::complex<double> value{re.value(), im.value()};
    const double root = std::sqrt(static_cast<double>(p));
    const std::complex<double> expected = (p % 4 == 1) ? std::complex<double>{root, 0.0}
                                                       : std::complex<double>{0.0, root};
    if (std::abs(value - expected) > 1e-9)
        throw std::logic_error("direct Gauss sum disagrees with its closed value");
    return value;
}

/**
 * u_q(a), v_q(a) for q = p^n with p odd and n odd, in closed form.
 *
 * Nonzero only when a = b p^(n-1) with p not dividing b; then the value
 * (b/p) p^(n - 1/2) sits in u for p = 1 mod 4 and in v for p = 3 mod 4.
 */
inline TwistedValue twisted_closed(const FactoredModulus& q, i64 a) {
    if (!q.is_prime_power()) throw error(errc::invalid_argument, "twisted sum needs a prime power");
    const auto [p, n] = q.factors().front();
    if (p == 2) throw error(errc::even_prime, "twisted sum needs an odd prime");
    if (n % 2 == 0) throw error(errc::even_exponent, "twisted closed form needs odd n");
    const u64 m = q.value();
    u64 ar = reduce(a, m);
    if (ar == 0) return {};
    unsigned r = 0;
    while (ar % p == 0) {
        ar /= p;
        ++r;
    }
    if (r != n - 1) return {};
    const double value = jacobi(static_cast<i64>(ar % p), p) *
                         static_cast<double>(ipow(p, n - 1)) * std::sqrt(static_cast<double>(p));
    if (p % 4 == 1) return {value, 0.0};
    return {0.0, value};
}

/// w_q(a) = sum_{f=1}^{q} (f/q) e_q(a f) by direct summation (odd q).
inline TwistedValue twisted_direct(u64 q, i64 a) {
    const u64 ar = reduce(a, q);
    CompensatedSum re, im;
    const auto circle = unit_circle(q);
    u64 idx = 0;
    for (u64 f = 1; f <= q; ++f) {
        idx += ar;
        if (idx >= q) idx -= q;
        const int chi = jacobi(static_cast<i64>(f), q);
        if (chi == 0) continue;
        re.add(chi * circle->cos(idx));
        im.add(chi * circle->sin(idx));
    }
    return {re.value(), im.value()};
}

} // namespace kloos
