#pragma once

/**
 * @file arith.hpp
 * @brief Number-theoretic primitives on 63-bit moduli.
 *
 * Factorization (trial division to 10^6, then Pollard rho with a
 * deterministic Miller-Rabin test), the classical multiplicative functions,
 * modular inverses, Jacobi symbols, square roots modulo odd prime powers
 * (Tonelli-Shanks followed by Hensel lifting) and two-modulus CRT.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kloos/error.hpp"

namespace kloos {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 max_modulus = u64{1} << 63;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    if ((a | b) >> 32 == 0) return a * b % m;
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Least nonnegative residue of a signed integer.
constexpr u64 reduce(i64 a, u64 m) {
    if (a >= 0) return static_cast<u64>(a) % m;
    // -(a+1) avoids overflow at INT64_MIN
    u64 r = static_cast<u64>(-(a + 1)) % m;
    return m - 1 - r;
}

constexpr u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

constexpr u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

namespace detail {

constexpr bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for all 64-bit n.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!detail::miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

struct PrimePower {
    u64 prime;
    unsigned exponent;

    u64 value() const { return ipow(prime, exponent); }
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/**
 * A positive integer together with its prime factorization.
 *
 * Factors are sorted by prime with positive exponents; the product always
 * equals `value()`. The unit 1 has no factors.
 */
class FactoredModulus {
public:
    FactoredModulus() = default;

    /// Builds from an explicit factor list; validates primality, order and product.
    static FactoredModulus from_factors(std::vector<PrimePower> factors) {
        u128 v = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = factors[i];
            if (f.exponent == 0 || !is_prime(f.prime))
                throw error(errc::invalid_argument, "bad prime power in factor list");
            if (i > 0 && factors[i - 1].prime >= f.prime)
                throw error(errc::invalid_argument, "factor primes must be strictly increasing");
            for (unsigned e = 0; e < f.exponent; ++e) {
                v *= f.prime;
                if (v > max_modulus) throw error(errc::limit_too_large, "modulus exceeds 2^63");
            }
        }
        FactoredModulus q;
        q.value_ = static_cast<u64>(v);
        q.factors_ = std::move(factors);
        return q;
    }

    u64 value() const { return value_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    bool is_one() const { return factors_.empty(); }
    bool is_prime_power() const { return factors_.size() == 1; }

    u64 phi() const {
        u64 r = 1;
        for (const auto& f : factors_) r *= (f.prime - 1) * ipow(f.prime, f.exponent - 1);
        return r;
    }

    u64 tau() const {
        u64 r = 1;
        for (const auto& f : factors_) r *= f.exponent + 1;
        return r;
    }

    int mu() const {
        for (const auto& f : factors_)
            if (f.exponent > 1) return 0;
        return factors_.size() % 2 == 0 ? 1 : -1;
    }

    unsigned omega() const { return static_cast<unsigned>(factors_.size()); }

    /// All positive divisors in increasing order.
    std::vector<u64> divisors() const {
        std::vector<u64> ds{1};
        for (const auto& f : factors_) {
            const std::size_t n = ds.size();
            u64 pk = 1;
            for (unsigned e = 1; e <= f.exponent; ++e) {
                pk *= f.prime;
                for (std::size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pk);
            }
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    }

    /// Factorization of a divisor d of this modulus, read off without refactoring.
    FactoredModulus divisor(u64 d) const {
        if (d == 0 || value_ % d != 0) throw error(errc::invalid_argument, "not a divisor");
        std::vector<PrimePower> fs;
        for (const auto& f : factors_) {
            unsigned e = 0;
            while (d % f.prime == 0) {
                d /= f.prime;
                ++e;
            }
            if (e > 0) fs.push_back({f.prime, e});
        }
        FactoredModulus r;
        r.factors_ = std::move(fs);
        r.value_ = 1;
        for (const auto& f : r.factors_) r.value_ *= f.value();
        return r;
    }

    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += "*";
            s += std::to_string(f.prime);
            if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
        }
        return s;
    }

    friend bool operator==(const FactoredModulus& a, const FactoredModulus& b) {
        return a.value_ == b.value_;
    }

private:
    u64 value_ = 1;
    std::vector<PrimePower> factors_;
};

namespace detail {

inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        // Brent-style batching of gcd computations
        while (d == 1) {
            u64 prod = 1;
            u64 xs = x, ys = y;
            for (int i = 0; i < 64; ++i) {
                x = f(x);
                y = f(f(y));
                prod = mul_mod(prod, x > y ? x - y : y - x, n);
                if (prod == 0) break;
            }
            d = gcd(prod, n);
            if (d == n || prod == 0) {
                // Replay step by step from the batch start
                x = xs;
                y = ys;
                do {
                    x = f(x);
                    y = f(f(y));
                    d = gcd(x > y ? x - y : y - x, n);
                } while (d == 1);
                break;
            }
        }
        if (d != n) return d;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Full factorization of 1 <= n <= 2^63.
inline FactoredModulus factorize(u64 n) {
    if (n == 0 || n > max_modulus) throw error(errc::invalid_argument, "factorize needs 1 <= n <= 2^63");
    std::vector<u64> primes;
    constexpr u64 trial_limit = 1'000'000;
    for (u64 p = 2; p <= trial_limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) detail::factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<PrimePower> fs;
    for (u64 p : primes) {
        if (!fs.empty() && fs.back().prime == p) ++fs.back().exponent;
        else fs.push_back({p, 1});
    }
    return FactoredModulus::from_factors(std::move(fs));
}

inline u64 phi(const FactoredModulus& q) { return q.phi(); }
inline u64 tau(const FactoredModulus& q) { return q.tau(); }
inline int mu(const FactoredModulus& q) { return q.mu(); }
inline unsigned omega(const FactoredModulus& q) { return q.omega(); }

/// Inverse of n modulo q, normalized to [1, q].
inline u64 mod_inverse(i64 n, u64 q) {
    if (q == 0) throw error(errc::invalid_argument, "modulus must be positive");
    if (q == 1) return 1;
    u64 a = reduce(n, q);
    // extended Euclid on signed 128-bit to stay exact for q < 2^63
    __int128 old_r = a, r = q, old_s = 1, s = 0;
    while (r != 0) {
        __int128 t = old_r / r;
        __int128 tmp = old_r - t * r;
        old_r = r;
        r = tmp;
        tmp = old_s - t * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw error(errc::not_invertible,
                    std::to_string(n) + " has no inverse modulo " + std::to_string(q));
    __int128 inv = old_s % static_cast<__int128>(q);
    if (inv <= 0) inv += q;
    return static_cast<u64>(inv);
}

/// Jacobi symbol (a/n) for odd n >= 1.
inline int jacobi(i64 a_signed, u64 n) {
    if (n % 2 == 0) throw error(errc::even_modulus, "Jacobi symbol needs odd n");
    u64 a = reduce(a_signed, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

namespace detail {

/// Tonelli-Shanks for a quadratic residue c modulo an odd prime p.
inline u64 sqrt_mod_prime(u64 c, u64 p) {
    c %= p;
    if (p % 4 == 3) return pow_mod(c, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (jacobi(static_cast<i64>(z), p) != -1) ++z;
    u64 m = s;
    u64 cc = pow_mod(z, q, p);
    u64 t = pow_mod(c, q, p);
    u64 r = pow_mod(c, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = cc;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
        m = i;
        cc = mul_mod(b, b, p);
        t = mul_mod(t, cc, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

} // namespace detail

/**
 * A square root of the unit c modulo p^n (p odd).
 *
 * Returns the smaller of the two roots in [1, p^n), or nullopt when c is a
 * quadratic non-residue modulo p.
 */
inline std::optional<u64> sqrt_mod_prime_power(i64 c_signed, u64 p, unsigned n) {
    if (p == 2) throw error(errc::even_prime, "square roots modulo powers of 2 are not supported");
    if (n == 0) throw error(errc::invalid_argument, "exponent must be positive");
    const u64 q = ipow(p, n);
    const u64 c = reduce(c_signed, q);
    if (c % p == 0) throw error(errc::not_coprime, "p divides c");
    if (jacobi(static_cast<i64>(c % p), p) != 1) return std::nullopt;
    u64 x = detail::sqrt_mod_prime(c % p, p);
    // Hensel: x <- x - (x^2 - c) / (2x) modulo p^(j+1)
    u64 pj = p;
    for (unsigned j = 1; j < n; ++j) {
        const u64 next = pj * p;
        const u64 fx = (mul_mod(x, x, next) + next - c % next) % next;
        const u64 inv2x = mod_inverse(static_cast<i64>(mul_mod(2, x, next)), next);
        x = (x + next - mul_mod(fx, inv2x, next)) % next;
        pj = next;
    }
    return std::min(x, q - x);
}

/// The unique residue in [0, r1*r2) congruent to x1 mod r1 and x2 mod r2.
inline u64 crt_pair(u64 r1, u64 r2, i64 x1, i64 x2) {
    if (r1 == 0 || r2 == 0) throw error(errc::invalid_argument, "moduli must be positive");
    if (gcd(r1, r2) != 1) throw error(errc::not_coprime_moduli, "CRT moduli share a factor");
    const u64 r = r1 * r2;
    const u64 a1 = reduce(x1, r1), a2 = reduce(x2, r2);
    // x = a1 + r1 * ((a2 - a1) * inv(r1) mod r2)
    const u64 inv = r2 == 1 ? 0 : mod_inverse(static_cast<i64>(r1 % r2), r2) % r2;
    const u64 diff = (a2 + r2 - a1 % r2) % r2;
    const u64 t = mul_mod(diff, inv, r2);
    return (a1 + mul_mod(r1, t, r)) % r;
}

/// Whether gcd(n, q) == 1 for q given with its factorization.
inline bool is_unit(u64 n, const FactoredModulus& q) {
    for (const auto& f : q.factors())
        if (n % f.prime == 0) return false;
    return true;
}

} // namespace kloos
