#pragma once

/**
 * @file sieve.hpp
 * @brief Segmented sieve of Eratosthenes and batched modular inversion.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kloos/arith.hpp"

namespace kloos {

/// Every prime <= limit, increasing.
struct PrimeTable {
    u64 limit = 0;
    std::vector<u64> primes;

    std::size_t count() const { return primes.size(); }
};

inline constexpr u64 max_sieve_limit = 1'000'000'000;

namespace detail {

inline std::vector<u64> simple_sieve(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

} // namespace detail

/**
 * Calls `visit(p)` for every prime p <= limit in increasing order.
 *
 * Odd-only segmented sieve with a 256 KiB window, so memory stays
 * O(sqrt(limit)) regardless of the range.
 */
template <typename Visit>
void for_each_prime(u64 limit, Visit&& visit) {
    if (limit > max_sieve_limit)
        throw error(errc::limit_too_large, "sieve limit above 10^9");
    if (limit < 2) return;
    visit(u64{2});
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<u64> base = detail::simple_sieve(root);

    constexpr u64 window = 1u << 18; // odd numbers per segment
    std::vector<std::uint8_t> seg(window);
    std::vector<u64> next; // next odd multiple index per base prime
    next.reserve(base.size());
    for (u64 p : base) {
        if (p == 2) {
            next.push_back(0);
            continue;
        }
        next.push_back((p * p - 1) / 2); // index of p^2 in the odd-number array (n = 2i+1)
    }

    const u64 last_index = (limit - 1) / 2; // largest i with 2i+1 <= limit
    for (u64 lo = 1; lo <= last_index; lo += window) {
        const u64 hi = std::min(last_index + 1, lo + window);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
        for (std::size_t j = 0; j < base.size(); ++j) {
            const u64 p = base[j];
            if (p == 2) continue;
            u64 i = next[j];
            for (; i < hi; i += p) seg[i - lo] = 0;
            next[j] = i;
        }
        for (u64 i = lo; i < hi; ++i)
            if (seg[i - lo]) visit(2 * i + 1);
    }
}

inline PrimeTable primes_up_to(u64 limit) {
    if (limit < 2) throw error(errc::invalid_argument, "prime table needs limit >= 2");
    PrimeTable t;
    t.limit = limit;
    if (limit >= 100) {
        const double x = static_cast<double>(limit);
        t.primes.reserve(static_cast<std::size_t>(1.26 * x / std::log(x)) + 16);
    }
    for_each_prime(limit, [&](u64 p) { t.primes.push_back(p); });
    return t;
}

/// pi(x) by binary search in a table built for limit >= x.
inline std::size_t prime_pi(const PrimeTable& t, u64 x) {
    return static_cast<std::size_t>(
        std::upper_bound(t.primes.begin(), t.primes.end(), x) - t.primes.begin());
}

/**
 * Inverts every value modulo q with a single extended-Euclid call
 * (prefix products, one inversion, backward sweep).
 *
 * All values must be units modulo q. Results are in [1, q].
 */
inline std::vector<u64> batch_inverse(std::span<const u64> values, u64 q) {
    std::vector<u64> out(values.size());
    if (values.empty()) return out;
    if (q == 1) {
        std::fill(out.begin(), out.end(), 1);
        return out;
    }
    std::vector<u64> prefix(values.size());
    u64 acc = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc = mul_mod(acc, values[i] % q, q);
        prefix[i] = acc;
    }
    u64 inv = mod_inverse(static_cast<i64>(acc), q); // throws if some value is not a unit
    for (std::size_t i = values.size(); i-- > 0;) {
        const u64 before = i == 0 ? 1 : prefix[i - 1];
        out[i] = mul_mod(inv, before, q);
        inv = mul_mod(inv, values[i] % q, q);
    }
    for (auto& v : out)
        if (v == 0) v = q;
    return out;
}

} // namespace kloos
