#pragma once

/**
 * @file convolution.hpp
 * @brief Exact residue histograms and their cyclic convolution powers.
 *
 * The count type is chosen from an a-priori bound on the largest entry:
 * 64-bit, 128-bit, or arbitrary-size integers.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "kloos/arith.hpp"
#include "kloos/rational.hpp"

namespace kloos {

/// counts[t] for t in [0, modulus).
template <typename Count>
struct Histogram {
    u64 modulus = 1;
    std::vector<Count> counts;

    Count total() const { return std::accumulate(counts.begin(), counts.end(), Count{0}); }
};

using ResidueHistogram = Histogram<u64>;

inline bigint to_bigint(u64 v) { return bigint(v); }
inline bigint to_bigint(u128 v) {
    bigint r = static_cast<u64>(v >> 64);
    r <<= 64;
    r += static_cast<u64>(v);
    return r;
}
inline bigint to_bigint(const bigint& v) { return v; }

template <typename To, typename From>
Histogram<To> widen(const Histogram<From>& h) {
    Histogram<To> out{h.modulus, std::vector<To>(h.counts.size())};
    for (std::size_t i = 0; i < h.counts.size(); ++i) out.counts[i] = To(h.counts[i]);
    return out;
}

/// (a * b)[t] = sum_{i + j = t mod q} a[i] b[j]. Quadratic; exact.
template <typename Count>
Histogram<Count> cyclic_convolve(const Histogram<Count>& a, const Histogram<Count>& b) {
    if (a.modulus != b.modulus) throw error(errc::invalid_argument, "histogram moduli differ");
    const std::size_t q = a.modulus;
    Histogram<Count> c{a.modulus, std::vector<Count>(q, Count{0})};
    Count* out = c.counts.data();
    const Count* bb = b.counts.data();
    for (std::size_t i = 0; i < q; ++i) {
        const Count ai = a.counts[i];
        if (ai == 0) continue;
        // j in [0, q - i) lands on i + j, j in [q - i, q) wraps to i + j - q
        const std::size_t split = q - i;
        for (std::size_t j = 0; j < split; ++j) out[i + j] += ai * bb[j];
        for (std::size_t j = split; j < q; ++j) out[i + j - q] += ai * bb[j];
    }
    return c;
}

/// k-fold cyclic convolution by repeated squaring; k >= 1.
template <typename Count>
Histogram<Count> convolution_power(const Histogram<Count>& base, unsigned k) {
    if (k == 0) throw error(errc::invalid_argument, "convolution power needs k >= 1");
    Histogram<Count> result;
    bool have = false;
    Histogram<Count> sq = base;
    for (unsigned e = k;;) {
        if (e & 1u) {
            result = have ? cyclic_convolve(result, sq) : sq;
            have = true;
        }
        e >>= 1;
        if (e == 0) break;
        sq = cyclic_convolve(sq, sq);
    }
    return result;
}

/// Word-operation estimate for convolution_power on modulus q.
inline double convolution_cost(u64 q, unsigned k) {
    unsigned steps = 0;
    for (unsigned e = k; e > 1; e >>= 1) steps += 1 + (e & 1u);
    return static_cast<double>(q) * static_cast<double>(q) * std::max(1u, steps);
}

/// Bits needed for total^k, the largest possible entry of a k-fold power.
inline double count_bits(u64 total, unsigned k) {
    return total <= 1 ? 1.0 : k * std::log2(static_cast<double>(total)) + 1.0;
}

/**
 * Invokes `f.template operator()<Count>()` with the narrowest count type
 * that holds `bits`-bit values.
 */
template <typename F>
decltype(auto) dispatch_count_type(double bits, F&& f) {
    if (bits < 63.0) return f.template operator()<u64>();
    if (bits < 127.0) return f.template operator()<u128>();
    return f.template operator()<bigint>();
}

/// k-fold convolution of a 64-bit histogram, returned with arbitrary-size counts.
inline Histogram<bigint> convolution_power_exact(const ResidueHistogram& base, unsigned k) {
    const u64 total = base.total();
    return dispatch_count_type(count_bits(total, k), [&]<typename Count>() {
        const auto p = convolution_power(widen<Count>(base), k);
        Histogram<bigint> out{p.modulus, std::vector<bigint>(p.counts.size())};
        for (std::size_t i = 0; i < p.counts.size(); ++i) out.counts[i] = to_bigint(p.counts[i]);
        return out;
    });
}

} // namespace kloos
