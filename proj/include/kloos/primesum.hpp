#pragma once

/**
 * @file primesum.hpp
 * @brief Kloosterman sums over primes, exact prime-variable solution counts,
 *        and the envelope evaluators for their bounds.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kloos/arith.hpp"
#include "kloos/convolution.hpp"
#include "kloos/numeric.hpp"
#include "kloos/parallel.hpp"
#include "kloos/rational.hpp"
#include "kloos/sieve.hpp"
#include "kloos/singular.hpp"

namespace kloos {

struct PrimeSumResult {
    double value_re = 0.0;
    double value_im = 0.0;
    double abs_error = 0.0;
    u64 terms = 0;

    std::complex<double> value() const { return {value_re, value_im}; }
    double abs() const { return std::hypot(value_re, value_im); }
};

inline constexpr u64 max_prime_sum_limit = max_sieve_limit;

namespace detail {

/// Accumulates weight(n) e_q(a n^-1 + b n) over a stream of n, inverting in blocks.
class PrimeSweep {
public:
    PrimeSweep(i64 a, i64 b, u64 q) : q_(q), a_(reduce(a, q)), b_(reduce(b, q)), fq_(factorize(q)) {
        if (q <= max_tabulated_modulus) circle_ = unit_circle(q);
        block_.reserve(block_size);
        weights_.reserve(block_size);
    }

    void push(u64 n, double weight) {
        if (!is_unit(n % q_, fq_) && q_ > 1) return;
        block_.push_back(n % q_ == 0 ? q_ : n % q_);
        weights_.push_back(weight);
        if (block_.size() == block_size) flush();
    }

    PrimeSumResult finish() {
        flush();
        PrimeSumResult r;
        r.value_re = re_.value();
        r.value_im = im_.value();
        r.abs_error = re_.error_bound() + im_.error_bound();
        r.terms = terms_;
        return r;
    }

private:
    static constexpr std::size_t block_size = 1u << 15;

    void flush() {
        if (block_.empty()) return;
        const auto inv = batch_inverse(block_, q_);
        for (std::size_t i = 0; i < block_.size(); ++i) {
            const u64 idx = (mul_mod(a_, inv[i] % q_, q_) + mul_mod(b_, block_[i] % q_, q_)) % q_;
            double cs, sn;
            if (circle_) {
                cs = circle_->cos(idx);
                sn = circle_->sin(idx);
            } else {
                const auto z = e_q(idx, q_);
                cs = z.real();
                sn = z.imag();
            }
            const double w = weights_[i];
            const double err = std::abs(w) * trig_entry_error + std::abs(w) * unit_roundoff;
            re_.add(w * cs, err);
            im_.add(w * sn, err);
            ++terms_;
        }
        block_.clear();
        weights_.clear();
    }

    u64 q_, a_, b_;
    FactoredModulus fq_;
    std::shared_ptr<const UnitCircle> circle_;
    std::vector<u64> block_;
    std::vector<double> weights_;
    CompensatedSum re_, im_;
    u64 terms_ = 0;
};

inline void check_prime_sum_args(u64 q, u64 X) {
    if (q == 0) throw error(errc::invalid_argument, "modulus must be positive");
    if (X > max_prime_sum_limit) throw error(errc::limit_too_large, "X above 10^9");
}

} // namespace detail

/// W_q(a, b; X) = sum over primes p <= X, p not dividing q, of e_q(a p^-1 + b p).
inline PrimeSumResult W_q(i64 a, i64 b, u64 q, u64 X) {
    detail::check_prime_sum_args(q, X);
    detail::PrimeSweep sweep(a, b, q);
    for_each_prime(X, [&](u64 p) { sweep.push(p, 1.0); });
    return sweep.finish();
}

/// sum over primes p <= X, p not dividing q, of (ln p) e_q(a p^-1 + b p).
inline PrimeSumResult log_weighted_prime_sum(i64 a, i64 b, u64 q, u64 X) {
    detail::check_prime_sum_args(q, X);
    detail::PrimeSweep sweep(a, b, q);
    for_each_prime(X, [&](u64 p) { sweep.push(p, std::log(static_cast<double>(p))); });
    return sweep.finish();
}

/// T_q(a, b; X) = sum over n <= X coprime to q of Lambda(n) e_q(a n^-1 + b n).
inline PrimeSumResult T_q(i64 a, i64 b, u64 q, u64 X) {
    detail::check_prime_sum_args(q, X);
    detail::PrimeSweep sweep(a, b, q);
    for_each_prime(X, [&](u64 p) {
        const double w = std::log(static_cast<double>(p));
        for (u64 n = p;; n *= p) {
            sweep.push(n, w);
            if (n > X / p) break;
        }
    });
    return sweep.finish();
}

// ---------------------------------------------------------------------------
// Envelopes

struct Envelope {
    double value = 0.0;
    bool in_range = false;
};

/// (ln X)^(5/2) tau / q^(1/4) + (q/X)^(1/6) (ln X)^2 tau^(2/3); admissible for X >= q tau^4 (ln q)^12.
inline Envelope delta_envelope(const FactoredModulus& q, double X) {
    const double qd = static_cast<double>(q.value()), t = static_cast<double>(q.tau()), L = std::log(X);
    const double v = std::pow(L, 2.5) * t / std::pow(qd, 0.25) + std::pow(qd / X, 1.0 / 6.0) * L * L * std::pow(t, 2.0 / 3.0);
    return {v, X >= qd * std::pow(t, 4) * std::pow(std::log(qd), 12)};
}

/// sqrt(q) tau / phi + sqrt(q/X) (ln X)^2; admissible for X >= q (ln q)^4.
inline Envelope delta1_envelope(const FactoredModulus& q, double X) {
    const double qd = static_cast<double>(q.value()), L = std::log(X);
    const double v = std::sqrt(qd) * static_cast<double>(q.tau()) / static_cast<double>(q.phi()) + std::sqrt(qd / X) * L * L;
    return {v, X >= qd * std::pow(std::log(qd), 4)};
}

/**
 * Short-range envelope: (q^(3/4)/X)^(1/7) up to X = q^(7/8), then
 * (q^(2/3)/X)^(3/35); admissible for q^(3/4) <= X <= (q/2)^(3/2).
 */
inline Envelope delta_short_envelope(const FactoredModulus& q, double X) {
    const double qd = static_cast<double>(q.value());
    const double v = X <= std::pow(qd, 7.0 / 8.0) ? std::pow(std::pow(qd, 0.75) / X, 1.0 / 7.0)
                                                  : std::pow(std::pow(qd, 2.0 / 3.0) / X, 3.0 / 35.0);
    return {v, X >= std::pow(qd, 0.75) && X <= std::pow(qd / 2.0, 1.5)};
}

/// Exponent threshold c_k for the range q^(c_k) <= N <= q.
inline double exponent_threshold(unsigned k) {
    if (k < 3) throw error(errc::invalid_argument, "threshold defined for k >= 3");
    if (k <= 16) return 2.0 * (k + 33.0) / (3.0 * k + 64.0);
    return (3.0 * k + 50.0) / (4.0 * (k + 12.0));
}

/// Exponents (A, B) of the error term (ln ln N)^B (ln N)^-A, k >= 7.
inline std::pair<double, double> error_exponents(unsigned k) {
    if (k < 7) throw error(errc::invalid_argument, "error exponents defined for k >= 7");
    return {0.5 + 14.5 * (k - 7.0), std::ldexp(1.0, static_cast<int>(k)) - 1.0};
}

struct EnvelopeSample {
    i64 a = 1;
    i64 b = 1;
    u64 q = 1;
    u64 X = 2;
    double ratio = 0.0;
    double delta = 0.0;
    bool in_range = false;
    u64 primes = 0;
    double abs_w = 0.0;
};

struct EnvelopeReport {
    std::vector<EnvelopeSample> samples;
    double max_ratio = 0.0;
    double limit = 100.0;
    bool stable = false;
};

/**
 * Samples (a, b, q, X) with q in [q_lo, q_hi], X = round(q^x_exponent) and
 * gcd(ab, q) = 1, drawn from a 64-bit Mersenne twister seeded with `seed`.
 */
inline std::vector<EnvelopeSample> envelope_samples(u64 q_lo, u64 q_hi, double x_exponent, std::size_t count,
                                                    u64 seed) {
    if (q_lo < 2 || q_hi < q_lo) throw error(errc::invalid_argument, "need 2 <= q_lo <= q_hi");
    std::mt19937_64 rng(seed);
    std::vector<EnvelopeSample> out;
    out.reserve(count);
    while (out.size() < count) {
        EnvelopeSample s;
        s.q = q_lo + rng() % (q_hi - q_lo + 1);
        s.a = static_cast<i64>(1 + rng() % s.q);
        s.b = static_cast<i64>(1 + rng() % s.q);
        if (gcd(static_cast<u64>(s.a) * static_cast<u64>(s.b) % s.q, s.q) != 1) continue;
        s.X = static_cast<u64>(std::llround(std::pow(static_cast<double>(s.q), x_exponent)));
        if (s.X < 2) s.X = 2;
        out.push_back(s);
    }
    return out;
}

/// |W_q| / (pi(X) Delta) per sample; stable when the maximum stays below `limit`.
inline EnvelopeReport envelope_check(std::vector<EnvelopeSample> samples, double limit = 100.0, unsigned threads = 1) {
    for (const auto& s : samples) {
        if (s.a % static_cast<i64>(s.q) == 0 && s.b % static_cast<i64>(s.q) == 0)
            throw error(errc::invalid_argument, "a = b = 0 is excluded");
        if (gcd(reduce(s.a, s.q) * reduce(s.b, s.q) % s.q, s.q) != 1 && s.q > 1)
            throw error(errc::not_coprime, "envelope samples need gcd(ab, q) = 1");
    }
    EnvelopeReport rep;
    rep.limit = limit;
    rep.samples = parallel_map<EnvelopeSample>(samples.size(), threads, [&](std::size_t i) {
        EnvelopeSample s = samples[i];
        const auto w = W_q(s.a, s.b, s.q, s.X);
        u64 pi = 0;
        for_each_prime(s.X, [&](u64) { ++pi; });
        const auto env = delta_envelope(factorize(s.q), static_cast<double>(s.X));
        s.primes = pi;
        s.abs_w = w.abs();
        s.delta = env.value;
        s.in_range = env.in_range;
        s.ratio = s.abs_w / (static_cast<double>(pi) * env.value);
        return s;
    });
    for (const auto& s : rep.samples) rep.max_ratio = std::max(rep.max_ratio, s.ratio);
    rep.stable = rep.max_ratio <= limit;
    return rep;
}

// ---------------------------------------------------------------------------
// Prime-variable solution counts

/// counts[t] = #{prime p <= N, p not dividing q : p^-1 + c p = t (mod q)}.
inline ResidueHistogram prime_g_histogram(u64 c, u64 q, u64 N) {
    if (q == 0) throw error(errc::invalid_argument, "modulus must be positive");
    const auto fq = factorize(q);
    ResidueHistogram h{q, std::vector<u64>(q, 0)};
    if (q > 1 && !is_unit(c % q, fq)) throw error(errc::not_coprime, "c must be a unit modulo q");
    std::vector<u64> block;
    auto flush = [&] {
        const auto inv = batch_inverse(block, q);
        for (std::size_t i = 0; i < block.size(); ++i) {
            u64 t = inv[i] % q + mul_mod(c % q, block[i] % q, q);
            if (t >= q) t -= q;
            ++h.counts[t];
        }
        block.clear();
    };
    for_each_prime(N, [&](u64 p) {
        if (q > 1 && q % p == 0) return;
        block.push_back(p % q == 0 ? q : p % q);
        if (block.size() == (1u << 15)) flush();
    });
    flush();
    return h;
}

inline constexpr double max_count_cost = 1e9;

/// Exact number of prime k-tuples p_i <= N (p_i not dividing q) with sum g(p_i) = m (mod q).
inline bigint I_k_count(unsigned k, u64 c, i64 m, u64 q, u64 N) {
    if (k < 1) throw error(errc::invalid_argument, "k must be positive");
    if (convolution_cost(q, k) > max_count_cost) throw error(errc::limit_too_large, "convolution cost above 10^9");
    const auto h = prime_g_histogram(c, q, N);
    return convolution_power_exact(h, k).counts[reduce(m, q)];
}

/**
 * (1/q) sum_{c'=1}^{q} e_q(-c' m) W_q(c', c c'; N)^k, each W by a direct prime sweep.
 * Rounds to I_k exactly when the floating error is small.
 */
inline std::complex<double> fourier_reconstruction(unsigned k, u64 c, i64 m, u64 q, u64 N) {
    std::complex<long double> total = 0;
    const u64 mr = reduce(m, q);
    for (u64 cp = 1; cp <= q; ++cp) {
        const auto w = W_q(static_cast<i64>(cp), static_cast<i64>(mul_mod(c % q, cp % q, q)), q, N);
        std::complex<long double> wk = 1;
        const std::complex<long double> wv{w.value_re, w.value_im};
        for (unsigned i = 0; i < k; ++i) wk *= wv;
        const auto rot = e_q((q - mul_mod(cp % q, mr, q)) % q, q);
        total += wk * std::complex<long double>{rot.real(), rot.imag()};
    }
    total /= static_cast<long double>(q);
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

struct AsymptoticReport {
    u64 N = 0;
    FactoredModulus q;
    unsigned k = 0;
    bigint exact_count;
    double main_term = 0.0;
    ExactRational kappa;
    double relative_deviation = 0.0;
    std::optional<double> fourier_value; // filled for q <= 50
    bool fourier_matches = true;
};

inline constexpr u64 max_fourier_modulus = 50;

/**
 * Exact I_k(N) against (pi(N)^k / q) kappa_k(q); the deviation is
 * |I q / pi(N)^k - kappa| / max(kappa, floor).
 */
inline AsymptoticReport asymptotic_report(unsigned k, u64 c, i64 m, u64 q, u64 N) {
    if (k < 3) throw error(errc::invalid_argument, "asymptotic report needs k >= 3");
    AsymptoticReport rep;
    rep.N = N;
    rep.q = factorize(q);
    rep.k = k;
    rep.exact_count = I_k_count(k, c, m, q, N);
    rep.kappa = kappa_exact({k, c, m, rep.q});
    u64 pi = 0;
    for_each_prime(N, [&](u64) { ++pi; });
    const double pik = std::pow(static_cast<double>(pi), k);
    rep.main_term = pik / static_cast<double>(q) * rep.kappa.to_double();
    const double floor = (q % 2 != 0 && q % 3 != 0) ? kappa_floor(k, rep.q) : 0.0;
    const double kap = rep.kappa.to_double();
    const double ratio = ExactRational(rep.exact_count * q).to_double() / pik;
    rep.relative_deviation = std::abs(ratio - kap) / std::max(kap, floor);
    if (q <= max_fourier_modulus) {
        const auto f = fourier_reconstruction(k, c, m, q, N);
        rep.fourier_value = f.real();
        rep.fourier_matches = bigint(static_cast<long long>(std::llround(f.real()))) == rep.exact_count &&
                              std::abs(f.real() - std::nearbyint(f.real())) < 0.25;
    }
    return rep;
}

} // namespace kloos
