#pragma once

/**
 * @file singular.hpp
 * @brief The singular series kappa_k(c, m; q) and its local factors A_k(r).
 *
 * Two independent routes: the divisor sum of A_k(r) built from Kloosterman
 * sums, and the exact count kappa_k(q) = q V_k(q) / phi(q)^k from cyclic
 * convolution of the histogram of g(x) = x^-1 + c x over units x.
 * Also the closed forms of A_3, A_4, A_5 on odd prime powers, the bound
 * evaluators for their tails and the positivity floor with its minimum scan.
 */

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kloos/arith.hpp"
#include "kloos/convolution.hpp"
#include "kloos/expsum.hpp"
#include "kloos/numeric.hpp"
#include "kloos/parallel.hpp"
#include "kloos/rational.hpp"
#include "kloos/sieve.hpp"

namespace kloos {

/// (k, c, m, q) with c = ab mod q a unit.
struct SingularParams {
    unsigned k = 3;
    u64 c = 1;
    i64 m = 0;
    FactoredModulus q;

    void validate() const {
        if (k < 1) throw error(errc::invalid_argument, "k must be positive");
        if (!is_unit(reduce(static_cast<i64>(c), q.value()), q) && !q.is_one())
            throw error(errc::not_coprime, "c must be a unit modulo q");
    }
};

// ---------------------------------------------------------------------------
// Definition route

/**
 * A_k(r) = phi(r)^-k sum_{f unit mod r} cos(2 pi m f / r) S(f, c f; r)^k.
 *
 * The sine part cancels under f -> r - f, so only cosines are summed.
 */
inline KloostermanValue A_k_direct(const SingularParams& params, const FactoredModulus& r) {
    params.validate();
    if (params.q.value() % r.value() != 0) throw error(errc::invalid_argument, "r must divide q");
    if (r.is_one()) return {1.0, 0.0};
    const u64 rv = r.value();
    const u64 c = reduce(static_cast<i64>(params.c), rv);
    const u64 m = reduce(params.m, rv);
    const auto circle = unit_circle(rv);
    CompensatedSum sum;
    for (u64 f = 1; f < rv; ++f) {
        if (!is_unit(f, r)) continue;
        const auto s = kloosterman_crt(static_cast<i64>(f), static_cast<i64>(mul_mod(c, f, rv)), r);
        const KloostermanValue term = KloostermanValue{circle->cos(mul_mod(m, f, rv)), trig_entry_error} *
                                      pow(s, params.k);
        sum.add(term.value, term.abs_error);
    }
    const double scale = std::pow(static_cast<double>(r.phi()), -static_cast<double>(params.k));
    return sum.result().scaled(scale);
}

// ---------------------------------------------------------------------------
// Closed forms on odd prime powers

namespace detail {

struct ClosedTerm {
    int shift; // multiple of nu added to m
    int coef;
};

inline void check_closed_modulus(const FactoredModulus& q, u64 nu) {
    if (!q.is_prime_power()) throw error(errc::invalid_argument, "closed forms need a prime power");
    const auto [p, n] = q.factors().front();
    if (p == 2) throw error(errc::even_prime, "closed forms need an odd prime");
    if (n < 2) throw error(errc::exponent_too_small, "closed forms need n >= 2");
    if (nu % p == 0) throw error(errc::not_coprime, "nu must be prime to p");
}

/// Exact sum of coef * c_q(m + shift nu).
inline i64 ramanujan_combination(const FactoredModulus& q, u64 nu, i64 m, std::span<const ClosedTerm> terms) {
    const u64 qv = q.value();
    i64 total = 0;
    for (const auto& t : terms) {
        const u64 arg = (reduce(m, qv) + mul_mod(reduce(t.shift, qv), nu % qv, qv)) % qv;
        total += t.coef * ramanujan_closed(q, static_cast<i64>(arg));
    }
    return total;
}

/// Sum of coef * (u or v)_q(m + shift nu), as an integer multiple of p^(n-1/2).
inline i64 twisted_combination(const FactoredModulus& q, u64 nu, i64 m, std::span<const ClosedTerm> terms) {
    const auto [p, n] = q.factors().front();
    const u64 qv = q.value();
    const u64 unit = ipow(p, n - 1);
    i64 total = 0;
    for (const auto& t : terms) {
        const u64 arg = (reduce(m, qv) + mul_mod(reduce(t.shift, qv), nu % qv, qv)) % qv;
        // w_q(arg) is nonzero only for arg = b p^(n-1), p not dividing b
        if (arg == 0 || arg % unit != 0) continue;
        const u64 b = arg / unit;
        if (b % p == 0) continue;
        total += t.coef * jacobi(static_cast<i64>(b), p);
    }
    return total;
}

inline double closed_prefactor(const FactoredModulus& q, unsigned k) {
    const long double qv = static_cast<long double>(q.value());
    const long double ph = static_cast<long double>(q.phi());
    return static_cast<double>(std::pow(qv, k / 2.0L) / std::pow(ph, static_cast<long double>(k)));
}

/// Shared structure of the odd-k closed forms (k = 3, 5).
inline double odd_k_closed(unsigned k, const FactoredModulus& q, u64 nu, i64 m,
                           std::span<const ClosedTerm> even_terms, std::span<const ClosedTerm> p3_terms) {
    check_closed_modulus(q, nu);
    const auto [p, n] = q.factors().front();
    const double pre = closed_prefactor(q, k);
    if (n % 2 == 0) return pre * static_cast<double>(ramanujan_combination(q, nu, m, even_terms));
    const int chi_q = jacobi(static_cast<i64>(nu % q.value()), q.value());
    if (chi_q != jacobi(static_cast<i64>(nu % p), p))
        throw std::logic_error("Jacobi symbols (nu/q) and (nu/p) disagree for odd n");
    const auto& terms = (p % 4 == 1) ? even_terms : p3_terms;
    const double scale = static_cast<double>(ipow(p, n - 1)) * std::sqrt(static_cast<double>(p));
    return pre * chi_q * scale * static_cast<double>(twisted_combination(q, nu, m, terms));
}

inline constexpr std::array<ClosedTerm, 4> a3_terms{{{6, 1}, {-6, 1}, {2, 3}, {-2, 3}}};
inline constexpr std::array<ClosedTerm, 4> a3_terms_p3{{{6, 1}, {-6, -1}, {2, -3}, {-2, 3}}};
inline constexpr std::array<ClosedTerm, 6> a5_terms{{{10, 1}, {-10, 1}, {6, 5}, {-6, 5}, {2, 10}, {-2, 10}}};
inline constexpr std::array<ClosedTerm, 6> a5_terms_p3{
    {{10, -1}, {-10, 1}, {6, 5}, {-6, -5}, {2, -10}, {-2, 10}}};

} // namespace detail

/// A_3(p^n) from Ramanujan sums (even n) or the twisted sums u, v (odd n); c = nu^2.
inline double A3_closed(const FactoredModulus& q, u64 nu, i64 m) {
    return detail::odd_k_closed(3, q, nu, m, detail::a3_terms, detail::a3_terms_p3);
}

/// A_4(p^n); the middle pair flips sign exactly when p = 3 mod 4 and n is odd.
inline double A4_closed(const FactoredModulus& q, u64 nu, i64 m) {
    detail::check_closed_modulus(q, nu);
    const auto [p, n] = q.factors().front();
    const int sigma = (p % 4 == 3 && n % 2 == 1) ? -1 : 1;
    const std::array<detail::ClosedTerm, 5> terms{{{8, 1}, {-8, 1}, {4, 4 * sigma}, {-4, 4 * sigma}, {0, 6}}};
    return detail::closed_prefactor(q, 4) * static_cast<double>(detail::ramanujan_combination(q, nu, m, terms));
}

inline double A5_closed(const FactoredModulus& q, u64 nu, i64 m) {
    return detail::odd_k_closed(5, q, nu, m, detail::a5_terms, detail::a5_terms_p3);
}

/// Closed form for k in {3, 4, 5}.
inline double A_closed(unsigned k, const FactoredModulus& q, u64 nu, i64 m) {
    switch (k) {
    case 3: return A3_closed(q, nu, m);
    case 4: return A4_closed(q, nu, m);
    case 5: return A5_closed(q, nu, m);
    default: throw error(errc::invalid_argument, "closed forms exist for k = 3, 4, 5 only");
    }
}

// ---------------------------------------------------------------------------
// Counting route

/// counts[t] = #{x unit in [1, q] : x^-1 + c x = t (mod q)}.
inline ResidueHistogram g_histogram(u64 c, u64 q) {
    if (q == 0) throw error(errc::invalid_argument, "modulus must be positive");
    ResidueHistogram h{q, std::vector<u64>(q, 0)};
    if (q == 1) {
        h.counts[0] = 1;
        return h;
    }
    const auto fq = factorize(q);
    const u64 cr = c % q;
    if (!is_unit(cr, fq)) throw error(errc::not_coprime, "c must be a unit modulo q");
    std::vector<u64> units;
    units.reserve(fq.phi());
    for (u64 x = 1; x < q; ++x)
        if (is_unit(x, fq)) units.push_back(x);
    const auto inv = batch_inverse(units, q);
    for (std::size_t i = 0; i < units.size(); ++i) {
        u64 t = inv[i] % q + mul_mod(cr, units[i], q);
        if (t >= q) t -= q;
        ++h.counts[t];
    }
    return h;
}

/// V_k(m) for every residue m at once.
inline Histogram<bigint> V_k_all(unsigned k, u64 c, u64 q) {
    if (k < 1) throw error(errc::invalid_argument, "k must be positive");
    return convolution_power_exact(g_histogram(c, q), k);
}

/// Number of unit k-tuples with g(x_1) + ... + g(x_k) = m (mod q).
inline bigint V_k_count(const SingularParams& params) {
    params.validate();
    const u64 q = params.q.value();
    return V_k_all(params.k, params.c, q).counts[reduce(params.m, q)];
}

inline ExactRational kappa_from_count(const bigint& count, const FactoredModulus& q, unsigned k) {
    return {bigint(q.value()) * count, boost::multiprecision::pow(bigint(q.phi()), k)};
}

/// kappa_k(q) = q V_k(q) / phi(q)^k exactly.
inline ExactRational kappa_exact(const SingularParams& params) {
    if (params.k < 3) throw error(errc::invalid_argument, "kappa needs k >= 3");
    return kappa_from_count(V_k_count(params), params.q, params.k);
}

/// kappa_k(q) as sum_{r | q} A_k(r), with a propagated error bound.
inline KloostermanValue kappa_sum(const SingularParams& params) {
    if (params.k < 3) throw error(errc::invalid_argument, "kappa needs k >= 3");
    params.validate();
    KloostermanValue total{0.0, 0.0};
    for (u64 d : params.q.divisors()) total = total + A_k_direct(params, params.q.divisor(d));
    return total;
}

/// #{(x, y) units : g(x) = g(y) (mod q)} = sum_t counts[t]^2.
inline u64 collision_count(u64 c, u64 q) {
    const auto h = g_histogram(c, q);
    u64 total = 0;
    for (u64 v : h.counts) total += v * v;
    return total;
}

/// 2^(omega(q)+1) tau(q) q.
inline u64 collision_bound(const FactoredModulus& q) {
    return (u64{1} << (q.omega() + 1)) * q.tau() * q.value();
}

// ---------------------------------------------------------------------------
// Bounds

namespace detail {

inline void check_odd_prime(u64 p) {
    if (p == 2) throw error(errc::even_prime, "odd prime required");
    if (!is_prime(p)) throw error(errc::invalid_argument, "p must be prime");
}

} // namespace detail

/// h(p, k) = (2 sqrt p)^k / (p-1)^(k-1) * (1/4 + 1/(4p) + 1/(p^(k/2-1) - 1)).
inline double bound_h(u64 p, unsigned k) {
    detail::check_odd_prime(p);
    if (k < 2) throw error(errc::invalid_argument, "k must be at least 2");
    const double pd = static_cast<double>(p);
    const double tail = std::pow(pd, k / 2.0 - 1.0) - 1.0;
    if (tail == 0.0) throw error(errc::degenerate_denominator, "p^(k/2-1) = 1");
    return std::pow(2.0 * std::sqrt(pd), k) / std::pow(pd - 1.0, k - 1.0) * (0.25 + 0.25 / pd + 1.0 / tail);
}

/// |A_k(p)| < (2 sqrt p)^k / (p-1)^(k-1) * (1/4 + 1/(4p)) for k >= 5.
inline double prime_level_bound(u64 p, unsigned k) {
    detail::check_odd_prime(p);
    if (k < 5) throw error(errc::out_of_lemma_range, "prime-level bound needs k >= 5");
    const double pd = static_cast<double>(p);
    return std::pow(2.0 * std::sqrt(pd), k) / std::pow(pd - 1.0, k - 1.0) * (0.25 + 0.25 / pd);
}

/// Uniform tail bound for k >= 5: 2 (2p/(p-1))^(k-1) p^(-n(k/2-1)) / (1 - p^(1-k/2)).
inline double tail_bound_uniform(unsigned k, u64 p, unsigned n) {
    detail::check_odd_prime(p);
    if (k < 5 || n < 2) throw error(errc::out_of_lemma_range, "uniform tail bound needs k >= 5, n >= 2");
    const double pd = static_cast<double>(p);
    return 2.0 * std::pow(2.0 * pd / (pd - 1.0), k - 1.0) * std::pow(pd, -(n * (k / 2.0 - 1.0))) /
           (1.0 - std::pow(pd, 1.0 - k / 2.0));
}

/**
 * Upper bound for |sum_{r=n}^{s} A_k(p^r)|.
 *
 * k = 3, 4 need n >= 3 when p = 3 and n >= 2 otherwise; k >= 5 needs n >= 2.
 * For k = 5 the sharper parity-dependent bound is returned.
 */
inline double tail_bound(unsigned k, u64 p, unsigned n, unsigned s) {
    detail::check_odd_prime(p);
    if (s < n) throw error(errc::out_of_lemma_range, "tail needs s >= n");
    const double pd = static_cast<double>(p);
    const double ratio = pd / (pd - 1.0);
    if (k == 3 || k == 4) {
        if ((p == 3 && n < 3) || n < 2) throw error(errc::out_of_lemma_range, "n too small for this prime");
        if (k == 4) return 6.0 * std::pow(ratio, 4) * std::pow(pd, -static_cast<double>(n));
        if (n % 2 == 0) return 3.0 * std::pow(ratio, 4) * std::pow(pd, -(n / 2.0));
        return 3.0 * (2.0 - 1.0 / pd) * std::pow(ratio, 4) * std::pow(pd, -((n + 1) / 2.0));
    }
    if (k < 3) throw error(errc::out_of_lemma_range, "tail bounds need k >= 3");
    if (n < 2) throw error(errc::out_of_lemma_range, "tail bounds need n >= 2");
    if (k == 5) {
        const int gamma = static_cast<int>(n % 2);
        const double sign = gamma == 0 ? 1.0 : -1.0;
        return 10.0 * std::pow(ratio, 6) * (pd * pd - sign * (pd - 1.0)) / (pd * pd + pd + 1.0) *
               std::pow(pd, -1.5 * n - gamma / 2.0);
    }
    return tail_bound_uniform(k, p, n);
}

namespace detail {

/**
 * A_k(p^r), r >= 2, c = nu^2, from the definition with S(f, c f; p^r) = S(1, (nu f)^2; p^r)
 * in Salie's form, read off the unit-circle table.
 */
inline double salie_power_sum(unsigned k, u64 p, unsigned r, u64 nu, i64 m) {
    const u64 q = ipow(p, r);
    const auto circle = unit_circle(q);
    std::vector<int> legendre(p, 0);
    for (u64 t = 1; t < p; ++t) legendre[t] = jacobi(static_cast<i64>(t), p);
    const double amp = 2.0 * std::sqrt(static_cast<double>(q));
    const bool odd = r % 2 == 1, quarter = p % 4 == 3;
    const int chi_nu = legendre[nu % p];
    const u64 mr = reduce(m, q), step = mul_mod(2, nu % q, q);
    CompensatedSum sum;
    u64 angle = 0, phase = 0;
    for (u64 f = 1; f < q; ++f) {
        angle += step; // 2 nu f mod q
        if (angle >= q) angle -= q;
        phase += mr; // m f mod q
        if (phase >= q) phase -= q;
        if (f % p == 0) continue;
        double s = odd && quarter ? -circle->sin(angle) : circle->cos(angle);
        if (odd) s *= chi_nu * legendre[f % p];
        sum.add(circle->cos(phase) * std::pow(amp * s, static_cast<double>(k)));
    }
    const double phi = static_cast<double>(q - q / p);
    return sum.value() / std::pow(phi, static_cast<double>(k));
}

} // namespace detail

inline constexpr u64 max_direct_tail_modulus = 1'000'000;

/**
 * |sum_{r=n}^{s} A_k(p^r)| for c = ab and m (reduced mod each p^r).
 *
 * Closed forms for k = 3, 4, 5; larger k sum the definition with Salie's
 * formula for each S, which limits p^s.
 */
inline double tail_exact(unsigned k, u64 p, unsigned n, unsigned s, u64 c, i64 m) {
    detail::check_odd_prime(p);
    if (n < 2 || s < n) throw error(errc::out_of_lemma_range, "tail needs s >= n >= 2");
    if (c % p == 0) throw error(errc::not_coprime, "p divides c");
    if (jacobi(static_cast<i64>(c % p), p) == -1) return 0.0; // A_k(p^r) = 0 for r >= 2
    const u64 top = ipow(p, s);
    const u64 nu = *sqrt_mod_prime_power(static_cast<i64>(c % top), p, s);
    if (k >= 6 && top > max_direct_tail_modulus)
        throw error(errc::limit_too_large, "direct tail limited to p^s <= 10^6");
    CompensatedSum sum;
    for (unsigned r = n; r <= s; ++r) {
        const auto q = FactoredModulus::from_factors({{p, r}});
        const u64 nr = nu % q.value();
        if (k <= 5) {
            sum.add(A_closed(k, q, nr, m));
        } else {
            sum.add(detail::salie_power_sum(k, p, r, nr, m));
        }
    }
    return std::abs(sum.value());
}

// ---------------------------------------------------------------------------
// Positivity floor and minimum scan

/**
 * Lower bound for kappa_k over (c, m) at modulus q coprime to 6.
 *
 * k >= 5: 10^-5. k = 3, 4: 22^-1 23^-5 for the part of q built from primes
 * below 23, times exp(-4.6 sum p^-1/2) (k = 3) or exp(-6 sum 1/p) (k = 4)
 * over the primes p >= 23 dividing q.
 */
inline double kappa_floor(unsigned k, const FactoredModulus& q) {
    if (q.value() % 2 == 0 || q.value() % 3 == 0) throw error(errc::not_coprime_to_6, "q shares a factor with 6");
    if (k < 3) throw error(errc::invalid_argument, "floor needs k >= 3");
    if (k >= 5) return 1e-5;
    double sum = 0.0;
    for (const auto& f : q.factors()) {
        if (f.prime < 23) continue;
        const double pd = static_cast<double>(f.prime);
        sum += k == 3 ? 1.0 / std::sqrt(pd) : 1.0 / pd;
    }
    const double weight = k == 3 ? 4.6 : 6.0;
    return std::exp(-weight * sum) / (22.0 * std::pow(23.0, 5));
}

struct KappaMinResult {
    ExactRational min_value; // over all units c
    u64 argmin_c = 1;
    u64 argmin_m = 1;
    ExactRational residue_min; // over c a square modulo q
    u64 residue_argmin_c = 1;
    u64 residue_argmin_m = 1;
    double floor = 0.0;
    bool satisfied = false;
    bool residue_satisfied = false;
    bool stratified = false;
    double cost = 0.0;
};

/// Smallest unit that is a quadratic non-residue modulo the odd prime p.
inline u64 least_nonresidue(u64 p) {
    for (u64 t = 2; t < p; ++t)
        if (jacobi(static_cast<i64>(t), p) == -1) return t;
    throw error(errc::invalid_argument, "no non-residue");
}

/**
 * Minimum of kappa_k over (c, m), with caching of prime-power components.
 *
 * kappa is multiplicative in q with (c, m) split by CRT, so the minimum over
 * q is the product of component minima. Per component, the full mode runs
 * every unit c; the stratified mode runs one c per quadratic class, which is
 * exact because V_k(c t^2, t m) = V_k(c, m) (substitute x -> t^-1 x). Every
 * m is covered by the histogram power either way.
 *
 * Two minima are tracked: over all units c, and over c restricted to squares.
 * The budget caps predicted word operations of the convolutions.
 */
class KappaMinScanner {
public:
    explicit KappaMinScanner(unsigned threads = 1) : threads_(threads) {}

    struct Best {
        ExactRational value;
        u64 c = 1;
        u64 m = 0;
    };
    struct Component {
        Best all;
        Best residue;
    };

    static double component_cost(const PrimePower& f, unsigned k, bool stratified) {
        const u64 r = f.value();
        const double classes = stratified ? 2.0 : static_cast<double>((f.prime - 1) * (r / f.prime));
        return classes * convolution_cost(r, k);
    }

    /// Minima over units c and residues m modulo the prime power r = p^e.
    const Component& component(const PrimePower& f, unsigned k, bool stratified) {
        const auto key = std::make_tuple(f.prime, f.exponent, k, stratified);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const u64 r = f.value();
        const auto fr = FactoredModulus::from_factors({f});
        std::vector<u64> cs;
        if (stratified) {
            cs = {1, least_nonresidue(f.prime)};
        } else {
            for (u64 c = 1; c < r; ++c)
                if (c % f.prime != 0) cs.push_back(c);
        }
        struct Local {
            bigint count;
            u64 m = 0;
        };
        auto locals = parallel_map<Local>(cs.size(), threads_, [&](std::size_t i) {
            const auto v = V_k_all(k, cs[i], r);
            // residues ordered 1, 2, ..., r-1, then r (= 0)
            Local best{v.counts[1 % r], 1 % r};
            for (u64 t = 2; t <= r; ++t) {
                const u64 idx = t % r;
                if (v.counts[idx] < best.count) best = {v.counts[idx], idx};
            }
            return best;
        });
        std::size_t arg = 0, rarg = 0;
        for (std::size_t i = 1; i < locals.size(); ++i) {
            if (locals[i].count < locals[arg].count) arg = i;
            if (jacobi(static_cast<i64>(cs[i]), f.prime) == 1 && locals[i].count < locals[rarg].count) rarg = i;
        }
        Component comp{{kappa_from_count(locals[arg].count, fr, k), cs[arg], locals[arg].m},
                       {kappa_from_count(locals[rarg].count, fr, k), cs[rarg], locals[rarg].m}};
        return cache_.emplace(key, std::move(comp)).first->second;
    }

    KappaMinResult scan(unsigned k, const FactoredModulus& q, double budget) {
        if (k < 3) throw error(errc::invalid_argument, "kappa needs k >= 3");
        KappaMinResult res;
        res.floor = kappa_floor(k, q);
        double full = 0.0, strat = 0.0;
        for (const auto& f : q.factors()) {
            full += component_cost(f, k, false);
            strat += component_cost(f, k, true);
        }
        if (full <= budget) {
            res.cost = full;
        } else if (strat <= budget) {
            res.stratified = true;
            res.cost = strat;
        } else {
            // partial scan: components that fit the budget in stratified mode
            ExactRational partial{1};
            double spent = 0.0;
            std::size_t done = 0;
            for (const auto& f : q.factors()) {
                const double c = component_cost(f, k, true);
                if (spent + c > budget) break;
                spent += c;
                partial = partial * component(f, k, true).all.value;
                ++done;
            }
            throw error(errc::budget_exceeded,
                        "predicted cost " + std::to_string(static_cast<long double>(strat)) + " exceeds budget " +
                            std::to_string(static_cast<long double>(budget)) + "; scanned " +
                            std::to_string(done) + " of " + std::to_string(q.factors().size()) +
                            " components, partial product " + partial.to_string());
        }
        ExactRational value{1}, rvalue{1};
        u64 c = 0, m = 0, rc = 0, rm = 0, mod = 1;
        for (const auto& f : q.factors()) {
            const auto& comp = component(f, k, res.stratified);
            value = value * comp.all.value;
            rvalue = rvalue * comp.residue.value;
            const u64 r = f.value();
            c = crt_pair(mod, r, static_cast<i64>(c), static_cast<i64>(comp.all.c));
            m = crt_pair(mod, r, static_cast<i64>(m), static_cast<i64>(comp.all.m));
            rc = crt_pair(mod, r, static_cast<i64>(rc), static_cast<i64>(comp.residue.c));
            rm = crt_pair(mod, r, static_cast<i64>(rm), static_cast<i64>(comp.residue.m));
            mod *= r;
        }
        res.min_value = value;
        res.argmin_c = q.is_one() ? 1 : c;
        res.argmin_m = m == 0 ? q.value() : m;
        res.residue_min = rvalue;
        res.residue_argmin_c = q.is_one() ? 1 : rc;
        res.residue_argmin_m = rm == 0 ? q.value() : rm;
        res.satisfied = value.to_double() > res.floor;
        res.residue_satisfied = rvalue.to_double() > res.floor;
        return res;
    }

private:
    unsigned threads_;
    std::map<std::tuple<u64, unsigned, unsigned, bool>, Component> cache_;
};

inline constexpr double default_scan_budget = 1e9;

inline KappaMinResult kappa_min_scan(unsigned k, const FactoredModulus& q, double budget = default_scan_budget,
                                     unsigned threads = 1) {
    KappaMinScanner scanner(threads);
    return scanner.scan(k, q, budget);
}

} // namespace kloos
