#pragma once

/**
 * @file verify.hpp
 * @brief Named verification suites: constants, closed forms, bounds,
 *        asymptotics and smooth numbers, each producing a check report.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "kloos/arith.hpp"
#include "kloos/expsum.hpp"
#include "kloos/primesum.hpp"
#include "kloos/rational.hpp"
#include "kloos/singular.hpp"
#include "kloos/smooth.hpp"

namespace kloos {

using json = nlohmann::ordered_json;

struct Check {
    std::string id;
    std::string anchor;
    json expected;
    json computed;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;

    std::size_t passed() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
    }
    bool ok() const { return passed() == checks.size(); }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"constants", "closed-forms", "bounds", "asymptotics", "smooth"};
    return names;
}

namespace detail {

class ReportBuilder {
public:
    explicit ReportBuilder(std::string suite) { report_.suite = std::move(suite); }

    void approx(std::string id, std::string anchor, double expected, double computed, double tol) {
        const bool pass = std::isfinite(computed) && std::abs(computed - expected) <= tol;
        report_.checks.push_back({std::move(id), std::move(anchor), expected, computed, tol, pass});
    }

    void exact(std::string id, std::string anchor, const std::string& expected, const std::string& computed) {
        report_.checks.push_back({std::move(id), std::move(anchor), expected, computed, 0.0, expected == computed});
    }

    /// computed <= limit
    void at_most(std::string id, std::string anchor, double limit, double computed) {
        report_.checks.push_back({std::move(id), std::move(anchor), "<= " + fmt(limit), computed, 0.0,
                                  std::isfinite(computed) && computed <= limit});
    }

    /// computed > limit
    void above(std::string id, std::string anchor, double limit, double computed) {
        report_.checks.push_back({std::move(id), std::move(anchor), "> " + fmt(limit), computed, 0.0, computed > limit});
    }

    void holds(std::string id, std::string anchor, json expected, json computed, bool pass) {
        report_.checks.push_back({std::move(id), std::move(anchor), std::move(expected), std::move(computed), 0.0, pass});
    }

    /// 1/factor <= ratio <= factor
    void report_factor(std::string id, std::string anchor, double ratio, double factor) {
        report_.checks.push_back({std::move(id), std::move(anchor), "ratio in [" + fmt(1 / factor) + ", " + fmt(factor) + "]",
                                  ratio, 0.0, ratio >= 1 / factor && ratio <= factor});
    }

    /// A sweep reported as a violation count out of the number of cases.
    void sweep(std::string id, std::string anchor, std::size_t violations, std::size_t cases, double tol = 0.0) {
        report_.checks.push_back({std::move(id), std::move(anchor), "0 violations",
                                  std::to_string(violations) + " of " + std::to_string(cases), tol, violations == 0});
    }

    VerifyReport take() { return std::move(report_); }

private:
    static std::string fmt(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.15g", x);
        return buf;
    }

    VerifyReport report_;
};

inline std::vector<PrimePower> odd_prime_powers(u64 limit, unsigned min_exp) {
    std::vector<PrimePower> out;
    for (u64 p : primes_up_to(limit).primes) {
        if (p == 2) continue;
        u64 v = 1;
        for (unsigned e = 1; v <= limit / p; ++e) {
            v *= p;
            if (e >= min_exp) out.push_back({p, e});
        }
    }
    return out;
}

/// Sum of |S(1, t; p)|^k over units t with (t/p) = e.
inline double class_power_sum(u64 p, unsigned k, int e) {
    const auto fp = factorize(p);
    double s = 0.0;
    for (u64 t = 1; t < p; ++t)
        if (jacobi(static_cast<i64>(t), p) == e) s += std::pow(std::abs(kloosterman_direct(1, static_cast<i64>(t), fp).value), k);
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------

inline VerifyReport verify_constants(unsigned threads = 1) {
    detail::ReportBuilder b("constants");
    b.approx("h-7-6", "h(p,k) at p=7, k=6", 0.865398, bound_h(7, 6), 1e-6);
    b.approx("h-11-4", "h(p,k) at p=11, k=4", 0.721600, bound_h(11, 4), 1e-6);
    b.approx("h-23-3", "h(p,k) at p=23, k=3", 0.955938, bound_h(23, 3), 1e-6);
    b.approx("h-13-5", "h(p,k) at p=13, k=5", 0.273667, bound_h(13, 5), 1e-6);

    const auto f5 = factorize(5);
    b.approx("S-1-1-5", "S(1,1;5) = (3 - sqrt 5)/2", (3.0 - std::sqrt(5.0)) / 2, kloosterman_direct(1, 1, f5).value, 1e-12);
    b.approx("S-1-2-5", "S(1,2;5) = -(1 + sqrt 5)", -(1.0 + std::sqrt(5.0)), kloosterman_direct(1, 2, f5).value, 1e-12);

    KappaMinScanner scanner(threads);
    const double budget = 1e10;
    const auto m49 = scanner.scan(3, factorize(49), budget);
    b.exact("kappa3-49-min", "min of kappa_3(49) over m and residue classes of c", "7/9", m49.residue_min.to_string());
    {
        // all m attaining the minimum for c = 1
        const auto v = V_k_all(3, 1, 49);
        bigint best = v.counts[1];
        for (u64 t = 0; t < 49; ++t) best = std::min(best, v.counts[t]);
        std::string where;
        bool each = true;
        for (u64 t = 1; t <= 49; ++t) {
            const bool hit = v.counts[t % 49] == best;
            if (hit) where += (where.empty() ? "" : ",") + std::to_string(t);
            if (t % 7 == 0 && t < 49) each = each && hit;
        }
        b.holds("kappa3-49-argmin", "minimum attained at m = 7 mu, mu = 1..6", "contains 7,14,21,28,35,42", where, each);
    }
    b.exact("kappa3-5-min", "min of kappa_3(5) over m and residue classes", "35/64",
            scanner.scan(3, factorize(5), budget).residue_min.to_string());
    b.exact("kappa3-25-min", "min of kappa_3(25) over m and residue classes", "15/32",
            scanner.scan(3, factorize(25), budget).residue_min.to_string());
    b.exact("kappa3-125-min", "min of kappa_3(125) over m and residue classes", "15/32",
            scanner.scan(3, factorize(125), budget).residue_min.to_string());
    for (unsigned n = 1; n <= 6; ++n) {
        const auto r = scanner.scan(3, factorize(ipow(5, n)), budget);
        b.above("kappa3-5^" + std::to_string(n) + "-floor", "kappa_3(5^n) >= 93/256 on residue classes", 93.0 / 256.0,
                r.residue_min.to_double());
    }
    b.approx("tail-7", "tail of A_3(7^r), r >= 3, bounded by 3*7*13/6^4 = 91/432", 91.0 / 432.0,
             tail_bound(3, 7, 3, 40), 1e-15);
    b.approx("kappa3-49-less-tail", "7/9 - 91/432 = 245/432", 245.0 / 432.0,
             m49.residue_min.to_double() - tail_bound(3, 7, 3, 40), 1e-12);
    {
        const double expr = 2.0 / 216.0 * detail::class_power_sum(7, 3, 1);
        b.approx("kappa3-7-radius", "2/6^3 (|S(1,1;7)|^3 + |S(1,2;7)|^3 + |S(1,4;7)|^3) = 0.381509...", 0.381509, expr,
                 1e-6);
        double worst = 0.0;
        const auto f7 = factorize(7);
        for (u64 c : {1, 2, 4})
            for (i64 m = 0; m < 7; ++m)
                worst = std::max(worst, std::abs(kappa_exact({3, c, m, f7}).to_double() - 1.0));
        b.at_most("kappa3-7-deviation", "|kappa_3(7) - 1| over residue classes of c", expr, worst);
    }
    // deviation radii 2/(p-1)^k sum_{(t/p)=1} |S(1,t;p)|^k + Phi_k(p), Phi_k(p) the n = 2 tail bound
    struct Radius {
        unsigned k;
        u64 p;
        double value;
    };
    for (const auto& r : {Radius{4, 7, 0.382716}, Radius{5, 7, 0.119817}, Radius{3, 11, 0.860875},
                          Radius{3, 13, 0.692316}, Radius{3, 17, 0.542971}, Radius{3, 19, 0.499344}}) {
        const double v = 2.0 / std::pow(static_cast<double>(r.p - 1), r.k) * detail::class_power_sum(r.p, r.k, 1) +
                         tail_bound(r.k, r.p, 2, 40);
        b.approx("radius-k" + std::to_string(r.k) + "-p" + std::to_string(r.p),
                 "residue-class deviation radius of kappa_k(p^n)", r.value, v, 1e-6);
    }
    return b.take();
}

inline VerifyReport verify_closed_forms() {
    detail::ReportBuilder b("closed-forms");
    {
        std::size_t bad = 0, cases = 0;
        for (const auto& f : detail::odd_prime_powers(500, 2)) {
            const auto fq = FactoredModulus::from_factors({f});
            const u64 q = f.value();
            for (u64 c = 1; c < q; ++c) {
                if (c % f.prime == 0) continue;
                const auto direct = kloosterman_direct(1, static_cast<i64>(c), fq);
                const auto salie = kloosterman_salie(1, static_cast<i64>(c), f.prime, f.exponent);
                ++cases;
                if (std::abs(direct.value - salie.value) > 1e-8) ++bad;
            }
        }
        b.sweep("salie", "Salie closed form against the direct sum, p^n <= 500", bad, cases, 1e-8);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 q = 4; q <= 200; ++q) {
            const auto fq = factorize(q);
            if (fq.is_prime_power()) continue;
            for (i64 a : {1, 2, 7})
                for (i64 bb : {1, 3, 10}) {
                    ++cases;
                    if (std::abs(kloosterman_crt(a, bb, fq).value - kloosterman_direct(a, bb, fq).value) > 1e-9) ++bad;
                }
        }
        b.sweep("crt", "CRT product of Kloosterman sums against the direct sum, q <= 200", bad, cases, 1e-9);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 q = 1; q <= 200; ++q) {
            const auto fq = factorize(q);
            for (i64 a = 0; a < static_cast<i64>(q); ++a) {
                ++cases;
                if (ramanujan_closed(fq, a) != ramanujan_direct(q, a)) ++bad;
            }
        }
        b.sweep("ramanujan", "phi(q) mu(q/d)/phi(q/d) against the direct sum, q <= 200", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (const auto& f : detail::odd_prime_powers(500, 1)) {
            const auto fq = FactoredModulus::from_factors({f});
            const u64 p = f.prime, q = f.value(), top = q / p;
            const i64 phi_q = static_cast<i64>(fq.phi()), neg = -static_cast<i64>(top);
            for (i64 a = 0; a < static_cast<i64>(q); ++a) {
                const u64 d = gcd(q, static_cast<u64>(a));
                const i64 want = d == q ? phi_q : (d == top ? neg : 0);
                ++cases;
                if (ramanujan_closed(fq, a) != want) ++bad;
            }
        }
        b.sweep("ramanujan-prime-power", "c_{p^n}(a) in {0, -p^(n-1), phi(p^n)}", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 p : primes_up_to(200).primes) {
            if (p == 2) continue;
            const auto g = gauss_sum(p);
            const double root = std::sqrt(static_cast<double>(p));
            const std::complex<double> want = p % 4 == 1 ? std::complex<double>{root, 0} : std::complex<double>{0, root};
            ++cases;
            if (std::abs(g - want) > 1e-9) ++bad;
        }
        b.sweep("gauss", "quadratic Gauss sum equals sqrt p or i sqrt p", bad, cases, 1e-9);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (const auto& f : detail::odd_prime_powers(500, 1)) {
            if (f.exponent % 2 == 0) continue;
            const auto fq = FactoredModulus::from_factors({f});
            for (i64 a = 0; a < static_cast<i64>(f.value()); ++a) {
                const auto c = twisted_closed(fq, a);
                const auto d = twisted_direct(f.value(), a);
                ++cases;
                if (std::abs(c.u - d.u) > 1e-8 || std::abs(c.v - d.v) > 1e-8) ++bad;
            }
        }
        b.sweep("twisted", "Jacobi-twisted sums, odd exponent, p^n <= 500", bad, cases, 1e-8);
    }
    {
        double worst = 0.0;
        std::size_t cases = 0, bad = 0;
        for (const auto& f : detail::odd_prime_powers(200, 2)) {
            const auto fq = FactoredModulus::from_factors({f});
            const u64 q = f.value();
            std::size_t used = 0;
            for (u64 nu = 1; nu < q && used < 4; ++nu) {
                if (nu % f.prime == 0) continue;
                ++used;
                const u64 c = mul_mod(nu, nu, q);
                for (unsigned k = 3; k <= 5; ++k)
                    for (i64 m = 0; m < static_cast<i64>(q); ++m) {
                        const auto direct = A_k_direct({k, c, m, fq}, fq);
                        const double diff = std::abs(direct.value - A_closed(k, fq, nu, m));
                        worst = std::max(worst, diff);
                        ++cases;
                        if (diff > 1e-9) ++bad;
                    }
            }
        }
        b.sweep("A3-A5", "closed forms of A_3, A_4, A_5 against the definition, p^n <= 200", bad, cases, 1e-9);
    }
    return b.take();
}

inline VerifyReport verify_bounds(u64 seed = 1, unsigned threads = 1) {
    detail::ReportBuilder b("bounds");
    {
        std::mt19937_64 rng(seed);
        std::size_t bad = 0, cases = 0;
        for (u64 q = 2; q <= 300; ++q) {
            const auto fq = factorize(q);
            for (int t = 0; t < 5; ++t) {
                const i64 a = static_cast<i64>(rng() % q), bb = static_cast<i64>(rng() % q);
                const u64 g = gcd(gcd(static_cast<u64>(a), static_cast<u64>(bb)), q);
                const auto s = kloosterman_direct(a, bb, fq);
                const double weil = static_cast<double>(fq.tau()) * std::sqrt(static_cast<double>(q) * static_cast<double>(g));
                ++cases;
                if (std::abs(s.value) > weil + s.abs_error) ++bad;
            }
        }
        b.sweep("weil", "|S(a,b;q)| <= tau(q) sqrt q (a,b,q)^(1/2), q <= 300", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 q = 1; q <= 300; ++q) {
            const auto fq = factorize(q);
            const u64 bound = collision_bound(fq);
            for (u64 c = 1; c <= q; ++c) {
                if (!is_unit(c % q, fq) && q > 1) continue;
                ++cases;
                if (collision_count(c, q) > bound) ++bad;
            }
        }
        b.sweep("collisions", "collision count <= 2^(omega+1) tau(q) q, q <= 300", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (const auto& f : detail::odd_prime_powers(500, 2)) {
            const u64 p = f.prime;
            const unsigned n = f.exponent;
            for (unsigned k : {3u, 4u, 5u, 7u}) {
                if (k <= 4 && p == 3 && n < 3) continue;
                unsigned s = n + 6;
                if (k >= 6)
                    while (s > n && ipow(p, s) > 20000) --s;
                const u64 top = ipow(p, s);
                const u64 nu = 1;
                for (i64 j = -12; j <= 12; ++j)
                    for (unsigned i = 0; i <= s; ++i) {
                        const i64 m = reduce(static_cast<i64>(ipow(p, i)) - j * static_cast<i64>(nu), top);
                        ++cases;
                        if (tail_exact(k, p, n, s, mul_mod(nu, nu, top), m) > tail_bound(k, p, n, s) * (1 + 1e-12)) ++bad;
                    }
            }
        }
        b.sweep("tails", "exact tails of A_k(p^r), n <= r <= s, within their bounds, p^n <= 500", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 p : primes_up_to(50).primes) {
            if (p == 2) continue;
            const auto fp = factorize(p);
            for (unsigned k : {5u, 6u, 7u})
                for (u64 c = 1; c < p; ++c)
                    for (i64 m = 0; m < static_cast<i64>(p); ++m) {
                        const auto a = A_k_direct({k, c, m, fp}, fp);
                        ++cases;
                        if (std::abs(a.value) >= prime_level_bound(p, k) + a.abs_error) ++bad;
                    }
        }
        b.sweep("prime-level", "|A_k(p)| below the prime-level bound, k = 5..7, p <= 50", bad, cases);
    }
    {
        const auto rep = envelope_check(envelope_samples(50, 2000, 1.5, 200, seed), 100.0, threads);
        b.at_most("envelope", "|W_q| / (pi(X) Delta) stays bounded, 200 samples, q <= 2000", 100.0, rep.max_ratio);
    }
    {
        KappaMinScanner scanner(threads);
        std::size_t bad_all = 0, bad_res = 0, cases = 0;
        for (u64 q = 5; q <= 150; ++q) {
            if (q % 2 == 0 || q % 3 == 0) continue;
            for (unsigned k : {3u, 4u, 5u, 7u}) {
                const auto r = scanner.scan(k, factorize(q), 1e10);
                ++cases;
                if (!r.satisfied) ++bad_all;
                if (!r.residue_satisfied) ++bad_res;
            }
        }
        b.sweep("floor-residue", "min kappa_k > floor over residue classes of c, q <= 150", bad_res, cases);
        b.sweep("floor-all", "min kappa_k > floor over all units c, q <= 150", bad_all, cases);
    }
    return b.take();
}

inline VerifyReport verify_asymptotics(u64 seed = 1) {
    detail::ReportBuilder b("asymptotics");
    {
        std::size_t bad = 0, cases = 0;
        for (u64 q = 1; q <= 12; ++q) {
            const auto fq = factorize(q);
            std::vector<u64> ps;
            for (u64 p : primes_up_to(200).primes)
                if (q % p != 0) ps.push_back(p);
            for (u64 c = 1; c <= q; ++c) {
                if (q > 1 && !is_unit(c % q, fq)) continue;
                std::vector<u64> g(ps.size());
                for (std::size_t i = 0; i < ps.size(); ++i)
                    g[i] = q == 1 ? 0 : (mod_inverse(static_cast<i64>(ps[i] % q), q) + mul_mod(c % q, ps[i] % q, q)) % q;
                for (unsigned k = 1; k <= 3; ++k) {
                    std::vector<u64> count(q, 0);
                    if (k == 1) {
                        for (u64 x : g) ++count[x];
                    } else if (k == 2) {
                        for (u64 x : g)
                            for (u64 y : g) ++count[(x + y) % q];
                    } else {
                        for (u64 x : g)
                            for (u64 y : g)
                                for (u64 z : g) ++count[(x + y + z) % q];
                    }
                    for (u64 m = 0; m < q; ++m) {
                        ++cases;
                        if (I_k_count(k, c, static_cast<i64>(m), q, 200) != bigint(count[m])) ++bad;
                    }
                }
            }
        }
        b.sweep("convolution", "I_k by convolution against nested loops, q <= 12, N = 200, k <= 3", bad, cases);
    }
    {
        std::size_t bad = 0, cases = 0;
        for (u64 q : {5ull, 7ull, 11ull, 13ull})
            for (i64 m : {0, 1, 2}) {
                const auto f = fourier_reconstruction(3, 1, m, q, 1000);
                ++cases;
                if (bigint(static_cast<long long>(std::llround(f.real()))) != I_k_count(3, 1, m, q, 1000)) ++bad;
            }
        b.sweep("fourier", "Fourier reconstruction rounds to I_3, N = 1000", bad, cases);
    }
    {
        const auto small = asymptotic_report(3, 1, 1, 101, 10'000);
        const auto large = asymptotic_report(3, 1, 1, 101, 1'000'000);
        b.at_most("trend-decreasing", "relative deviation at N = 10^6 below that at N = 10^4, q = 101",
                  small.relative_deviation, large.relative_deviation);
        b.at_most("trend-level", "relative deviation below 0.1 at N = 10^6, q = 101", 0.1, large.relative_deviation);
    }
    {
        std::mt19937_64 rng(seed);
        std::size_t bad = 0;
        const std::size_t cases = 60;
        for (std::size_t i = 0; i < cases; ++i) {
            const unsigned k = 3 + static_cast<unsigned>(rng() % 3);
            const u64 q = 1 + rng() % 120;
            const auto fq = factorize(q);
            u64 c = 1 + rng() % q;
            while (q > 1 && !is_unit(c % q, fq)) c = 1 + rng() % q;
            const i64 m = static_cast<i64>(rng() % q);
            const SingularParams params{k, c, m, fq};
            const auto s = kappa_sum(params);
            if (!s.agrees_with(kappa_exact(params).to_double(), 1e-8)) ++bad;
        }
        b.sweep("kappa-identity", "divisor sum of A_k(r) equals q V_k / phi^k, q <= 120", bad, cases, 1e-8);
    }
    return b.take();
}

inline VerifyReport verify_smooth() {
    detail::ReportBuilder b("smooth");
    {
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) worst = std::max(worst, std::abs(dickman_rho(i / 100.0) - 1.0));
        b.approx("rho-unit", "rho = 1 on (0, 1]", 0.0, worst, 0.0);
    }
    b.approx("rho-2", "rho(2) = 1 - ln 2", 1.0 - std::numbers::ln2, dickman_rho(2.0), 1e-6);
    b.approx("rho-integral", "integral of rho over [0, inf) = e^gamma", std::exp(std::numbers::egamma), rho_integral(0.0),
             1e-3);
    {
        const auto c = psi_counts(1'000'000, 1'000);
        b.approx("psi", "Psi(10^6, 10^3)/10^6 near rho(2)", dickman_rho(2.0), static_cast<double>(c.psi) / 1e6, 0.05);
    }
    {
        double prev = 0.0;
        bool positive = true, increasing = true;
        std::string series;
        for (u64 X : {200ull, 500ull, 1000ull, 2000ull}) {
            const auto s = primorial_sigma(X, 1.0);
            positive = positive && s.sigma > 0.0;
            increasing = increasing && s.sigma > prev;
            prev = s.sigma;
        }
        b.exact("primorial-positive", "Sigma(q; 1) > 0 for primorials, X in {200, 500, 1000, 2000}", "true",
                positive ? "true" : "false");
        b.exact("primorial-increasing", "Sigma(q; 1) increases with X", "true", increasing ? "true" : "false");
        const auto s = primorial_sigma(500, 1.0);
        const double ratio = s.sigma / s.prediction;
        b.report_factor("primorial-scale", "Sigma(q; 1) within a factor 1.5 of c(1) ln X at X = 500", ratio, 1.5);
    }
    return b.take();
}

inline VerifyReport verify_suite(const std::string& name, u64 seed = 1, unsigned threads = 1) {
    if (name == "constants") return verify_constants(threads);
    if (name == "closed-forms") return verify_closed_forms();
    if (name == "bounds") return verify_bounds(seed, threads);
    if (name == "asymptotics") return verify_asymptotics(seed);
    if (name == "smooth") return verify_smooth();
    throw error(errc::invalid_argument, "unknown suite " + name);
}

} // namespace kloos
