#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "kloos/expsum.hpp"

using namespace kloos;

namespace {

// long-double oracle, independent of the trig tables
long double S_oracle(i64 a, i64 b, u64 q) {
    long double s = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (u64 n = 1; n <= q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        const u64 t = (mul_mod(reduce(a, q), mod_inverse(static_cast<i64>(n), q) % q, q) + mul_mod(reduce(b, q), n % q, q)) % q;
        s += std::cos(two_pi * static_cast<long double>(t) / static_cast<long double>(q));
    }
    return s;
}

} // namespace

TEST(Kloosterman, PrimeFiveValues) {
    const auto q = factorize(5);
    const auto s11 = kloosterman_direct(1, 1, q);
    EXPECT_NEAR(s11.value, (3 - std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_LT(s11.abs_error, 1e-12);
    EXPECT_NEAR(kloosterman_direct(1, 2, q).value, -(std::sqrt(5.0) + 1), 1e-12);
}

TEST(Kloosterman, ZeroArgumentsGivePhi) {
    for (u64 q : {1ull, 9ull, 35ull, 1000ull}) {
        const auto f = factorize(q);
        EXPECT_NEAR(kloosterman_direct(0, 0, f).value, static_cast<double>(f.phi()), 1e-9);
    }
}

TEST(Kloosterman, AgreesWithOracle) {
    for (auto [a, b, q] : std::vector<std::tuple<i64, i64, u64>>{{1, 1, 343}, {1, 1, 35}, {2, 3, 225}, {1, 1, 1009}, {-4, 9, 777}}) {
        const auto s = kloosterman_direct(a, b, factorize(q));
        EXPECT_NEAR(s.value, static_cast<double>(S_oracle(a, b, q)), 1e-10) << q;
    }
}

// frozen long-double oracle values
TEST(Kloosterman, FrozenValues) {
    EXPECT_NEAR(kloosterman_direct(1, 1, factorize(343)).value, -1.3567369109981239, 1e-12);
    EXPECT_NEAR(kloosterman_direct(1, 1, factorize(35)).value, -6.1704334900859863, 1e-12);
    EXPECT_NEAR(kloosterman_direct(1, 1, factorize(1009)).value, 20.255823027243847, 1e-11);
}

TEST(Kloosterman, Symmetric) {
    for (u64 q = 1; q <= 120; ++q) {
        const auto f = factorize(q);
        for (i64 a = 0; a < static_cast<i64>(q); a += 3)
            for (i64 b = 0; b < static_cast<i64>(q); b += 5)
                EXPECT_NEAR(kloosterman_direct(a, b, f).value, kloosterman_direct(b, a, f).value, 1e-9);
    }
}

TEST(Kloosterman, WeilBound) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const u64 q = 2 + rng() % 2000;
        const i64 a = static_cast<i64>(rng() % q), b = static_cast<i64>(rng() % q);
        const auto f = factorize(q);
        const u64 g = std::gcd(std::gcd(static_cast<u64>(a), static_cast<u64>(b)), q);
        const auto s = kloosterman_direct(a, b, f);
        EXPECT_LE(std::abs(s.value), static_cast<double>(f.tau()) * std::sqrt(static_cast<double>(q * g)) + s.abs_error);
    }
}

TEST(Salie, NonResidueVanishes) {
    const auto s = kloosterman_salie(1, 3, 5, 2);
    EXPECT_EQ(s.value, 0.0);
    EXPECT_NEAR(kloosterman_direct(1, 3, factorize(25)).value, 0.0, 1e-12);
}

TEST(Salie, ClosedFormValues) {
    EXPECT_NEAR(kloosterman_salie(1, 1, 5, 2).value, 10 * std::cos(4 * std::numbers::pi / 25), 1e-12);
    EXPECT_NEAR(kloosterman_salie(1, 1, 7, 3).value, kloosterman_direct(1, 1, factorize(343)).value, 1e-9);
}

TEST(Salie, MatchesDirectOnPrimePowers) {
    for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {3, 3}, {3, 5}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 2}, {13, 2}}) {
        const u64 q = ipow(p, n);
        const auto f = factorize(q);
        for (u64 c = 1; c < q; ++c) {
            if (c % p == 0) continue;
            EXPECT_NEAR(kloosterman_salie(1, static_cast<i64>(c), p, n).value, kloosterman_direct(1, static_cast<i64>(c), f).value, 1e-8)
                << q << " " << c;
        }
    }
}

TEST(Salie, Preconditions) {
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const error& e) {
            return e.code();
        }
        return errc::invalid_argument;
    };
    EXPECT_EQ(code([] { kloosterman_salie(1, 1, 2, 3); }), errc::even_prime);
    EXPECT_EQ(code([] { kloosterman_salie(1, 1, 5, 1); }), errc::exponent_too_small);
    EXPECT_EQ(code([] { kloosterman_salie(5, 1, 5, 2); }), errc::not_coprime);
}

TEST(Crt, MatchesDirect) {
    for (auto [a, b, q] : std::vector<std::tuple<i64, i64, u64>>{{1, 1, 35}, {2, 3, 225}, {7, 1, 1001}, {0, 4, 90}, {6, 10, 900}}) {
        const auto f = factorize(q);
        EXPECT_NEAR(kloosterman_crt(a, b, f).value, kloosterman_direct(a, b, f).value, 1e-9) << q;
    }
    EXPECT_EQ(kloosterman_crt(3, 4, factorize(101)).value, kloosterman_direct(3, 4, factorize(101)).value);
}

TEST(Incomplete, Endpoints) {
    const auto full = kloosterman_incomplete(2, 3, 77, 77);
    EXPECT_NEAR(full.re.value, kloosterman_direct(2, 3, factorize(77)).value, 1e-12);
    EXPECT_NEAR(full.im.value, 0.0, 1e-12);
    const auto one = kloosterman_incomplete(2, 3, 77, 1);
    EXPECT_NEAR(one.re.value, std::cos(2 * std::numbers::pi * 5 / 77), 1e-14);
    EXPECT_NEAR(one.im.value, std::sin(2 * std::numbers::pi * 5 / 77), 1e-14);
}

TEST(Incomplete, CorollaryBound) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const u64 q = 2 + rng() % 999;
        const i64 a = static_cast<i64>(rng() % q), b = static_cast<i64>(rng() % q);
        const u64 N = 1 + rng() % q;
        const auto f = factorize(q);
        const auto v = kloosterman_incomplete(a, b, q, N);
        const double bound = static_cast<double>(f.tau()) * std::sqrt(static_cast<double>(q)) *
                             std::sqrt(static_cast<double>(std::gcd(static_cast<u64>(a), q))) *
                             (std::log(static_cast<double>(q)) + 1);
        EXPECT_LE(v.abs(), bound + v.abs_error());
    }
}

TEST(Ramanujan, PrimePowerPattern) {
    for (auto [p, n] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {5, 3}, {7, 2}, {2, 5}}) {
        const auto q = factorize(ipow(p, n));
        const u64 top = ipow(p, n - 1);
        EXPECT_EQ(ramanujan_closed(q, 1), 0);
        EXPECT_EQ(ramanujan_closed(q, static_cast<i64>(top)), -static_cast<i64>(top));
        EXPECT_EQ(ramanujan_closed(q, static_cast<i64>(q.value())), static_cast<i64>(q.phi()));
    }
    EXPECT_EQ(ramanujan_closed(factorize(1), 5), 1);
}

TEST(Ramanujan, Examples) {
    EXPECT_EQ(ramanujan_direct(5, 0), 4);
    EXPECT_EQ(ramanujan_direct(9, 3), -3);
    EXPECT_EQ(ramanujan_direct(10, 4), ramanujan_closed(factorize(10), 4));
    EXPECT_EQ(ramanujan_direct(12, 2), ramanujan_closed(factorize(12), 2));
}

TEST(Ramanujan, ClosedEqualsDirect) {
    for (u64 q = 1; q <= 300; ++q) {
        const auto f = factorize(q);
        for (i64 a = -3; a < static_cast<i64>(q); ++a) EXPECT_EQ(ramanujan_closed(f, a), ramanujan_direct(q, a)) << q << " " << a;
    }
}

TEST(Gauss, QuarterRule) {
    const auto g5 = gauss_sum(5);
    EXPECT_NEAR(g5.real(), std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(g5.imag(), 0.0, 1e-12);
    const auto g7 = gauss_sum(7);
    EXPECT_NEAR(g7.real(), 0.0, 1e-12);
    EXPECT_NEAR(g7.imag(), std::sqrt(7.0), 1e-12);
    EXPECT_NEAR(gauss_sum(13).real(), std::sqrt(13.0), 1e-9);
    EXPECT_THROW(gauss_sum(2), error);
}

TEST(Twisted, ClosedValues) {
    const auto a = twisted_closed(factorize(125), 25);
    EXPECT_NEAR(a.u, 25 * std::sqrt(5.0), 1e-9);
    EXPECT_EQ(a.v, 0.0);
    const auto b = twisted_closed(factorize(27), 18);
    EXPECT_EQ(b.u, 0.0);
    EXPECT_NEAR(b.v, -9 * std::sqrt(3.0), 1e-9);
    const auto c = twisted_closed(factorize(343), 5);
    EXPECT_EQ(c.u, 0.0);
    EXPECT_EQ(c.v, 0.0);
    EXPECT_THROW(twisted_closed(factorize(49), 7), error);
}

TEST(Twisted, ClosedEqualsDirect) {
    for (u64 q : {3ull, 5ull, 7ull, 27ull, 125ull, 243ull, 343ull, 1331ull}) {
        const auto f = factorize(q);
        for (i64 a = 0; a < static_cast<i64>(q); ++a) {
            const auto c = twisted_closed(f, a);
            const auto d = twisted_direct(q, a);
            EXPECT_NEAR(c.u, d.u, 1e-8);
            EXPECT_NEAR(c.v, d.v, 1e-8);
        }
    }
}
