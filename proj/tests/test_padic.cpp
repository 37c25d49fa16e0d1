#include <doctest.h>

#include <set>

#include "els/padic.hpp"

using namespace els;

TEST_CASE("val_and_unit splits off the prime power") {
    CHECK(val_and_unit(12, 2).v == 2);
    CHECK(val_and_unit(12, 2).unit == 3);
    CHECK(val_and_unit(9, 3).v == 2);
    CHECK(val_and_unit(9, 3).unit == 1);
    CHECK(val_and_unit(7, 5).v == 0);
    CHECK(val_and_unit(7, 5).unit == 7);
    CHECK(val_and_unit(-18, 3).v == 2);
    CHECK(val_and_unit(-18, 3).unit == -2);
    CHECK_THROWS_AS(val_and_unit(0, 3), std::domain_error);
    CHECK_THROWS_WITH(val_and_unit(0, 3), "infinite valuation");
}

TEST_CASE("modular helpers") {
    CHECK(reduce_mod(-1, 9) == 8);
    CHECK(reduce_mod(-18, 9) == 0);
    CHECK(pow_mod(3, 6, 7) == 1);
    CHECK(mul_mod(1ull << 62, 4, (1ull << 61) - 1) == 8);
    CHECK(checked_pow(3, 4) == 81);
    CHECK_THROWS_AS(checked_pow(2, 63), std::overflow_error);
    CHECK(valuation(48, 2) == 4);
}

TEST_CASE("is_cube_unit examples") {
    CHECK(is_cube_unit(1, 7));
    CHECK_FALSE(is_cube_unit(2, 7));
    CHECK(is_cube_unit(6, 7));
    CHECK(is_cube_unit(-1, 7));
    CHECK_THROWS_AS(is_cube_unit(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(is_cube_unit(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(is_cube_unit(14, 7), std::invalid_argument);
}

TEST_CASE("is_cube_unit matches the table of cubes for p <= 200") {
    for (std::uint64_t p = 7; p <= 200; ++p) {
        if (!is_prime_naive(p) || p % 3 != 1) continue;
        std::set<std::uint64_t> cubes;
        for (std::uint64_t x = 1; x < p; ++x) cubes.insert(x * x % p * x % p);
        CHECK(cubes.size() == (p - 1) / 3);
        for (std::int64_t u = 1; u < static_cast<std::int64_t>(p); ++u) {
            CHECK(is_cube_unit(u, p) == (cubes.count(static_cast<std::uint64_t>(u)) == 1));
            CHECK(is_cube_unit(u - static_cast<std::int64_t>(p), p) == is_cube_unit(u, p));
        }
    }
}

TEST_CASE("prime table") {
    const PrimeTable t10 = build_prime_table(10);
    CHECK(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()) ==
          std::vector<std::uint32_t>{2, 3, 5, 7});
    CHECK(t10.spf(9) == 3);
    CHECK(build_prime_table(30).primes().size() == 10);
    CHECK(build_prime_table(1'000'000).primes().size() == 78498);
    CHECK_THROWS_AS(build_prime_table(1), std::invalid_argument);

    const PrimeTable t = build_prime_table(10'000);
    for (std::uint32_t n = 2; n <= 10'000; ++n) {
        CHECK(t.is_prime(n) == is_prime_naive(n));
        const std::uint32_t s = t.spf(n);
        CHECK(n % s == 0);
        for (std::uint32_t q = 2; q < s; ++q) CHECK(n % q != 0);
    }
}

TEST_CASE("factor reassembles n, also above the sieve limit") {
    const PrimeTable t = build_prime_table(1000);
    for (std::uint64_t n : {1ull, 2ull, 360ull, 997ull, 1001ull, 999'983ull, 2ull * 999'983ull, 123'456'789ull}) {
        std::uint64_t back = 1;
        std::uint64_t last = 0;
        for (auto [q, e] : t.factor(n)) {
            CHECK(q > last);
            CHECK(is_prime_naive(q));
            last = q;
            for (int i = 0; i < e; ++i) back *= q;
        }
        CHECK(back == n);
    }
}

TEST_CASE("sample_zp is deterministic") {
    CHECK(sample_zp(5, 7, 42, 1000) == sample_zp(5, 7, 42, 1000));
    CHECK(sample_zp(5, 7, 42, 1000, 3) == sample_zp(5, 7, 42, 1000, 3));
    CHECK_FALSE(sample_zp(5, 7, 42, 1000) == sample_zp(5, 7, 43, 1000));
    CHECK(counter_hash(1, 2, 3) == counter_hash(1, 2, 3));
}

TEST_CASE("sample_zp is uniform") {
    constexpr int n = 100'000;
    int odd = 0;
    for (int i = 0; i < n; ++i) odd += sample_zp(2, 1, 7, i).value == 1;
    CHECK(std::abs(odd / double(n) - 0.5) <= 0.01);

    std::array<int, 9> counts{};
    for (int i = 0; i < n; ++i) {
        const PadicResidue r = sample_zp(3, 2, 7, i);
        REQUIRE(r.value < 9);
        ++counts[r.value];
    }
    double chi2 = 0;
    for (int c : counts) {
        CHECK(std::abs(c / double(n) - 1.0 / 9) <= 0.01);
        const double e = n / 9.0;
        chi2 += (c - e) * (c - e) / e;
    }
    CHECK(chi2 < 26.1);  // 0.999 quantile, 8 degrees of freedom
}

TEST_CASE("sample_below stays in range") {
    for (std::uint64_t b : {1ull, 3ull, 1000ull, (1ull << 63) + 5}) {
        for (int i = 0; i < 1000; ++i) CHECK(sample_below(b, 1, i, 0) < b);
    }
    CHECK_THROWS_AS(sample_below(0, 1, 1, 0), std::invalid_argument);
}
