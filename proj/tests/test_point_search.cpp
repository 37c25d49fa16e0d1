#include <doctest.h>

#include <algorithm>

#include "els/padic.hpp"
#include "els/point_search.hpp"

using namespace els;

namespace {

int vp(std::int64_t n, std::uint64_t p) { return n == 0 ? 1000 : val_and_unit(n, p).v; }

// Exhaustive residue oracle: a Q_p-point exists iff some primitive x mod p^N with
// a unit coordinate equal to 1 has v(F(x)) > 2 min v(dF/dx_i), computed mod p^N.
bool brute_soluble(int d, const CoeffVec& a, std::uint64_t p) {
    int emax = 0;
    for (auto c : a) emax = std::max(emax, vp(c, p));
    const int N = 2 * (vp(d, p) + emax) + 1;
    const std::uint64_t m = checked_pow(p, N);
    auto v_mod = [&](std::uint64_t r) {
        if (r == 0) return N;
        int v = 0;
        while (r % p == 0) r /= p, ++v;
        return v;
    };
    std::array<std::uint64_t, 4> ar{};
    for (int i = 0; i < 4; ++i) ar[i] = reduce_mod(a[i], m);
    for (int j = 0; j < 4; ++j) {
        std::array<std::uint64_t, 4> x{};
        std::array<int, 3> others{};
        for (int i = 0, k = 0; i < 4; ++i)
            if (i != j) others[k++] = i;
        const std::uint64_t total = m * m * m;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            x[j] = 1;
            bool skip = false;
            for (int k = 0; k < 3; ++k) {
                x[others[k]] = t % m;
                t /= m;
                if (others[k] < j && x[others[k]] % p != 0) skip = true;
            }
            if (skip) continue;
            std::uint64_t F = 0;
            int dmin = N;
            for (int i = 0; i < 4; ++i) {
                const std::uint64_t xd1 = pow_mod(x[i], d - 1, m);
                F = (F + mul_mod(ar[i], mul_mod(xd1, x[i], m), m)) % m;
                dmin = std::min(dmin, v_mod(mul_mod(mul_mod(ar[i], d % m, m), xd1, m)));
            }
            if (v_mod(F) > 2 * dmin) return true;
        }
    }
    return false;
}

bool soluble(int d, const CoeffVec& a, std::uint64_t p) {
    const SearchResult r = search_diagonal(d, a, p);
    REQUIRE_FALSE(is_exhausted(r.verdict));
    if (is_soluble(r.verdict)) CHECK(verify_certificate(std::get<Soluble>(r.verdict)));
    return is_soluble(r.verdict);
}

CoeffVec random_coeffs(std::uint64_t p, int max_val, std::uint64_t seed, std::uint64_t i, std::int64_t unit_bound) {
    CoeffVec a{};
    for (int k = 0; k < 4; ++k) {
        std::int64_t u = 0;
        std::uint64_t attempt = 0;
        do {
            u = static_cast<std::int64_t>(sample_below(2 * unit_bound, seed, i, 16 * k + attempt++)) - unit_bound;
        } while (u == 0 || u % static_cast<std::int64_t>(p) == 0);
        const int v = static_cast<int>(sample_below(max_val + 1, seed, i, 100 + k));
        a[k] = u * static_cast<std::int64_t>(checked_pow(p, v));
    }
    return a;
}

}  // namespace

TEST_CASE("search examples") {
    const SearchResult r = search_diagonal(3, {1, 1, 1, 1}, 3);
    REQUIRE(is_soluble(r.verdict));
    const Soluble& s = std::get<Soluble>(r.verdict);
    CHECK(verify_certificate(s));
    std::array<std::uint64_t, 4> w{};
    for (int i = 0; i < 4; ++i) w[i] = s.witness[i] % 3;
    std::sort(w.begin(), w.end());
    CHECK(w == std::array<std::uint64_t, 4>{0, 0, 1, 2});  // a permutation of (1,-1,0,0) mod 3

    CHECK(is_insoluble(search_diagonal(3, {1, 2, 4, 9}, 3).verdict));
    CHECK(is_insoluble(search_diagonal(3, {-1, 2, 4, 9}, 3).verdict));
    CHECK(is_insoluble(search_diagonal(4, {1, 2, 4, 8}, 2).verdict));
    CHECK(is_soluble(search_diagonal(4, {1, 1, 1, 1}, 7).verdict));
    CHECK(is_insoluble(search_diagonal(3, {1, 2, 7, 14}, 7).verdict));
    CHECK(is_insoluble(search_diagonal(4, {1, 3, 9, 27}, 3).verdict));
    CHECK(is_soluble(search_diagonal(4, {1, -1, 1, -1}, 5).verdict));
}

TEST_CASE("search argument errors") {
    CHECK_THROWS_AS(search_diagonal(3, {1, 0, 1, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(search_diagonal(5, {1, 1, 1, 1}, 3), std::invalid_argument);
    PadicDiagonal f = diagonal_from_integers(3, {1, 2, 4, 9}, 3);
    f.precision = 1;
    CHECK_THROWS_AS(search_diagonal(f), std::invalid_argument);
}

TEST_CASE("a tiny budget reports Exhausted") {
    const SearchResult r = search_diagonal(4, {1, 2, 4, 8}, 2, 1);
    CHECK(is_exhausted(r.verdict));
}

TEST_CASE("normalization keeps valuations below the degree") {
    const PadicDiagonal f = diagonal_from_integers(4, {16 * 3, 2, 64, 5}, 2);
    CHECK(*std::min_element(f.val.begin(), f.val.end()) == 0);
    for (int v : f.val) CHECK(v < 4);
    CHECK(f.precision >= completeness_depth(f));
}

TEST_CASE("cubic search agrees with the exhaustive residue oracle") {
    struct Case {
        std::uint64_t p;
        int max_val;
    };
    for (Case c : {Case{2, 2}, Case{3, 0}, Case{5, 0}, Case{7, 0}, Case{13, 0}}) {
        CAPTURE(c.p);
        for (int i = 0; i < 25; ++i) {
            const CoeffVec a = random_coeffs(c.p, c.max_val, 11, i, 60);
            CAPTURE(a);
            CHECK(soluble(3, a, c.p) == brute_soluble(3, a, c.p));
        }
    }
}

TEST_CASE("quartic search agrees with the exhaustive residue oracle") {
    struct Case {
        std::uint64_t p;
        int max_val;
        int n;
    };
    for (Case c : {Case{2, 0, 20}, Case{2, 1, 8}, Case{3, 1, 30}, Case{5, 0, 30}, Case{5, 1, 8}, Case{13, 0, 20}}) {
        CAPTURE(c.p);
        for (int i = 0; i < c.n; ++i) {
            const CoeffVec a = random_coeffs(c.p, c.max_val, 23, i, 200);
            CAPTURE(a);
            CHECK(soluble(4, a, c.p) == brute_soluble(4, a, c.p));
        }
    }
}

TEST_CASE("verdicts are invariant under permutation, sign and p^d scaling") {
    for (std::uint64_t p : {2ull, 3ull, 7ull}) {
        for (int d : {3, 4}) {
            for (int i = 0; i < 40; ++i) {
                CoeffVec a = random_coeffs(p, d == 3 ? 2 : 3, 5, i, 50);
                CAPTURE(a);
                const bool base = soluble(d, a, p);
                CoeffVec b{a[2], a[0], a[3], a[1]};
                CHECK(soluble(d, b, p) == base);
                CoeffVec neg{-a[0], -a[1], -a[2], -a[3]};
                CHECK(soluble(d, neg, p) == base);
                CoeffVec scaled = a;
                scaled[1] *= static_cast<std::int64_t>(checked_pow(p, d));
                CHECK(soluble(d, scaled, p) == base);
                CoeffVec all = a;
                for (auto& x : all) x *= static_cast<std::int64_t>(p);
                CHECK(soluble(d, all, p) == base);
            }
        }
    }
}

TEST_CASE("certificates are genuine") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 31ull}) {
        for (int i = 0; i < 50; ++i) {
            const CoeffVec a = random_coeffs(p, 3, 9, i, 1000);
            for (int d : {3, 4}) {
                const SearchResult r = search_diagonal(d, a, p);
                if (!is_soluble(r.verdict)) continue;
                Soluble s = std::get<Soluble>(r.verdict);
                CHECK(verify_certificate(s));
                CHECK(s.value_valuation > 2 * s.derivative_valuation);
                s.witness = {0, 0, 0, 0};
                CHECK_FALSE(verify_certificate(s));
            }
        }
    }
}
