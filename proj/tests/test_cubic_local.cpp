#include <doctest.h>

#include <map>
#include <numeric>

#include "els/cubic_local.hpp"
#include "els/point_search.hpp"

using namespace els;

namespace {

// Union-find over valuation vectors of weight <= 16 joined by permutation,
// common shift by one and a change of one entry by 3. The extra room above
// weight 8 lets vectors like (0,2,2,2) reach their class through heavier ones.
struct Closure {
    std::map<ValVec, int> id;
    std::vector<int> parent;

    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void join(const ValVec& a, const ValVec& b) {
        if (!id.count(a) || !id.count(b)) return;
        parent[find(id[a])] = find(id[b]);
    }

    Closure() {
        ValVec v;
        for (v[0] = 0; v[0] <= 16; ++v[0])
            for (v[1] = 0; v[1] <= 16; ++v[1])
                for (v[2] = 0; v[2] <= 16; ++v[2])
                    for (v[3] = 0; v[3] <= 16; ++v[3])
                        if (weight(v) <= 16) {
                            id[v] = static_cast<int>(parent.size());
                            parent.push_back(static_cast<int>(parent.size()));
                        }
        for (const auto& [w, _] : id) {
            join(w, {w[1], w[0], w[2], w[3]});
            join(w, {w[0], w[2], w[1], w[3]});
            join(w, {w[0], w[1], w[3], w[2]});
            join(w, {w[3], w[1], w[2], w[0]});
            join(w, {w[0] + 1, w[1] + 1, w[2] + 1, w[3] + 1});
            for (int i = 0; i < 4; ++i) {
                ValVec u = w;
                u[i] += 3;
                join(w, u);
            }
        }
    }
};

}  // namespace

TEST_CASE("valuation_class examples") {
    CHECK(valuation_class({0, 0, 0, 0}).cls == DeltaClass::d1);
    CHECK(valuation_class({1, 1, 1, 1}).cls == DeltaClass::d1);
    CHECK(valuation_class({0, 1, 1, 1}).cls == DeltaClass::d3);
    CHECK(valuation_class({2, 5, 0, 3}).cls == DeltaClass::d4);
    CHECK(representative(DeltaClass::d5) == ValVec{0, 0, 1, 2});
    CHECK_THROWS_AS(valuation_class({0, -1, 0, 0}), std::invalid_argument);
}

TEST_CASE("valuation_class agrees with the brute-force closure for weight <= 8") {
    Closure c;
    std::map<int, DeltaClass> component_class;
    for (const auto& [v, i] : c.id) {
        if (weight(v) > 8) continue;
        const ValuationClass vc = valuation_class(v);
        const int root = c.find(i);
        auto [it, fresh] = component_class.emplace(root, vc.cls);
        CAPTURE(v);
        CHECK(it->second == vc.cls);
        CHECK(c.find(c.id.at(representative(vc.cls))) == root);

        const ClassTransform& t = vc.transform;
        const ValVec rep = representative(vc.cls);
        std::array<int, 4> sorted_order = t.order;
        std::sort(sorted_order.begin(), sorted_order.end());
        CHECK(sorted_order == std::array<int, 4>{0, 1, 2, 3});
        for (int s = 0; s < 4; ++s) {
            CHECK(t.reduced[t.order[s]] == rep[s]);
            CHECK(t.reduced[t.order[s]] == (v[t.order[s]] + t.shift) % 3);
        }
    }
    CHECK(component_class.size() == 5);
}

TEST_CASE("normalize_cubic examples") {
    NormalizedCubic n = normalize_cubic({1, 1, 1, 1}, 7);
    CHECK(n.cls == DeltaClass::d1);
    CHECK(n.units == std::array<std::int64_t, 4>{1, 1, 1, 1});

    n = normalize_cubic({1, 1, 7, 7}, 7);
    CHECK(n.cls == DeltaClass::d4);
    CHECK(n.units == std::array<std::int64_t, 4>{1, 1, 1, 1});

    n = normalize_cubic({9, 1, 3, 3}, 3);
    CHECK(n.cls == DeltaClass::d5);
    CHECK(n.transform.shift == 2);
    CHECK(n.transform.reduced == ValVec{1, 2, 0, 0});
    CHECK(n.transform.order == std::array<int, 4>{2, 3, 0, 1});
    CHECK(n.units == std::array<std::int64_t, 4>{1, 1, 1, 1});

    CHECK_THROWS_AS(normalize_cubic({1, 0, 1, 1}, 3), std::invalid_argument);
}

TEST_CASE("q3_bad_set") {
    const auto& bad = q3_bad_set();
    CHECK(bad.size() == 48);
    CHECK(bad.count({1, 2, 4, 0}) == 1);
    CHECK(bad.count({8, 7, 5, 0}) == 1);
    for (const Residue9& r : bad) {
        CHECK(r[3] == 0);
        for (int i = 0; i < 3; ++i) CHECK(r[i] % 3 != 0);
    }
}

TEST_CASE("cubic_soluble_at examples") {
    CHECK(cubic_soluble_at({1, 1, 1, 1}, 7));
    CHECK_FALSE(cubic_soluble_at({1, 2, 4, 9}, 3));
    CHECK_FALSE(cubic_soluble_at({-1, 2, 4, 9}, 3));
    CHECK(cubic_soluble_at({1, 1, 7, 7}, 7));
    CHECK_FALSE(cubic_soluble_at({1, 2, 7, 14}, 7));
    CHECK_THROWS_AS(cubic_soluble_at({1, 2, 0, 14}, 7), std::invalid_argument);
    for (std::int64_t a = 1; a < 5; ++a)
        for (std::int64_t b = 1; b < 5; ++b)
            for (std::int64_t c = 1; c < 5; ++c)
                for (std::int64_t d = 1; d < 5; ++d) CHECK(cubic_soluble_at({a, b, c, d}, 5));
    CHECK(cubic_soluble_at({1, 5, 25, 125 * 2}, 5));
    CHECK(cubic_soluble_at({1, 2, 4, 8 * 11}, 11));
}

TEST_CASE("the d3 sweep at p = 3 has insoluble share exactly 2/9") {
    const std::array<std::int64_t, 6> units{1, 2, 4, 5, 7, 8};
    int insoluble = 0, total = 0;
    for (auto u0 : units)
        for (auto u1 : units)
            for (auto u2 : units)
                for (auto u3 : units) {
                    const CoeffVec a{u0, u1, u2, 9 * u3};
                    const bool s = cubic_soluble_at(a, 3);
                    CHECK(s == is_soluble(search_diagonal(3, a, 3).verdict));
                    insoluble += !s;
                    ++total;
                }
    CHECK(total == 1296);
    CHECK(insoluble == 288);
    CHECK(insoluble * 9 == total * 2);
}

TEST_CASE("cubic_soluble_at agrees with search and respects symmetries") {
    for (std::uint64_t p : {2ull, 3ull, 7ull, 13ull, 19ull}) {
        for (std::uint64_t i = 0; i < 400; ++i) {
            CoeffVec a{};
            for (int k = 0; k < 4; ++k) {
                std::int64_t u = static_cast<std::int64_t>(sample_below(200, 77, i, k)) - 100;
                if (u == 0) u = 1;
                a[k] = u * static_cast<std::int64_t>(checked_pow(p, static_cast<int>(sample_below(4, 77, i, 10 + k))));
            }
            CAPTURE(p);
            CAPTURE(a);
            const bool s = cubic_soluble_at(a, p);
            CHECK(s == is_soluble(search_diagonal(3, a, p).verdict));
            CHECK(cubic_soluble_at({a[3], a[1], a[0], a[2]}, p) == s);
            CHECK(cubic_soluble_at({-a[0], -a[1], -a[2], -a[3]}, p) == s);
            CHECK(cubic_soluble_at({a[0] * 8, a[1], a[2], a[3] * 27}, p) == s);
            const std::int64_t q = static_cast<std::int64_t>(p);
            CHECK(cubic_soluble_at({a[0], a[1] * q * q * q, a[2], a[3]}, p) == s);
            CHECK(cubic_soluble_at({a[0] * q, a[1] * q, a[2] * q, a[3] * q}, p) == s);
        }
    }
}

TEST_CASE("cubic_els") {
    const PrimeTable t(1000);
    ElsResult r = cubic_els({1, 1, 1, 1}, t);
    CHECK(r.soluble);
    CHECK(r.failing_primes.empty());
    r = cubic_els({1, 2, 4, 9}, t);
    CHECK_FALSE(r.soluble);
    CHECK(r.failing_primes == std::vector<std::uint64_t>{3});
    r = cubic_els({1, 2, 7, 14}, t);
    CHECK_FALSE(r.soluble);
    CHECK(r.failing_primes == std::vector<std::uint64_t>{7});
    CHECK(cubic_els({0, 2, 4, 9}, t).soluble);
    CHECK_THROWS_AS(cubic_els({0, 0, 0, 0}, t), std::invalid_argument);
    CHECK(cubic_relevant_primes({1, 2, 7, 14 * 5}, t) == std::vector<std::uint64_t>{3, 7});
}
