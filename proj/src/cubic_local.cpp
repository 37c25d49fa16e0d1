#include "els/cubic_local.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace els {

namespace {

constexpr std::array<ValVec, 5> kRepresentatives{{
    {0, 0, 0, 0},
    {0, 0, 0, 1},
    {0, 0, 0, 2},
    {0, 0, 1, 1},
    {0, 0, 1, 2},
}};

// True iff -num/den is a cube mod p (p = 1 mod 3). -num * den^2 has the same cube class.
bool neg_ratio_is_cube(std::int64_t num, std::int64_t den, std::uint64_t p) {
    const std::uint64_t n = reduce_mod(num, p);
    const std::uint64_t d = reduce_mod(den, p);
    const std::uint64_t x = mul_mod((p - n) % p, mul_mod(d, d, p), p);
    return is_cube_unit(static_cast<std::int64_t>(x), p);
}

}  // namespace

ValVec representative(DeltaClass c) { return kRepresentatives.at(static_cast<int>(c) - 1); }

ValuationClass valuation_class(const ValVec& v) {
    for (int x : v)
        if (x < 0) throw std::invalid_argument("valuation_class: negative valuation");
    for (int shift = 0; shift < 3; ++shift) {
        ClassTransform t;
        t.shift = shift;
        for (int i = 0; i < 4; ++i) t.reduced[i] = (v[i] % 3 + shift) % 3;
        std::iota(t.order.begin(), t.order.end(), 0);
        std::stable_sort(t.order.begin(), t.order.end(),
                         [&](int x, int y) { return t.reduced[x] < t.reduced[y]; });
        ValVec sorted;
        for (int s = 0; s < 4; ++s) sorted[s] = t.reduced[t.order[s]];
        for (int c = 0; c < 5; ++c) {
            if (sorted == kRepresentatives[c]) return {static_cast<DeltaClass>(c + 1), t};
        }
    }
    // Every composition of 4 into residue counts lies in one of the five shift orbits.
    throw std::logic_error("valuation_class: no representative found");
}

NormalizedCubic normalize_cubic(const CoeffVec& a, std::uint64_t p) {
    ValVec v;
    std::array<std::int64_t, 4> u;
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0) throw std::invalid_argument("normalize_cubic: zero coefficient");
        const ValUnit vu = val_and_unit(a[i], p);
        v[i] = vu.v;
        u[i] = vu.unit;
    }
    const ValuationClass vc = valuation_class(v);
    NormalizedCubic out{vc.cls, {}, vc.transform};
    for (int s = 0; s < 4; ++s) out.units[s] = u[vc.transform.order[s]];
    return out;
}

const std::set<Residue9>& q3_bad_set() {
    static const std::set<Residue9> bad = [] {
        std::set<Residue9> seen{{1, 2, 4, 0}};
        std::deque<Residue9> queue{{1, 2, 4, 0}};
        auto visit = [&](const Residue9& r) {
            if (seen.insert(r).second) queue.push_back(r);
        };
        while (!queue.empty()) {
            const Residue9 r = queue.front();
            queue.pop_front();
            visit({r[1], r[0], r[2], r[3]});
            visit({r[0], r[2], r[1], r[3]});
            for (int i = 0; i < 4; ++i) {
                Residue9 n = r;
                n[i] = (9 - n[i]) % 9;
                visit(n);
            }
            for (int unit : {2, 4, 5, 7, 8}) {
                visit({r[0] * unit % 9, r[1] * unit % 9, r[2] * unit % 9, r[3]});
            }
        }
        return seen;
    }();
    return bad;
}

bool cubic_soluble_at(const CoeffVec& a, std::uint64_t p) {
    for (auto x : a)
        if (x == 0) throw std::invalid_argument("cubic_soluble_at: zero coefficient");
    if (p % 3 == 2) return true;
    const NormalizedCubic n = normalize_cubic(a, p);
    const auto& u = n.units;
    if (p == 3) {
        if (n.cls != DeltaClass::d3) return true;
        const Residue9 r{static_cast<int>(reduce_mod(u[0], 9)), static_cast<int>(reduce_mod(u[1], 9)),
                         static_cast<int>(reduce_mod(u[2], 9)), 0};
        return !q3_bad_set().contains(r);
    }
    switch (n.cls) {
        case DeltaClass::d4:
            return neg_ratio_is_cube(u[1], u[0], p) || neg_ratio_is_cube(u[3], u[2], p);
        case DeltaClass::d5:
            return neg_ratio_is_cube(u[0], u[1], p);
        default:
            return true;
    }
}

std::vector<std::uint64_t> cubic_relevant_primes(const CoeffVec& a, const PrimeTable& table) {
    std::vector<std::uint64_t> primes{3};
    for (auto x : a) {
        if (x == 0) continue;
        const auto mag = static_cast<std::uint64_t>(x < 0 ? -x : x);
        if (mag == 1) continue;
        for (const auto& [q, e] : table.factor(mag)) {
            if (q % 3 == 1) primes.push_back(q);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

ElsResult cubic_els(const CoeffVec& a, const PrimeTable& table) {
    if (a == CoeffVec{0, 0, 0, 0}) throw std::invalid_argument("cubic_els: zero vector");
    for (auto x : a)
        if (x == 0) return {true, {}};
    ElsResult r{true, {}};
    for (std::uint64_t p : cubic_relevant_primes(a, table)) {
        if (!cubic_soluble_at(a, p)) {
            r.soluble = false;
            r.failing_primes.push_back(p);
        }
    }
    return r;
}

}  // namespace els
