#include "els/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>

#include "els/cubic_local.hpp"
#include "els/parallel.hpp"
#include "els/quartic.hpp"

namespace els {

namespace {

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

std::vector<int> moebius_table(std::int64_t n) {
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 1);
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        for (std::int64_t j = i; j <= n; j += i) {
            if (j > i) composite[j] = true;
            mu[j] = -mu[j];
        }
        for (std::int64_t j = i * i; j <= n; j += i * i) mu[j] = 0;
    }
    return mu;
}

}  // namespace

bool is_canonical_primitive(const CoeffVec& x) {
    std::int64_t g = 0;
    for (auto c : x) g = std::gcd(g, abs64(c));
    if (g != 1) return false;
    for (auto c : x) {
        if (c != 0) return c > 0;
    }
    return false;
}

std::uint64_t projective_count(std::int64_t B) {
    if (B < 1) throw std::invalid_argument("projective_count: B must be >= 1");
    const std::vector<int> mu = moebius_table(B);
    __int128 total = 0;
    for (std::int64_t d = 1; d <= B; ++d) {
        if (mu[d] == 0) continue;
        const __int128 side = 2 * (B / d) + 1;
        total += mu[d] * (side * side * side * side - 1);
    }
    return static_cast<std::uint64_t>(total / 2);
}

void enum_projective_slab(std::int64_t B, std::int64_t slab,
                          const std::function<void(const ProjPoint&)>& visit) {
    if (B < 1) throw std::invalid_argument("enum_projective: B must be >= 1");
    if (slab < 0 || slab > B) throw std::out_of_range("enum_projective_slab: slab outside [0, B]");
    const std::int64_t x0 = slab;
    for (std::int64_t x1 = -B; x1 <= B; ++x1) {
        const std::int64_t g1 = std::gcd(x0, abs64(x1));
        for (std::int64_t x2 = -B; x2 <= B; ++x2) {
            const std::int64_t g2 = std::gcd(g1, abs64(x2));
            for (std::int64_t x3 = -B; x3 <= B; ++x3) {
                if (std::gcd(g2, abs64(x3)) != 1) continue;
                const CoeffVec x{x0, x1, x2, x3};
                if (x0 == 0 && !is_canonical_primitive(x)) continue;
                const std::int64_t h = std::max({x0, abs64(x1), abs64(x2), abs64(x3)});
                visit(ProjPoint{x, h});
            }
        }
    }
}

void enum_projective(std::int64_t B, const std::function<void(const ProjPoint&)>& visit) {
    for (std::int64_t s = 0; s <= B; ++s) enum_projective_slab(B, s, visit);
}

std::vector<ProjPoint> collect_projective(std::int64_t B) {
    std::vector<ProjPoint> out;
    enum_projective(B, [&](const ProjPoint& p) { out.push_back(p); });
    return out;
}

std::string family_name(Family f) { return f == Family::cubic ? "cubic" : "quartic"; }

EmpiricalDensity empirical_sigma(Family family, std::int64_t B, unsigned threads,
                                 const ProgressFn& progress) {
    if (B < 1) throw std::invalid_argument("empirical_sigma: B must be >= 1");
    const PrimeTable table(static_cast<std::uint32_t>(std::max<std::int64_t>(B, 100)));
    const std::uint64_t slabs = slab_count(B);
    struct Tally {
        std::uint64_t total = 0, soluble = 0, cones = 0;
    };
    std::vector<Tally> tallies(slabs);
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;

    parallel_blocks(slabs, slabs, resolve_threads(threads),
                    [&](std::uint64_t slab, std::uint64_t, std::uint64_t) {
                        Tally& t = tallies[slab];
                        QuarticLocalCache cache;
                        enum_projective_slab(B, static_cast<std::int64_t>(slab), [&](const ProjPoint& pt) {
                            const CoeffVec& a = pt.coords;
                            ++t.total;
                            if (a[0] == 0 || a[1] == 0 || a[2] == 0 || a[3] == 0) {
                                ++t.cones;
                                ++t.soluble;
                                return;
                            }
                            const bool ok = family == Family::cubic ? cubic_els(a, table).soluble
                                                                    : quartic_els(a, table, &cache);
                            if (ok) ++t.soluble;
                        });
                        const std::uint64_t finished = ++done;
                        if (progress) {
                            std::lock_guard lock(progress_mutex);
                            progress(finished, slabs);
                        }
                    });

    EmpiricalDensity r{family, B};
    for (const Tally& t : tallies) {
        r.total += t.total;
        r.soluble += t.soluble;
        r.cones += t.cones;
    }
    r.fraction = r.total ? static_cast<double>(r.soluble) / static_cast<double>(r.total) : 0.0;
    return r;
}

}  // namespace els
