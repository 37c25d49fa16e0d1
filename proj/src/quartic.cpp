#include "els/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "els/errors.hpp"
#include "els/parallel.hpp"

namespace els {

namespace {

constexpr int kMaxBlocks = 64;
constexpr std::uint64_t kPrimeCutoff = 23;

// Worst-case completeness depth for a normalized form of this degree at p.
int max_depth(int degree, std::uint64_t p) {
    return 2 * (valuation(static_cast<std::uint64_t>(degree), p) + degree - 1) + 1;
}

}  // namespace

bool quartic_soluble_real(const CoeffVec& a) {
    bool pos = false, neg = false;
    for (auto x : a) {
        if (x == 0) throw std::invalid_argument("quartic_soluble_real: zero coefficient");
        (x > 0 ? pos : neg) = true;
    }
    return pos && neg;
}

bool quartic_soluble_at(const PadicDiagonal& form) {
    if (form.degree != 4) throw std::invalid_argument("quartic_soluble_at: degree must be 4");
    for (std::uint64_t budget : kQuarticBudgets) {
        const SearchResult r = search_diagonal(form, budget);
        if (is_soluble(r.verdict)) return true;
        if (is_insoluble(r.verdict)) return false;
    }
    throw UndecidedError("quartic local test undecided at p = " + std::to_string(form.p));
}

bool quartic_soluble_at(const CoeffVec& a, std::uint64_t p) {
    return quartic_soluble_at(diagonal_from_integers(4, a, p));
}

int initial_sample_digits(std::uint64_t p) {
    if (p == 2) return 30;
    if (p == 3) return 20;
    // 12 digits, or fewer when p^12 would not fit in a 63-bit residue.
    int digits = 0;
    std::uint64_t power = 1;
    while (digits < 12 && power <= (std::uint64_t{1} << 62) / p) {
        power *= p;
        ++digits;
    }
    return digits;
}

PadicDiagonal sample_diagonal(int degree, std::uint64_t p, std::uint64_t seed, std::uint64_t index,
                              SampleSchedule* schedule) {
    const int block = initial_sample_digits(p);
    const int needed = max_depth(degree, p);
    const std::uint64_t unit_modulus = checked_pow(p, needed);

    PadicDiagonal form;
    form.degree = degree;
    form.p = p;
    form.precision = needed;
    for (int i = 0; i < 4; ++i) {
        int blocks = 0;
        auto draw = [&] {
            if (blocks == kMaxBlocks) throw UndecidedError("sample_diagonal: coefficient precision exhausted");
            const auto stream = static_cast<std::uint64_t>(i) * kMaxBlocks + static_cast<std::uint64_t>(blocks);
            ++blocks;
            return sample_zp(p, block, seed, index, stream).value;
        };
        int v = 0;
        std::uint64_t r = draw();
        while (r == 0) {
            v += block;
            r = draw();
        }
        const int t = valuation(r, p);
        v += t;
        for (int s = 0; s < t; ++s) r /= p;
        std::uint64_t unit = r % unit_modulus;
        int known = block - t;
        while (known < needed) {
            const std::uint64_t next = draw() % unit_modulus;
            unit = (unit + mul_mod(checked_pow(p, known), next, unit_modulus)) % unit_modulus;
            known += block;
        }
        form.val[i] = v;
        form.unit[i] = unit;
        if (schedule) {
            schedule->extra_blocks += static_cast<std::uint64_t>(blocks - 1);
            schedule->max_blocks = std::max(schedule->max_blocks, blocks);
        }
    }
    if (schedule) schedule->initial_digits = block;
    return form;
}

McEstimate mc_sigma_p_quartic(std::uint64_t p, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads) {
    if (samples < 1000) throw std::invalid_argument("mc_sigma_p_quartic: need at least 1000 samples");
    constexpr std::uint64_t kBlocks = 256;
    struct Tally {
        std::uint64_t soluble = 0;
        std::uint64_t undecided = 0;
        SampleSchedule schedule;
    };
    std::vector<Tally> tallies(kBlocks);
    parallel_blocks(samples, kBlocks, resolve_threads(threads),
                    [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                        Tally& t = tallies[b];
                        for (std::uint64_t idx = begin; idx < end; ++idx) {
                            try {
                                const PadicDiagonal form = sample_diagonal(4, p, seed, idx, &t.schedule);
                                if (quartic_soluble_at(form)) ++t.soluble;
                            } catch (const UndecidedError&) {
                                ++t.undecided;
                            }
                        }
                    });

    McEstimate est{};
    est.p = p;
    est.samples = samples;
    est.seed = seed;
    std::uint64_t soluble = 0, undecided = 0;
    est.schedule.initial_digits = initial_sample_digits(p);
    for (const Tally& t : tallies) {
        soluble += t.soluble;
        undecided += t.undecided;
        est.schedule.extra_blocks += t.schedule.extra_blocks;
        est.schedule.max_blocks = std::max(est.schedule.max_blocks, t.schedule.max_blocks);
    }
    const double decided = static_cast<double>(samples - undecided);
    const double f = decided > 0 ? static_cast<double>(soluble) / decided : 0.0;
    est.soluble_fraction = f;
    est.standard_error = decided > 0 ? std::sqrt(f * (1.0 - f) / decided) : 0.0;
    est.undecided_fraction = static_cast<double>(undecided) / static_cast<double>(samples);
    est.degraded = est.undecided_fraction >= 1e-4;
    return est;
}

ArchimedeanDensity sigma_infty_quartic() {
    // Each sign pattern is an orthant of [-1,1]^4 of volume 1/16; the quartic has a
    // real point exactly on the orthants with mixed signs.
    std::uint64_t mixed = 0;
    for (unsigned pattern = 0; pattern < 16; ++pattern) {
        if (pattern != 0 && pattern != 15) ++mixed;
    }
    ArchimedeanDensity d;
    d.soluble_patterns = mixed;
    d.total_patterns = 16;
    d.mixed_sign_fraction = mpq_class(static_cast<unsigned long>(mixed), 16UL);
    d.mixed_sign_fraction.canonicalize();
    d.stated_value = mpq_class(3, 4);
    return d;
}

std::vector<std::uint64_t> quartic_relevant_primes(const CoeffVec& a, const PrimeTable& table) {
    std::vector<std::uint64_t> primes;
    for (std::uint32_t q : table.primes()) {
        if (q > kPrimeCutoff) break;
        primes.push_back(q);
    }
    for (auto x : a) {
        if (x == 0) continue;
        const auto mag = static_cast<std::uint64_t>(x < 0 ? -x : x);
        if (mag == 1) continue;
        for (const auto& [q, e] : table.factor(mag)) primes.push_back(q);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

bool QuarticLocalCache::soluble_at(const CoeffVec& a, std::uint64_t p) {
    const PadicDiagonal form = diagonal_from_integers(4, a, p);
    const std::uint64_t modulus = checked_pow(p, form.precision);
    std::array<std::pair<int, std::uint64_t>, 4> plus, minus;
    for (int i = 0; i < 4; ++i) {
        plus[i] = {form.val[i], form.unit[i]};
        minus[i] = {form.val[i], (modulus - form.unit[i]) % modulus};
    }
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    const Key key{p, std::min(plus, minus)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool soluble = quartic_soluble_at(form);
    memo_.emplace(key, soluble);
    return soluble;
}

bool quartic_els(const CoeffVec& a, const PrimeTable& table, QuarticLocalCache* cache) {
    if (a == CoeffVec{0, 0, 0, 0}) throw std::invalid_argument("quartic_els: zero vector");
    for (auto x : a)
        if (x == 0) return true;
    if (!quartic_soluble_real(a)) return false;
    for (std::uint64_t p : quartic_relevant_primes(a, table)) {
        const bool soluble = cache ? cache->soluble_at(a, p) : quartic_soluble_at(a, p);
        if (!soluble) return false;
    }
    return true;
}

}  // namespace els
