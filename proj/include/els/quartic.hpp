#pragma once

// Local solubility and local densities of diagonal quartic surfaces
//     a0 x0^4 + a1 x1^4 + a2 x2^4 + a3 x3^4 = 0.
// There is no closed-form criterion here: every p-adic decision goes through
// the residue-tree search.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "els/padic.hpp"
#include "els/point_search.hpp"

namespace els {

/// A nonzero real point exists iff the coefficients do not all share a sign.
bool quartic_soluble_real(const CoeffVec& a);

/// Node budgets tried in turn before a local test is declared undecided.
inline constexpr std::uint64_t kQuarticBudgets[] = {100'000, 1'000'000, 10'000'000, 100'000'000};

/// Decides a p-adic quartic by search, escalating the node budget on Exhausted.
/// Throws UndecidedError when the largest budget is exhausted.
bool quartic_soluble_at(const PadicDiagonal& form);
bool quartic_soluble_at(const CoeffVec& a, std::uint64_t p);

/// Initial digits drawn per coefficient block: 30 for p = 2, 20 for p = 3, 12 otherwise.
int initial_sample_digits(std::uint64_t p);

struct SampleSchedule {
    int initial_digits = 0;
    std::uint64_t extra_blocks = 0;  // blocks drawn beyond the first, over all samples
    int max_blocks = 0;              // most blocks any single coefficient needed
};

/// Haar-random element of Z_p^4 as a diagonal form (valuation, unit mod p^digits).
/// Digits are drawn in blocks of initial_sample_digits(p): a zero block adds to the
/// valuation, a short unit part pulls in the next block. Pure in (seed, index).
PadicDiagonal sample_diagonal(int degree, std::uint64_t p, std::uint64_t seed, std::uint64_t index,
                              SampleSchedule* schedule = nullptr);

struct McEstimate {
    std::uint64_t p;
    std::uint64_t samples;
    double soluble_fraction;
    double standard_error;
    double undecided_fraction;
    std::uint64_t seed;
    SampleSchedule schedule;
    bool degraded;  // undecided_fraction >= 1e-4
};

/// Monte Carlo estimate of the quartic sigma_p. Bit-identical for any thread count.
McEstimate mc_sigma_p_quartic(std::uint64_t p, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads = 1);

struct ArchimedeanDensity {
    mpq_class mixed_sign_fraction;  // measure of the real-soluble part of [-1,1]^4
    mpq_class stated_value;         // 3/4, the value quoted in the literature
    std::uint64_t soluble_patterns;
    std::uint64_t total_patterns;
};

/// The real density computed over sign patterns of the cube [-1,1]^4.
ArchimedeanDensity sigma_infty_quartic();

/// Primes at which a quartic must be tested: p <= 23 and every p dividing a coefficient.
std::vector<std::uint64_t> quartic_relevant_primes(const CoeffVec& a, const PrimeTable& table);

/// Memo of p-adic verdicts keyed by the normalized form up to coordinate order
/// and overall sign, both of which leave the verdict unchanged. Not thread-safe;
/// give each worker its own.
class QuarticLocalCache {
public:
    bool soluble_at(const CoeffVec& a, std::uint64_t p);
    std::size_t size() const { return memo_.size(); }

private:
    using Key = std::pair<std::uint64_t, std::array<std::pair<int, std::uint64_t>, 4>>;
    std::map<Key, bool> memo_;
};

/// Everywhere local solubility of a primitive vector; cones are soluble.
bool quartic_els(const CoeffVec& a, const PrimeTable& table, QuarticLocalCache* cache = nullptr);

}  // namespace els
