#pragma once

// Integer and p-adic primitives: valuations, cubic residues, prime sieves and
// counter-based sampling of Z_p at finite precision.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace els {

using CoeffVec = std::array<std::int64_t, 4>;

struct ValUnit {
    int v;
    std::int64_t unit;
};

/// Splits n = p^v * u with p not dividing u. Throws std::domain_error for n == 0.
ValUnit val_and_unit(std::int64_t n, std::uint64_t p);

/// v_p(n) for n != 0 as an unsigned quantity.
int valuation(std::uint64_t n, std::uint64_t p);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Reduces any signed integer into [0, m).
std::uint64_t reduce_mod(std::int64_t n, std::uint64_t m);

/// p^k, or throws std::overflow_error if it does not fit below 2^63.
std::uint64_t checked_pow(std::uint64_t p, int k);

/// True iff u is a cube in (Z/p)^*, which for p = 1 mod 3 is the same as being a
/// cube in Z_p^*. Requires p = 1 mod 3 and p not dividing u.
bool is_cube_unit(std::int64_t u, std::uint64_t p);

bool is_prime_naive(std::uint64_t n);

/// Smallest-prime-factor sieve. Immutable after construction.
class PrimeTable {
public:
    explicit PrimeTable(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// Least prime factor of n, 2 <= n <= limit.
    std::uint32_t spf(std::uint32_t n) const;
    bool is_prime(std::uint32_t n) const { return n >= 2 && spf(n) == n; }

    /// Prime factorization of n >= 1 as (prime, exponent) pairs in ascending order.
    /// Falls back to trial division by the table's primes above the limit.
    std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

PrimeTable build_prime_table(std::uint32_t limit);

/// Element of Z/p^k standing in for an element of Z_p.
struct PadicResidue {
    std::uint64_t p;
    int k;
    std::uint64_t value;

    bool operator==(const PadicResidue&) const = default;
};

/// Stateless 64-bit mixer of (seed, index, stream); the counter-based generator
/// behind every Monte Carlo routine.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) noexcept;

/// Haar-uniform residue mod p^k as a pure function of (seed, index, stream).
PadicResidue sample_zp(std::uint64_t p, int k, std::uint64_t seed, std::uint64_t index,
                       std::uint64_t stream = 0);

/// Uniform integer in [0, bound) as a pure function of the counter inputs.
std::uint64_t sample_below(std::uint64_t bound, std::uint64_t seed, std::uint64_t index,
                           std::uint64_t stream);

}  // namespace els
