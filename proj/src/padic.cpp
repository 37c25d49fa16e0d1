#include "els/padic.hpp"

#include <limits>
#include <string>

namespace els {

ValUnit val_and_unit(std::int64_t n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("infinite valuation");
    if (p < 2) throw std::invalid_argument("val_and_unit: p must be prime");
    const auto sp = static_cast<std::int64_t>(p);
    int v = 0;
    while (n % sp == 0) {
        n /= sp;
        ++v;
    }
    return {v, n};
}

int valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("infinite valuation");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t reduce_mod(std::int64_t n, std::uint64_t m) {
    const auto sm = static_cast<__int128>(m);
    __int128 r = static_cast<__int128>(n) % sm;
    if (r < 0) r += sm;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_pow(std::uint64_t p, int k) {
    constexpr std::uint64_t cap = std::uint64_t{1} << 63;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (cap - 1) / p) throw std::overflow_error("p^k exceeds 63 bits");
        r *= p;
    }
    return r;
}

bool is_cube_unit(std::int64_t u, std::uint64_t p) {
    if (p % 3 != 1) {
        throw std::invalid_argument("is_cube_unit requires p = 1 mod 3, got p = " +
                                    std::to_string(p));
    }
    const std::uint64_t r = reduce_mod(u, p);
    if (r == 0) throw std::invalid_argument("is_cube_unit: argument is not a unit");
    return pow_mod(r, (p - 1) / 3, p) == 1;
}

bool is_prime_naive(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeTable::PrimeTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    // Linear sieve: each composite is struck exactly once by its least prime.
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t q : primes_) {
            const std::uint64_t m = static_cast<std::uint64_t>(q) * i;
            if (q > spf_[i] || m > limit) break;
            spf_[m] = q;
        }
    }
}

std::uint32_t PrimeTable::spf(std::uint32_t n) const {
    if (n < 2 || n > limit_) throw std::out_of_range("PrimeTable::spf out of range");
    return spf_[n];
}

std::vector<std::pair<std::uint64_t, int>> PrimeTable::factor(std::uint64_t n) const {
    if (n == 0) throw std::domain_error("cannot factor 0");
    std::vector<std::pair<std::uint64_t, int>> out;
    auto push = [&out](std::uint64_t q) {
        if (!out.empty() && out.back().first == q)
            ++out.back().second;
        else
            out.emplace_back(q, 1);
    };
    if (n > limit_) {
        for (std::uint32_t q : primes_) {
            if (static_cast<std::uint64_t>(q) * q > n) break;
            while (n % q == 0) {
                push(q);
                n /= q;
            }
            if (n <= limit_) break;
        }
        if (n > limit_) {
            // Remaining cofactor has no prime factor below the table; trial divide on.
            std::uint64_t d = static_cast<std::uint64_t>(limit_) + 1;
            while (d * d <= n) {
                while (n % d == 0) {
                    push(d);
                    n /= d;
                }
                ++d;
            }
            if (n > 1) push(n);
            return out;
        }
    }
    while (n > 1) {
        const std::uint32_t q = spf_[n];
        push(q);
        n /= q;
    }
    return out;
}

PrimeTable build_prime_table(std::uint32_t limit) { return PrimeTable(limit); }

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) noexcept {
    // splitmix64 finalizer applied to a combination of the three counters.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ index) + stream);
}

std::uint64_t sample_below(std::uint64_t bound, std::uint64_t seed, std::uint64_t index,
                           std::uint64_t stream) {
    if (bound == 0) throw std::invalid_argument("sample_below: empty range");
    // Rejection keeps the result exactly uniform; attempts live in the stream's high bits.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t r = counter_hash(seed, index, stream ^ (attempt << 40));
        if (r < limit) return r % bound;
    }
}

PadicResidue sample_zp(std::uint64_t p, int k, std::uint64_t seed, std::uint64_t index,
                       std::uint64_t stream) {
    if (k < 1) throw std::invalid_argument("sample_zp: precision must be >= 1");
    const std::uint64_t modulus = checked_pow(p, k);
    return {p, k, sample_below(modulus, seed, index, stream)};
}

}  // namespace els
