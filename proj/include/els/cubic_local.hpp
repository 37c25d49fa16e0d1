#pragma once

// Closed-form local solubility of diagonal cubic surfaces over Q_p.
//
// Valuation vectors in Z_{>=0}^4 are taken up to permutation, a common shift
// and congruence mod 3; the five classes are represented by
//   d1 = (0,0,0,0)  d2 = (0,0,0,1)  d3 = (0,0,0,2)  d4 = (0,0,1,1)  d5 = (0,0,1,2).
// Each move is realized by scaling the equation or a variable, so the unit parts
// of the coefficients ride along unchanged and only their slot order moves.

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "els/padic.hpp"

namespace els {

enum class DeltaClass : int { d1 = 1, d2 = 2, d3 = 3, d4 = 4, d5 = 5 };

using ValVec = std::array<int, 4>;

inline int weight(const ValVec& v) { return v[0] + v[1] + v[2] + v[3]; }

/// Canonical representative of a class, e.g. d4 -> (0,0,1,1).
ValVec representative(DeltaClass c);

struct ClassTransform {
    int shift = 0;                  // common shift added after reducing mod 3
    ValVec reduced{};               // (v_i + shift) mod 3, in input slot order
    std::array<int, 4> order{};     // order[s] = input slot placed in representative slot s
};

struct ValuationClass {
    DeltaClass cls;
    ClassTransform transform;
};

ValuationClass valuation_class(const ValVec& v);

struct NormalizedCubic {
    DeltaClass cls;
    std::array<std::int64_t, 4> units;  // unit parts in representative slot order
    ClassTransform transform;
};

NormalizedCubic normalize_cubic(const CoeffVec& a, std::uint64_t p);

using Residue9 = std::array<int, 4>;

/// The 48 residue vectors mod 9 whose d3-normalized cubic has no Q_3-point:
/// the closure of (1,2,4,0) under permuting the first three slots, negating
/// coordinates and scaling the first three by a unit of Z/9.
const std::set<Residue9>& q3_bad_set();

/// Decides S_a(Q_p) != {} for nonzero coefficients by the class criteria.
bool cubic_soluble_at(const CoeffVec& a, std::uint64_t p);

struct ElsResult {
    bool soluble;
    std::vector<std::uint64_t> failing_primes;
};

/// Everywhere local solubility of a primitive coefficient vector. Cones (a zero
/// coefficient) are soluble; R is automatic in odd degree.
ElsResult cubic_els(const CoeffVec& a, const PrimeTable& table);

/// Primes that can obstruct: 3 and the p = 1 mod 3 dividing a0 a1 a2 a3.
std::vector<std::uint64_t> cubic_relevant_primes(const CoeffVec& a, const PrimeTable& table);

}  // namespace els
