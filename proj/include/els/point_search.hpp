#pragma once

// Complete decision procedure for Q_p-points on diagonal surfaces
//     a0 x0^d + a1 x1^d + a2 x2^d + a3 x3^d = 0,   d in {3, 4}.
//
// The coefficients are first normalized so that every v_p(a_i) <= d - 1 and
// min v_p(a_i) = 0. A primitive solution then has a unit coordinate x_j, which
// may be scaled to exactly 1. For each j the search walks a residue tree: a node
// is a box  x~ + p^{k_i} Z_p  per coordinate. Every F-value on the box agrees
// with F(x~) modulo p^L, where L is the least valuation any single-coordinate
// move can contribute, so the box is discarded once v_p(F(x~)) < L. A node is
// accepted when v_p(F(x~)) > 2 min_i v_p(dF/dx_i(x~)) (Hensel). Otherwise the
// coordinate with the smallest L-contribution gains one more p-adic digit.
// Since the fixed coordinate keeps min_i v_p(dF/dx_i) <= v_p(d) + v_p(a_j), the
// tree is exhausted by depth N = 2(v_p(d) + max_i v_p(a_i)) + 1, at which point
// Insoluble is a proof rather than a heuristic.

#include <array>
#include <cstdint>
#include <variant>

#include "els/padic.hpp"

namespace els {

/// Diagonal form over Z_p with coefficients p^val[i] * unit[i]; units known mod p^precision.
struct PadicDiagonal {
    int degree = 3;
    std::uint64_t p = 2;
    std::array<int, 4> val{};
    std::array<std::uint64_t, 4> unit{};
    int precision = 0;
};

/// Rewrites the form so that 0 <= val[i] <= d - 1 and min val == 0.
/// The result has a Q_p-point iff the input does (variable and equation scalings).
PadicDiagonal normalize_diagonal(PadicDiagonal form);

/// Builds the normalized p-adic form of an integer coefficient vector (no zero entries).
PadicDiagonal diagonal_from_integers(int degree, const CoeffVec& a, std::uint64_t p);

/// Digits of unit precision the search needs for this (normalized) form.
int completeness_depth(const PadicDiagonal& form);

struct Soluble {
    PadicDiagonal form;                    // normalized form the witness satisfies
    std::array<std::uint64_t, 4> witness;  // integer representatives, primitive
    int value_valuation;                   // v_p(F(witness)), capped at the completeness depth
    int derivative_valuation;              // min_i v_p(dF/dx_i(witness))
};
struct Insoluble {};
struct Exhausted {
    std::uint64_t nodes;
};

using Verdict = std::variant<Soluble, Insoluble, Exhausted>;

struct SearchResult {
    Verdict verdict;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

SearchResult search_diagonal(const PadicDiagonal& form,
                             std::uint64_t node_budget = kDefaultNodeBudget);

/// Integer-coefficient entry point. All a_i must be nonzero.
SearchResult search_diagonal(int degree, const CoeffVec& a, std::uint64_t p,
                             std::uint64_t node_budget = kDefaultNodeBudget);

/// Independent re-check of a Hensel certificate: re-evaluates F and its partials.
bool verify_certificate(const Soluble& s);

inline bool is_soluble(const Verdict& v) { return std::holds_alternative<Soluble>(v); }
inline bool is_insoluble(const Verdict& v) { return std::holds_alternative<Insoluble>(v); }
inline bool is_exhausted(const Verdict& v) { return std::holds_alternative<Exhausted>(v); }

}  // namespace els
