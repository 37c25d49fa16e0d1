#pragma once

// Exact local densities sigma_p of everywhere locally soluble diagonal cubic
// surfaces and their Euler product.
//
//   sigma_p = sum_i A_i(p) V_i(p)
//
// where A_i is the soluble proportion inside valuation class d_i and V_i the
// Haar volume of coefficient vectors whose valuation vector lies in class d_i.

#include <gmpxx.h>

#include <cstdint>

namespace els {

struct LocalDensity {
    std::uint64_t p;
    mpq_class value;
    double float_value;
};

/// Soluble proportion within valuation class i in 1..5.
mpq_class A_coeff(std::uint64_t p, int i);

/// Volume of the coefficient vectors in valuation class i in 1..5.
mpq_class V_coeff(std::uint64_t p, int i);

/// Product formula for p = 3 and p = 1 mod 3; 1 for p = 2 mod 3.
mpq_class sigma_p_closed_form(std::uint64_t p);

/// sigma_p by summing over classes, cross-checked against the closed form.
/// Throws ConsistencyError if the two exact rationals differ.
LocalDensity sigma_p_cubic(std::uint64_t p);

struct EulerProductReport {
    std::uint64_t limit;
    double partial_product;
    std::uint64_t factors;        // number of primes with sigma_p < 1 included
    double tenth_product;         // product truncated at limit / 10
    double tail_indicator;        // |partial_product - tenth_product|
    double tail_bound;            // sum_{p > limit} 9 / p^2, bounded by an integral
};

/// Product over p = 3 and p = 1 mod 3 up to limit, accumulated in ascending
/// prime order with compensated summation of logarithms. The thread count only
/// affects how per-prime factors are computed, never the result.
EulerProductReport euler_product_cubic(std::uint64_t limit, unsigned threads = 1);

}  // namespace els
