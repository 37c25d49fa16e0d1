#pragma once

// Large-sieve transversality experiment.
//
// A point x of P^3(Q) has a transverse prime for (f, g) above M when some
// prime p > M divides f(x) exactly once and does not divide g(x). The share of
// points of height <= B without one should decay as B grows.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "els/enumeration.hpp"
#include "els/padic.hpp"

namespace els {

struct Monomial {
    std::int64_t coefficient;
    std::array<int, 4> exponents;
};

/// Integer form in X0..X3 given as a sum of signed monomials.
class Form {
public:
    Form() = default;
    explicit Form(std::vector<Monomial> terms);

    /// Parses e.g. "X0*X1*X2*X3", "x0 + x1 + x2 + x3", "2*X0^2*X1 - 3*X3^3".
    static Form parse(const std::string& text);

    /// f(x); throws std::overflow_error if the value leaves the int64 range.
    std::int64_t evaluate(const CoeffVec& x) const;

    bool is_monomial() const { return terms_.size() == 1; }
    const std::vector<Monomial>& terms() const { return terms_; }
    std::string to_string() const;

private:
    std::vector<Monomial> terms_;
};

/// f = X0 X1 X2 X3 (the coordinate hyperplanes) and g = X0 + X1 + X2 + X3.
Form coordinate_product_form();
Form coordinate_sum_form();

struct TransverseResult {
    bool transverse = false;
    bool degenerate = false;  // f(x) = 0
    std::uint64_t prime = 0;  // smallest transverse prime when transverse
};

/// The definition, evaluated on the canonical primitive representative of x.
TransverseResult has_transverse_prime(const ProjPoint& x, std::uint64_t M, const Form& f, const Form& g,
                                      const PrimeTable& table);

struct SieveConfig {
    std::uint64_t M = 10;
    Form f = coordinate_product_form();
    Form g = coordinate_sum_form();
    std::vector<std::int64_t> heights;
    // Heights with more points than this are sampled instead of enumerated.
    std::uint64_t exact_point_limit = 200'000'000;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

struct DecayRow {
    std::int64_t B;
    std::uint64_t total;
    std::uint64_t failures;  // exact count, or the sampled fraction scaled to total
    double fraction;
    double fraction_times_log_B;
    bool exact;
    std::uint64_t sampled_points;  // 0 when exact
    double standard_error;         // 0 when exact
};

struct DecayTable {
    std::vector<DecayRow> rows;
    double fitted_constant;  // least-squares c in fraction ~ c / log B
};

DecayTable failure_counts(const SieveConfig& config, unsigned threads = 1);

/// Uniform point of height <= B drawn from the counter stream (seed, index).
CoeffVec sample_projective_point(std::int64_t B, std::uint64_t seed, std::uint64_t index);

/// CSV with header B,total,failures,fraction,fraction_times_logB.
std::string decay_table_csv(const DecayTable& table);

}  // namespace els
