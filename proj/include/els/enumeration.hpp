#pragma once

// Height-ordered enumeration of P^3(Q) and empirical local-solubility densities.
//
// A point is stored as its canonical primitive representative: gcd 1 and the
// first nonzero coordinate positive. Its height is the max-norm of that vector.
// The stream is split into slabs by the first coordinate x0 in [0, B]; slab 0
// carries every point with x0 = 0.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "els/padic.hpp"

namespace els {

struct ProjPoint {
    CoeffVec coords;
    std::int64_t height;

    bool operator==(const ProjPoint&) const = default;
};

bool is_canonical_primitive(const CoeffVec& x);

/// Number of points of P^3(Q) of height <= B, by Moebius inversion over the box.
std::uint64_t projective_count(std::int64_t B);

inline std::uint64_t slab_count(std::int64_t B) { return static_cast<std::uint64_t>(B) + 1; }

/// Visits the points of one slab (x0 = slab) with height <= B in lexicographic order.
void enum_projective_slab(std::int64_t B, std::int64_t slab,
                          const std::function<void(const ProjPoint&)>& visit);

/// Visits every point of height <= B exactly once, slab by slab.
void enum_projective(std::int64_t B, const std::function<void(const ProjPoint&)>& visit);

std::vector<ProjPoint> collect_projective(std::int64_t B);

enum class Family { cubic, quartic };

std::string family_name(Family f);

struct EmpiricalDensity {
    Family family;
    std::int64_t height;
    std::uint64_t total = 0;
    std::uint64_t soluble = 0;
    std::uint64_t cones = 0;  // points with a zero coordinate, counted soluble
    double fraction = 0.0;
};

using ProgressFn = std::function<void(std::uint64_t done_slabs, std::uint64_t total_slabs)>;

/// Fraction of points of height <= B whose surface is everywhere locally soluble.
/// Counts are combined by integer addition, so the result is thread-count independent.
EmpiricalDensity empirical_sigma(Family family, std::int64_t B, unsigned threads = 1,
                                 const ProgressFn& progress = {});

}  // namespace els
