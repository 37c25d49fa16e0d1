#pragma once

// DensityReport: the JSON document every CLI subcommand emits.
//
//   { "command": ..., "parameters": {...}, "results": {...}, "provenance": {...} }
//
// Keys keep insertion order, exact rationals are {"num": "...", "den": "..."}
// decimal strings and doubles print as their shortest round-trip decimal.
// Nothing run-dependent (wall time, thread count) goes into the document, so an
// invocation reproduces its bytes exactly.

#include <gmpxx.h>

#include <json.hpp>
#include <string>

#include "els/cubic_density.hpp"
#include "els/enumeration.hpp"
#include "els/quartic.hpp"
#include "els/transversality.hpp"

namespace els {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "elsdensity";
inline constexpr const char* kToolVersion = "1.0.0";

Json rational_json(const mpq_class& q);
mpq_class rational_from_json(const Json& j);

struct DensityReport {
    std::string command;
    Json parameters = Json::object();
    Json results = Json::object();
    Json provenance = Json::object();

    Json to_json() const;
    static DensityReport from_json(const Json& j);
    std::string dump() const;  // two-space indent, trailing newline
};

DensityReport make_report(const std::string& command, std::uint64_t seed);

Json to_json(const LocalDensity& d);
Json to_json(const EulerProductReport& r);
Json to_json(const McEstimate& e);
Json to_json(const ArchimedeanDensity& d);
Json to_json(const EmpiricalDensity& e);
Json to_json(const DecayTable& t);

}  // namespace els
