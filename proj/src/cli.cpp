#include "els/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "els/cubic_density.hpp"
#include "els/cubic_local.hpp"
#include "els/enumeration.hpp"
#include "els/errors.hpp"
#include "els/format.hpp"
#include "els/point_search.hpp"
#include "els/quartic.hpp"
#include "els/report.hpp"
#include "els/transversality.hpp"

namespace els::cli {

namespace {

constexpr double kCubicLiteratureValue = 0.860564;
constexpr double kQuarticLiteratureValue = 0.24;
constexpr std::uint64_t kFullEulerLimit = 100'000;
constexpr std::uint64_t kPredictionSamples = 100'000;
constexpr std::uint64_t kSigmaInftySamples = 1'000'000;

// Argument problems detected after parsing (non-prime modulus, zero coefficient).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string out_path;
    std::string csv_path;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    bool json = true;
};

std::uint64_t require_prime(std::uint64_t p) {
    if (!is_prime_naive(p)) throw UsageError("--prime must be a prime, got " + std::to_string(p));
    return p;
}

CoeffVec require_coeffs(const std::vector<std::int64_t>& c, bool allow_zero) {
    if (c.size() != 4) throw UsageError("--coeffs needs exactly four integers a,b,c,d");
    CoeffVec a{c[0], c[1], c[2], c[3]};
    if (!allow_zero && std::any_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; }))
        throw UsageError("--coeffs must all be nonzero for a local test");
    if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; }))
        throw UsageError("--coeffs must not all be zero");
    return a;
}

Json coeffs_json(const CoeffVec& a) {
    Json j = Json::array();
    for (auto x : a) j.push_back(x);
    return j;
}

Json witness_json(const Soluble& s) {
    Json w = Json::array();
    for (auto x : s.witness) w.push_back(x);
    Json j = Json::object();
    j["witness"] = w;
    j["value_valuation"] = s.value_valuation;
    j["derivative_valuation"] = s.derivative_valuation;
    j["certificate_verified"] = verify_certificate(s);
    return j;
}

std::string csv_field(const Json& v) {
    std::string s;
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_number_float())
        s = shortest(v.get<double>());
    else
        s = v.dump();
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// One header row and one value row built from the scalar fields of results.
std::string scalar_csv(const Json& results) {
    std::string header, row;
    for (const auto& [key, value] : results.items()) {
        if (value.is_structured()) continue;
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += csv_field(key);
        row += csv_field(value);
    }
    return header + "\r\n" + row + "\r\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

ProgressFn progress_printer(std::ostream& err) {
    return [&err](std::uint64_t done, std::uint64_t total) {
        if (done == total || done % std::max<std::uint64_t>(1, total / 20) == 0)
            err << "progress: " << done << "/" << total << " slabs\n" << std::flush;
    };
}

// ---- cubic ----

DensityReport cubic_exact_density(std::uint64_t p, const Globals& g) {
    DensityReport r = make_report("cubic exact-density", g.seed);
    r.parameters["prime"] = p;
    const LocalDensity d = sigma_p_cubic(p);
    r.results = to_json(d);
    Json classes = Json::array();
    if (p % 3 != 2) {
        for (int i = 1; i <= 5; ++i) {
            Json c = Json::object();
            c["class"] = i;
            c["A"] = rational_json(A_coeff(p, i));
            c["V"] = rational_json(V_coeff(p, i));
            classes.push_back(c);
        }
    }
    r.results["classes"] = classes;
    r.results["closed_form_agrees"] = true;
    return r;
}

DensityReport cubic_euler_product(std::uint64_t limit, const Globals& g) {
    DensityReport r = make_report("cubic euler-product", g.seed);
    r.parameters["limit"] = limit;
    const EulerProductReport e = euler_product_cubic(limit, g.threads);
    r.results = to_json(e);
    r.results["literature_value"] = kCubicLiteratureValue;
    r.results["difference_from_literature"] = e.partial_product - kCubicLiteratureValue;
    return r;
}

DensityReport cubic_local_test(const CoeffVec& a, std::uint64_t p, const Globals& g) {
    DensityReport r = make_report("cubic local-test", g.seed);
    r.parameters["coeffs"] = coeffs_json(a);
    r.parameters["prime"] = p;
    const bool soluble = cubic_soluble_at(a, p);
    const NormalizedCubic n = normalize_cubic(a, p);
    r.results["soluble"] = soluble;
    r.results["valuation_class"] = static_cast<int>(n.cls);
    Json units = Json::array();
    for (auto u : n.units) units.push_back(u);
    r.results["normalized_units"] = units;

    Json check = Json::object();
    try {
        const SearchResult s = search_diagonal(3, a, p);
        check["nodes"] = s.nodes;
        if (is_exhausted(s.verdict)) {
            check["verdict"] = "exhausted";
        } else {
            const bool search_soluble = is_soluble(s.verdict);
            check["verdict"] = search_soluble ? "soluble" : "insoluble";
            if (search_soluble) check["certificate"] = witness_json(std::get<Soluble>(s.verdict));
            if (search_soluble != soluble)
                throw ConsistencyError("criterion and point search disagree at p = " + std::to_string(p));
        }
    } catch (const std::domain_error&) {
        check["verdict"] = "skipped";
        check["reason"] = "p^depth exceeds the search modulus range";
    }
    r.results["search_cross_check"] = check;
    return r;
}

DensityReport cubic_global_test(const CoeffVec& input, const Globals& g) {
    DensityReport r = make_report("cubic global-test", g.seed);
    r.parameters["coeffs"] = coeffs_json(input);
    std::int64_t d = 0;
    for (auto x : input) d = std::gcd(d, x < 0 ? -x : x);
    CoeffVec a = input;
    for (auto& x : a) x /= d;
    std::int64_t m = 1;
    for (auto x : a) m = std::max(m, x < 0 ? -x : x);
    const PrimeTable table(static_cast<std::uint32_t>(std::clamp<std::int64_t>(m, 100, 1'000'000)));
    const ElsResult e = cubic_els(a, table);
    r.results["primitive_coeffs"] = coeffs_json(a);
    const bool cone = std::any_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
    r.results["cone"] = cone;
    r.results["soluble"] = e.soluble;
    Json tested = Json::array();
    if (!cone)
        for (auto p : cubic_relevant_primes(a, table)) tested.push_back(p);
    r.results["tested_primes"] = tested;
    Json failing = Json::array();
    for (auto p : e.failing_primes) failing.push_back(p);
    r.results["failing_primes"] = failing;
    return r;
}

DensityReport cubic_empirical(std::int64_t B, const Globals& g, std::ostream& err) {
    DensityReport r = make_report("cubic empirical", g.seed);
    r.parameters["height"] = B;
    const EmpiricalDensity e = empirical_sigma(Family::cubic, B, g.threads, progress_printer(err));
    r.results = to_json(e);

    mpq_class truncated = 1;
    const PrimeTable table(static_cast<std::uint32_t>(std::max<std::int64_t>(B, 10)));
    for (auto p : table.primes()) {
        if (p > static_cast<std::uint64_t>(B)) break;
        truncated *= sigma_p_cubic(p).value;
    }
    const EulerProductReport full = euler_product_cubic(kFullEulerLimit, g.threads);
    Json pred = Json::object();
    pred["product_primes_up_to_height"] = rational_json(truncated);
    pred["product_primes_up_to_height_float"] = truncated.get_d();
    pred["euler_product_limit"] = kFullEulerLimit;
    pred["euler_product"] = full.partial_product;
    pred["literature_value"] = kCubicLiteratureValue;
    r.results["prediction"] = pred;
    r.results["difference_from_literature"] = e.fraction - kCubicLiteratureValue;
    return r;
}

// ---- quartic ----

DensityReport quartic_mc_density(std::uint64_t p, std::uint64_t samples, const Globals& g) {
    DensityReport r = make_report("quartic mc-density", g.seed);
    r.parameters["prime"] = p;
    r.parameters["samples"] = samples;
    r.parameters["seed"] = g.seed;
    r.results = to_json(mc_sigma_p_quartic(p, samples, g.seed, g.threads));
    return r;
}

DensityReport quartic_local_test(const CoeffVec& a, std::uint64_t p, const Globals& g) {
    DensityReport r = make_report("quartic local-test", g.seed);
    r.parameters["coeffs"] = coeffs_json(a);
    r.parameters["prime"] = p;
    const PadicDiagonal form = diagonal_from_integers(4, a, p);
    SearchResult s{Exhausted{0}, 0};
    std::uint64_t budget = 0;
    for (auto b : kQuarticBudgets) {
        budget = b;
        s = search_diagonal(form, b);
        if (!is_exhausted(s.verdict)) break;
    }
    if (is_exhausted(s.verdict))
        throw UndecidedError("quartic local test undecided at p = " + std::to_string(p));
    r.results["soluble"] = is_soluble(s.verdict);
    r.results["nodes"] = s.nodes;
    r.results["node_budget"] = budget;
    Json vals = Json::array();
    for (auto v : form.val) vals.push_back(v);
    r.results["normalized_valuations"] = vals;
    if (is_soluble(s.verdict)) r.results["certificate"] = witness_json(std::get<Soluble>(s.verdict));
    return r;
}

// Fraction of uniform points of [-1,1]^4, on the odd midpoints of a 2^32 grid, whose
// quartic has a nonzero real point.
Json sigma_infty_oracle(std::uint64_t samples, std::uint64_t seed) {
    constexpr std::uint64_t kGrid = 1ull << 32;
    std::uint64_t soluble = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        CoeffVec a{};
        for (int k = 0; k < 4; ++k)
            a[k] = 2 * static_cast<std::int64_t>(sample_below(kGrid, seed, i, 0x5100 + k)) -
                   static_cast<std::int64_t>(kGrid - 1);
        if (quartic_soluble_real(a)) ++soluble;
    }
    const double f = static_cast<double>(soluble) / static_cast<double>(samples);
    Json j = Json::object();
    j["samples"] = samples;
    j["real_soluble_fraction"] = f;
    j["standard_error"] = std::sqrt(f * (1 - f) / static_cast<double>(samples));
    return j;
}

Json archimedean_note(const ArchimedeanDensity& a) {
    std::ostringstream s;
    s << "real density computed over [-1,1]^4 is " << a.mixed_sign_fraction.get_str()
      << " (" << a.soluble_patterns << " of " << a.total_patterns
      << " sign patterns mixed); the quoted archimedean factor is " << a.stated_value.get_str();
    return s.str();
}

DensityReport quartic_sigma_infty(const Globals& g) {
    DensityReport r = make_report("quartic sigma-infty", g.seed);
    const ArchimedeanDensity a = sigma_infty_quartic();
    r.results = to_json(a);
    r.results["monte_carlo"] = sigma_infty_oracle(kSigmaInftySamples, g.seed);
    r.results["note"] = archimedean_note(a);
    return r;
}

DensityReport quartic_empirical(std::int64_t B, const Globals& g, std::ostream& err) {
    DensityReport r = make_report("quartic empirical", g.seed);
    r.parameters["height"] = B;
    const EmpiricalDensity e = empirical_sigma(Family::quartic, B, g.threads, progress_printer(err));
    r.results = to_json(e);

    const std::int64_t bound = std::max<std::int64_t>(23, B);
    const PrimeTable table(static_cast<std::uint32_t>(std::max<std::int64_t>(bound, 10)));
    Json locals = Json::array();
    double product = 1.0;
    for (auto p : table.primes()) {
        if (p > static_cast<std::uint64_t>(bound)) break;
        const McEstimate m = mc_sigma_p_quartic(p, kPredictionSamples, g.seed, g.threads);
        Json row = Json::object();
        row["prime"] = p;
        row["soluble_fraction"] = m.soluble_fraction;
        row["standard_error"] = m.standard_error;
        locals.push_back(row);
        product *= m.soluble_fraction;
    }
    const ArchimedeanDensity a = sigma_infty_quartic();
    Json pred = Json::object();
    pred["local_densities"] = locals;
    pred["product_local_densities"] = product;
    pred["with_computed_real_density"] = product * a.mixed_sign_fraction.get_d();
    pred["with_stated_real_density"] = product * a.stated_value.get_d();
    pred["literature_value"] = kQuarticLiteratureValue;
    r.results["prediction"] = pred;
    r.results["difference_from_literature"] = e.fraction - kQuarticLiteratureValue;
    r.results["archimedean_discrepancy"] = archimedean_note(a);
    return r;
}

// ---- sieve ----

DensityReport sieve_transversality(const SieveConfig& config, const std::string& f_text,
                                   const std::string& g_text, const Globals& g, std::string* csv) {
    DensityReport r = make_report("sieve transversality", g.seed);
    Json heights = Json::array();
    for (auto b : config.heights) heights.push_back(b);
    r.parameters["heights"] = heights;
    r.parameters["min_prime"] = config.M;
    r.parameters["f"] = f_text;
    r.parameters["g"] = g_text;
    r.parameters["samples"] = config.samples;
    r.parameters["exact_limit"] = config.exact_point_limit;
    const DecayTable t = failure_counts(config, g.threads);
    r.results = to_json(t);
    bool decreasing = true;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double v = t.rows[i].fraction_times_log_B;
        if (i == 0) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (i > 0 && !(t.rows[i].fraction < t.rows[i - 1].fraction)) decreasing = false;
    }
    r.results["strictly_decreasing"] = decreasing;
    r.results["fraction_times_logB_ratio"] = lo > 0 ? hi / lo : 0.0;
    *csv = decay_table_csv(t);
    return r;
}

std::vector<std::int64_t> parse_heights(const std::vector<std::int64_t>& h) {
    if (h.empty()) throw UsageError("--heights needs at least one value");
    for (auto b : h)
        if (b < 1) throw UsageError("--heights must be positive");
    return h;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local solubility densities of diagonal cubic and quartic surfaces", "elsdensity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Globals g;
    app.add_option("--out", g.out_path, "Write the JSON report to PATH instead of stdout");
    app.add_option("--csv", g.csv_path, "Also write a CSV table to PATH");
    app.add_option("--threads", g.threads, "Worker threads, 0 = all cores (never changes output)")
        ->check(CLI::Range(0u, 1024u));
    app.add_option("--seed", g.seed, "Seed of the counter-based generator");
    app.add_flag("--json", g.json, "Emit JSON (the default and only report format)");

    std::uint64_t prime = 0, limit = 0, samples = 0;
    std::int64_t height = 0;
    std::vector<std::int64_t> coeffs;

    auto add_prime = [&](CLI::App* s) { s->add_option("--prime", prime, "Prime p")->required(); };
    auto add_coeffs = [&](CLI::App* s) {
        s->add_option("--coeffs", coeffs, "Coefficients a,b,c,d")->required()->delimiter(',')->allow_extra_args(false);
    };
    auto add_height = [&](CLI::App* s) {
        s->add_option("--height", height, "Height bound B")->required()->check(CLI::Range(1, 100000));
    };

    CLI::App* cubic = app.add_subcommand("cubic", "Diagonal cubic surfaces");
    cubic->require_subcommand(1);
    CLI::App* c_exact = cubic->add_subcommand("exact-density", "Exact local density sigma_p");
    add_prime(c_exact);
    CLI::App* c_euler = cubic->add_subcommand("euler-product", "Euler product of local densities");
    c_euler->add_option("--limit", limit, "Largest prime included")->required()->check(CLI::Range(3ull, 1ull << 31));
    CLI::App* c_local = cubic->add_subcommand("local-test", "Q_p-solubility of one surface");
    add_coeffs(c_local);
    add_prime(c_local);
    CLI::App* c_global = cubic->add_subcommand("global-test", "Everywhere local solubility");
    add_coeffs(c_global);
    CLI::App* c_emp = cubic->add_subcommand("empirical", "Soluble share among points of bounded height");
    add_height(c_emp);

    CLI::App* quartic = app.add_subcommand("quartic", "Diagonal quartic surfaces");
    quartic->require_subcommand(1);
    CLI::App* q_mc = quartic->add_subcommand("mc-density", "Monte Carlo local density sigma_p");
    add_prime(q_mc);
    q_mc->add_option("--samples", samples, "Number of samples")->required()->check(CLI::Range(1000ull, 1ull << 40));
    CLI::App* q_local = quartic->add_subcommand("local-test", "Q_p-solubility of one surface");
    add_coeffs(q_local);
    add_prime(q_local);
    CLI::App* q_emp = quartic->add_subcommand("empirical", "Soluble share among points of bounded height");
    add_height(q_emp);
    CLI::App* q_inf = quartic->add_subcommand("sigma-infty", "Real density of the family");

    CLI::App* sieve = app.add_subcommand("sieve", "Large-sieve experiments");
    sieve->require_subcommand(1);
    CLI::App* s_trans = sieve->add_subcommand("transversality", "Decay of points without a transverse prime");
    std::vector<std::int64_t> heights;
    std::uint64_t min_prime = 0;
    std::string f_text = "X0*X1*X2*X3", g_text = "X0+X1+X2+X3";
    SieveConfig sieve_defaults;
    std::uint64_t sieve_samples = sieve_defaults.samples;
    std::uint64_t exact_limit = sieve_defaults.exact_point_limit;
    s_trans->add_option("--heights", heights, "Heights B1,B2,...")->required()->delimiter(',');
    s_trans->add_option("--min-prime", min_prime, "Transverse primes must exceed M")->required();
    s_trans->add_option("--f", f_text, "Form whose zero locus is the bad fibre divisor");
    s_trans->add_option("--g", g_text, "Form the transverse prime must not divide");
    s_trans->add_option("--samples", sieve_samples, "Points sampled per height above the exact limit")
        ->check(CLI::Range(1ull, 1ull << 40));
    s_trans->add_option("--exact-limit", exact_limit, "Enumerate heights with at most this many points");

    for (CLI::App* s : {cubic, quartic, sieve}) s->fallthrough();
    for (CLI::App* s : {c_exact, c_euler, c_local, c_global, c_emp, q_mc, q_local, q_emp, q_inf, s_trans})
        s->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        DensityReport report;
        std::string csv;
        if (*c_exact) {
            report = cubic_exact_density(require_prime(prime), g);
        } else if (*c_euler) {
            report = cubic_euler_product(limit, g);
        } else if (*c_local) {
            const CoeffVec a = require_coeffs(coeffs, false);
            report = cubic_local_test(a, require_prime(prime), g);
        } else if (*c_global) {
            report = cubic_global_test(require_coeffs(coeffs, true), g);
        } else if (*c_emp) {
            report = cubic_empirical(height, g, err);
        } else if (*q_mc) {
            report = quartic_mc_density(require_prime(prime), samples, g);
        } else if (*q_local) {
            const CoeffVec a = require_coeffs(coeffs, false);
            report = quartic_local_test(a, require_prime(prime), g);
        } else if (*q_emp) {
            report = quartic_empirical(height, g, err);
        } else if (*q_inf) {
            report = quartic_sigma_infty(g);
        } else if (*s_trans) {
            SieveConfig config;
            config.M = min_prime;
            try {
                config.f = Form::parse(f_text);
                config.g = Form::parse(g_text);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            config.heights = parse_heights(heights);
            config.samples = sieve_samples;
            config.exact_point_limit = exact_limit;
            config.seed = g.seed;
            report = sieve_transversality(config, f_text, g_text, g, &csv);
        }
        report.provenance["seed"] = g.seed;

        if (!g.csv_path.empty()) write_file(g.csv_path, csv.empty() ? scalar_csv(report.results) : csv);
        const std::string text = report.dump();
        if (g.out_path.empty())
            out << text << std::flush;
        else
            write_file(g.out_path, text);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const ConsistencyError& e) {
        err << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const UndecidedError& e) {
        err << "undecided: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "wall_time_s: " << shortest(seconds) << "\n";
    return kExitOk;
}

}  // namespace els::cli
