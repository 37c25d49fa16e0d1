#include "els/transversality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "els/format.hpp"
#include "els/parallel.hpp"

namespace els {

namespace {

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

class FormParser {
public:
    explicit FormParser(const std::string& text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }

    std::vector<Monomial> parse() {
        if (src_.empty()) fail("empty form");
        std::vector<Monomial> terms;
        bool first = true;
        while (pos_ < src_.size()) {
            std::int64_t sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Monomial m = term();
            m.coefficient *= sign;
            terms.push_back(m);
            first = false;
        }
        return terms;
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char get() { return src_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("form parse error at position " + std::to_string(pos_) + ": " + what);
    }

    std::int64_t integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail("number too large");
            v = v * 10 + (get() - '0');
        }
        return v;
    }

    Monomial term() {
        Monomial m{1, {0, 0, 0, 0}};
        for (;;) {
            const char c = peek();
            if (c == 'X' || c == 'x') {
                get();
                const char idx = peek();
                if (idx < '0' || idx > '3') fail("variable index must be 0..3");
                get();
                int exponent = 1;
                if (peek() == '^') {
                    get();
                    exponent = static_cast<int>(integer());
                }
                m.exponents[idx - '0'] += exponent;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                m.coefficient *= integer();
            } else {
                fail("expected a variable or a number");
            }
            if (peek() != '*') break;
            get();
        }
        return m;
    }

    std::string src_;
    std::size_t pos_ = 0;
};

// Primes above M in |n| with their exponents, for every 1 <= n <= limit.
class LargePrimeFactors {
public:
    LargePrimeFactors(std::int64_t limit, std::uint64_t M, const PrimeTable& table) : lists_(limit + 1) {
        for (std::int64_t n = 2; n <= limit; ++n) {
            for (const auto& [q, e] : table.factor(static_cast<std::uint64_t>(n))) {
                if (q > M) lists_[n].emplace_back(q, e);
            }
        }
    }
    const std::vector<std::pair<std::uint64_t, int>>& of(std::int64_t n) const { return lists_[abs64(n)]; }

private:
    std::vector<std::vector<std::pair<std::uint64_t, int>>> lists_;
};

// Evaluates the transverse-prime test quickly when f is a monomial and
// coordinates stay within a precomputed range; otherwise defers to the definition.
class TransverseTester {
public:
    TransverseTester(const SieveConfig& c, std::int64_t max_coord, const PrimeTable& table)
        : config_(c), table_(table) {
        if (c.f.is_monomial()) {
            factors_.emplace(max_coord, c.M, table);
            coef_ = c.f.terms().front().coefficient;
            exps_ = c.f.terms().front().exponents;
            if (coef_ != 0) {
                for (const auto& [q, e] : table.factor(static_cast<std::uint64_t>(abs64(coef_)))) {
                    if (q > c.M) coef_factors_.emplace_back(q, e);
                }
            }
        }
    }

    bool transverse(const CoeffVec& x) const {
        if (!factors_ || coef_ == 0) {
            return has_transverse_prime(ProjPoint{x, 0}, config_.M, config_.f, config_.g, table_).transverse;
        }
        for (int i = 0; i < 4; ++i)
            if (exps_[i] > 0 && x[i] == 0) return false;
        // Total exponent of each large prime in f(x); at most a handful of entries.
        std::array<std::pair<std::uint64_t, int>, 32> acc;
        int used = 0;
        auto add = [&](std::uint64_t q, int e) {
            for (int k = 0; k < used; ++k) {
                if (acc[k].first == q) {
                    acc[k].second += e;
                    return;
                }
            }
            acc[used++] = {q, e};
        };
        for (const auto& [q, e] : coef_factors_) add(q, e);
        for (int i = 0; i < 4; ++i) {
            if (exps_[i] == 0) continue;
            for (const auto& [q, e] : factors_->of(x[i])) add(q, e * exps_[i]);
        }
        bool have_candidate = false;
        for (int k = 0; k < used; ++k) have_candidate = have_candidate || acc[k].second == 1;
        if (!have_candidate) return false;
        const std::int64_t gv = config_.g.evaluate(x);
        for (int k = 0; k < used; ++k) {
            if (acc[k].second == 1 && gv % static_cast<std::int64_t>(acc[k].first) != 0) return true;
        }
        return false;
    }

private:
    const SieveConfig& config_;
    const PrimeTable& table_;
    std::optional<LargePrimeFactors> factors_;
    std::int64_t coef_ = 0;
    std::array<int, 4> exps_{};
    std::vector<std::pair<std::uint64_t, int>> coef_factors_;
};

}  // namespace

Form::Form(std::vector<Monomial> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("Form: no terms");
}

Form Form::parse(const std::string& text) { return Form(FormParser(text).parse()); }

std::int64_t Form::evaluate(const CoeffVec& x) const {
    __int128 total = 0;
    constexpr __int128 bound = static_cast<__int128>(1) << 100;
    for (const Monomial& m : terms_) {
        __int128 v = m.coefficient;
        for (int i = 0; i < 4; ++i) {
            for (int e = 0; e < m.exponents[i]; ++e) {
                v *= x[i];
                if (v > bound || v < -bound) throw std::overflow_error("form value overflows");
            }
        }
        total += v;
    }
    if (total > std::numeric_limits<std::int64_t>::max() || total < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("form value overflows int64");
    return static_cast<std::int64_t>(total);
}

std::string Form::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const Monomial& m : terms_) {
        std::int64_t c = m.coefficient;
        if (!first) {
            out << (c < 0 ? " - " : " + ");
            c = abs64(c);
        } else if (c < 0) {
            out << "-";
            c = abs64(c);
        }
        first = false;
        bool wrote = false;
        const bool has_vars = m.exponents != std::array<int, 4>{0, 0, 0, 0};
        if (c != 1 || !has_vars) {
            out << c;
            wrote = true;
        }
        for (int i = 0; i < 4; ++i) {
            if (m.exponents[i] == 0) continue;
            if (wrote) out << "*";
            out << "X" << i;
            if (m.exponents[i] > 1) out << "^" << m.exponents[i];
            wrote = true;
        }
    }
    return out.str();
}

Form coordinate_product_form() { return Form(std::vector<Monomial>{{1, {1, 1, 1, 1}}}); }

Form coordinate_sum_form() {
    return Form(std::vector<Monomial>{{1, {1, 0, 0, 0}}, {1, {0, 1, 0, 0}}, {1, {0, 0, 1, 0}}, {1, {0, 0, 0, 1}}});
}

TransverseResult has_transverse_prime(const ProjPoint& x, std::uint64_t M, const Form& f, const Form& g,
                                      const PrimeTable& table) {
    TransverseResult r;
    const std::int64_t fv = f.evaluate(x.coords);
    if (fv == 0) {
        r.degenerate = true;
        return r;
    }
    const std::int64_t gv = g.evaluate(x.coords);
    for (const auto& [q, e] : table.factor(static_cast<std::uint64_t>(abs64(fv)))) {
        if (q <= M || e != 1) continue;
        if (gv % static_cast<std::int64_t>(q) != 0) {
            r.transverse = true;
            r.prime = q;
            return r;
        }
    }
    return r;
}

CoeffVec sample_projective_point(std::int64_t B, std::uint64_t seed, std::uint64_t index) {
    if (B < 1) throw std::invalid_argument("sample_projective_point: B must be >= 1");
    const auto side = static_cast<std::uint64_t>(2 * B + 1);
    for (std::uint64_t attempt = 0;; ++attempt) {
        CoeffVec x;
        std::int64_t g = 0;
        for (int i = 0; i < 4; ++i) {
            x[i] = static_cast<std::int64_t>(sample_below(side, seed, index, attempt * 4 + i)) - B;
            g = std::gcd(g, abs64(x[i]));
        }
        if (g != 1) continue;
        // x and -x name the same point; keep the canonical sign.
        const std::int64_t lead = x[0] != 0 ? x[0] : x[1] != 0 ? x[1] : x[2] != 0 ? x[2] : x[3];
        if (lead < 0)
            for (auto& c : x) c = -c;
        return x;
    }
}

DecayTable failure_counts(const SieveConfig& config, unsigned threads) {
    if (config.heights.empty()) throw std::invalid_argument("failure_counts: no heights");
    if (!std::is_sorted(config.heights.begin(), config.heights.end()) || config.heights.front() < 1)
        throw std::invalid_argument("failure_counts: heights must be positive and ascending");
    const std::int64_t max_b = config.heights.back();
    const PrimeTable table(static_cast<std::uint32_t>(std::max<std::int64_t>(1'000'000, max_b)));
    const TransverseTester tester(config, max_b, table);
    const unsigned workers = resolve_threads(threads);

    DecayTable out;
    for (std::int64_t B : config.heights) {
        DecayRow row{};
        row.B = B;
        const std::uint64_t expected_total = projective_count(B);
        if (expected_total <= config.exact_point_limit) {
            const std::uint64_t slabs = slab_count(B);
            std::vector<std::uint64_t> totals(slabs, 0), fails(slabs, 0);
            parallel_blocks(slabs, slabs, workers, [&](std::uint64_t s, std::uint64_t, std::uint64_t) {
                enum_projective_slab(B, static_cast<std::int64_t>(s), [&](const ProjPoint& pt) {
                    ++totals[s];
                    if (!tester.transverse(pt.coords)) ++fails[s];
                });
            });
            row.total = std::accumulate(totals.begin(), totals.end(), std::uint64_t{0});
            row.failures = std::accumulate(fails.begin(), fails.end(), std::uint64_t{0});
            row.fraction = static_cast<double>(row.failures) / static_cast<double>(row.total);
            row.exact = true;
        } else {
            constexpr std::uint64_t kBlocks = 256;
            std::vector<std::uint64_t> fails(kBlocks, 0);
            // Each height gets its own counter stream.
            const std::uint64_t seed = counter_hash(config.seed, static_cast<std::uint64_t>(B), 0x5eed);
            parallel_blocks(config.samples, kBlocks, workers,
                            [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                                for (std::uint64_t i = begin; i < end; ++i) {
                                    if (!tester.transverse(sample_projective_point(B, seed, i))) ++fails[b];
                                }
                            });
            const std::uint64_t failed = std::accumulate(fails.begin(), fails.end(), std::uint64_t{0});
            const double frac = static_cast<double>(failed) / static_cast<double>(config.samples);
            row.total = expected_total;
            row.fraction = frac;
            row.failures = static_cast<std::uint64_t>(std::llround(frac * static_cast<double>(expected_total)));
            row.exact = false;
            row.sampled_points = config.samples;
            row.standard_error = std::sqrt(frac * (1.0 - frac) / static_cast<double>(config.samples));
        }
        row.fraction_times_log_B = row.fraction * std::log(static_cast<double>(B));
        out.rows.push_back(row);
    }

    double num = 0.0, den = 0.0;
    for (const DecayRow& r : out.rows) {
        if (r.B < 2) continue;
        const double inv = 1.0 / std::log(static_cast<double>(r.B));
        num += r.fraction * inv;
        den += inv * inv;
    }
    out.fitted_constant = den > 0 ? num / den : 0.0;
    return out;
}

std::string decay_table_csv(const DecayTable& table) {
    std::ostringstream out;
    out << "B,total,failures,fraction,fraction_times_logB\r\n";
    for (const DecayRow& r : table.rows) {
        out << r.B << ',' << r.total << ',' << r.failures << ',' << shortest(r.fraction) << ',' << shortest(r.fraction_times_log_B)
            << "\r\n";
    }
    return out.str();
}

}  // namespace els
