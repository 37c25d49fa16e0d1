#include "els/cubic_density.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "els/errors.hpp"
#include "els/padic.hpp"
#include "els/parallel.hpp"

namespace els {

namespace {

void check_class(int i) {
    if (i < 1 || i > 5) throw std::out_of_range("valuation class index must be in 1..5");
}

mpq_class pow_q(const mpq_class& x, int n) {
    mpq_class r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Neumaier summation: exact enough that the final product does not depend on
// the rounding of ~10^5 small logarithms.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

mpq_class A_coeff(std::uint64_t p, int i) {
    check_class(i);
    if (p == 3) return i == 3 ? mpq_class(7, 9) : mpq_class(1);
    if (p % 3 == 1) {
        if (i == 4) return mpq_class(5, 9);
        if (i == 5) return mpq_class(1, 3);
    }
    return 1;
}

mpq_class V_coeff(std::uint64_t p, int i) {
    check_class(i);
    const mpq_class x(1, mpz_class(std::to_string(p)));
    const mpq_class prefactor = pow_q(1 - x, 4) / pow_q(1 - pow_q(x, 3), 4);
    mpq_class f;
    switch (i) {
        case 1: f = 1 + pow_q(x, 4) + pow_q(x, 8); break;
        case 2: f = 4 * (x + pow_q(x, 5) + pow_q(x, 6)); break;
        case 3: f = 4 * (pow_q(x, 2) + pow_q(x, 3) + pow_q(x, 7)); break;
        case 4: f = 6 * (pow_q(x, 2) + pow_q(x, 4) + pow_q(x, 6)); break;
        default: f = 12 * (pow_q(x, 3) + pow_q(x, 4) + pow_q(x, 5)); break;
    }
    mpq_class v = prefactor * f;
    v.canonicalize();
    return v;
}

mpq_class sigma_p_closed_form(std::uint64_t p) {
    if (p % 3 == 2) return 1;
    const mpq_class x(1, mpz_class(std::to_string(p)));
    const mpq_class prefactor = pow_q(1 - x, 3) / pow_q(1 - pow_q(x, 3), 3);
    mpq_class body;
    if (p == 3) {
        body = 1 + 3 * x + mpq_class(46, 9) * pow_q(x, 2) + 7 * pow_q(x, 3) +
               mpq_class(62, 9) * pow_q(x, 4) + mpq_class(19, 9) * pow_q(x, 5) + pow_q(x, 6);
    } else {
        body = (1 - x + pow_q(x, 2)) * (1 + x + mpq_class(1, 3) * pow_q(x, 2)) *
               (1 + 3 * x + 3 * pow_q(x, 2));
    }
    mpq_class s = prefactor * body;
    s.canonicalize();
    return s;
}

LocalDensity sigma_p_cubic(std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("sigma_p_cubic: p must be prime");
    mpq_class by_class = 0;
    for (int i = 1; i <= 5; ++i) by_class += A_coeff(p, i) * V_coeff(p, i);
    by_class.canonicalize();
    const mpq_class closed = sigma_p_closed_form(p);
    if (by_class != closed) {
        throw ConsistencyError("sigma_p routes disagree at p = " + std::to_string(p) + ": " +
                               by_class.get_str() + " vs " + closed.get_str());
    }
    return {p, by_class, by_class.get_d()};
}

EulerProductReport euler_product_cubic(std::uint64_t limit, unsigned threads) {
    if (limit < 3) throw std::invalid_argument("euler_product_cubic: limit must be >= 3");
    const PrimeTable table(static_cast<std::uint32_t>(limit));
    std::vector<std::uint64_t> primes;
    for (std::uint32_t q : table.primes())
        if (q == 3 || q % 3 == 1) primes.push_back(q);

    // log(sigma_p) = log1p(sigma_p - 1) with the deficit taken from the exact rational.
    std::vector<double> logs(primes.size());
    parallel_blocks(primes.size(), 64, resolve_threads(threads),
                    [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                        for (std::uint64_t i = begin; i < end; ++i) {
                            const LocalDensity s = sigma_p_cubic(primes[i]);
                            const mpq_class deficit = s.value - 1;
                            logs[i] = std::log1p(deficit.get_d());
                        }
                    });

    CompensatedSum total;
    double tenth = 1.0;
    bool tenth_set = false;
    const std::uint64_t tenth_limit = limit / 10;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!tenth_set && primes[i] > tenth_limit) {
            tenth = std::exp(total.value());
            tenth_set = true;
        }
        total.add(logs[i]);
    }
    const double product = std::exp(total.value());
    if (!tenth_set) tenth = product;

    EulerProductReport r;
    r.limit = limit;
    r.partial_product = product;
    r.factors = primes.size();
    r.tenth_product = tenth;
    r.tail_indicator = std::fabs(product - tenth);
    r.tail_bound = 9.0 / static_cast<double>(limit);
    return r;
}

}  // namespace els
