#include "els/point_search.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace els {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

int vp_small(std::uint64_t n, std::uint64_t p) { return n == 0 ? kInf : valuation(n, p); }

std::uint64_t binomial(int n, int r) {
    std::uint64_t c = 1;
    for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / i;
    return c;
}

class ResidueTree {
public:
    ResidueTree(const PadicDiagonal& form, std::uint64_t budget)
        : form_(form), d_(form.degree), p_(form.p), budget_(budget) {
        depth_ = completeness_depth(form_);
        if (form_.precision < depth_)
            throw std::invalid_argument("search_diagonal: unit precision below completeness depth");
        modulus_ = checked_pow(p_, depth_);
        if (modulus_ >= (std::uint64_t{1} << 61))
            throw std::domain_error("search_diagonal: p^N too large for residue arithmetic");
        for (int i = 0; i < 4; ++i) {
            coef_[i] = mul_mod(checked_pow(p_, form_.val[i]), form_.unit[i] % modulus_, modulus_);
        }
        vd_ = vp_small(static_cast<std::uint64_t>(d_), p_);
        for (int r = 1; r <= d_; ++r) vbinom_[r] = vp_small(binomial(d_, r), p_);
    }

    SearchResult run() {
        try {
            for (int j = 0; j < 4; ++j) {
                Node n;
                n.fixed = j;
                for (int i = 0; i < 4; ++i) {
                    n.x[i] = 0;
                    n.k[i] = i < j ? 1 : 0;
                }
                n.x[j] = 1;
                if (auto s = descend(n)) return {std::move(*s), nodes_};
            }
        } catch (const BudgetHit&) {
            return {Exhausted{nodes_}, nodes_};
        }
        return {Insoluble{}, nodes_};
    }

private:
    struct BudgetHit {};
    struct Node {
        std::array<std::uint64_t, 4> x;
        std::array<int, 4> k;
        int fixed;
    };

    // Least valuation of a_i((x + p^k y)^d - x^d) over y in Z_p.
    int move_valuation(int i, std::uint64_t x, int k) const {
        const int e = form_.val[i];
        if (x == 0) return e + d_ * k;
        const int t = vp_small(x, p_);
        int best = kInf;
        for (int r = 1; r <= d_; ++r) best = std::min(best, e + vbinom_[r] + (d_ - r) * t + r * k);
        return best;
    }

    std::optional<Verdict> descend(Node& n) {
        if (++nodes_ > budget_) throw BudgetHit{};

        std::uint64_t f = 0;
        for (int i = 0; i < 4; ++i) {
            f += mul_mod(coef_[i], pow_mod(n.x[i], static_cast<std::uint64_t>(d_), modulus_), modulus_);
        }
        f %= modulus_;
        const int vf = f == 0 ? depth_ : valuation(f, p_);

        int level = kInf;
        int refine = -1;
        for (int i = 0; i < 4; ++i) {
            if (i == n.fixed) continue;
            const int c = move_valuation(i, n.x[i], n.k[i]);
            if (c < level) {
                level = c;
                refine = i;
            }
        }
        if (vf < level) return std::nullopt;

        int deriv = kInf;
        for (int i = 0; i < 4; ++i) {
            if (n.x[i] == 0) continue;
            deriv = std::min(deriv, vd_ + form_.val[i] + (d_ - 1) * vp_small(n.x[i], p_));
        }
        if (vf > 2 * deriv) return Soluble{form_, n.x, vf, deriv};

        // vf >= level and level < depth_ here, so refine stays below p^depth_.
        const std::uint64_t step = checked_pow(p_, n.k[refine]);
        const std::uint64_t base = n.x[refine];
        ++n.k[refine];
        for (std::uint64_t digit = 0; digit < p_; ++digit) {
            n.x[refine] = base + digit * step;
            if (auto s = descend(n)) return s;
        }
        n.x[refine] = base;
        --n.k[refine];
        return std::nullopt;
    }

    PadicDiagonal form_;
    int d_;
    std::uint64_t p_;
    std::uint64_t budget_;
    int depth_ = 0;
    std::uint64_t modulus_ = 1;
    std::array<std::uint64_t, 4> coef_{};
    int vd_ = 0;
    std::array<int, 5> vbinom_{};
    std::uint64_t nodes_ = 0;
};

}  // namespace

PadicDiagonal normalize_diagonal(PadicDiagonal form) {
    if (form.degree != 3 && form.degree != 4)
        throw std::invalid_argument("diagonal forms must have degree 3 or 4");
    for (int& v : form.val) v %= form.degree;
    const int lowest = *std::min_element(form.val.begin(), form.val.end());
    for (int& v : form.val) v -= lowest;
    return form;
}

PadicDiagonal diagonal_from_integers(int degree, const CoeffVec& a, std::uint64_t p) {
    PadicDiagonal form;
    form.degree = degree;
    form.p = p;
    std::array<std::int64_t, 4> units{};
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0) throw std::invalid_argument("diagonal form has a zero coefficient");
        const ValUnit vu = val_and_unit(a[i], p);
        form.val[i] = vu.v;
        units[i] = vu.unit;
    }
    form = normalize_diagonal(form);
    // Integer units are exact; keep them mod p^N so residue arithmetic stays in range.
    form.precision = completeness_depth(form);
    const std::uint64_t modulus = checked_pow(p, form.precision);
    for (int i = 0; i < 4; ++i) form.unit[i] = reduce_mod(units[i], modulus);
    return form;
}

int completeness_depth(const PadicDiagonal& form) {
    const int vd = valuation(static_cast<std::uint64_t>(form.degree), form.p);
    const int emax = *std::max_element(form.val.begin(), form.val.end());
    return 2 * (vd + emax) + 1;
}

SearchResult search_diagonal(const PadicDiagonal& form, std::uint64_t node_budget) {
    if (node_budget == 0) throw std::invalid_argument("search_diagonal: node budget must be positive");
    return ResidueTree(normalize_diagonal(form), node_budget).run();
}

SearchResult search_diagonal(int degree, const CoeffVec& a, std::uint64_t p,
                             std::uint64_t node_budget) {
    return search_diagonal(diagonal_from_integers(degree, a, p), node_budget);
}

bool verify_certificate(const Soluble& s) {
    const PadicDiagonal& form = s.form;
    const std::uint64_t p = form.p;
    const int depth = completeness_depth(form);
    const std::uint64_t modulus = checked_pow(p, depth);

    bool primitive = false;
    for (std::uint64_t x : s.witness) primitive = primitive || (x % p != 0);
    if (!primitive) return false;

    std::uint64_t f = 0;
    int deriv = kInf;
    const auto d = static_cast<std::uint64_t>(form.degree);
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t coef = mul_mod(checked_pow(p, form.val[i]), form.unit[i] % modulus, modulus);
        f = (f + mul_mod(coef, pow_mod(s.witness[i], d, modulus), modulus)) % modulus;
        // dF/dx_i = d * a_i * x_i^{d-1}, evaluated as a residue and then valued.
        const std::uint64_t partial =
            mul_mod(mul_mod(d % modulus, coef, modulus), pow_mod(s.witness[i], d - 1, modulus), modulus);
        if (partial != 0) deriv = std::min(deriv, valuation(partial, p));
    }
    const int vf = f == 0 ? depth : valuation(f, p);
    return deriv < kInf && vf > 2 * deriv && vf == s.value_valuation && deriv == s.derivative_valuation;
}

}  // namespace els
