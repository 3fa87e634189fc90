#include "radop/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace radop {

std::complex<double> complex_power(std::span<const std::complex<double>> z,
                                   const MultiIndex& alpha) {
    if (static_cast<int>(z.size()) != alpha.dim())
        throw DimensionMismatch("complex_power dimension mismatch");
    std::complex<double> v{1.0, 0.0};
    for (int j = 0; j < alpha.dim(); ++j) {
        const int e = alpha[j];
        const std::complex<double> zj = z[static_cast<std::size_t>(j)];
        if (e == 0) continue;
        std::complex<double> base = e > 0 ? zj : (std::complex<double>{1.0, 0.0} / zj);
        int k = e > 0 ? e : -e;
        std::complex<double> acc{1.0, 0.0};
        while (k > 0) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        v *= acc;
    }
    return v;
}

LaurentPoly LaurentPoly::monomial(const MultiIndex& alpha, std::complex<double> c) {
    LaurentPoly f(alpha.dim());
    f.set_coefficient(alpha, c);
    return f;
}

LaurentPoly LaurentPoly::from_terms(int dim, std::vector<Term> terms) {
    LaurentPoly f(dim);
    for (auto& [alpha, c] : terms) f.set_coefficient(alpha, f.coefficient(alpha) + c);
    return f;
}

std::complex<double> LaurentPoly::coefficient(const MultiIndex& alpha) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MultiIndex& m) {
                                   return graded_less(t.first, m);
                               });
    if (it != terms_.end() && it->first == alpha) return it->second;
    return {0.0, 0.0};
}

void LaurentPoly::set_coefficient(const MultiIndex& alpha, std::complex<double> c) {
    if (alpha.dim() != dim_) throw DimensionMismatch("coefficient index dimension mismatch");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MultiIndex& m) {
                                   return graded_less(t.first, m);
                               });
    const bool present = it != terms_.end() && it->first == alpha;
    if (c == std::complex<double>{0.0, 0.0}) {
        if (present) terms_.erase(it);
        return;
    }
    if (present)
        it->second = c;
    else
        terms_.insert(it, {alpha, c});
}

int LaurentPoly::sup_degree() const noexcept {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, t.first.sup_norm());
    return d;
}

bool LaurentPoly::has_negative_exponent() const noexcept {
    for (const Term& t : terms_)
        for (int j = 0; j < dim_; ++j)
            if (t.first[j] < 0) return true;
    return false;
}

std::complex<double> LaurentPoly::eval(std::span<const std::complex<double>> z) const {
    std::complex<double> v{0.0, 0.0};
    for (const Term& t : terms_) v += t.second * complex_power(z, t.first);
    return v;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimension mismatch");
    LaurentPoly out = *this;
    for (const Term& t : o.terms_) out.set_coefficient(t.first, out.coefficient(t.first) + t.second);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimension mismatch");
    LaurentPoly out = *this;
    for (const Term& t : o.terms_) out.set_coefficient(t.first, out.coefficient(t.first) - t.second);
    return out;
}

LaurentPoly LaurentPoly::scaled(std::complex<double> c) const {
    LaurentPoly out(dim_);
    if (c == std::complex<double>{0.0, 0.0}) return out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.second *= c;
    return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
}

double LaurentPoly::coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
    double d = 0.0;
    for (const Term& t : a.terms_) d = std::max(d, std::abs(t.second - b.coefficient(t.first)));
    for (const Term& t : b.terms_) d = std::max(d, std::abs(t.second - a.coefficient(t.first)));
    return d;
}

} // namespace radop
