#pragma once

#include <complex>
#include <span>
#include <vector>

#include "radop/multi_index.hpp"

namespace radop {

// Finite Laurent coefficient map: f(z) = sum c_alpha z^alpha. Terms are kept
// in canonical order with zero coefficients dropped, so equality of maps is
// equality of polynomials.
class LaurentPoly {
public:
    using Term = std::pair<MultiIndex, std::complex<double>>;

    explicit LaurentPoly(int dim = 1) : dim_(dim) {}
    static LaurentPoly monomial(const MultiIndex& alpha,
                                std::complex<double> c = {1.0, 0.0});
    static LaurentPoly from_terms(int dim, std::vector<Term> terms);

    int dim() const noexcept { return dim_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    std::span<const Term> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    std::complex<double> coefficient(const MultiIndex& alpha) const;
    void set_coefficient(const MultiIndex& alpha, std::complex<double> c);

    // max_j |alpha_j| over the support (0 for the zero polynomial)
    int sup_degree() const noexcept;
    bool has_negative_exponent() const noexcept;

    // Evaluation sum c_alpha z^alpha; negative exponents divide and
    // therefore require z_j != 0 on those axes.
    std::complex<double> eval(std::span<const std::complex<double>> z) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly scaled(std::complex<double> c) const;

    bool operator==(const LaurentPoly& o) const;

    // sup over terms of |coefficient difference|
    static double coeff_distance(const LaurentPoly& a, const LaurentPoly& b);

private:
    int dim_;
    std::vector<Term> terms_; // canonical order, nonzero
};

// z^alpha for a single point (negative exponents divide).
std::complex<double> complex_power(std::span<const std::complex<double>> z,
                                   const MultiIndex& alpha);

} // namespace radop
