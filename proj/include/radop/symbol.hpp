#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radop/index_set.hpp"
#include "radop/multi_index.hpp"

namespace radop {

using Complex = std::complex<double>;

enum class DecayClass { VanishingAtInfinity, BoundedNoDecay, Unknown };

enum class SampledExtension { ZeroExtend, Error };

// The bounded sequence u-hat on the allowable set: the Fourier side of the
// inducing distribution. Only the coefficient sequence is ever represented.
class Symbol {
public:
    enum class Kind { Finite, ClosedForm, Sampled };

    static Symbol finite(int dim, std::map<std::vector<int>, Complex> entries);
    static Symbol closed_form(int dim, std::function<Complex(const MultiIndex&)> eval,
                              DecayClass decay, std::string name = "");
    static Symbol sampled(const IndexBox& box, std::vector<Complex> values,
                          SampledExtension extension);

    // builtins (CLI-visible names)
    static Symbol one(int dim);
    static Symbol reciprocal_succ(int dim); // 1 / (sup|alpha| + 1)
    static Symbol indicator(const IndexSet& support);

    Kind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    DecayClass decay() const noexcept { return decay_; }
    const std::string& name() const noexcept { return name_; }

    Complex value(const MultiIndex& alpha) const;

    // finite kind only: the nonzero entries in canonical order
    const std::vector<std::pair<MultiIndex, Complex>>& finite_entries() const;
    // sampled kind only
    const IndexBox& sampled_box() const;
    const std::vector<Complex>& sampled_values() const;
    SampledExtension sampled_extension() const { return extension_; }

private:
    Kind kind_ = Kind::Finite;
    int dim_ = 0;
    DecayClass decay_ = DecayClass::Unknown;
    std::string name_;
    std::vector<std::pair<MultiIndex, Complex>> entries_; // finite: sorted canonical
    std::function<Complex(const MultiIndex&)> eval_;      // closed-form
    std::optional<IndexBox> box_;                         // sampled
    std::vector<Complex> values_;                         // sampled, box order
    SampledExtension extension_ = SampledExtension::ZeroExtend;

    friend Symbol lift_binary(const Symbol&, const Symbol&, const char*,
                              std::function<Complex(Complex, Complex)>, DecayClass);
    friend Symbol lift_unary(const Symbol&, std::function<Complex(Complex)>, DecayClass,
                             const std::string&);
};

struct SupNormReport {
    double value = 0.0;
    double value_sq = 0.0; // max of |entry|^2 computed without sqrt
    bool exact = false;    // lower bound only when false
};

// Sup of |u-hat| over the probe; exact for finite and zero-extended sampled
// kinds, and for closed forms whose declared decay pins the tail.
SupNormReport sup_norm(const Symbol& s, const IndexSet& probe);

Symbol pointwise_product(const Symbol& a, const Symbol& b);
Symbol pointwise_sum(const Symbol& a, const Symbol& b);
Symbol conjugate(const Symbol& s);
Symbol scale(Complex c, const Symbol& s);

enum class OperatorClass { CompactCapable, FiniteRank, Neither, Unknown };

OperatorClass classify_decay(const Symbol& s, const IndexSet& probe);

// Heuristic probe-set check of a declared decay class; returns a message
// when the data contradicts the declaration.
std::optional<std::string> decay_contradiction(const Symbol& s, const IndexSet& probe);

} // namespace radop
