#include "radop/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace radop {

namespace {

double abs_sq(Complex v) { return v.real() * v.real() + v.imag() * v.imag(); }

DecayClass stronger(DecayClass a, DecayClass b) {
    // vanishing > bounded-no-decay > unknown
    auto rank = [](DecayClass d) {
        switch (d) {
        case DecayClass::VanishingAtInfinity:
            return 2;
        case DecayClass::BoundedNoDecay:
            return 1;
        case DecayClass::Unknown:
            return 0;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

DecayClass weaker(DecayClass a, DecayClass b) { return stronger(a, b) == a ? b : a; }

} // namespace

Symbol Symbol::finite(int dim, std::map<std::vector<int>, Complex> entries) {
    Symbol s;
    s.kind_ = Kind::Finite;
    s.dim_ = dim;
    s.decay_ = DecayClass::VanishingAtInfinity; // finite support certainly vanishes
    for (auto& [alpha, v] : entries) {
        if (static_cast<int>(alpha.size()) != dim)
            throw DimensionMismatch("finite symbol entry dimension mismatch");
        if (v != Complex{0.0, 0.0}) s.entries_.emplace_back(MultiIndex(std::span<const int>(alpha)), v);
    }
    // stable_sort: the introsort heap path trips a gcc 11 maybe-uninitialized
    // false positive through the comparator inlining
    std::stable_sort(s.entries_.begin(), s.entries_.end(),
                     [](const auto& a, const auto& b) { return graded_less(a.first, b.first); });
    return s;
}

Symbol Symbol::closed_form(int dim, std::function<Complex(const MultiIndex&)> eval,
                           DecayClass decay, std::string name) {
    if (!eval) throw PreconditionError("closed-form symbol needs an evaluator");
    Symbol s;
    s.kind_ = Kind::ClosedForm;
    s.dim_ = dim;
    s.decay_ = decay;
    s.eval_ = std::move(eval);
    s.name_ = std::move(name);
    return s;
}

Symbol Symbol::sampled(const IndexBox& box, std::vector<Complex> values,
                       SampledExtension extension) {
    if (values.size() != box.count())
        throw PreconditionError("sampled symbol needs one value per box entry");
    Symbol s;
    s.kind_ = Kind::Sampled;
    s.dim_ = box.dim;
    s.decay_ = extension == SampledExtension::ZeroExtend ? DecayClass::VanishingAtInfinity
                                                         : DecayClass::Unknown;
    s.box_ = box;
    s.values_ = std::move(values);
    s.extension_ = extension;
    return s;
}

Symbol Symbol::one(int dim) {
    return closed_form(
        dim, [](const MultiIndex&) { return Complex{1.0, 0.0}; }, DecayClass::BoundedNoDecay,
        "one");
}

Symbol Symbol::reciprocal_succ(int dim) {
    return closed_form(
        dim,
        [](const MultiIndex& m) {
            return Complex{1.0 / (static_cast<double>(m.sup_norm()) + 1.0), 0.0};
        },
        DecayClass::VanishingAtInfinity, "reciprocal-succ");
}

Symbol Symbol::indicator(const IndexSet& support) {
    std::map<std::vector<int>, Complex> entries;
    for (const MultiIndex& m : support.members()) entries[m.to_vector()] = Complex{1.0, 0.0};
    Symbol s = finite(support.dim(), std::move(entries));
    s.name_ = "indicator";
    return s;
}

Complex Symbol::value(const MultiIndex& alpha) const {
    if (alpha.dim() != dim_) throw DimensionMismatch("symbol index dimension mismatch");
    switch (kind_) {
    case Kind::Finite: {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), alpha,
                                   [](const auto& e, const MultiIndex& m) {
                                       return graded_less(e.first, m);
                                   });
        if (it != entries_.end() && it->first == alpha) return it->second;
        return {0.0, 0.0};
    }
    case Kind::ClosedForm:
        return eval_(alpha);
    case Kind::Sampled: {
        if (box_->contains(alpha)) {
            // box order = canonical mixed-radix order used by IndexBox::at
            const std::uint64_t side = 2ull * static_cast<std::uint64_t>(box_->bound) + 1ull;
            std::uint64_t k = 0;
            for (int j = 0; j < dim_; ++j)
                k = k * side + static_cast<std::uint64_t>(alpha[j] + box_->bound);
            return values_[k];
        }
        if (extension_ == SampledExtension::ZeroExtend) return {0.0, 0.0};
        throw OutOfRange("sampled symbol queried at " + alpha.to_string() + " outside its box");
    }
    }
    return {0.0, 0.0};
}

const std::vector<std::pair<MultiIndex, Complex>>& Symbol::finite_entries() const {
    if (kind_ != Kind::Finite) throw PreconditionError("finite_entries() on non-finite symbol");
    return entries_;
}

const IndexBox& Symbol::sampled_box() const {
    if (kind_ != Kind::Sampled) throw PreconditionError("sampled_box() on non-sampled symbol");
    return *box_;
}

const std::vector<Complex>& Symbol::sampled_values() const {
    if (kind_ != Kind::Sampled) throw PreconditionError("sampled_values() on non-sampled symbol");
    return values_;
}

SupNormReport sup_norm(const Symbol& s, const IndexSet& probe) {
    if (probe.empty()) throw PreconditionError("sup_norm needs a nonempty probe");
    if (probe.dim() != s.dim()) throw DimensionMismatch("probe dimension mismatch");
    SupNormReport report;
    switch (s.kind()) {
    case Symbol::Kind::Finite: {
        for (const auto& [alpha, v] : s.finite_entries())
            report.value_sq = std::max(report.value_sq, abs_sq(v));
        report.exact = true;
        break;
    }
    case Symbol::Kind::Sampled: {
        if (s.sampled_extension() == SampledExtension::ZeroExtend) {
            for (Complex v : s.sampled_values()) report.value_sq = std::max(report.value_sq, abs_sq(v));
            report.exact = true;
        } else {
            for (const MultiIndex& m : probe.members())
                report.value_sq = std::max(report.value_sq, abs_sq(s.value(m)));
            report.exact = false; // values beyond the box are undefined
        }
        break;
    }
    case Symbol::Kind::ClosedForm: {
        for (const MultiIndex& m : probe.members())
            report.value_sq = std::max(report.value_sq, abs_sq(s.value(m)));
        report.exact = (s.decay() == DecayClass::VanishingAtInfinity);
        break;
    }
    }
    report.value = std::sqrt(report.value_sq);
    return report;
}

Symbol lift_binary(const Symbol& a, const Symbol& b, const char* what,
                   std::function<Complex(Complex, Complex)> op, DecayClass decay) {
    if (a.dim() != b.dim())
        throw IncompatibleIndexSets(std::string(what) + ": symbol dimensions differ");
    const bool a_err = a.kind() == Symbol::Kind::Sampled && a.extension_ == SampledExtension::Error;
    const bool b_err = b.kind() == Symbol::Kind::Sampled && b.extension_ == SampledExtension::Error;
    if (a_err || b_err) {
        if (!(a_err && b_err) || !(a.sampled_box().bound == b.sampled_box().bound))
            throw IncompatibleIndexSets(std::string(what) +
                                        ": error-extended sampled symbols need matching boxes");
    }

    if (a.kind() == Symbol::Kind::Finite && b.kind() == Symbol::Kind::Finite) {
        std::map<std::vector<int>, Complex> entries;
        for (const auto& [alpha, v] : a.finite_entries())
            entries[alpha.to_vector()] = op(v, {0.0, 0.0});
        for (const auto& [alpha, v] : b.finite_entries())
            entries[alpha.to_vector()] = op(a.value(alpha), v);
        return Symbol::finite(a.dim(), std::move(entries));
    }

    Symbol ca = a, cb = b;
    Symbol out = Symbol::closed_form(
        a.dim(), [ca, cb, op](const MultiIndex& m) { return op(ca.value(m), cb.value(m)); }, decay);
    return out;
}

Symbol lift_unary(const Symbol& s, std::function<Complex(Complex)> op, DecayClass decay,
                  const std::string& name) {
    if (s.kind() == Symbol::Kind::Finite) {
        std::map<std::vector<int>, Complex> entries;
        for (const auto& [alpha, v] : s.finite_entries()) entries[alpha.to_vector()] = op(v);
        return Symbol::finite(s.dim(), std::move(entries));
    }
    if (s.kind() == Symbol::Kind::Sampled) {
        std::vector<Complex> values = s.sampled_values();
        for (Complex& v : values) v = op(v);
        return Symbol::sampled(s.sampled_box(), std::move(values), s.sampled_extension());
    }
    Symbol cs = s;
    return Symbol::closed_form(
        s.dim(), [cs, op](const MultiIndex& m) { return op(cs.value(m)); }, decay, name);
}

Symbol pointwise_product(const Symbol& a, const Symbol& b) {
    // a product vanishes as soon as either factor does
    const DecayClass decay = stronger(a.decay(), b.decay());
    if (a.kind() == Symbol::Kind::Finite && b.kind() != Symbol::Kind::Finite) {
        std::map<std::vector<int>, Complex> entries;
        for (const auto& [alpha, v] : a.finite_entries()) entries[alpha.to_vector()] = v * b.value(alpha);
        return Symbol::finite(a.dim(), std::move(entries));
    }
    if (b.kind() == Symbol::Kind::Finite && a.kind() != Symbol::Kind::Finite) {
        std::map<std::vector<int>, Complex> entries;
        for (const auto& [alpha, v] : b.finite_entries()) entries[alpha.to_vector()] = a.value(alpha) * v;
        return Symbol::finite(b.dim(), std::move(entries));
    }
    return lift_binary(a, b, "pointwise_product",
                       [](Complex x, Complex y) { return x * y; }, decay);
}

Symbol pointwise_sum(const Symbol& a, const Symbol& b) {
    const DecayClass decay =
        (a.decay() == DecayClass::VanishingAtInfinity && b.decay() == DecayClass::VanishingAtInfinity)
            ? DecayClass::VanishingAtInfinity
            : weaker(a.decay(), b.decay());
    return lift_binary(a, b, "pointwise_sum", [](Complex x, Complex y) { return x + y; }, decay);
}

Symbol conjugate(const Symbol& s) {
    return lift_unary(s, [](Complex v) { return std::conj(v); }, s.decay(), s.name());
}

Symbol scale(Complex c, const Symbol& s) {
    return lift_unary(s, [c](Complex v) { return c * v; }, s.decay(), "");
}

OperatorClass classify_decay(const Symbol& s, const IndexSet& probe) {
    (void)probe;
    switch (s.kind()) {
    case Symbol::Kind::Finite:
        return OperatorClass::FiniteRank;
    case Symbol::Kind::Sampled:
        return s.sampled_extension() == SampledExtension::ZeroExtend ? OperatorClass::FiniteRank
                                                                     : OperatorClass::Unknown;
    case Symbol::Kind::ClosedForm:
        switch (s.decay()) {
        case DecayClass::VanishingAtInfinity:
            return OperatorClass::CompactCapable;
        case DecayClass::BoundedNoDecay:
            return OperatorClass::Neither;
        case DecayClass::Unknown:
            return OperatorClass::Unknown;
        }
    }
    return OperatorClass::Unknown;
}

std::optional<std::string> decay_contradiction(const Symbol& s, const IndexSet& probe) {
    if (s.kind() != Symbol::Kind::ClosedForm || probe.empty()) return std::nullopt;
    if (s.decay() != DecayClass::VanishingAtInfinity) return std::nullopt;
    // outer-shell values should not dominate the inner ones
    int max_sup = 0;
    for (const MultiIndex& m : probe.members()) max_sup = std::max(max_sup, m.sup_norm());
    if (max_sup < 4) return std::nullopt;
    double inner = 0.0, outer = 0.0;
    for (const MultiIndex& m : probe.members()) {
        const double v = std::abs(s.value(m));
        if (m.sup_norm() <= max_sup / 2)
            inner = std::max(inner, v);
        else
            outer = std::max(outer, v);
    }
    if (outer > 1.5 * inner + 1e-300)
        return "declared vanishing-at-infinity but outer-shell sup " + std::to_string(outer) +
               " exceeds inner sup " + std::to_string(inner);
    return std::nullopt;
}

} // namespace radop
