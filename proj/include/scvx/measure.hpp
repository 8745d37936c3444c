#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "scvx/measurable.hpp"
#include "scvx/partition.hpp"
#include "scvx/rinf.hpp"
#include "scvx/sequence.hpp"

namespace scvx {

/// A probability measure on a finite measurable space, stored as one weight
/// per sigma-atom.  P(U) is defined only for U in the sigma-algebra.
class Measure {
public:
    static Measure from_atom_weights(MSpacePtr sp, std::vector<Scalar> w) {
        if (!sp) throw ValidationError("Measure: null space");
        if (w.size() != sp->atoms().size())
            throw ValidationError("Measure: one weight per sigma-atom required");
        Scalar sum(0);
        bool all_exact = true;
        for (const Scalar& x : w) {
            if (x.sign() < 0) throw ValidationError("Measure: negative weight");
            all_exact = all_exact && x.exact();
            sum += x;
        }
        if (all_exact) {
            if (sum != Scalar(1)) throw ValidationError("Measure: weights must sum to 1");
        } else if ((sum - Scalar(1)).abs() > Scalar::ratio(1, 1000000000000)) {
            throw ValidationError("Measure: weights must sum to 1 within 1e-12");
        }
        Measure m;
        m.sp_ = std::move(sp);
        m.w_ = std::move(w);
        return m;
    }

    const MSpacePtr& space() const { return sp_; }
    const std::vector<Scalar>& atom_weights() const { return w_; }

    Scalar operator()(std::uint64_t set_mask) const {
        if (!sp_->in_sigma(set_mask))
            throw ValidationError("Measure: set not in sigma-algebra " +
                                  sp_->set_str(set_mask));
        Scalar acc(0);
        const auto& atoms = sp_->atoms();
        for (std::size_t k = 0; k < atoms.size(); ++k)
            if ((atoms[k] & set_mask) == atoms[k]) acc += w_[k];
        return acc;
    }

    friend bool operator==(const Measure& a, const Measure& b) {
        return *a.sp_ == *b.sp_ && a.w_ == b.w_;
    }
    friend bool operator!=(const Measure& a, const Measure& b) { return !(a == b); }

    bool is_dirac() const {
        for (const Scalar& x : w_)
            if (!x.is_zero() && x != Scalar(1)) return false;
        return true;
    }

    std::string str() const {
        std::string out = "[";
        for (std::size_t k = 0; k < w_.size(); ++k) {
            if (k) out += " ";
            out += sp_->set_str(sp_->atoms()[k]) + "=" + w_[k].str();
        }
        return out + "]";
    }

private:
    MSpacePtr sp_;
    std::vector<Scalar> w_;
};

/// Dirac measure at a carrier point: delta_x(U) = 1 iff x in U.
inline Measure dirac(MSpacePtr sp, const std::string& label) {
    std::size_t i = sp->index_of(label);
    std::vector<Scalar> w(sp->atoms().size(), Scalar(0));
    w[sp->atom_of(i)] = Scalar(1);
    return Measure::from_atom_weights(std::move(sp), std::move(w));
}

/// Measurable map between finite measurable spaces, given pointwise on the
/// carrier.  Construction verifies that every measurable set pulls back to
/// a measurable set.
class MeasurableMap {
public:
    MeasurableMap(MSpacePtr dom, MSpacePtr cod, std::vector<std::size_t> table)
        : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
        if (table_.size() != dom_->size())
            throw ValidationError("MeasurableMap: table must cover the carrier");
        for (std::size_t y : table_)
            if (y >= cod_->size()) throw ValidationError("MeasurableMap: target out of range");
        for (std::uint64_t v : cod_->sigma()) {
            std::uint64_t pre = preimage(v);
            if (!dom_->in_sigma(pre))
                throw NotMeasurable("preimage of " + cod_->set_str(v) +
                                    " is not measurable: " + dom_->set_str(pre));
        }
    }

    std::uint64_t preimage(std::uint64_t v) const {
        std::uint64_t pre = 0;
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (v & (1ull << table_[i])) pre |= 1ull << i;
        return pre;
    }

    std::size_t operator()(std::size_t i) const { return table_[i]; }
    const MSpacePtr& domain() const { return dom_; }
    const MSpacePtr& codomain() const { return cod_; }

private:
    MSpacePtr dom_, cod_;
    std::vector<std::size_t> table_;
};

/// (P f^{-1})(V) = P(f^{-1} V).
inline Measure pushforward(const MeasurableMap& f, const Measure& P) {
    if (!(*P.space() == *f.domain())) throw SpaceMismatch("pushforward: wrong domain");
    const auto& atoms = f.codomain()->atoms();
    std::vector<Scalar> w;
    w.reserve(atoms.size());
    for (std::uint64_t a : atoms) w.push_back(P(f.preimage(a)));
    return Measure::from_atom_weights(f.codomain(), std::move(w));
}

/// Componentwise mixture of measures over a common space.  A geometric
/// partition is truncated at the end of the list with its exact tail mass
/// reassigned to the last listed measure, keeping total mass exactly 1.
inline Measure measure_mix(const PartitionOfOne& alpha, const std::vector<Measure>& Ps) {
    if (Ps.empty()) throw ValidationError("measure_mix: empty list");
    const MSpacePtr& sp = Ps.front().space();
    for (const Measure& P : Ps)
        if (!(*P.space() == *sp)) throw SpaceMismatch("measure_mix: space mismatch");
    std::size_t n_atoms = sp->atoms().size();
    std::vector<Scalar> w(n_atoms, Scalar(0));
    auto add = [&](const Scalar& c, const Measure& P) {
        for (std::size_t k = 0; k < n_atoms; ++k) w[k] += c * P.atom_weights()[k];
    };
    if (alpha.is_geometric()) {
        std::uint32_t n = static_cast<std::uint32_t>(Ps.size());
        for (std::uint32_t i = 1; i < n; ++i) add(alpha.weight(i), Ps[i - 1]);
        add(alpha.weight(n) + alpha.tail_mass(n), Ps[n - 1]);
    } else {
        for (const auto& e : alpha.entries()) {
            if (e.index > Ps.size())
                throw ValidationError("measure_mix: support index beyond list");
            add(e.weight, Ps[e.index - 1]);
        }
    }
    return Measure::from_atom_weights(sp, std::move(w));
}

/// An RInf-valued measurable function: one value per sigma-atom.
class MeasurableFn {
public:
    MeasurableFn(MSpacePtr sp, std::vector<RInf> atom_values)
        : sp_(std::move(sp)), v_(std::move(atom_values)) {
        if (v_.size() != sp_->atoms().size())
            throw ValidationError("MeasurableFn: one value per sigma-atom required");
    }

    /// Characteristic function of a measurable set.
    static MeasurableFn indicator(MSpacePtr sp, std::uint64_t set_mask) {
        if (!sp->in_sigma(set_mask))
            throw ValidationError("indicator: set not measurable");
        std::vector<RInf> v;
        for (std::uint64_t a : sp->atoms())
            v.push_back((a & set_mask) == a ? RInf(1) : RInf(0));
        return MeasurableFn(std::move(sp), std::move(v));
    }

    static MeasurableFn constant(MSpacePtr sp, RInf c) {
        std::vector<RInf> v(sp->atoms().size(), c);
        return MeasurableFn(std::move(sp), std::move(v));
    }

    const MSpacePtr& space() const { return sp_; }
    const RInf& at_atom(std::size_t k) const { return v_[k]; }
    std::size_t n_atoms() const { return v_.size(); }

private:
    MSpacePtr sp_;
    std::vector<RInf> v_;
};

/// Integral of f against P, with the 0 * inf = 0 convention: atoms of
/// weight zero contribute nothing even where f is infinite.
inline RInf integrate(const MeasurableFn& f, const Measure& P) {
    if (!(*f.space() == *P.space())) throw SpaceMismatch("integrate: space mismatch");
    Scalar acc(0);
    for (std::size_t k = 0; k < f.n_atoms(); ++k) {
        const Scalar& w = P.atom_weights()[k];
        if (w.sign() <= 0) continue;
        if (f.at_atom(k).is_inf()) return RInf::infinity();
        acc += w * f.at_atom(k).value();
    }
    return RInf::finite(acc);
}

/// A finitely supported measure on measures: the domain of the monad
/// multiplication.
class MetaMeasure {
public:
    MetaMeasure(std::vector<std::pair<Measure, Scalar>> support)
        : support_(std::move(support)) {
        if (support_.empty()) throw ValidationError("MetaMeasure: empty support");
        Scalar sum(0);
        for (const auto& [P, w] : support_) {
            if (!(*P.space() == *support_.front().first.space()))
                throw SpaceMismatch("MetaMeasure: measures over different spaces");
            if (w.sign() < 0) throw ValidationError("MetaMeasure: negative weight");
            sum += w;
        }
        if (sum != Scalar(1)) throw ValidationError("MetaMeasure: weights must sum to 1");
    }

    const std::vector<std::pair<Measure, Scalar>>& support() const { return support_; }
    const MSpacePtr& base_space() const { return support_.front().first.space(); }

private:
    std::vector<std::pair<Measure, Scalar>> support_;
};

/// Monad multiplication: mu(Pi)(U) = sum_j w_j P_j(U).
inline Measure multiply(const MetaMeasure& Pi) {
    const MSpacePtr& sp = Pi.base_space();
    std::vector<Scalar> w(sp->atoms().size(), Scalar(0));
    for (const auto& [P, c] : Pi.support())
        for (std::size_t k = 0; k < w.size(); ++k) w[k] += c * P.atom_weights()[k];
    return Measure::from_atom_weights(sp, std::move(w));
}

/// The functional side of the phi isomorphism: values on all characteristic
/// functions chi_U, U in the sigma-algebra.
struct FunctionalTable {
    MSpacePtr space;
    std::map<std::uint64_t, Scalar> values;  // keyed by set mask

    const Scalar& at(std::uint64_t U) const {
        auto it = values.find(U);
        if (it == values.end())
            throw ValidationError("FunctionalTable: no value for " + space->set_str(U));
        return it->second;
    }
};

/// phi(P)(chi_U) = P(U).
inline FunctionalTable phi(const Measure& P) {
    FunctionalTable t;
    t.space = P.space();
    for (std::uint64_t U : P.space()->sigma()) t.values[U] = P(U);
    return t;
}

/// Inverse: a weakly averaging, additive functional on characteristic
/// functions determines a measure via (phi^{-1} J)(U) = J(chi_U).
inline Measure phi_inv(const FunctionalTable& J) {
    const MSpacePtr& sp = J.space;
    if (!J.at(0).is_zero())
        throw NotWeaklyAveraging("J(chi_emptyset) = " + J.at(0).str() + ", expected 0");
    if (J.at(sp->full_mask()) != Scalar(1))
        throw NotWeaklyAveraging("J(chi_carrier) = " + J.at(sp->full_mask()).str() +
                                 ", expected 1");
    for (const auto& [U, v] : J.values) {
        if (!sp->in_sigma(U))
            throw ValidationError("FunctionalTable: set not measurable");
        if (v.sign() < 0 || v > Scalar(1))
            throw NotWeaklyAveraging("J(chi_" + sp->set_str(U) + ") outside [0,1]");
    }
    // additivity across disjoint measurable sets
    for (std::uint64_t U : sp->sigma())
        for (std::uint64_t V : sp->sigma()) {
            if (U & V) continue;
            if (J.at(U | V) != J.at(U) + J.at(V))
                throw NotAdditive("J(chi_" + sp->set_str(U | V) + ") != J(chi_" +
                                  sp->set_str(U) + ") + J(chi_" + sp->set_str(V) + ")");
        }
    std::vector<Scalar> w;
    for (std::uint64_t a : sp->atoms()) w.push_back(J.at(a));
    return Measure::from_atom_weights(sp, std::move(w));
}

/// Dyadic simple-function approximation psi_n of a [0,1]-valued function:
/// coefficient k/2^n on the cell where k/2^n <= value < (k+1)/2^n.
class SimpleFunction {
public:
    SimpleFunction(std::uint32_t level, std::vector<std::uint32_t> ks)
        : level_(level), ks_(std::move(ks)) {
        for (std::uint32_t k : ks_)
            if (k > (1u << level_)) throw ValidationError("SimpleFunction: coefficient > 1");
    }

    std::uint32_t level() const { return level_; }
    Scalar value_at_atom(std::size_t i) const {
        return Scalar::ratio(ks_[i], 1u << level_);
    }
    std::size_t n_atoms() const { return ks_.size(); }

    MeasurableFn as_fn(MSpacePtr sp) const {
        std::vector<RInf> v;
        for (std::size_t i = 0; i < ks_.size(); ++i)
            v.push_back(RInf(value_at_atom(i)));
        return MeasurableFn(std::move(sp), std::move(v));
    }

private:
    std::uint32_t level_;
    std::vector<std::uint32_t> ks_;
};

inline SimpleFunction simple_approx(const MeasurableFn& m, std::uint32_t n) {
    if (n == 0 || n > 30) throw ValidationError("simple_approx: level out of range");
    std::vector<std::uint32_t> ks;
    Scalar scale(static_cast<long long>(1u << n));
    for (std::size_t i = 0; i < m.n_atoms(); ++i) {
        const RInf& v = m.at_atom(i);
        if (v.is_inf() || v.value().sign() < 0 || v.value() > Scalar(1))
            throw OutOfRange("simple_approx: values must lie in [0,1]");
        Scalar scaled = v.value() * scale;
        std::uint32_t k;
        if (scaled.exact()) {
            Rational r = scaled.rat();
            Rational fl = boost::multiprecision::numerator(r) /
                          boost::multiprecision::denominator(r);  // floor for r >= 0
            k = fl.convert_to<std::uint32_t>();
        } else {
            k = static_cast<std::uint32_t>(std::floor(scaled.to_double()));
        }
        ks.push_back(k);
    }
    return SimpleFunction(n, std::move(ks));
}

}  // namespace scvx
