#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "scvx/barycenter.hpp"

namespace scvx {

/// An Eilenberg-Moore style structural rule: a map from finitely supported
/// distributions to points.  Either the barycenter of a space, or an
/// arbitrary table-like rule defined on a grid (nullopt = off-grid).
class AlgebraRule {
public:
    static AlgebraRule barycenter_of(Space sp) {
        AlgebraRule r(std::move(sp));
        r.fn_ = nullptr;
        return r;
    }

    static AlgebraRule table(Space sp,
                             std::function<std::optional<Point>(const PointDist&)> fn) {
        AlgebraRule r(std::move(sp));
        r.fn_ = std::move(fn);
        return r;
    }

    const Space& space() const { return sp_; }
    bool is_barycenter() const { return !fn_; }

    Point apply(const PointDist& P, const EvalPolicy& policy = {}) const {
        if (!(P.space() == sp_)) throw SpaceMismatch("AlgebraRule: wrong space");
        if (!fn_) return barycenter(P, policy);
        auto out = fn_(P);
        if (!out) throw GridMiss("AlgebraRule: no table entry for " + P.str());
        return *out;
    }

private:
    explicit AlgebraRule(Space sp) : sp_(std::move(sp)) {}
    Space sp_;
    std::function<std::optional<Point>(const PointDist&)> fn_;
};

/// The convex structure induced by an algebra rule: apply the rule to the
/// mixture of dirac distributions.
inline Point induced_mix(const AlgebraRule& h, const PartitionOfOne& alpha,
                         const PointSeq& xs, const EvalPolicy& policy = {}) {
    auto support = xs.weighted_support(alpha);
    return h.apply(PointDist(h.space(), std::move(support)), policy);
}

/// A countably affine, weakly averaging functional on the generator family
/// of a space: one RInf value per family member, validated against the
/// implemented RInf -> RInf actions at construction.
class GeneralizedPoint {
public:
    static GeneralizedPoint from_values(Space sp, std::vector<RInf> values) {
        GeneralizedPoint J(std::move(sp));
        J.family_ = generator_family(J.sp_);
        if (values.size() != J.family_.size())
            throw ValidationError("GeneralizedPoint: one value per family member");
        J.values_ = std::move(values);
        J.validate();
        return J;
    }

    static GeneralizedPoint ev(const Space& sp, const Point& a) {
        GeneralizedPoint J(sp);
        J.family_ = generator_family(sp);
        for (const AffineMap& m : J.family_) J.values_.push_back(affine_eval(m, a));
        J.validate();
        return J;
    }

    static GeneralizedPoint from_dist(const PointDist& P) {
        GeneralizedPoint J(P.space());
        J.family_ = generator_family(J.sp_);
        for (const AffineMap& m : J.family_) J.values_.push_back(integrate(m, P));
        J.validate();
        return J;
    }

    const Space& space() const { return sp_; }
    const std::vector<AffineMap>& family() const { return family_; }
    const RInf& value(std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

private:
    explicit GeneralizedPoint(Space sp) : sp_(std::move(sp)) {}

    /// Weak averaging (J of a constant is that constant) plus equivariance
    /// under the scale/shift/reflection actions relating family members.
    void validate() const {
        std::optional<RInf> identity_val;
        for (std::size_t k = 0; k < family_.size(); ++k) {
            const AffineMap& m = family_[k];
            if (m.is<AffineMap::Constant>() &&
                values_[k] != m.as<AffineMap::Constant>().c)
                throw ValidationError("GeneralizedPoint: J(const c) != c");
            if (m.is<AffineMap::ScaleShift>()) {
                const auto& s = m.as<AffineMap::ScaleShift>();
                if (s.lambda == Scalar(1) && s.c == RInf(0) && !s.reflect)
                    identity_val = values_[k];
            }
        }
        if (!identity_val) return;
        for (std::size_t k = 0; k < family_.size(); ++k) {
            if (!family_[k].is<AffineMap::ScaleShift>()) continue;
            const auto& s = family_[k].as<AffineMap::ScaleShift>();
            RInf expect = scale_shift_eval(s, *identity_val);
            if (values_[k] != expect)
                throw ValidationError(
                    "GeneralizedPoint: J not natural in the RInf actions: J(" +
                    family_[k].str() + ") = " + values_[k].str() + ", expected " +
                    expect.str());
        }
    }

    Space sp_;
    std::vector<AffineMap> family_;
    std::vector<RInf> values_;
};

namespace detail {

/// Exact Gaussian elimination for A w = b over the rationals; free
/// variables are pinned to zero.  Returns nullopt when inconsistent.
inline std::optional<std::vector<Scalar>> solve_exact(
    std::vector<std::vector<Scalar>> A, std::vector<Scalar> b, std::size_t n_vars) {
    std::size_t rows = A.size();
    std::size_t lead = 0;
    std::vector<std::size_t> pivot_col(rows, n_vars);
    for (std::size_t r = 0; r < rows && lead < n_vars; ++r) {
        std::size_t pr = r;
        while (pr < rows && A[pr][lead].is_zero()) ++pr;
        if (pr == rows) {
            --r;
            ++lead;
            continue;
        }
        std::swap(A[pr], A[r]);
        std::swap(b[pr], b[r]);
        Scalar inv = Scalar(1) / A[r][lead];
        for (auto& x : A[r]) x = x * inv;
        b[r] = b[r] * inv;
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == r || A[r2][lead].is_zero()) continue;
            Scalar f = A[r2][lead];
            for (std::size_t c = 0; c < n_vars; ++c) A[r2][c] -= f * A[r][c];
            b[r2] -= f * b[r];
        }
        pivot_col[r] = lead;
        ++lead;
    }
    std::vector<Scalar> w(n_vars, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) {
        bool all_zero = true;
        for (std::size_t c = 0; c < n_vars; ++c) all_zero = all_zero && A[r][c].is_zero();
        if (all_zero) {
            if (!b[r].is_zero()) return std::nullopt;
            continue;
        }
        if (pivot_col[r] < n_vars) w[pivot_col[r]] = b[r];
    }
    return w;
}

}  // namespace detail

/// Dirac extraction: find the unique carrier point realizing J, or classify
/// the failure.  NotDeterministic means an exact (non-Dirac) probability
/// vector over the carrier reproduces every J value; Inconsistent means
/// nothing on the carrier does.
inline Point resolve_generalized_point(const SubCarrier& carrier,
                                       const GeneralizedPoint& J) {
    if (!(carrier.space == J.space()))
        throw SpaceMismatch("resolve: carrier/functional space mismatch");
    const auto& fam = J.family();

    std::vector<Point> matches;
    for (const Point& a : carrier.points) {
        bool ok = true;
        for (std::size_t k = 0; k < fam.size() && ok; ++k)
            ok = affine_eval(fam[k], a) == J.value(k);
        if (ok) matches.push_back(a);
    }
    if (matches.size() == 1) return matches.front();
    if (matches.size() > 1)
        throw Inconsistent("resolve: family does not separate the carrier");

    // no atom matches: look for a spread-out measure with the same values
    std::size_t n = carrier.points.size();
    std::vector<bool> alive(n, true);
    for (std::size_t k = 0; k < fam.size(); ++k) {
        if (J.value(k).is_inf()) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (affine_eval(fam[k], carrier.points[i]).is_inf()) alive[i] = false;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) idx.push_back(i);
    if (idx.empty()) throw Inconsistent("resolve: no carrier point fits the finite values");

    std::vector<std::vector<Scalar>> A;
    std::vector<Scalar> b;
    A.push_back(std::vector<Scalar>(idx.size(), Scalar(1)));
    b.push_back(Scalar(1));
    for (std::size_t k = 0; k < fam.size(); ++k) {
        if (J.value(k).is_inf()) continue;
        std::vector<Scalar> row;
        for (std::size_t i : idx)
            row.push_back(affine_eval(fam[k], carrier.points[i]).value());
        A.push_back(std::move(row));
        b.push_back(J.value(k).value());
    }
    auto w = detail::solve_exact(std::move(A), std::move(b), idx.size());
    if (!w) throw Inconsistent("resolve: constraint system has no solution");
    for (const Scalar& x : *w)
        if (x.sign() < 0) throw Inconsistent("resolve: solution is not a measure");
    // infinite values must be witnessed by positive mass on an infinite atom
    for (std::size_t k = 0; k < fam.size(); ++k) {
        if (!J.value(k).is_inf()) continue;
        bool witnessed = false;
        for (std::size_t j = 0; j < idx.size() && !witnessed; ++j)
            witnessed = (*w)[j].sign() > 0 &&
                        affine_eval(fam[k], carrier.points[idx[j]]).is_inf();
        if (!witnessed)
            throw Inconsistent("resolve: infinite value unreachable on the carrier");
    }
    throw NotDeterministic("resolve: J is realized by a non-Dirac measure over " +
                           std::to_string(idx.size()) + " carrier points");
}

}  // namespace scvx
