#pragma once

#include <string>

#include "scvx/scalar.hpp"

namespace scvx {

/// The extended real line (-inf, inf].  The single point at infinity absorbs
/// under any convex combination that gives it positive weight.
class RInf {
public:
    RInf() : inf_(false), v_(0) {}

    static RInf infinity() {
        RInf r;
        r.inf_ = true;
        return r;
    }
    static RInf finite(const Scalar& s) {
        RInf r;
        r.v_ = s;
        return r;
    }
    RInf(int n) : inf_(false), v_(n) {}
    RInf(const Scalar& s) : inf_(false), v_(s) {}

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }

    const Scalar& value() const {
        if (inf_) throw ValidationError("RInf: value() on infinity");
        return v_;
    }

    friend bool operator==(const RInf& a, const RInf& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const RInf& a, const RInf& b) { return !(a == b); }

    friend RInf operator+(const RInf& a, const RInf& b) {
        if (a.inf_ || b.inf_) return infinity();
        return finite(a.v_ + b.v_);
    }

    /// Reflection u -> -u; maps infinity to infinity.
    RInf negate() const { return inf_ ? infinity() : finite(-v_); }

    std::string str() const { return inf_ ? "inf" : v_.str(); }

private:
    bool inf_;
    Scalar v_;
};

/// w * u for a weight w >= 0.  A zero weight annihilates even infinity
/// (the 0 * inf = 0 convention of the integral).
inline RInf rinf_scale(const Scalar& w, const RInf& u) {
    if (w.sign() < 0) throw ValidationError("rinf_scale: negative weight");
    if (w.is_zero()) return RInf::finite(Scalar(0));
    if (u.is_inf()) return RInf::infinity();
    return RInf::finite(w * u.value());
}

inline bool rinf_approx_eq(const RInf& a, const RInf& b, const Scalar& tol) {
    if (a.is_inf() || b.is_inf()) return a.is_inf() == b.is_inf();
    return approx_eq(a.value(), b.value(), tol);
}

}  // namespace scvx
