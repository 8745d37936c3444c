#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "scvx/space.hpp"

namespace scvx {

/// Closed-form countably affine maps into RInf, one variant per domain
/// space, plus constants which are affine everywhere.
class AffineMap {
public:
    /// u -> lambda * (reflect ? -u : u) + c on RInf; lambda >= 0, infinity is
    /// a fixed point of reflection.
    struct ScaleShift {
        Scalar lambda;
        RInf c;
        bool reflect = false;
    };
    /// On Disc(n): infinity below the threshold, constant c at or above it.
    struct Threshold {
        std::uint32_t t;
        RInf c;
    };
    /// On SemiDirect: constant on the losing side of the orbit threshold,
    /// infinity on the winning side.  Under max-wins the winning side is
    /// orbit >= t; under min-wins it is orbit < t.
    struct OrbitThreshold {
        std::uint32_t t;
        RInf c;
        OrbitOrder order;
    };
    /// On SemiDirect: a ScaleShift applied to r on the orbit that never wins
    /// a mixture (orbit 0 under max-wins, orbit n-1 under min-wins), and
    /// infinity on every other orbit.  Only that orbit admits non-constant
    /// affine maps: mixing it with any other orbit discards its r entirely,
    /// which the infinity value absorbs.
    struct LosingOrbitInner {
        ScaleShift inner;
        std::uint32_t losing_orbit;
    };
    /// On FinDist(X): P -> P(U).
    struct EvalSet {
        std::uint64_t set_mask;
    };
    /// On Product: a component map applied to one coordinate.
    struct CoordProj {
        std::size_t coord;
        std::shared_ptr<const AffineMap> component;
    };
    struct Constant {
        RInf c;
    };

    AffineMap(ScaleShift v) : v_(check(std::move(v))) {}
    AffineMap(Threshold v) : v_(std::move(v)) {}
    AffineMap(OrbitThreshold v) : v_(std::move(v)) {}
    AffineMap(LosingOrbitInner v) : v_(LosingOrbitInner{check(v.inner), v.losing_orbit}) {}
    AffineMap(EvalSet v) : v_(std::move(v)) {}
    AffineMap(CoordProj v) : v_(std::move(v)) {}
    AffineMap(Constant v) : v_(std::move(v)) {}

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(v_);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(v_);
    }
    template <typename Visitor>
    decltype(auto) visit(Visitor&& vis) const {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

    std::string str() const {
        return visit([](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaleShift>)
                return std::string(m.reflect ? "u -> " : "u -> ") + m.lambda.str() +
                       "*" + (m.reflect ? "(-u)" : "u") + " + " + m.c.str();
            else if constexpr (std::is_same_v<T, Threshold>)
                return "threshold(t=" + std::to_string(m.t) + ",c=" + m.c.str() + ")";
            else if constexpr (std::is_same_v<T, OrbitThreshold>)
                return "orbit-threshold(t=" + std::to_string(m.t) + ",c=" + m.c.str() +
                       ")";
            else if constexpr (std::is_same_v<T, LosingOrbitInner>)
                return "losing-orbit-inner(orbit=" + std::to_string(m.losing_orbit) +
                       ")";
            else if constexpr (std::is_same_v<T, EvalSet>)
                return "eval-set(" + std::to_string(m.set_mask) + ")";
            else if constexpr (std::is_same_v<T, CoordProj>)
                return "coord(" + std::to_string(m.coord) + "):" + m.component->str();
            else
                return "const(" + m.c.str() + ")";
        });
    }

private:
    static ScaleShift check(ScaleShift v) {
        if (v.lambda.sign() < 0)
            throw ValidationError("ScaleShift: lambda must be nonnegative");
        return v;
    }
    std::variant<ScaleShift, Threshold, OrbitThreshold, LosingOrbitInner, EvalSet,
                 CoordProj, Constant>
        v_;
};

inline RInf scale_shift_eval(const AffineMap::ScaleShift& m, const RInf& u) {
    RInf base = m.reflect ? u.negate() : u;
    RInf scaled = base.is_inf() ? (m.lambda.sign() > 0 ? RInf::infinity()
                                                       : RInf::finite(Scalar(0)))
                                : RInf::finite(m.lambda * base.value());
    return scaled + m.c;
}

inline RInf affine_eval(const AffineMap& m, const Point& a) {
    return m.visit([&](const auto& v) -> RInf {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AffineMap::ScaleShift>) {
            return scale_shift_eval(v, a.as<RInf>());
        } else if constexpr (std::is_same_v<T, AffineMap::Threshold>) {
            return a.as<std::uint32_t>() < v.t ? RInf::infinity() : v.c;
        } else if constexpr (std::is_same_v<T, AffineMap::OrbitThreshold>) {
            std::uint32_t o = a.as<Point::Semi>().orbit;
            bool winning = v.order == OrbitOrder::MaxWins ? o >= v.t : o < v.t;
            return winning ? RInf::infinity() : v.c;
        } else if constexpr (std::is_same_v<T, AffineMap::LosingOrbitInner>) {
            const auto& s = a.as<Point::Semi>();
            if (s.orbit != v.losing_orbit) return RInf::infinity();
            return scale_shift_eval(v.inner, s.r);
        } else if constexpr (std::is_same_v<T, AffineMap::EvalSet>) {
            return RInf::finite(a.as<Measure>()(v.set_mask));
        } else if constexpr (std::is_same_v<T, AffineMap::CoordProj>) {
            return affine_eval(*v.component, a.as<std::vector<Point>>()[v.coord]);
        } else {
            return v.c;
        }
    });
}

/// Countable extension of a finite-affine map on RInf: the value of
/// sum alpha_i m(v_i), which is m applied to the certified mix verdict.
/// Infinity when any positively weighted m(v_i) is infinite or when the
/// transformed partial sums have no finite limit; both cases coincide with
/// transforming the base verdict because m is monotone-affine (lambda >= 0)
/// up to the reflection sign, and a sign flip preserves "no finite limit".
inline MixResult extend_affine(const AffineMap::ScaleShift& m, const PartitionOfOne& alpha,
                               const RInfSeq& seq, const EvalPolicy& policy = {}) {
    if (m.lambda.is_zero()) return m.c;
    MixResult base = rinf_mix(alpha, seq, policy);
    if (!base) return std::nullopt;
    return scale_shift_eval(m, *base);
}

/// A finite separating family of countably affine maps into RInf.
inline std::vector<AffineMap> generator_family(const Space& sp) {
    return sp.visit([&](const auto& s) -> std::vector<AffineMap> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) {
            return {AffineMap(AffineMap::ScaleShift{Scalar(1), RInf(0), false}),
                    AffineMap(AffineMap::ScaleShift{Scalar(1), RInf(1), false}),
                    AffineMap(AffineMap::ScaleShift{Scalar(2), RInf(0), false}),
                    AffineMap(AffineMap::ScaleShift{Scalar(1), RInf(0), true})};
        } else if constexpr (std::is_same_v<T, Space::Disc>) {
            std::vector<AffineMap> out = {AffineMap(AffineMap::Constant{RInf(0)})};
            for (std::uint32_t t = 1; t < s.n; ++t)
                out.push_back(AffineMap(AffineMap::Threshold{t, RInf(0)}));
            return out;
        } else if constexpr (std::is_same_v<T, Space::SemiDirect>) {
            std::vector<AffineMap> out = {AffineMap(AffineMap::Constant{RInf(0)})};
            for (std::uint32_t t = 1; t < s.n; ++t)
                out.push_back(
                    AffineMap(AffineMap::OrbitThreshold{t, RInf(0), s.order}));
            std::uint32_t losing = s.order == OrbitOrder::MaxWins ? 0 : s.n - 1;
            out.push_back(AffineMap(AffineMap::LosingOrbitInner{
                AffineMap::ScaleShift{Scalar(1), RInf(0), false}, losing}));
            out.push_back(AffineMap(AffineMap::LosingOrbitInner{
                AffineMap::ScaleShift{Scalar(1), RInf(1), false}, losing}));
            return out;
        } else if constexpr (std::is_same_v<T, Space::Product>) {
            std::vector<AffineMap> out;
            for (std::size_t k = 0; k < s.factors.size(); ++k)
                for (AffineMap& m : generator_family(s.factors[k]))
                    out.push_back(AffineMap(AffineMap::CoordProj{
                        k, std::make_shared<AffineMap>(std::move(m))}));
            return out;
        } else if constexpr (std::is_same_v<T, Space::FinDist>) {
            std::vector<AffineMap> out;
            for (std::uint64_t U : s.base->sigma())
                out.push_back(AffineMap(AffineMap::EvalSet{U}));
            return out;
        } else {
            throw NoFamily("no finite coseparating family for " + sp.str());
        }
    });
}

}  // namespace scvx
