#pragma once

#include <utility>
#include <vector>

#include "scvx/affine.hpp"

namespace scvx {

/// A finitely supported probability distribution over the points of a
/// space; the desk-scale stand-in for a measure on the space itself.
class PointDist {
public:
    PointDist(Space sp, std::vector<std::pair<Point, Scalar>> support)
        : sp_(std::move(sp)), support_(std::move(support)) {
        if (support_.empty()) throw ValidationError("PointDist: empty support");
        Scalar sum(0);
        for (const auto& [p, w] : support_) {
            if (!point_in_space(sp_, p))
                throw SpaceMismatch("PointDist: point outside space");
            if (w.sign() < 0) throw ValidationError("PointDist: negative weight");
            sum += w;
        }
        bool exact = true;
        for (const auto& [p, w] : support_) exact = exact && w.exact();
        if (exact) {
            if (sum != Scalar(1))
                throw ValidationError("PointDist: weights must sum to 1");
        } else if ((sum - Scalar(1)).abs() > Scalar::ratio(1, 1000000000000)) {
            throw ValidationError("PointDist: weights must sum to 1 within 1e-12");
        }
    }

    static PointDist dirac(Space sp, Point p) {
        return PointDist(std::move(sp), {{std::move(p), Scalar(1)}});
    }

    const Space& space() const { return sp_; }
    const std::vector<std::pair<Point, Scalar>>& support() const { return support_; }

    bool is_dirac() const {
        Scalar top(0);
        for (const auto& [p, w] : support_)
            if (w > top) top = w;
        return top == Scalar(1);
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (i) out += " + ";
            out += support_[i].second.str() + "*" + support_[i].first.str();
        }
        return out;
    }

private:
    Space sp_;
    std::vector<std::pair<Point, Scalar>> support_;
};

/// Integral of an affine map against a point distribution, with the
/// 0 * inf = 0 convention.
inline RInf integrate(const AffineMap& m, const PointDist& P) {
    Scalar acc(0);
    for (const auto& [p, w] : P.support()) {
        if (w.sign() <= 0) continue;
        RInf v = affine_eval(m, p);
        if (v.is_inf()) return RInf::infinity();
        acc += w * v.value();
    }
    return RInf::finite(acc);
}

/// The counit: the point whose value under every countably affine map
/// equals the integral of that map.  Closed form per space.
inline Point barycenter(const PointDist& P, const EvalPolicy& policy = {}) {
    policy.validate();
    const Space& sp = P.space();
    return sp.visit([&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) {
            Scalar acc(0);
            for (const auto& [p, w] : P.support()) {
                if (w.sign() <= 0) continue;
                if (p.template as<RInf>().is_inf()) return Point(RInf::infinity());
                acc += w * p.template as<RInf>().value();
            }
            return Point(RInf::finite(acc));
        } else if constexpr (std::is_same_v<T, Space::Disc>) {
            std::uint32_t best = s.n;
            for (const auto& [p, w] : P.support())
                if (w.sign() > 0) best = std::min(best, p.template as<std::uint32_t>());
            if (best == s.n) throw NoBarycenter("empty support");
            return Point(best);
        } else if constexpr (std::is_same_v<T, Space::SemiDirect>) {
            bool have = false;
            std::uint32_t win = 0;
            for (const auto& [p, w] : P.support()) {
                if (w.sign() <= 0) continue;
                std::uint32_t o = p.template as<Point::Semi>().orbit;
                if (!have)
                    win = o, have = true;
                else
                    win = s.order == OrbitOrder::MaxWins ? std::max(win, o)
                                                         : std::min(win, o);
            }
            if (!have) throw NoBarycenter("empty support");
            // winning-orbit r-mass without renormalization, matching mix
            Scalar acc(0);
            for (const auto& [p, w] : P.support()) {
                const auto& sd = p.template as<Point::Semi>();
                if (w.sign() <= 0 || sd.orbit != win) continue;
                if (sd.r.is_inf())
                    return Point(Point::Semi{RInf::infinity(), win});
                acc += w * sd.r.value();
            }
            return Point(Point::Semi{RInf::finite(acc), win});
        } else if constexpr (std::is_same_v<T, Space::Product>) {
            std::vector<Point> coords;
            for (std::size_t k = 0; k < s.factors.size(); ++k) {
                std::vector<std::pair<Point, Scalar>> sub;
                for (const auto& [p, w] : P.support())
                    sub.emplace_back(p.template as<std::vector<Point>>()[k], w);
                coords.push_back(
                    barycenter(PointDist(s.factors[k], std::move(sub)), policy));
            }
            return Point(std::move(coords));
        } else if constexpr (std::is_same_v<T, Space::FinDist>) {
            std::vector<std::pair<Measure, Scalar>> meta;
            for (const auto& [p, w] : P.support())
                meta.emplace_back(p.template as<Measure>(), w);
            return Point(multiply(MetaMeasure(std::move(meta))));
        } else {
            throw NoFamily("no barycenter closed form for " + sp.str());
        }
    });
}

/// The finite carrier a space exposes to sigma generation, generalized
/// points, and exhaustive law checks.  Disc and FinDist grids enumerate
/// exactly; SemiDirect and RInfSpace supply rationally sampled sub-carriers.
struct SubCarrier {
    Space space;
    std::vector<Point> points;

    static SubCarrier of_disc(std::uint32_t n) {
        Space sp = Space::disc(n);
        std::vector<Point> pts;
        for (std::uint32_t i = 0; i < n; ++i) pts.push_back(Point(i));
        return {std::move(sp), std::move(pts)};
    }

    static SubCarrier dirac_grid(MSpacePtr base) {
        Space sp = Space::fin_dist(base);
        std::vector<Point> pts;
        for (const std::string& l : base->labels()) pts.push_back(Point(dirac(base, l)));
        return {std::move(sp), std::move(pts)};
    }
};

/// The smallest sigma-algebra on a finite carrier making every generator
/// family member measurable: value-equality cells of each member generate
/// it, because every attained RInf value is separated from the others by
/// rational intervals and the {infinity} basis set.
inline FinMeasurableSpace sigma_from_affine(const SubCarrier& carrier) {
    auto family = generator_family(carrier.space);
    std::vector<std::string> labels;
    for (const Point& p : carrier.points) labels.push_back(p.str());
    std::vector<std::uint64_t> gens;
    for (const AffineMap& m : family) {
        std::vector<RInf> vals;
        for (const Point& p : carrier.points) vals.push_back(affine_eval(m, p));
        std::vector<bool> used(vals.size(), false);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (used[i]) continue;
            std::uint64_t cell = 0;
            for (std::size_t j = 0; j < vals.size(); ++j)
                if (vals[j] == vals[i]) {
                    cell |= 1ull << j;
                    used[j] = true;
                }
            gens.push_back(cell);
        }
    }
    return FinMeasurableSpace::generated(std::move(labels), gens);
}

}  // namespace scvx
