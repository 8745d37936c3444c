#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scvx/measure.hpp"
#include "scvx/sequence.hpp"

namespace scvx {

enum class OrbitOrder { MaxWins, MinWins };

/// Algebraic description of an implemented super convex space.
class Space {
public:
    struct RInfSpace {};
    struct Disc {
        std::uint32_t n;
    };
    struct SemiDirect {
        std::uint32_t n;
        OrbitOrder order;
    };
    struct Product {
        std::vector<Space> factors;
    };
    struct InfUnitInterval {};
    struct SJ {
        std::uint32_t j;
    };
    struct FinDist {
        MSpacePtr base;
    };

    static Space rinf() { return Space(RInfSpace{}); }
    static Space disc(std::uint32_t n) {
        if (n < 1) throw ValidationError("Disc: n >= 1 required");
        return Space(Disc{n});
    }
    static Space semidirect(std::uint32_t n, OrbitOrder order = OrbitOrder::MaxWins) {
        if (n < 1) throw ValidationError("SemiDirect: n >= 1 required");
        return Space(SemiDirect{n, order});
    }
    static Space product(std::vector<Space> factors) {
        if (factors.empty()) throw ValidationError("Product: empty factor list");
        return Space(Product{std::move(factors)});
    }
    static Space inf_unit_interval() { return Space(InfUnitInterval{}); }
    static Space sj(std::uint32_t j) {
        if (j < 1) throw ValidationError("SJ: j >= 1 required");
        return Space(SJ{j});
    }
    static Space fin_dist(MSpacePtr base) {
        if (!base) throw ValidationError("FinDist: null base space");
        return Space(FinDist{std::move(base)});
    }

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

    friend bool operator==(const Space& a, const Space& b) {
        if (a.v_.index() != b.v_.index()) return false;
        if (a.is<Disc>()) return a.as<Disc>().n == b.as<Disc>().n;
        if (a.is<SemiDirect>())
            return a.as<SemiDirect>().n == b.as<SemiDirect>().n &&
                   a.as<SemiDirect>().order == b.as<SemiDirect>().order;
        if (a.is<SJ>()) return a.as<SJ>().j == b.as<SJ>().j;
        if (a.is<FinDist>()) return *a.as<FinDist>().base == *b.as<FinDist>().base;
        if (a.is<Product>()) {
            const auto& fa = a.as<Product>().factors;
            const auto& fb = b.as<Product>().factors;
            if (fa.size() != fb.size()) return false;
            for (std::size_t i = 0; i < fa.size(); ++i)
                if (!(fa[i] == fb[i])) return false;
            return true;
        }
        return true;
    }

    std::string str() const {
        return visit([](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RInfSpace>) return "rinf";
            else if constexpr (std::is_same_v<T, Disc>)
                return "disc(" + std::to_string(s.n) + ")";
            else if constexpr (std::is_same_v<T, SemiDirect>)
                return "semidirect(" + std::to_string(s.n) + "," +
                       (s.order == OrbitOrder::MaxWins ? "max-wins" : "min-wins") + ")";
            else if constexpr (std::is_same_v<T, Product>) {
                std::string out = "product(";
                for (std::size_t i = 0; i < s.factors.size(); ++i)
                    out += (i ? "," : "") + s.factors[i].str();
                return out + ")";
            } else if constexpr (std::is_same_v<T, InfUnitInterval>)
                return "inf-unit-interval";
            else if constexpr (std::is_same_v<T, SJ>)
                return "sj(" + std::to_string(s.j) + ")";
            else
                return "findist";
        });
    }

private:
    using V = std::variant<RInfSpace, Disc, SemiDirect, Product, InfUnitInterval, SJ,
                           FinDist>;
    explicit Space(V v) : v_(std::move(v)) {}
    V v_;
};

/// An element of an implemented space, tagged by the owning descriptor.
class Point {
public:
    struct Semi {
        RInf r;
        std::uint32_t orbit;
    };
    struct SJPoint {
        bool inf_class = false;
        std::vector<Scalar> coords;  // nonnegative, empty when inf_class
    };

    Point(RInf r) : v_(std::move(r)) {}
    Point(std::uint32_t disc_index) : v_(disc_index) {}
    Point(Semi s) : v_(std::move(s)) {}
    Point(std::vector<Point> tuple) : v_(std::move(tuple)) {}
    Point(Scalar unit_value) : v_(std::move(unit_value)) {}
    Point(SJPoint s) : v_(std::move(s)) {}
    Point(Measure m) : v_(std::move(m)) {}

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(v_);
    }
    template <typename T>
    const T& as() const {
        if (!is<T>()) throw SpaceMismatch("Point: wrong carrier");
        return std::get<T>(v_);
    }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.v_.index() != b.v_.index()) return false;
        if (a.is<RInf>()) return a.as<RInf>() == b.as<RInf>();
        if (a.is<std::uint32_t>()) return a.as<std::uint32_t>() == b.as<std::uint32_t>();
        if (a.is<Semi>())
            return a.as<Semi>().orbit == b.as<Semi>().orbit &&
                   a.as<Semi>().r == b.as<Semi>().r;
        if (a.is<std::vector<Point>>()) {
            const auto& ta = a.as<std::vector<Point>>();
            const auto& tb = b.as<std::vector<Point>>();
            if (ta.size() != tb.size()) return false;
            for (std::size_t i = 0; i < ta.size(); ++i)
                if (!(ta[i] == tb[i])) return false;
            return true;
        }
        if (a.is<Scalar>()) return a.as<Scalar>() == b.as<Scalar>();
        if (a.is<SJPoint>()) {
            const auto& sa = a.as<SJPoint>();
            const auto& sb = b.as<SJPoint>();
            return sa.inf_class == sb.inf_class && sa.coords == sb.coords;
        }
        return a.as<Measure>() == b.as<Measure>();
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    std::string str() const {
        if (is<RInf>()) return as<RInf>().str();
        if (is<std::uint32_t>()) return std::to_string(as<std::uint32_t>());
        if (is<Semi>())
            return "(" + as<Semi>().r.str() + "," + std::to_string(as<Semi>().orbit) + ")";
        if (is<std::vector<Point>>()) {
            std::string out = "(";
            const auto& t = as<std::vector<Point>>();
            for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + t[i].str();
            return out + ")";
        }
        if (is<Scalar>()) return as<Scalar>().str();
        if (is<SJPoint>()) {
            const auto& s = as<SJPoint>();
            if (s.inf_class) return "inf-class";
            std::string out = "[";
            for (std::size_t i = 0; i < s.coords.size(); ++i)
                out += (i ? "," : "") + s.coords[i].str();
            return out + "]";
        }
        return as<Measure>().str();
    }

private:
    std::variant<RInf, std::uint32_t, Semi, std::vector<Point>, Scalar, SJPoint, Measure>
        v_;
};

inline bool point_in_space(const Space& sp, const Point& p) {
    return sp.visit([&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) return p.is<RInf>();
        else if constexpr (std::is_same_v<T, Space::Disc>)
            return p.is<std::uint32_t>() && p.template as<std::uint32_t>() < s.n;
        else if constexpr (std::is_same_v<T, Space::SemiDirect>)
            return p.is<Point::Semi>() && p.template as<Point::Semi>().orbit < s.n;
        else if constexpr (std::is_same_v<T, Space::Product>) {
            if (!p.is<std::vector<Point>>()) return false;
            const auto& t = p.template as<std::vector<Point>>();
            if (t.size() != s.factors.size()) return false;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (!point_in_space(s.factors[i], t[i])) return false;
            return true;
        } else if constexpr (std::is_same_v<T, Space::InfUnitInterval>)
            return p.is<Scalar>() && p.template as<Scalar>().sign() >= 0 &&
                   p.template as<Scalar>() <= Scalar(1);
        else if constexpr (std::is_same_v<T, Space::SJ>) {
            if (!p.is<Point::SJPoint>()) return false;
            const auto& sj = p.template as<Point::SJPoint>();
            if (sj.inf_class) return sj.coords.empty();
            if (sj.coords.size() != s.j) return false;
            for (const Scalar& c : sj.coords)
                if (c.sign() < 0) return false;
            return true;
        } else {
            return p.is<Measure>() && *p.template as<Measure>().space() == *s.base;
        }
    });
}

/// A total 1-based point sequence: explicit prefix, then a constant tail.
/// Geometric partitions require the tail; finite-support partitions only
/// read the indices they weight.
class PointSeq {
public:
    PointSeq(std::vector<Point> prefix, std::optional<Point> tail = std::nullopt)
        : prefix_(std::move(prefix)), tail_(std::move(tail)) {
        if (prefix_.empty() && !tail_)
            throw ValidationError("PointSeq: empty sequence");
    }

    const Point& at(std::uint32_t i) const {
        if (i == 0) throw ValidationError("PointSeq: indices are 1-based");
        if (i <= prefix_.size()) return prefix_[i - 1];
        if (!tail_) throw ValidationError("PointSeq: index beyond prefix with no tail");
        return *tail_;
    }

    const std::vector<Point>& prefix() const { return prefix_; }
    const std::optional<Point>& tail() const { return tail_; }
    bool has_tail() const { return tail_.has_value(); }

    /// Every point with positive weight under alpha, paired with its weight.
    /// For geometric partitions the prefix entries carry their own weight and
    /// the tail carries the remaining mass as one aggregate entry.
    std::vector<std::pair<Point, Scalar>> weighted_support(
        const PartitionOfOne& alpha) const {
        std::vector<std::pair<Point, Scalar>> out;
        if (alpha.is_geometric()) {
            if (!tail_) throw ValidationError("PointSeq: geometric mix needs a tail");
            for (std::uint32_t i = 1; i <= prefix_.size(); ++i)
                out.emplace_back(prefix_[i - 1], alpha.weight(i));
            out.emplace_back(*tail_,
                             alpha.tail_mass(static_cast<std::uint32_t>(prefix_.size())));
        } else {
            for (const auto& e : alpha.entries())
                if (e.weight.sign() > 0) out.emplace_back(at(e.index), e.weight);
        }
        return out;
    }

private:
    std::vector<Point> prefix_;
    std::optional<Point> tail_;
};

namespace detail {

inline PointSeq project_seq(const PointSeq& pts, std::size_t coord) {
    std::vector<Point> prefix;
    for (const Point& p : pts.prefix())
        prefix.push_back(p.template as<std::vector<Point>>()[coord]);
    std::optional<Point> tail;
    if (pts.has_tail()) tail = pts.tail()->as<std::vector<Point>>()[coord];
    return PointSeq(std::move(prefix), std::move(tail));
}

}  // namespace detail

/// The structural map of the space: evaluate the countable convex
/// combination sum_i alpha_i x_i.
inline std::optional<Point> mix(const Space& sp, const PartitionOfOne& alpha,
                                const PointSeq& pts, const EvalPolicy& policy = {}) {
    policy.validate();
    auto support = pts.weighted_support(alpha);
    for (const auto& [p, w] : support)
        if (!point_in_space(sp, p)) throw SpaceMismatch("mix: point outside space");

    return sp.visit([&](const auto& s) -> std::optional<Point> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) {
            // exact aggregated form: support is finite by construction
            for (const auto& [p, w] : support)
                if (w.sign() > 0 && p.template as<RInf>().is_inf()) return Point(RInf::infinity());
            Scalar acc(0);
            for (const auto& [p, w] : support) acc += w * p.template as<RInf>().value();
            return Point(RInf::finite(acc));
        } else if constexpr (std::is_same_v<T, Space::Disc>) {
            std::uint32_t best = s.n;
            for (const auto& [p, w] : support)
                if (w.sign() > 0) best = std::min(best, p.template as<std::uint32_t>());
            if (best == s.n) throw ValidationError("mix: empty support");
            return Point(best);
        } else if constexpr (std::is_same_v<T, Space::SemiDirect>) {
            bool have = false;
            std::uint32_t win = 0;
            for (const auto& [p, w] : support) {
                if (w.sign() <= 0) continue;
                std::uint32_t o = p.template as<Point::Semi>().orbit;
                if (!have)
                    win = o, have = true;
                else
                    win = s.order == OrbitOrder::MaxWins ? std::max(win, o)
                                                         : std::min(win, o);
            }
            if (!have) throw ValidationError("mix: empty support");
            // r is the weighted sum over the winning orbit without
            // renormalizing: the unique rule satisfying the composition
            // axiom (it is the coordinate-w sum under the affine embedding
            // (r,i) -> r * e_i into RInf^n)
            bool inf = false;
            Scalar acc(0);
            for (const auto& [p, w] : support) {
                const auto& sd = p.template as<Point::Semi>();
                if (sd.orbit != win || w.sign() <= 0) continue;
                if (sd.r.is_inf()) {
                    inf = true;
                    break;
                }
                acc += w * sd.r.value();
            }
            return Point(Point::Semi{inf ? RInf::infinity() : RInf::finite(acc), win});
        } else if constexpr (std::is_same_v<T, Space::Product>) {
            std::vector<Point> coords;
            for (std::size_t k = 0; k < s.factors.size(); ++k) {
                auto sub = mix(s.factors[k], alpha, detail::project_seq(pts, k), policy);
                if (!sub) return std::nullopt;
                coords.push_back(std::move(*sub));
            }
            return Point(std::move(coords));
        } else if constexpr (std::is_same_v<T, Space::InfUnitInterval>) {
            bool have = false;
            Scalar best(0);
            for (const auto& [p, w] : support) {
                if (w.sign() <= 0) continue;
                const Scalar& v = p.template as<Scalar>();
                if (!have || v < best) best = v;
                have = true;
            }
            if (!have) throw ValidationError("mix: empty support");
            return Point(best);
        } else if constexpr (std::is_same_v<T, Space::SJ>) {
            for (const auto& [p, w] : support)
                if (w.sign() > 0 && p.template as<Point::SJPoint>().inf_class)
                    return Point(Point::SJPoint{true, {}});
            std::vector<Scalar> coords(s.j, Scalar(0));
            for (const auto& [p, w] : support) {
                const auto& sj = p.template as<Point::SJPoint>();
                for (std::uint32_t k = 0; k < s.j; ++k) coords[k] += w * sj.coords[k];
            }
            return Point(Point::SJPoint{false, std::move(coords)});
        } else {
            std::vector<Measure> ms;
            std::vector<PartitionOfOne::Entry> entries;
            std::uint32_t idx = 1;
            for (const auto& [p, w] : support) {
                ms.push_back(p.template as<Measure>());
                entries.push_back({idx++, w});
            }
            return Point(measure_mix(PartitionOfOne::finite_support(std::move(entries)),
                                     ms));
        }
    });
}

}  // namespace scvx
