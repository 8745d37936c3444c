#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scvx/laws.hpp"

namespace scvx {

/// A weakly monotone function between finite index sets; the arrows under
/// which Disc is functorial.  Non-monotone tables are rejected with a
/// concrete two-point mixture on which the two affinity legs disagree.
class MonotoneMap {
public:
    MonotoneMap(std::uint32_t n, std::uint32_t m, std::vector<std::uint32_t> table)
        : n_(n), m_(m), table_(std::move(table)) {
        if (table_.size() != n_) throw ValidationError("MonotoneMap: wrong table size");
        for (std::uint32_t y : table_)
            if (y >= m_) throw ValidationError("MonotoneMap: target out of range");
        for (std::uint32_t i = 0; i + 1 < n_; ++i) {
            if (table_[i] <= table_[i + 1]) continue;
            // refutation: the uniform two-point mixture of i and i+1
            std::uint32_t mixed = std::min(i, i + 1);
            std::uint32_t lhs = table_[mixed];
            std::uint32_t rhs = std::min(table_[i], table_[i + 1]);
            throw NotMonotone(
                "f(" + std::to_string(i) + ")=" + std::to_string(table_[i]) + " > f(" +
                std::to_string(i + 1) + ")=" + std::to_string(table_[i + 1]) +
                "; refuting partition (1/2,1/2) on (" + std::to_string(i) + "," +
                std::to_string(i + 1) + "): f(mix)=" + std::to_string(lhs) +
                " but mix of images=" + std::to_string(rhs));
        }
    }

    std::uint32_t domain_size() const { return n_; }
    std::uint32_t codomain_size() const { return m_; }
    std::uint32_t operator()(std::uint32_t i) const {
        if (i >= n_) throw OutOfRange("MonotoneMap: index out of range");
        return table_[i];
    }

    friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.table_ == b.table_;
    }

private:
    std::uint32_t n_, m_;
    std::vector<std::uint32_t> table_;
};

inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (f.codomain_size() != g.domain_size())
        throw SpaceMismatch("compose: domain/codomain mismatch");
    std::vector<std::uint32_t> table;
    for (std::uint32_t i = 0; i < f.domain_size(); ++i) table.push_back(g(f(i)));
    return MonotoneMap(f.domain_size(), g.codomain_size(), std::move(table));
}

/// The induced point map Disc(n) -> Disc(m).
inline std::function<Point(const Point&)> disc_map(const MonotoneMap& f) {
    return [f](const Point& p) { return Point(f(p.as<std::uint32_t>())); };
}

/// Affinity of the induced map: f(min support) = min f(support), checked
/// over exhaustive partitions.
inline LawReport check_disc_map_affine(const MonotoneMap& f, unsigned max_den = 8) {
    LawReport report{"affine"};
    Space dom = Space::disc(f.domain_size());
    Space cod = Space::disc(f.codomain_size());
    std::vector<Point> pts;
    for (std::uint32_t i = 0; i < f.domain_size(); ++i) pts.push_back(Point(i));
    PointSeq seq(pts);
    std::vector<Point> images;
    for (std::uint32_t i = 0; i < f.domain_size(); ++i) images.push_back(Point(f(i)));
    PointSeq image_seq(images);
    for (const auto& alpha : sample::partitions_up_to(f.domain_size(), max_den)) {
        auto mixed = mix(dom, alpha, seq);
        auto rhs = mix(cod, alpha, image_seq);
        if (!mixed || !rhs) continue;
        Point lhs = disc_map(f)(*mixed);
        if (!(lhs == *rhs))
            report.fail(detail::mix_input_str(dom, alpha, seq), lhs.str(), rhs->str());
    }
    report.canonicalize();
    return report;
}

/// The universal discrete quotient of a space: a count and the projection
/// of points onto {0..count-1}.
struct CompResult {
    std::uint32_t count;
    std::function<std::uint32_t(const Point&)> project;
};

inline CompResult comp(const Space& sp) {
    return sp.visit([&](const auto& s) -> CompResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) {
            return {1, [](const Point&) { return 0u; }};
        } else if constexpr (std::is_same_v<T, Space::Disc>) {
            return {s.n, [](const Point& p) { return p.as<std::uint32_t>(); }};
        } else if constexpr (std::is_same_v<T, Space::SemiDirect>) {
            // Disc mixes by min; under max-wins the orbit index must be
            // reversed for the projection to be affine
            std::uint32_t n = s.n;
            if (s.order == OrbitOrder::MaxWins)
                return {n, [n](const Point& p) {
                            return n - 1 - p.as<Point::Semi>().orbit;
                        }};
            return {n, [](const Point& p) { return p.as<Point::Semi>().orbit; }};
        } else if constexpr (std::is_same_v<T, Space::Product>) {
            std::uint32_t count = 1;
            std::vector<CompResult> subs;
            for (const Space& f : s.factors) {
                subs.push_back(comp(f));
                count *= subs.back().count;
            }
            return {count, [subs](const Point& p) {
                        const auto& t = p.as<std::vector<Point>>();
                        std::uint32_t idx = 0;
                        for (std::size_t k = 0; k < subs.size(); ++k)
                            idx = idx * subs[k].count + subs[k].project(t[k]);
                        return idx;
                    }};
        } else {
            throw Unsupported("no universal discrete quotient for " + sp.str());
        }
    });
}

/// The candidate map gamma: RInf -> Disc(2), 1 on finite values and 0 at
/// infinity, fails countable affinity: the divergence witness mixes to
/// infinity (left leg 0) while every image is 1 (right leg 1).
inline LawReport no_affine_to_two_witness(const Scalar& u = Scalar(0)) {
    LawReport report{"lemma-witness"};
    auto gamma = [](const RInf& v) { return v.is_inf() ? 0u : 1u; };
    auto alpha = PartitionOfOne::geometric(Scalar::ratio(1, 2));
    RInfSeq seq = RInfSeq::divergent_witness(u);
    auto mixed = rinf_mix(alpha, seq);
    std::uint32_t lhs = mixed ? gamma(*mixed) : 2;

    // right leg: mix the image points in Disc(2); every index is positively
    // weighted and every image is 1
    std::uint32_t rhs = 1;
    if (!(lhs == rhs))
        report.fail("gamma over Geometric(1/2) of the divergence witness (u=" +
                        u.str() + ")",
                    std::to_string(lhs), std::to_string(rhs));
    report.canonicalize();
    return report;
}

/// Constant maps into Disc(2) are affine: both legs agree on the same
/// witness input.
inline LawReport constant_map_witness() {
    LawReport report{"lemma-witness"};
    auto alpha = PartitionOfOne::geometric(Scalar::ratio(1, 2));
    auto mixed = rinf_mix(alpha, RInfSeq::divergent_witness(Scalar(0)));
    std::uint32_t lhs = mixed ? 0u : 2u;  // gamma == 0 everywhere
    std::uint32_t rhs = 0;
    if (!(lhs == rhs)) report.fail("constant 0 over the divergence witness", "", "");
    report.canonicalize();
    return report;
}

/// The bounded variant gamma_c (indicator of [-c,c]) also fails: 0 is the
/// midpoint of -2c and 2c, both outside the interval.
inline LawReport bounded_indicator_witness(const Scalar& c) {
    LawReport report{"lemma-witness"};
    if (c.sign() <= 0) throw ValidationError("bounded_indicator_witness: c > 0 required");
    auto gamma = [&](const Scalar& v) { return (v.abs() <= c) ? 1u : 0u; };
    // 0 = 1/2 * (-2c) + 1/2 * (2c)
    std::uint32_t lhs = gamma(Scalar(0));
    std::uint32_t rhs = std::min(gamma(Scalar(-2) * c), gamma(Scalar(2) * c));
    if (!(lhs == rhs))
        report.fail("gamma_c at 0 = 1/2*(-2c) + 1/2*(2c), c=" + c.str(),
                    std::to_string(lhs), std::to_string(rhs));
    report.canonicalize();
    return report;
}

}  // namespace scvx
