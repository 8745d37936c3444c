#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "scvx/algebra.hpp"
#include "scvx/sample.hpp"

namespace scvx {

struct Counterexample {
    std::string input;
    std::string lhs;
    std::string rhs;
};

struct LawReport {
    std::string kind;
    bool pass = true;
    std::vector<Counterexample> counterexamples;

    void fail(std::string input, std::string lhs, std::string rhs,
              std::size_t cap = 8) {
        pass = false;
        if (counterexamples.size() < cap)
            counterexamples.push_back(
                {std::move(input), std::move(lhs), std::move(rhs)});
    }

    /// Canonical order so reports are byte-stable regardless of evaluation
    /// order.
    void canonicalize() {
        std::sort(counterexamples.begin(), counterexamples.end(),
                  [](const Counterexample& a, const Counterexample& b) {
                      return std::tie(a.input, a.lhs, a.rhs) <
                             std::tie(b.input, b.lhs, b.rhs);
                  });
    }
};

namespace detail {

inline std::string mix_input_str(const Space& sp, const PartitionOfOne& alpha,
                                 const PointSeq& pts) {
    std::string out = sp.str() + " alpha=[";
    auto support = pts.weighted_support(alpha);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (i) out += " ";
        out += support[i].second.str() + "*" + support[i].first.str();
    }
    return out + "]";
}

inline std::string opt_point_str(const std::optional<Point>& p) {
    return p ? p->str() : "undetermined";
}

}  // namespace detail

/// Axiom (i): delta partitions extract; axiom (ii): composed mixtures
/// flatten.  Exhaustive partitions (denominators <= max_den, length <= 4)
/// for the outer layer plus seeded random instances.
inline LawReport check_scvx_axioms(const Space& sp, unsigned max_den = 8,
                                   int random_cases = 1000,
                                   std::uint64_t seed = 0) {
    LawReport report{"scvx-axioms"};
    std::mt19937_64 rng(seed);
    const std::uint32_t L = 4;

    std::vector<Point> base;
    for (std::uint32_t i = 0; i < L; ++i) base.push_back(sample::random_point(sp, rng));
    PointSeq base_seq(base);

    // axiom (i) on delta partitions
    for (std::uint32_t j = 1; j <= L; ++j) {
        auto r = mix(sp, PartitionOfOne::delta(j), base_seq);
        if (!r || !(*r == base[j - 1]))
            report.fail("delta(" + std::to_string(j) + ") over fixed points",
                        detail::opt_point_str(r), base[j - 1].str());
    }

    // axiom (ii): every exhaustive alpha over inner mixes of exhaustive betas
    auto alphas = sample::partitions_up_to(L, max_den);
    auto run_case = [&](const PartitionOfOne& alpha,
                        const std::vector<PartitionOfOne>& betas,
                        const std::vector<Point>& pts) {
        PointSeq seq(pts);
        std::vector<Point> inner;
        for (const auto& beta : betas) {
            auto r = mix(sp, beta, seq);
            if (!r) return;
            inner.push_back(std::move(*r));
        }
        auto lhs = mix(sp, alpha, PointSeq(inner));
        std::vector<PartitionOfOne::Entry> combined;
        for (std::uint32_t j = 0; j < L; ++j) {
            Scalar w(0);
            for (std::size_t i = 0; i < betas.size(); ++i)
                w += alpha.weight(static_cast<std::uint32_t>(i) + 1) *
                     betas[i].weight(j + 1);
            combined.push_back({j + 1, w});
        }
        auto rhs = mix(sp, PartitionOfOne::finite_support(combined), seq);
        if (!lhs || !rhs || !(*lhs == *rhs))
            report.fail(detail::mix_input_str(sp, alpha, seq),
                        detail::opt_point_str(lhs), detail::opt_point_str(rhs));
    };

    for (const auto& alpha : alphas) {
        std::vector<PartitionOfOne> betas;
        for (std::uint32_t i = 0; i < L; ++i)
            betas.push_back(sample::random_partition(L, rng));
        run_case(alpha, betas, base);
    }
    for (int t = 0; t < random_cases; ++t) {
        std::vector<Point> pts;
        for (std::uint32_t i = 0; i < L; ++i)
            pts.push_back(sample::random_point(sp, rng));
        std::vector<PartitionOfOne> betas;
        for (std::uint32_t i = 0; i < L; ++i)
            betas.push_back(sample::random_partition(L, rng));
        run_case(sample::random_partition(L, rng), betas, pts);
    }
    report.canonicalize();
    return report;
}

/// Morphism law for every generator family member: m(mix) equals the
/// countable mix of images.
inline LawReport check_affine(const Space& sp, unsigned max_den = 8,
                              int random_cases = 200, std::uint64_t seed = 0) {
    LawReport report{"affine"};
    auto family = generator_family(sp);
    std::mt19937_64 rng(seed);
    const std::uint32_t L = 4;
    auto alphas = sample::partitions_up_to(L, max_den);

    auto run_case = [&](const PartitionOfOne& alpha, const std::vector<Point>& pts) {
        PointSeq seq(pts);
        auto mx = mix(sp, alpha, seq);
        if (!mx) return;
        for (const AffineMap& m : family) {
            std::vector<RInf> images;
            for (const Point& p : pts) images.push_back(affine_eval(m, p));
            auto rhs = rinf_mix(alpha, RInfSeq::prefix_tail(images, RInf(0)));
            RInf lhs = affine_eval(m, *mx);
            if (!rhs || !(lhs == *rhs))
                report.fail(m.str() + " over " + detail::mix_input_str(sp, alpha, seq),
                            lhs.str(), rhs ? rhs->str() : "undetermined");
        }
    };

    std::vector<Point> base;
    for (std::uint32_t i = 0; i < L; ++i) base.push_back(sample::random_point(sp, rng));
    for (const auto& alpha : alphas) run_case(alpha, base);
    for (int t = 0; t < random_cases; ++t) {
        std::vector<Point> pts;
        for (std::uint32_t i = 0; i < L; ++i)
            pts.push_back(sample::random_point(sp, rng));
        run_case(sample::random_partition(L, rng), pts);
    }
    report.canonicalize();
    return report;
}

/// Monad laws at finite scale on rational-grid measures: both unit laws
/// and the depth-2 associativity square.
inline LawReport check_monad(const MSpacePtr& X, unsigned max_den = 4,
                             std::uint64_t seed = 0) {
    LawReport report{"monad"};
    auto Ps = sample::grid_measures(X, max_den);
    std::mt19937_64 rng(seed);

    // mu(eta_{G(X)}(P)) = P
    for (const Measure& P : Ps) {
        Measure out = multiply(MetaMeasure({{P, Scalar(1)}}));
        if (!(out == P)) report.fail("mu(delta(" + P.str() + "))", out.str(), P.str());
    }

    // mu(G(eta)(P)) = P: the pushforward of P along eta is the meta-measure
    // putting weight P(atom) on the dirac at that atom
    for (const Measure& P : Ps) {
        std::vector<std::pair<Measure, Scalar>> support;
        for (std::size_t k = 0; k < X->atoms().size(); ++k) {
            std::uint64_t atom = X->atoms()[k];
            std::size_t i = 0;
            while (!(atom & (1ull << i))) ++i;
            support.emplace_back(dirac(X, X->labels()[i]), P.atom_weights()[k]);
        }
        Measure out = multiply(MetaMeasure(std::move(support)));
        if (!(out == P)) report.fail("mu(G(eta)(" + P.str() + "))", out.str(), P.str());
    }

    // associativity on depth-2 meta-measures: flatten outer weights first
    // or average inner layers first
    auto outer_weights = sample::partitions_up_to(2, max_den);
    for (int t = 0; t < 200; ++t) {
        const Measure& A = Ps[rng() % Ps.size()];
        const Measure& B = Ps[rng() % Ps.size()];
        const Measure& C = Ps[rng() % Ps.size()];
        const auto& wv = outer_weights[rng() % outer_weights.size()];
        Scalar u = wv.weight(1), v = wv.weight(2);
        const auto& iv = outer_weights[rng() % outer_weights.size()];
        Scalar p = iv.weight(1), q = iv.weight(2);
        MetaMeasure inner1({{A, p}, {B, q}});
        MetaMeasure inner2({{C, Scalar(1)}});
        Measure lhs = multiply(MetaMeasure({{multiply(inner1), u}, {multiply(inner2), v}}));
        Measure rhs = multiply(MetaMeasure({{A, u * p}, {B, u * q}, {C, v}}));
        if (!(lhs == rhs))
            report.fail("assoc u=" + u.str() + " p=" + p.str() + " A=" + A.str() +
                            " B=" + B.str() + " C=" + C.str(),
                        lhs.str(), rhs.str());
    }
    report.canonicalize();
    return report;
}

/// G-algebra laws for a rule over a finite carrier: unit (h after dirac is
/// the identity) and associativity (h of a flattened mixture equals h of
/// the h-image mixture).
inline LawReport check_algebra(const AlgebraRule& h, const SubCarrier& carrier,
                               unsigned max_den = 4) {
    LawReport report{"algebra"};
    for (const Point& a : carrier.points) {
        Point out = h.apply(PointDist::dirac(carrier.space, a));
        if (!(out == a)) report.fail("h(delta(" + a.str() + "))", out.str(), a.str());
    }

    auto dists = sample::grid_dists(carrier, max_den);
    auto outers = sample::partitions_up_to(2, max_den);
    for (std::size_t i = 0; i < dists.size(); ++i)
        for (std::size_t j = 0; j < dists.size(); ++j)
            for (const auto& w : outers) {
                Scalar u = w.weight(1), v = w.weight(2);
                std::vector<std::pair<Point, Scalar>> flat;
                for (const auto& [p, x] : dists[i].support())
                    flat.emplace_back(p, u * x);
                for (const auto& [p, x] : dists[j].support())
                    flat.emplace_back(p, v * x);
                Point lhs = h.apply(PointDist(carrier.space, std::move(flat)));
                Point rhs = h.apply(PointDist(
                    carrier.space,
                    {{h.apply(dists[i]), u}, {h.apply(dists[j]), v}}));
                if (!(lhs == rhs))
                    report.fail("h(" + u.str() + "*[" + dists[i].str() + "] + " +
                                    v.str() + "*[" + dists[j].str() + "])",
                                lhs.str(), rhs.str());
            }
    report.canonicalize();
    return report;
}

/// Naturality of the barycenter along an affine point map f: A -> B:
/// f(eps_A(P)) = eps_B(f_* P).
inline LawReport check_naturality(const SubCarrier& A, const Space& B,
                                  const std::function<Point(const Point&)>& f,
                                  unsigned max_den = 4) {
    LawReport report{"naturality"};
    for (unsigned d = 1; d <= max_den; ++d)
        for (const PointDist& P : sample::grid_dists(A, d)) {
            Point lhs = f(barycenter(P));
            std::vector<std::pair<Point, Scalar>> pushed;
            for (const auto& [p, w] : P.support()) pushed.emplace_back(f(p), w);
            Point rhs = barycenter(PointDist(B, std::move(pushed)));
            if (!(lhs == rhs)) report.fail("P=" + P.str(), lhs.str(), rhs.str());
        }
    report.canonicalize();
    return report;
}

/// The two triangle identities at finite scale: the barycenter of the
/// dirac-image of P reproduces P, and the barycenter of a dirac is its
/// point.
inline LawReport check_triangles(const MSpacePtr& X, unsigned max_den = 4) {
    LawReport report{"triangles"};
    Space gx = Space::fin_dist(X);
    for (const Measure& P : sample::grid_measures(X, max_den)) {
        // G(eta)(P): the distribution over dirac measures weighted by P
        std::vector<std::pair<Point, Scalar>> support;
        for (std::size_t k = 0; k < X->atoms().size(); ++k) {
            std::uint64_t atom = X->atoms()[k];
            std::size_t i = 0;
            while (!(atom & (1ull << i))) ++i;
            support.emplace_back(Point(dirac(X, X->labels()[i])),
                                 P.atom_weights()[k]);
        }
        Point out = barycenter(PointDist(gx, std::move(support)));
        if (!(out == Point(P)))
            report.fail("eps(G(eta)(" + P.str() + "))", out.str(), P.str());
    }
    for (const std::string& l : X->labels()) {
        Point a(dirac(X, l));
        Point out = barycenter(PointDist::dirac(gx, a));
        if (!(out == a)) report.fail("eps(delta(" + a.str() + "))", out.str(), a.str());
    }
    report.canonicalize();
    return report;
}

/// Roundtrip: the convex structure induced by the barycenter rule
/// reproduces the structural map on every sampled input.
inline LawReport check_roundtrip(const SubCarrier& carrier, unsigned max_den = 8,
                                 std::uint64_t seed = 0, int random_cases = 200,
                                 bool exhaustive_tuples = false) {
    LawReport report{"roundtrip"};
    AlgebraRule h = AlgebraRule::barycenter_of(carrier.space);
    std::mt19937_64 rng(seed);
    const std::uint32_t L = 4;
    auto alphas = sample::partitions_up_to(L, max_den);

    auto run_case = [&](const PartitionOfOne& alpha, const std::vector<Point>& pts) {
        PointSeq seq(pts);
        Point lhs = induced_mix(h, alpha, seq);
        auto rhs = mix(carrier.space, alpha, seq);
        if (!rhs || !(lhs == *rhs))
            report.fail(detail::mix_input_str(carrier.space, alpha, seq), lhs.str(),
                        detail::opt_point_str(rhs));
    };

    if (exhaustive_tuples) {
        std::size_t n = carrier.points.size();
        std::vector<std::size_t> t(L, 0);
        bool done = false;
        while (!done) {
            std::vector<Point> pts;
            for (std::uint32_t i = 0; i < L; ++i) pts.push_back(carrier.points[t[i]]);
            for (const auto& alpha : alphas) run_case(alpha, pts);
            std::size_t i = 0;
            while (i < L && ++t[i] == n) t[i++] = 0;
            done = i == L;
        }
    } else {
        std::vector<Point> base;
        for (std::uint32_t i = 0; i < L; ++i)
            base.push_back(carrier.points[rng() % carrier.points.size()]);
        for (const auto& alpha : alphas) run_case(alpha, base);
    }
    for (int t = 0; t < random_cases; ++t) {
        std::vector<Point> pts;
        for (std::uint32_t i = 0; i < L; ++i)
            pts.push_back(carrier.points[rng() % carrier.points.size()]);
        run_case(sample::random_partition(L, rng), pts);
    }
    report.canonicalize();
    return report;
}

}  // namespace scvx
