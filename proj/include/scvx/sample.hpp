#pragma once

#include <random>
#include <vector>

#include "scvx/barycenter.hpp"

namespace scvx::sample {

/// Deterministic samplers shared by the law checkers and the test suite.

inline Scalar small_rational(std::mt19937_64& rng) {
    long long num = static_cast<long long>(rng() % 17) - 8;
    long long den = static_cast<long long>(rng() % 6) + 1;
    return Scalar::ratio(num, den);
}

inline RInf random_rinf(std::mt19937_64& rng, bool allow_inf = true) {
    if (allow_inf && rng() % 8 == 0) return RInf::infinity();
    return RInf::finite(small_rational(rng));
}

inline Point random_point(const Space& sp, std::mt19937_64& rng) {
    return sp.visit([&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Space::RInfSpace>) {
            return Point(random_rinf(rng));
        } else if constexpr (std::is_same_v<T, Space::Disc>) {
            return Point(static_cast<std::uint32_t>(rng() % s.n));
        } else if constexpr (std::is_same_v<T, Space::SemiDirect>) {
            return Point(Point::Semi{random_rinf(rng),
                                     static_cast<std::uint32_t>(rng() % s.n)});
        } else if constexpr (std::is_same_v<T, Space::Product>) {
            std::vector<Point> coords;
            for (const Space& f : s.factors) coords.push_back(random_point(f, rng));
            return Point(std::move(coords));
        } else if constexpr (std::is_same_v<T, Space::InfUnitInterval>) {
            long long den = static_cast<long long>(rng() % 7) + 1;
            long long num = static_cast<long long>(rng() % (den + 1));
            return Point(Scalar::ratio(num, den));
        } else if constexpr (std::is_same_v<T, Space::SJ>) {
            if (rng() % 8 == 0) return Point(Point::SJPoint{true, {}});
            std::vector<Scalar> coords;
            for (std::uint32_t k = 0; k < s.j; ++k)
                coords.push_back(small_rational(rng).abs());
            return Point(Point::SJPoint{false, std::move(coords)});
        } else {
            std::size_t n = s.base->atoms().size();
            std::vector<unsigned> c(n, 0);
            unsigned total = 0;
            for (std::size_t k = 0; k < n; ++k) total += c[k] = rng() % 4;
            if (total == 0) c[rng() % n] = total = 1;
            std::vector<Scalar> w;
            for (unsigned x : c) w.push_back(Scalar::ratio(x, total));
            return Point(Measure::from_atom_weights(s.base, std::move(w)));
        }
    });
}

/// A random finite-support partition over 1..len (every index present,
/// some weights possibly zero), weights with a common random denominator.
inline PartitionOfOne random_partition(std::uint32_t len, std::mt19937_64& rng) {
    std::vector<unsigned> c(len, 0);
    unsigned total = 0;
    for (auto& x : c) total += x = rng() % 5;
    if (total == 0) c[rng() % len] = total = 1;
    std::vector<PartitionOfOne::Entry> entries;
    for (std::uint32_t j = 0; j < len; ++j)
        entries.push_back({j + 1, Scalar::ratio(c[j], total)});
    return PartitionOfOne::finite_support(std::move(entries));
}

/// All compositions of denominator den into exactly len ordered parts
/// (weights j/den summing to 1), used for exhaustive partition sweeps.
inline std::vector<PartitionOfOne> exhaustive_partitions(std::uint32_t len,
                                                         unsigned den) {
    std::vector<PartitionOfOne> out;
    std::vector<unsigned> c(len, 0);
    auto rec = [&](auto&& self, std::uint32_t i, unsigned left) -> void {
        if (i + 1 == len) {
            c[i] = left;
            std::vector<PartitionOfOne::Entry> entries;
            for (std::uint32_t j = 0; j < len; ++j)
                entries.push_back({j + 1, Scalar::ratio(c[j], den)});
            out.push_back(PartitionOfOne::finite_support(std::move(entries)));
            return;
        }
        for (unsigned x = 0; x <= left; ++x) {
            c[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, den);
    return out;
}

/// Exhaustive partitions for every denominator 1..max_den (repeats across
/// denominators only re-verify the same instance).
inline std::vector<PartitionOfOne> partitions_up_to(std::uint32_t len,
                                                    unsigned max_den) {
    std::vector<PartitionOfOne> out;
    for (unsigned d = 1; d <= max_den; ++d)
        for (auto& p : exhaustive_partitions(len, d)) out.push_back(std::move(p));
    return out;
}

/// All probability vectors with the given exact denominator over n cells.
inline std::vector<std::vector<Scalar>> exhaustive_weight_vectors(std::size_t n,
                                                                  unsigned den) {
    std::vector<std::vector<Scalar>> out;
    std::vector<unsigned> c(n, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == n) {
            c[i] = left;
            std::vector<Scalar> w;
            for (unsigned x : c) w.push_back(Scalar::ratio(x, den));
            out.push_back(std::move(w));
            return;
        }
        for (unsigned x = 0; x <= left; ++x) {
            c[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, den);
    return out;
}

/// All rational measures over the sigma-atoms of sp with denominators
/// 1..max_den (deduplicated only by construction order; repeats harmless).
inline std::vector<Measure> grid_measures(const MSpacePtr& sp, unsigned max_den) {
    std::vector<Measure> out;
    for (unsigned d = 1; d <= max_den; ++d)
        for (auto& w : exhaustive_weight_vectors(sp->atoms().size(), d))
            out.push_back(Measure::from_atom_weights(sp, std::move(w)));
    return out;
}

/// All PointDists over the given carrier points with exact denominator den.
inline std::vector<PointDist> grid_dists(const SubCarrier& carrier, unsigned den) {
    std::vector<PointDist> out;
    for (auto& w : exhaustive_weight_vectors(carrier.points.size(), den)) {
        std::vector<std::pair<Point, Scalar>> support;
        for (std::size_t i = 0; i < carrier.points.size(); ++i)
            support.emplace_back(carrier.points[i], std::move(w[i]));
        out.push_back(PointDist(carrier.space, std::move(support)));
    }
    return out;
}

inline std::vector<Space> standard_spaces() {
    auto X2 = std::make_shared<FinMeasurableSpace>(
        FinMeasurableSpace::discrete({"x0", "x1"}));
    return {Space::rinf(),
            Space::disc(4),
            Space::semidirect(3, OrbitOrder::MaxWins),
            Space::semidirect(3, OrbitOrder::MinWins),
            Space::inf_unit_interval(),
            Space::sj(2),
            Space::fin_dist(X2),
            Space::product({Space::rinf(), Space::disc(3)})};
}

}  // namespace scvx::sample
