#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "scvx/partition.hpp"
#include "scvx/rinf.hpp"
#include "scvx/scalar.hpp"
#include "scvx/sequence.hpp"

using namespace scvx;

namespace {

PartitionOfOne half_geometric() { return PartitionOfOne::geometric(Scalar::ratio(1, 2)); }

}  // namespace

TEST_CASE("Scalar arithmetic stays exact over rationals") {
    Scalar a = Scalar::ratio(1, 3);
    Scalar b = Scalar::ratio(1, 6);
    CHECK((a + b) == Scalar::ratio(1, 2));
    CHECK((a * b) == Scalar::ratio(1, 18));
    CHECK((a - b) == b);
    CHECK(a.exact());
    CHECK_FALSE((a + Scalar::real(0.5)).exact());
    CHECK_THROWS_AS(Scalar::real(std::nan("")), ValidationError);
    CHECK(Scalar::ratio(1, 2).pow(3) == Scalar::ratio(1, 8));
    CHECK(Scalar(-2).pow(3) == Scalar(-8));
}

TEST_CASE("RInf absorbs infinity under positive weight only") {
    CHECK(rinf_scale(Scalar(0), RInf::infinity()) == RInf::finite(Scalar(0)));
    CHECK(rinf_scale(Scalar::ratio(1, 2), RInf::infinity()) == RInf::infinity());
    CHECK((RInf::finite(Scalar(3)) + RInf::infinity()) == RInf::infinity());
    CHECK(RInf::infinity().negate() == RInf::infinity());
    CHECK(RInf::finite(Scalar(2)).negate() == RInf::finite(Scalar(-2)));
}

TEST_CASE("PartitionOfOne validation") {
    CHECK_THROWS_AS(PartitionOfOne::finite_support({{1, Scalar::ratio(1, 2)}}),
                    ValidationError);
    CHECK_THROWS_AS(PartitionOfOne::finite_support({{1, Scalar(-1)}, {2, Scalar(2)}}),
                    ValidationError);
    CHECK_THROWS_AS(PartitionOfOne::geometric(Scalar(1)), ValidationError);
    CHECK_NOTHROW(PartitionOfOne::geometric(Scalar::ratio(3, 4)));
}

TEST_CASE("tail_mass closed forms") {
    CHECK(half_geometric().tail_mass(3) == Scalar::ratio(1, 8));
    CHECK(PartitionOfOne::delta(1).tail_mass(1) == Scalar(0));
    CHECK(half_geometric().tail_mass(0) == Scalar(1));
}

TEST_CASE("finite prefix plus tail mass is exactly one") {
    auto check = [](const PartitionOfOne& p, std::uint32_t n) {
        Scalar prefix(0);
        for (std::uint32_t i = 1; i <= n; ++i) prefix += p.weight(i);
        CHECK(prefix + p.tail_mass(n) == Scalar(1));
    };
    for (std::uint32_t n : {0u, 1u, 3u, 10u, 40u}) {
        check(half_geometric(), n);
        check(PartitionOfOne::geometric(Scalar::ratio(2, 3)), n);
        check(PartitionOfOne::finite_support(
                  {{2, Scalar::ratio(1, 4)}, {5, Scalar::ratio(3, 4)}}),
              n);
    }
}

TEST_CASE("rinf_mix: divergence witness sums to infinity") {
    // series sum_i 2^-i (i 2^i + u) has unbounded partial sums
    for (long long u : {-10, 0, 7}) {
        auto r = rinf_mix(half_geometric(), RInfSeq::divergent_witness(Scalar(u)));
        REQUIRE(r.has_value());
        CHECK(*r == RInf::infinity());
    }
}

TEST_CASE("rinf_mix: delta partition extracts the indexed value") {
    auto r = rinf_mix(PartitionOfOne::delta(3),
                      RInfSeq::prefix_tail({RInf(1), RInf(2), RInf(5)}, RInf(0)));
    REQUIRE(r.has_value());
    CHECK(*r == RInf::finite(Scalar(5)));

    // also against each witness family, j <= max_terms
    EvalPolicy policy;
    for (std::uint32_t j = 1; j <= policy.max_terms; ++j) {
        auto seqs = {RInfSeq::divergent_witness(Scalar(2)),
                     RInfSeq::alternating_witness(Scalar::ratio(1, 3))};
        for (const auto& s : seqs) {
            auto v = rinf_mix(PartitionOfOne::delta(j), s, policy);
            REQUIRE(v.has_value());
            CHECK(*v == s.at(j));
        }
    }
}

TEST_CASE("rinf_mix: geometric over a constant sequence returns the constant") {
    auto r = rinf_mix(half_geometric(), RInfSeq::constant(RInf(7)));
    REQUIRE(r.has_value());
    CHECK(*r == RInf::finite(Scalar(7)));
}

TEST_CASE("rinf_mix: an infinite term with positive weight absorbs") {
    auto r = rinf_mix(half_geometric(),
                      RInfSeq::prefix_tail({RInf::infinity()}, RInf(0)));
    REQUIRE(r.has_value());
    CHECK(*r == RInf::infinity());
}

TEST_CASE("rinf_mix: oscillating witness has no limit") {
    // with q = 1/2 the terms are (-1)^i c
    auto r = rinf_mix(half_geometric(), RInfSeq::alternating_witness(Scalar(1)));
    REQUIRE(r.has_value());
    CHECK(*r == RInf::infinity());
}

TEST_CASE("rinf_mix: convergent witness cases match partial sums") {
    // for q = 1/4 both witnesses converge; compare closed form against the
    // truncated series plus a geometric tail bound
    auto q = PartitionOfOne::geometric(Scalar::ratio(1, 4));
    auto div = RInfSeq::divergent_witness(Scalar(3));
    auto alt = RInfSeq::alternating_witness(Scalar(1));
    for (const auto& s : {div, alt}) {
        auto r = rinf_mix(q, s);
        REQUIRE(r.has_value());
        REQUIRE(r->is_finite());
        double closed = r->value().to_double();
        double truncated = partial_sum(q, s, 48).to_double();
        CHECK(std::abs(closed - truncated) < 1e-9);
    }
}

TEST_CASE("rinf_mix: permutation invariance on finite support") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint32_t> idx = {1, 2, 3, 4};
        std::vector<Scalar> w = {Scalar::ratio(1, 8), Scalar::ratio(3, 8),
                                 Scalar::ratio(1, 4), Scalar::ratio(1, 4)};
        std::vector<RInf> vals;
        for (int i = 0; i < 4; ++i)
            vals.push_back(RInf(Scalar::ratio(
                static_cast<long long>(rng() % 17) - 8,
                static_cast<long long>(rng() % 7) + 1)));
        auto seq = RInfSeq::prefix_tail(vals, RInf(0));

        std::vector<PartitionOfOne::Entry> base;
        for (int i = 0; i < 4; ++i) base.push_back({idx[i], w[i]});
        auto r0 = rinf_mix(PartitionOfOne::finite_support(base), seq);

        // permute which value each weight lands on; the weighted terms are
        // the same multiset so the sum is unchanged
        std::vector<int> perm = {0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<RInf> pvals(4, RInf(0));
        std::vector<PartitionOfOne::Entry> pentries;
        for (int i = 0; i < 4; ++i) {
            pvals[i] = vals[perm[i]];
            pentries.push_back({idx[i], w[perm[i]]});
        }
        auto r1 = rinf_mix(PartitionOfOne::finite_support(pentries),
                           RInfSeq::prefix_tail(pvals, RInf(0)));
        REQUIRE(r0.has_value());
        REQUIRE(r1.has_value());
        CHECK(*r0 == *r1);
    }
}

TEST_CASE("rinf_mix: nonnegative monotone verdicts agree with partial-sum bounds") {
    // Divergent witness with u >= 0 has nonnegative terms; its partial sums
    // must exceed any fixed bound exactly when the verdict is infinity.
    auto p = half_geometric();
    auto s = RInfSeq::divergent_witness(Scalar(0));
    auto verdict = rinf_mix(p, s);
    REQUIRE(verdict.has_value());
    CHECK(*verdict == RInf::infinity());
    CHECK(partial_sum(p, s, 40) > Scalar(500));  // S_N = N(N+1)/2 for q=1/2

    // convergent regime: partial sums stay below the closed-form limit
    auto p4 = PartitionOfOne::geometric(Scalar::ratio(1, 4));
    auto limit = rinf_mix(p4, s);
    REQUIRE(limit.has_value());
    REQUIRE(limit->is_finite());
    for (std::uint32_t n : {8u, 16u, 32u})
        CHECK(partial_sum(p4, s, n) < limit->value());
}

TEST_CASE("EvalPolicy validation") {
    EvalPolicy p;
    p.max_terms = 4;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
