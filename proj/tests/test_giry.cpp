#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scvx/measure.hpp"

using namespace scvx;

namespace {

MSpacePtr two_point() {
    return std::make_shared<FinMeasurableSpace>(
        FinMeasurableSpace::discrete({"x0", "x1"}));
}

MSpacePtr three_point() {
    return std::make_shared<FinMeasurableSpace>(
        FinMeasurableSpace::discrete({"a", "b", "c"}));
}

// all rational measures with denominator exactly den over the atoms of sp
std::vector<Measure> grid_measures(const MSpacePtr& sp, unsigned den) {
    std::vector<Measure> out;
    std::size_t n = sp->atoms().size();
    std::vector<unsigned> counts(n, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == n) {
            counts[i] = left;
            std::vector<Scalar> w;
            for (unsigned c : counts) w.push_back(Scalar::ratio(c, den));
            out.push_back(Measure::from_atom_weights(sp, std::move(w)));
            return;
        }
        for (unsigned c = 0; c <= left; ++c) {
            counts[i] = c;
            self(self, i + 1, left - c);
        }
    };
    rec(rec, 0, den);
    return out;
}

}  // namespace

TEST_CASE("dirac measures") {
    auto sp = two_point();
    Measure d = dirac(sp, "x0");
    CHECK(d(0b01) == Scalar(1));
    CHECK(d(0) == Scalar(0));
    CHECK(d(0b10) == Scalar(0));
    CHECK(d.is_dirac());
    CHECK_THROWS_AS(dirac(sp, "nope"), UnknownAtom);
}

TEST_CASE("measure validation") {
    auto sp = two_point();
    CHECK_THROWS_AS(Measure::from_atom_weights(sp, {Scalar::ratio(1, 2)}),
                    ValidationError);
    CHECK_THROWS_AS(
        Measure::from_atom_weights(sp, {Scalar::ratio(1, 2), Scalar::ratio(1, 3)}),
        ValidationError);
    CHECK_THROWS_AS(Measure::from_atom_weights(sp, {Scalar(-1), Scalar(2)}),
                    ValidationError);
    Measure P = Measure::from_atom_weights(sp, {Scalar::ratio(1, 3), Scalar::ratio(2, 3)});
    CHECK_FALSE(P.is_dirac());
    CHECK_THROWS_AS(
        ([&] {
            auto gen = std::make_shared<FinMeasurableSpace>(
                FinMeasurableSpace::generated({"a", "b"}, {}));
            return Measure::from_atom_weights(gen, {Scalar(1)})(0b01);
        }()),
        ValidationError);  // {a} not in the trivial sigma-algebra
}

TEST_CASE("pushforward") {
    auto X = two_point();
    auto Y = two_point();
    Measure P = Measure::from_atom_weights(X, {Scalar::ratio(1, 3), Scalar::ratio(2, 3)});

    // constant map to y0
    MeasurableMap cst(X, Y, {0, 0});
    CHECK(pushforward(cst, P) == dirac(Y, "x0"));

    // identity
    MeasurableMap idm(X, Y, {0, 1});
    CHECK(pushforward(idm, P).atom_weights() == P.atom_weights());

    // merge a,b into one point of a 1-point space
    auto one = std::make_shared<FinMeasurableSpace>(FinMeasurableSpace::discrete({"y"}));
    MeasurableMap merge(X, one, {0, 0});
    Measure Q = pushforward(merge, P);
    CHECK(Q(0b1) == Scalar(1));

    // a non-measurable preimage is rejected with the witness set
    auto coarse = std::make_shared<FinMeasurableSpace>(
        FinMeasurableSpace::generated({"a", "b"}, {}));
    CHECK_THROWS_AS(MeasurableMap(coarse, Y, {0, 1}), NotMeasurable);
}

TEST_CASE("measure_mix") {
    auto X = two_point();
    Measure da = dirac(X, "x0");
    Measure db = dirac(X, "x1");

    Measure half = measure_mix(
        PartitionOfOne::finite_support({{1, Scalar::ratio(1, 2)}, {2, Scalar::ratio(1, 2)}}),
        {da, db});
    CHECK(half(0b01) == Scalar::ratio(1, 2));

    CHECK(measure_mix(PartitionOfOne::delta(2), {da, db}) == db);

    // Geometric(1/2) over (da, db, db, ...): weight on db is 1/4 + tail 1/4
    Measure g = measure_mix(PartitionOfOne::geometric(Scalar::ratio(1, 2)), {da, db});
    CHECK(g(0b10) == Scalar::ratio(1, 2));
    CHECK(g(0b01) == Scalar::ratio(1, 2));

    auto Y = three_point();
    CHECK_THROWS_AS(measure_mix(PartitionOfOne::delta(1), {dirac(Y, "a"), da}),
                    SpaceMismatch);
}

TEST_CASE("integrate") {
    auto X = three_point();
    Measure P = Measure::from_atom_weights(
        X, {Scalar::ratio(1, 6), Scalar::ratio(1, 3), Scalar::ratio(1, 2)});

    // indicator integrates to the measure of the set
    for (std::uint64_t U : X->sigma())
        CHECK(integrate(MeasurableFn::indicator(X, U), P) == RInf::finite(P(U)));

    CHECK(integrate(MeasurableFn::constant(X, RInf(7)), P) == RInf::finite(Scalar(7)));

    // 0 * inf = 0: infinity on a null atom is invisible
    Measure Q = Measure::from_atom_weights(X, {Scalar(0), Scalar(1), Scalar(0)});
    MeasurableFn f(X, {RInf::infinity(), RInf(2), RInf(3)});
    CHECK(integrate(f, Q) == RInf::finite(Scalar(2)));
    CHECK(integrate(f, P) == RInf::infinity());
}

TEST_CASE("integrate is affine in the measure") {
    auto X = three_point();
    auto Ps = grid_measures(X, 4);
    MeasurableFn f(X, {RInf(1), RInf::finite(Scalar::ratio(-3, 2)), RInf(5)});
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 200; ++trial) {
        const Measure& A = Ps[rng() % Ps.size()];
        const Measure& B = Ps[rng() % Ps.size()];
        auto alpha = PartitionOfOne::finite_support(
            {{1, Scalar::ratio(1, 4)}, {2, Scalar::ratio(3, 4)}});
        Measure M = measure_mix(alpha, {A, B});
        RInf lhs = integrate(f, M);
        auto rhs = rinf_mix(alpha, RInfSeq::prefix_tail(
                                       {integrate(f, A), integrate(f, B)}, RInf(0)));
        REQUIRE(rhs.has_value());
        CHECK(lhs == *rhs);
    }
}

TEST_CASE("multiply") {
    auto X = two_point();
    Measure P = Measure::from_atom_weights(X, {Scalar::ratio(1, 4), Scalar::ratio(3, 4)});
    Measure Q = Measure::from_atom_weights(X, {Scalar::ratio(1, 2), Scalar::ratio(1, 2)});

    CHECK(multiply(MetaMeasure({{P, Scalar(1)}})) == P);

    Measure m = multiply(MetaMeasure({{P, Scalar::ratio(1, 2)}, {Q, Scalar::ratio(1, 2)}}));
    CHECK(m(0b01) == Scalar::ratio(3, 8));

    CHECK(multiply(MetaMeasure({{P, Scalar::ratio(1, 2)}, {P, Scalar::ratio(1, 2)}})) == P);
}

TEST_CASE("monad laws on the rational grid") {
    auto X = three_point();
    auto Ps = grid_measures(X, 4);

    // mu(delta_P) = P
    for (const Measure& P : Ps) CHECK(multiply(MetaMeasure({{P, Scalar(1)}})) == P);

    // mu(sum w_j delta_{P_j}) is the w-mixture: check against measure_mix
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const Measure& A = Ps[rng() % Ps.size()];
        const Measure& B = Ps[rng() % Ps.size()];
        auto alpha = PartitionOfOne::finite_support(
            {{1, Scalar::ratio(1, 3)}, {2, Scalar::ratio(2, 3)}});
        CHECK(multiply(MetaMeasure({{A, Scalar::ratio(1, 3)}, {B, Scalar::ratio(2, 3)}})) ==
              measure_mix(alpha, {A, B}));
    }

    // associativity at depth 2: flattening outer weights first or averaging
    // inner measures first agree
    for (int trial = 0; trial < 50; ++trial) {
        const Measure& A = Ps[rng() % Ps.size()];
        const Measure& B = Ps[rng() % Ps.size()];
        const Measure& C = Ps[rng() % Ps.size()];
        MetaMeasure inner1({{A, Scalar::ratio(1, 2)}, {B, Scalar::ratio(1, 2)}});
        MetaMeasure inner2({{C, Scalar(1)}});
        Scalar w1 = Scalar::ratio(1, 4), w2 = Scalar::ratio(3, 4);
        // mu after pushing mu inside
        Measure lhs = multiply(MetaMeasure({{multiply(inner1), w1}, {multiply(inner2), w2}}));
        // mu after flattening the outer layer
        Measure rhs = multiply(MetaMeasure({{A, w1 * Scalar::ratio(1, 2)},
                                            {B, w1 * Scalar::ratio(1, 2)},
                                            {C, w2}}));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("phi and phi_inv are mutually inverse") {
    auto X = three_point();
    for (const Measure& P : grid_measures(X, 4)) CHECK(phi_inv(phi(P)) == P);

    Measure d = dirac(X, "b");
    FunctionalTable t = phi(d);
    for (std::uint64_t U : X->sigma())
        CHECK(t.at(U) == ((U >> 1) & 1 ? Scalar(1) : Scalar(0)));
}

TEST_CASE("phi_inv rejects malformed functionals") {
    auto X = two_point();
    FunctionalTable J = phi(dirac(X, "x0"));

    auto bad = J;
    bad.values[X->full_mask()] = Scalar::ratio(9, 10);
    CHECK_THROWS_AS(phi_inv(bad), NotWeaklyAveraging);

    auto neg = J;
    neg.values[0b10] = Scalar(-1);
    CHECK_THROWS_AS(phi_inv(neg), NotWeaklyAveraging);

    // break additivity: J({x0,x1}) != J({x0}) + J({x1})
    auto nadd = phi(Measure::from_atom_weights(
        X, {Scalar::ratio(1, 2), Scalar::ratio(1, 2)}));
    nadd.values[0b01] = Scalar::ratio(1, 4);
    CHECK_THROWS_AS(phi_inv(nadd), NotAdditive);
}

TEST_CASE("simple_approx dyadic cells") {
    auto X = two_point();
    MeasurableFn m(X, {RInf::finite(Scalar::ratio(3, 5)), RInf(0)});

    SimpleFunction s2 = simple_approx(m, 2);
    CHECK(s2.value_at_atom(0) == Scalar::ratio(1, 2));
    CHECK(s2.value_at_atom(1) == Scalar(0));

    SimpleFunction s4 = simple_approx(m, 4);
    CHECK(s4.value_at_atom(0) == Scalar::ratio(9, 16));

    MeasurableFn zero = MeasurableFn::constant(X, RInf(0));
    for (std::uint32_t n = 1; n <= 5; ++n)
        CHECK(simple_approx(zero, n).value_at_atom(0) == Scalar(0));

    CHECK_THROWS_AS(simple_approx(MeasurableFn::constant(X, RInf(2)), 3), OutOfRange);
    CHECK_THROWS_AS(simple_approx(MeasurableFn::constant(X, RInf::infinity()), 3),
                    OutOfRange);
}

TEST_CASE("simple_approx monotone ladder and integral bound") {
    auto X = three_point();
    std::mt19937_64 rng(2);
    auto Ps = grid_measures(X, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RInf> vals;
        for (int i = 0; i < 3; ++i)
            vals.push_back(RInf::finite(
                Scalar::ratio(static_cast<long long>(rng() % 1000), 1000)));
        MeasurableFn m(X, vals);
        const Measure& P = Ps[rng() % Ps.size()];
        for (std::uint32_t n = 1; n <= 10; ++n) {
            SimpleFunction lo = simple_approx(m, n);
            Scalar step = Scalar::ratio(1, 1u << n);
            for (std::size_t k = 0; k < 3; ++k) {
                Scalar v = m.at_atom(k).value();
                CHECK(lo.value_at_atom(k) <= v);
                CHECK(v < lo.value_at_atom(k) + step);
                if (n < 10)
                    CHECK(lo.value_at_atom(k) <=
                          simple_approx(m, n + 1).value_at_atom(k));
            }
            RInf gap = integrate(m, P);
            RInf approx = integrate(lo.as_fn(X), P);
            CHECK((gap.value() - approx.value()).abs() <= step);
            CHECK(approx.value() <= gap.value());
        }
    }
}
