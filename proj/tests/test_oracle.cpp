#include <doctest.h>

#include "arbormax/oracle.hpp"
#include "corpus.hpp"

using namespace arbormax;
using arbormax::testing::random_coverage;

namespace {

// coverage {0:{1,2}, 1:{2,3}} over universe 4
CoverageFunction two_vertex_coverage() {
    return CoverageFunction(2, 4, {{1, 2}, {2, 3}});
}

}  // namespace

TEST_CASE("coverage values") {
    auto f = two_vertex_coverage();
    CHECK(f.value({0, 1}) == 3);
    CHECK(f.value({}) == 0);

    CoverageFunction weighted(1, 3, {{0, 2}}, {2.0, 0.5, 1.0});
    CHECK(weighted.value({0}) == 3.0);
    CHECK(AdditiveFunction({1, 2, 4}).value({}) == 0);

    CHECK_THROWS_AS(f.value({0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(CoverageFunction(1, 2, {{0, 7}}), std::invalid_argument);
    CHECK_THROWS_AS(CoverageFunction(1, 2, {{0}}, {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("coverage large-universe path matches the mask path") {
    SplitMix64 rng{123};
    std::vector<std::vector<int>> sets(5);
    for (auto& s : sets)
        for (int i = 0; i < 6; ++i) s.push_back(static_cast<int>(rng.below(100)));
    std::vector<double> weights(100);
    for (auto& w : weights) w = static_cast<double>(rng.below(5));
    CoverageFunction wide(5, 100, sets, weights);  // universe > 64: list path
    // spot value against direct recomputation
    std::set<int> covered;
    for (int e : sets[1]) covered.insert(e);
    for (int e : sets[3]) covered.insert(e);
    double want = 0;
    for (int e : covered) want += weights[e];
    CHECK(wide.value({1, 3}) == want);
}

TEST_CASE("marginal gains") {
    auto f = two_vertex_coverage();
    CHECK(f.marginal({1}, {0}) == 1);
    CHECK(f.marginal({0}, {0, 1}) == 0);  // x subset y
    CHECK(AdditiveFunction({1, 2, 4}).marginal({2}, {0, 1}) == 4);
}

TEST_CASE("residual views") {
    auto f = two_vertex_coverage();
    ResidualOracle empty(f, {});
    CHECK(empty.value({0}) == f.value({0}));

    ResidualOracle r0(f, {0});
    CHECK(r0.value({1}) == 1);
}

TEST_CASE("residual composition identity on a 5-vertex ground set") {
    SplitMix64 rng{77};
    for (int trial = 0; trial < 10; ++trial) {
        CoverageFunction f = random_coverage(rng, 5, 8, 2);
        VertexSet a, b;
        for (Vertex v = 0; v < 5; ++v) {
            if (rng.chance(0.4)) a.push_back(v);
            if (rng.chance(0.4)) b.push_back(v);
        }
        ResidualOracle inner(f, a);
        ResidualOracle outer(inner, b);
        VertexSet ab = set_union_of(a, b);
        for (uint32_t mask = 0; mask < 32; ++mask) {
            VertexSet x;
            for (Vertex v = 0; v < 5; ++v)
                if (mask & (1u << v)) x.push_back(v);
            CHECK(outer.value(x) == f.marginal(x, ab));
        }
    }
}

TEST_CASE("query counting") {
    auto f = two_vertex_coverage();
    CHECK(f.queries() == 0);
    f.value({0});
    CHECK(f.queries() == 1);
    f.marginal({0}, {1});
    CHECK(f.queries() == 3);

    ResidualOracle r(f, {0});  // conditioning evaluation counts
    CHECK(f.queries() == 4);
    r.value({1});
    CHECK(f.queries() == 5);
    CHECK(r.queries() == 5);

    MemoizedOracle memo(f);
    memo.value({0, 1});
    memo.value({0, 1});
    CHECK(f.queries() == 6);  // second hit served from the cache
}

TEST_CASE("residuals of non-monotone bases clamp at zero") {
    ExplicitFunction shrinking(2, {2, 1, 2, 2});  // f({0}) < f(empty)
    ResidualOracle r(shrinking, {});
    CHECK(r.value({0}) == 0);  // raw marginal is -1
    CHECK(r.value({1}) == 0);
    CHECK(r.value({0, 1}) == 0);
}

TEST_CASE("verify_oracle accepts the shipped families") {
    SplitMix64 rng{42};
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng.below(10));
        CoverageFunction f = random_coverage(rng, n, 2 * n, 1 + static_cast<int>(rng.below(3)));
        VerifyReport rep = verify_oracle(f, n);
        CHECK(rep.ok());
    }
    std::vector<double> w{0, 1.5, 2, 0.25};
    CHECK(verify_oracle(AdditiveFunction(w), 4).ok());
}

TEST_CASE("verify_oracle flags the planted supermodular pair") {
    ExplicitFunction planted(2, {0, 0, 0, 1});  // f({0})=f({1})=0, f({0,1})=1
    VerifyReport rep = verify_oracle(planted, 2);
    CHECK(rep.nonnegative);
    CHECK(rep.monotone);
    CHECK_FALSE(rep.submodular);
    REQUIRE(rep.submodular_witness);
    CHECK(rep.submodular_witness->x == VertexSet{});
    CHECK(rep.submodular_witness->y == VertexSet{1});
    CHECK(rep.submodular_witness->v == 0);
    CHECK(rep.submodular_witness->describe() == "X={} Y={1} v=0");
}

TEST_CASE("verify_oracle flags non-monotone and negative tables") {
    ExplicitFunction shrinking(2, {2, 1, 2, 2});  // f({0}) < f(empty)
    VerifyReport rep = verify_oracle(shrinking, 2);
    CHECK_FALSE(rep.monotone);
    REQUIRE(rep.monotone_witness);
    CHECK(rep.monotone_witness->x == VertexSet{});
    CHECK(rep.monotone_witness->v == 0);

    ExplicitFunction negative(1, {0, -1});
    CHECK_FALSE(verify_oracle(negative, 1).nonnegative);
}

TEST_CASE("verify_oracle refuses oversized ground sets") {
    AdditiveFunction f(std::vector<double>(20, 1.0));
    CHECK_THROWS_AS(verify_oracle(f, 17), std::invalid_argument);
}

TEST_CASE("residuals of coverage stay monotone submodular") {
    SplitMix64 rng{4242};
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng.below(6));
        CoverageFunction f = random_coverage(rng, n, 2 * n, 2);
        VertexSet cond;
        for (Vertex v = 0; v < n; ++v)
            if (rng.chance(0.3)) cond.push_back(v);
        ResidualOracle r(f, cond);
        CHECK(verify_oracle(r, n).ok());
    }
}
