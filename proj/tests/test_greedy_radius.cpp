#include <doctest.h>

#include "arbormax/greedy_radius.hpp"
#include "corpus.hpp"

using namespace arbormax;
using arbormax::testing::solver_corpus;

namespace {

// star 0 -> {1,2,3}, coverage {1:{1,2}, 2:{2,3}, 3:{4}}, vertex 0 covers nothing
struct StarFixture {
    Digraph g{4, {{0, 1}, {0, 2}, {0, 3}}};
    CoverageFunction f{4, 5, {{}, {1, 2}, {2, 3}, {4}}};
};

}  // namespace

TEST_CASE("hand trace on the star instance") {
    StarFixture fx;
    auto res = greedy_radius(fx.g, fx.f, 2, 0, 1, exact_subroutine());
    CHECK(res.tree.vertices() == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(res.tree.edge_count() == 3);
    CHECK(fx.f.value(res.tree.vertices()) == 4);
    CHECK(res.tree.edge_count() <= 4 * 2);  // 4 beta k with beta = 1

    // t = floor(2k/r) = 4; gains run 2, 1, 1, then 0 and the run stops early
    REQUIRE(res.trace.updates == 3);
    CHECK(res.trace.iterations[0].gain == 2);
    CHECK(res.trace.iterations[1].gain == 1);
    CHECK(res.trace.iterations[2].gain == 1);
    CHECK(res.trace.early_stopped);
    for (const auto& it : res.trace.iterations) CHECK(it.chosen_root == 0);  // W = {0}

    double opt = exact_dcsm(fx.g, fx.f, 2).value;
    CHECK(opt == 3);
    CHECK(fx.f.value(res.tree.vertices()) * 2 >= opt);

    // faithful mode runs all four iterations
    auto faithful = greedy_radius(fx.g, fx.f, 2, 0, 1, exact_subroutine(), {true, true});
    CHECK(faithful.trace.updates == 4);
    CHECK(fx.f.value(faithful.tree.vertices()) == 4);
}

TEST_CASE("k = r: the first iteration already matches the best rooted subtree") {
    auto corpus = solver_corpus(15, 5150);
    for (const auto& inst : corpus) {
        if (inst.n > 8) continue;
        auto oracle = inst.make_oracle();
        Digraph g = inst.graph();
        Vertex v = *inst.root;
        int r = inst.k;
        auto res = greedy_radius(g, *oracle, inst.k, v, r, exact_subroutine());

        // best value any (w, size <= r) exact call could reach in iteration 1
        ResidualOracle residual(*oracle, {v});
        double best = 0;
        for (Vertex w : vertices_within(g, v, r - 1)) {
            ExactResult ex = exact_drcsm(g, residual, r, w);
            best = std::max(best, ex.value);
        }
        if (best > 0) {
            REQUIRE(!res.trace.iterations.empty());
            CHECK(res.trace.iterations[0].gain == best);
        } else {
            CHECK(res.trace.iterations.empty());  // zero-gain early stop
        }

        double opt_r = exact_drcsm(g, *oracle, inst.k, v, r).value;
        CHECK(oracle->value(res.tree.vertices()) * 2 >= opt_r - 1e-9);
    }
}

TEST_CASE("singleton graph") {
    Digraph g(1, {});
    AdditiveFunction f({2.5});
    auto res = greedy_radius(g, f, 1, 0, 1, exact_subroutine());
    CHECK(res.tree.vertices() == std::vector<Vertex>{0});
    CHECK(f.value(res.tree.vertices()) == 2.5);
}

TEST_CASE("parameter and contract errors") {
    StarFixture fx;
    CHECK_THROWS_AS(greedy_radius(fx.g, fx.f, 2, 0, 0, exact_subroutine()),
                    std::invalid_argument);
    CHECK_THROWS_AS(greedy_radius(fx.g, fx.f, 2, 0, 3, exact_subroutine()),
                    std::invalid_argument);
    CHECK_THROWS_AS(greedy_radius(fx.g, fx.f, 2, 9, 1, exact_subroutine()),
                    std::invalid_argument);

    Subroutine wrong_root{"wrong-root",
                          [](const Digraph&, const ValueOracle&, long long, Vertex w) {
                              return OutTree(w == 0 ? 1 : 0);
                          },
                          nullptr,
                          nullptr};
    CHECK_THROWS_AS(greedy_radius(fx.g, fx.f, 2, 0, 1, wrong_root), std::runtime_error);

    Subroutine oversize{"oversize",
                        [](const Digraph& g, const ValueOracle&, long long, Vertex w) {
                            std::vector<Edge> edges;
                            for (Vertex u : g.out_neighbors(w)) edges.push_back({w, u});
                            return OutTree::from_edges(w, edges);
                        },
                        nullptr,
                        [](long long) { return 0.1; }};  // declares beta far below reality
    CHECK_THROWS_AS(greedy_radius(fx.g, fx.f, 2, 0, 1, oversize), std::runtime_error);
}

TEST_CASE("violation bound, gain signs and path radius across the corpus") {
    auto corpus = solver_corpus(25, 616);
    for (const auto& inst : corpus) {
        auto oracle = inst.make_oracle();
        Digraph g = inst.graph();
        Vertex v = *inst.root;
        for (int r = 1; r <= inst.k; ++r) {
            for (bool use_exact : {true, false}) {
                Subroutine sub = use_exact ? exact_subroutine() : recapprox_subroutine(1);
                auto res = greedy_radius(g, *oracle, inst.k, v, r, sub);
                double beta = use_exact ? 1.0 : 4.0 * std::pow(static_cast<double>(r), 1.0);
                CHECK(res.tree.edge_count() <= 4 * beta * inst.k + 1e-9);
                CHECK(res.tree.root() == v);
                CHECK(res.tree.is_subgraph_of(g));

                auto within = vertices_within(g, v, r - 1);
                for (const auto& it : res.trace.iterations) {
                    CHECK(it.gain >= 0);
                    bool in_ball = std::binary_search(within.begin(), within.end(),
                                                      it.chosen_root);
                    CHECK(in_ball);  // connecting paths stay within length r - 1
                }
                // subroutine call accounting: at most floor(2k/r) * |W|
                long long t = 2 * inst.k / r;
                CHECK(res.trace.subroutine_calls <=
                      t * static_cast<long long>(within.size()));
            }
        }
    }
}

TEST_CASE("lazy mode matches the full sweep with the exact subroutine") {
    auto corpus = solver_corpus(12, 90210);
    for (const auto& inst : corpus) {
        Digraph g = inst.graph();
        for (int r = 1; r <= inst.k; ++r) {
            auto o1 = inst.make_oracle();
            auto o2 = inst.make_oracle();
            auto eager = greedy_radius(g, *o1, inst.k, *inst.root, r, exact_subroutine());
            GreedyOptions lazy_opts;
            lazy_opts.lazy = true;
            auto lazy = greedy_radius(g, *o2, inst.k, *inst.root, r, exact_subroutine(),
                                      lazy_opts);
            CHECK(lazy.tree.vertices() == eager.tree.vertices());
            CHECK(lazy.tree.parent_map() == eager.tree.parent_map());
            CHECK(lazy.trace.subroutine_calls <= eager.trace.subroutine_calls);
        }
    }
}

TEST_CASE("partial solutions never lose value") {
    auto corpus = solver_corpus(10, 31337);
    for (const auto& inst : corpus) {
        auto oracle = inst.make_oracle();
        Digraph g = inst.graph();
        auto res = greedy_radius(g, *oracle, inst.k, *inst.root, 1, exact_subroutine(),
                                 {true, true});
        // replay the grafts and confirm monotone value growth
        OutTree partial(*inst.root);
        double prev = oracle->value(partial.vertices());
        double base = prev;
        double gain_total = 0;
        for (const auto& it : res.trace.iterations) gain_total += it.gain;
        double final_value = oracle->value(res.tree.vertices());
        CHECK(final_value >= prev - 1e-12);
        CHECK(final_value >= base + gain_total - 1e-9);  // path vertices only add
    }
}
