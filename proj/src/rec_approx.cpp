#include "arbormax/rec_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arbormax {

namespace {

constexpr __int128 kOverflow = static_cast<__int128>(1) << 126;

// base^exp * mult, or kOverflow once the product leaves 126 bits.
__int128 pow_mul_sat(long long base, int exp, long long mult) {
    __int128 acc = mult;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && acc >= kOverflow / base) return kOverflow;
        acc *= base;
    }
    return acc >= kOverflow ? kOverflow : acc;
}

// sign of x1^e1*m1 - x2^e2*m2; log fallback when both sides saturate
int cmp_pow_mul(long long x1, int e1, long long m1, long long x2, int e2, long long m2) {
    __int128 a = pow_mul_sat(x1, e1, m1);
    __int128 b = pow_mul_sat(x2, e2, m2);
    if (a < kOverflow && b < kOverflow) return a < b ? -1 : (a > b ? 1 : 0);
    if (a < kOverflow) return -1;
    if (b < kOverflow) return 1;
    long double la = e1 * std::log(static_cast<long double>(x1)) + std::log(static_cast<long double>(m1));
    long double lb = e2 * std::log(static_cast<long double>(x2)) + std::log(static_cast<long double>(m2));
    if (std::fabs(static_cast<double>(la - lb)) < 1e-12) return 0;
    return la < lb ? -1 : 1;
}

}  // namespace

SizeDivisor SizeDivisor::root_of(long long k, int d) {
    if (k < 1 || d < 1) throw std::invalid_argument("SizeDivisor: k and d must be positive");
    SizeDivisor q;
    q.kind_ = Kind::Root;
    q.k_ = k;
    q.d_ = d;
    return q;
}

SizeDivisor SizeDivisor::ratio(const Rational& q) {
    if (q.cmp(0) <= 0) throw std::invalid_argument("SizeDivisor: q must be positive");
    SizeDivisor s;
    s.kind_ = Kind::Ratio;
    s.q_ = q;
    return s;
}

bool SizeDivisor::greater_than_one() const {
    return kind_ == Kind::Root ? k_ >= 2 : q_.cmp(1) > 0;
}

double SizeDivisor::to_double() const {
    return kind_ == Kind::Root ? std::pow(static_cast<double>(k_), 1.0 / d_) : q_.to_double();
}

std::string SizeDivisor::str() const {
    if (kind_ == Kind::Root)
        return std::to_string(k_) + "^(1/" + std::to_string(d_) + ")";
    return q_.str();
}

int SizeDivisor::level_for(long long b) const {
    if (b < 1) throw std::invalid_argument("SizeDivisor: level needs b >= 1");
    for (int l = 0;; ++l) {
        // q^l >= b  <=>  k^l >= b^d (root form) or num^l >= b*den^l (ratio)
        int c = kind_ == Kind::Root ? cmp_pow_mul(k_, l, 1, b, d_, 1)
                                    : cmp_pow_mul(q_.num(), l, 1, q_.den(), l, b);
        if (c >= 0) return l;
        if (l > 512) throw std::logic_error("SizeDivisor: level search diverged");
    }
}

bool SizeDivisor::q_at_most(long long c, long long b) const {
    // c <= b/q  <=>  c^d*k <= b^d (root) or c*num <= b*den (ratio)
    if (kind_ == Kind::Root) return cmp_pow_mul(c, d_, k_, b, d_, 1) <= 0;
    return cmp_pow_mul(c, 1, q_.num(), b, 1, q_.den()) <= 0;
}

bool SizeDivisor::three_c_at_least(long long c, long long b) const {
    // 3c >= b/q  <=>  (3c)^d*k >= b^d (root) or 3c*num >= b*den (ratio)
    if (kind_ == Kind::Root) return cmp_pow_mul(3 * c, d_, k_, b, d_, 1) >= 0;
    return cmp_pow_mul(3 * c, 1, q_.num(), b, 1, q_.den()) >= 0;
}

std::pair<long long, long long> SizeDivisor::window(long long b, long long remaining) const {
    if (b < 1 || remaining < 1)
        throw std::invalid_argument("SizeDivisor: window needs b, remaining >= 1");
    if (q_at_most(remaining, b)) {
        // min{b/q, remaining} = remaining, an integer >= 1
        return {(remaining + 2) / 3, remaining};
    }
    if (!q_at_most(1, b)) return {1, 1};  // b/q < 1, clamp to x = 1
    // c_max = floor(b/q), c_min = ceil((b/q)/3); both sit in [1, remaining]
    long long lo = 1, hi = remaining;
    while (lo < hi) {  // largest c with c <= b/q
        long long mid = lo + (hi - lo + 1) / 2;
        if (q_at_most(mid, b)) lo = mid;
        else hi = mid - 1;
    }
    long long cmax = lo;
    lo = 1;
    hi = cmax;
    while (lo < hi) {  // smallest c with 3c >= b/q
        long long mid = lo + (hi - lo) / 2;
        if (three_c_at_least(mid, b)) hi = mid;
        else lo = mid + 1;
    }
    return {lo, cmax};
}

namespace {

struct RecContext {
    const Digraph* g;
    DistanceCache cache;
    const SizeDivisor* q;
    RecOptions opts;
    long long calls = 0;
};

OutTree base_case(const Digraph& g, const ValueOracle& f, Vertex v) {
    const auto& nb = g.out_neighbors(v);
    if (nb.empty()) return OutTree(v);  // no out-neighbors: the singleton is the only tree
    Vertex best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (Vertex w : nb) {
        double val = f.value(make_vertex_set({v, w}));
        if (val > best_value) {
            best_value = val;
            best = w;
        }
    }
    return OutTree::from_edges(v, {{v, best}});
}

OutTree rec_impl(RecContext& ctx, const ValueOracle& f, long long b, Vertex v,
                 AlgoTrace* trace) {
    ++ctx.calls;
    if (b == 1) return base_case(*ctx.g, f, v);

    OutTree sol(v);
    int horizon = static_cast<int>(std::min<long long>(b - 1, ctx.g->vertex_count()));
    auto W = ctx.cache.within(v, horizon);
    long long remaining = b;
    int iter = 0;
    while (remaining > 0) {
        ++iter;
        auto [cmin, cmax] = ctx.q->window(b, remaining);
        ResidualOracle residual(f, sol.vertices());

        std::optional<OutTree> best_tree;
        Vertex best_w = -1;
        long long best_c = 0;
        double best_gain = 0.0;
        for (Vertex w : W) {
            for (long long c = cmin; c <= cmax; ++c) {
                OutTree cand = rec_impl(ctx, residual, c, w, nullptr);
                double gain = residual.value(cand.vertices());
                bool better;
                if (!best_tree) {
                    better = true;
                } else {
                    // density by cross multiplication, then raw gain; the
                    // (w, c) sweep order settles remaining ties low-first
                    double lhs = gain * static_cast<double>(best_c);
                    double rhs = best_gain * static_cast<double>(c);
                    better = lhs > rhs || (lhs == rhs && gain > best_gain);
                }
                if (better) {
                    best_tree = std::move(cand);
                    best_w = w;
                    best_c = c;
                    best_gain = gain;
                }
            }
        }
        if (!ctx.opts.faithful && best_gain <= 0) {
            if (trace) trace->early_stopped = true;
            break;
        }
        auto edges = path_edges(ctx.cache.path(v, best_w));
        auto sub_edges = best_tree->edges_preorder();
        edges.insert(edges.end(), sub_edges.begin(), sub_edges.end());
        sol = graft(sol, edges);
        remaining -= best_c;
        if (trace) {
            trace->iterations.push_back(
                {iter, best_w, best_c, best_gain, remaining, cmin, cmax});
            trace->updates = iter;
        }
    }
    return sol;
}

}  // namespace

RecResult rec_approx(const Digraph& g, const ValueOracle& o, long long b, Vertex v,
                     const SizeDivisor& q, const RecOptions& opts) {
    if (b < 1) throw std::invalid_argument("rec_approx: size constraint must be at least 1");
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("rec_approx: root out of range");
    if (!q.greater_than_one()) throw std::invalid_argument("rec_approx: q must exceed 1");

    RecContext ctx{&g, DistanceCache(g), &q, opts};
    AlgoTrace trace;
    long long before = o.queries();
    OutTree tree = rec_impl(ctx, o, b, v, &trace);
    trace.subroutine_calls = ctx.calls - 1;
    trace.queries = o.queries() - before;
    return {std::move(tree), std::move(trace)};
}

RecResult rec_approx_d(const Digraph& g, const ValueOracle& o, long long k, Vertex v, int d,
                       const RecOptions& opts) {
    if (k < 1) throw std::invalid_argument("rec_approx_d: k must be at least 1");
    if (d < 1) throw std::invalid_argument("rec_approx_d: d must be at least 1");
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("rec_approx_d: root out of range");
    if (k == 1) {
        // q = k^(1/d) = 1 violates q > 1; the base case is exact for k = 1
        AlgoTrace trace;
        long long before = o.queries();
        OutTree tree = base_case(g, o, v);
        trace.queries = o.queries() - before;
        return {std::move(tree), std::move(trace)};
    }
    return rec_approx(g, o, k, v, SizeDivisor::root_of(k, d), opts);
}

}  // namespace arbormax
