#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbormax/graph.hpp"
#include "arbormax/oracle.hpp"
#include "arbormax/rational.hpp"

namespace arbormax {

// Size divisor q > 1 of the recursive density greedy. Comes in two exact
// forms: the d-th root of an integer (q = k^(1/d)) and an explicit rational;
// doubles convert to their exact dyadic rational. Recursion levels and
// per-iteration windows are computed by integer comparisons (128-bit) with a
// long-double log fallback when the operands overflow.
class SizeDivisor {
public:
    static SizeDivisor root_of(long long k, int d);
    static SizeDivisor ratio(const Rational& q);
    static SizeDivisor real(double q) { return ratio(Rational::from_double(q)); }

    bool greater_than_one() const;
    double to_double() const;
    std::string str() const;

    // smallest l >= 0 with q^l >= b
    int level_for(long long b) const;

    // window [c_min, c_max] for x = max(min(b/q, remaining), 1)
    std::pair<long long, long long> window(long long b, long long remaining) const;

private:
    SizeDivisor() = default;
    bool q_at_most(long long c, long long b) const;          // c <= b/q
    bool three_c_at_least(long long c, long long b) const;   // 3c >= b/q

    enum class Kind { Root, Ratio } kind_ = Kind::Ratio;
    long long k_ = 0;
    int d_ = 1;
    Rational q_{2};
};

struct IterationRecord {
    int index = 0;
    Vertex chosen_root = -1;
    long long chosen_size = 0;  // c_i; for greedy-radius the grafted subtree size
    double gain = 0.0;
    long long remaining = 0;    // budget after the update
    long long c_min = 0;
    long long c_max = 0;
};

struct AlgoTrace {
    std::vector<IterationRecord> iterations;
    int updates = 0;                 // t
    long long subroutine_calls = 0;  // recursive calls / subroutine invocations
    long long queries = 0;           // oracle queries attributed to this run
    bool early_stopped = false;
};

struct RecOptions {
    // Faithful mode disables the zero-gain early stop so the update-count
    // claim can be checked at trace level.
    bool faithful = false;
};

struct RecResult {
    OutTree tree;
    AlgoTrace trace;
};

// Recursive density greedy. Output is an out-tree rooted at v; for the
// recursion level l with q^(l-1) < b <= q^l the tested guarantees are
// f(S) >= f(T*)/(l+1) and m(S) <= (1 + 3*l*q + l*log_{3/2}(b/q)) * b.
RecResult rec_approx(const Digraph& g, const ValueOracle& o, long long b, Vertex v,
                     const SizeDivisor& q, const RecOptions& opts = {});

// rec_approx with q = k^(1/d), a (1/(d+1), (d+1)^2 k^(1/d))-approximation.
// k = 1 runs the base case directly since q would not exceed 1.
RecResult rec_approx_d(const Digraph& g, const ValueOracle& o, long long k, Vertex v, int d,
                       const RecOptions& opts = {});

}  // namespace arbormax
