#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbormax/graph.hpp"

namespace arbormax {

// Vertex subsets handed to oracles are sorted and duplicate-free.
using VertexSet = std::vector<Vertex>;

VertexSet make_vertex_set(std::vector<Vertex> vs);
VertexSet set_union_of(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

// Strong value oracle over vertex subsets. Evaluation is deterministic and
// every value() call is counted; counting for derived views (residuals,
// memo) flows to the underlying family's counter. The counter is plain
// mutable state: use one oracle instance per solver run.
class ValueOracle {
public:
    virtual ~ValueOracle() = default;

    double value(const VertexSet& s) const {
        check_range(s);
        note_query();
        return evaluate(s);
    }

    // f(X | Y) = f(X u Y) - f(Y); costs two queries.
    double marginal(const VertexSet& x, const VertexSet& y) const {
        return value(set_union_of(x, y)) - value(y);
    }

    virtual int ground_size() const = 0;
    virtual long long queries() const = 0;

protected:
    virtual double evaluate(const VertexSet& s) const = 0;
    virtual void note_query() const = 0;
    void check_range(const VertexSet& s) const;
};

// Weighted coverage: each vertex covers a list of universe elements; the
// value of a set is the total weight of covered elements. Weights default
// to 1. With unit weights and a universe of at most 64 elements evaluation
// is a popcount over precomputed masks.
class CoverageFunction final : public ValueOracle {
public:
    CoverageFunction(int n, int universe_size, std::vector<std::vector<int>> elements,
                     std::vector<double> weights = {});

    int ground_size() const override { return n_; }
    long long queries() const override { return queries_; }
    int universe_size() const { return universe_; }
    const std::vector<std::vector<int>>& elements() const { return elements_; }

protected:
    double evaluate(const VertexSet& s) const override;
    void note_query() const override { ++queries_; }

private:
    int n_;
    int universe_;
    std::vector<std::vector<int>> elements_;
    std::vector<double> weights_;           // per element; empty means all 1
    std::vector<uint64_t> masks_;           // fast path when universe_ <= 64
    bool unit_weights_;
    mutable long long queries_ = 0;
};

// Modular function: value of a set is the sum of per-vertex weights.
class AdditiveFunction final : public ValueOracle {
public:
    explicit AdditiveFunction(std::vector<double> weights);

    int ground_size() const override { return static_cast<int>(weights_.size()); }
    long long queries() const override { return queries_; }

protected:
    double evaluate(const VertexSet& s) const override;
    void note_query() const override { ++queries_; }

private:
    std::vector<double> weights_;
    mutable long long queries_ = 0;
};

// Arbitrary set function given as a full value table over 2^n subsets,
// indexed by bitmask. Verifier fixture; not restricted to submodular.
class ExplicitFunction final : public ValueOracle {
public:
    ExplicitFunction(int n, std::vector<double> table);

    int ground_size() const override { return n_; }
    long long queries() const override { return queries_; }
    const std::vector<double>& table() const { return table_; }

protected:
    double evaluate(const VertexSet& s) const override;
    void note_query() const override { ++queries_; }

private:
    int n_;
    std::vector<double> table_;
    mutable long long queries_ = 0;
};

// View computing f(X | Y) for a fixed conditioning set Y. f(Y) is evaluated
// once at construction; afterwards each residual query costs one base
// query. Negative values (only possible for non-monotone bases) clamp to 0.
class ResidualOracle final : public ValueOracle {
public:
    ResidualOracle(const ValueOracle& base, VertexSet conditioning);

    int ground_size() const override { return base_->ground_size(); }
    long long queries() const override { return base_->queries(); }
    const VertexSet& conditioning() const { return cond_; }

protected:
    double evaluate(const VertexSet& s) const override;
    void note_query() const override {}  // base value() calls already count

private:
    const ValueOracle* base_;
    VertexSet cond_;
    double cond_value_;
};

// Cache keyed by the sorted vertex set; repeated sets cost no base query.
// Off by default everywhere, opt-in for the exact solver.
class MemoizedOracle final : public ValueOracle {
public:
    explicit MemoizedOracle(const ValueOracle& base) : base_(&base) {}

    int ground_size() const override { return base_->ground_size(); }
    long long queries() const override { return base_->queries(); }

protected:
    double evaluate(const VertexSet& s) const override {
        auto it = memo_.find(s);
        if (it == memo_.end()) it = memo_.emplace(s, base_->value(s)).first;
        return it->second;
    }
    void note_query() const override {}

private:
    const ValueOracle* base_;
    mutable std::map<VertexSet, double> memo_;
};

struct OracleWitness {
    VertexSet x;
    VertexSet y;
    Vertex v = -1;
    std::string describe() const;
};

struct VerifyReport {
    bool nonnegative = true;
    bool monotone = true;
    bool submodular = true;
    std::optional<VertexSet> nonnegative_witness;
    std::optional<OracleWitness> monotone_witness;   // y unused
    std::optional<OracleWitness> submodular_witness;
    bool ok() const { return nonnegative && monotone && submodular; }
};

// Exhaustive check of non-negativity, monotonicity and the diminishing
// marginal gain condition over the full ground set; n is capped at 16.
// A submodularity witness (X, Y, v) satisfies X subset Y, v not in Y and
// f(v | X) < f(v | Y).
VerifyReport verify_oracle(const ValueOracle& o, int n);

}  // namespace arbormax
