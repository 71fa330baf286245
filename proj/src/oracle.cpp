#include "arbormax/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

namespace arbormax {

VertexSet make_vertex_set(std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

VertexSet set_union_of(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void ValueOracle::check_range(const VertexSet& s) const {
    assert(std::is_sorted(s.begin(), s.end()));
    if (s.empty()) return;
    if (s.front() < 0 || s.back() >= ground_size())
        throw std::invalid_argument("oracle: vertex out of range");
}

CoverageFunction::CoverageFunction(int n, int universe_size,
                                   std::vector<std::vector<int>> elements,
                                   std::vector<double> weights)
    : n_(n), universe_(universe_size), elements_(std::move(elements)),
      weights_(std::move(weights)) {
    if (static_cast<int>(elements_.size()) != n_)
        throw std::invalid_argument("coverage: need one element list per vertex");
    if (!weights_.empty() && static_cast<int>(weights_.size()) != universe_)
        throw std::invalid_argument("coverage: need one weight per element");
    for (double w : weights_)
        if (w < 0) throw std::invalid_argument("coverage: negative element weight");
    for (auto& lst : elements_) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        for (int e : lst)
            if (e < 0 || e >= universe_)
                throw std::invalid_argument("coverage: element id out of range");
    }
    unit_weights_ = weights_.empty();
    if (universe_ <= 64) {
        masks_.resize(n_, 0);
        for (int v = 0; v < n_; ++v)
            for (int e : elements_[v]) masks_[v] |= uint64_t{1} << e;
    }
}

double CoverageFunction::evaluate(const VertexSet& s) const {
    if (!masks_.empty()) {
        uint64_t covered = 0;
        for (Vertex v : s) covered |= masks_[v];
        if (unit_weights_) return static_cast<double>(std::popcount(covered));
        double total = 0;
        while (covered) {
            int e = std::countr_zero(covered);
            covered &= covered - 1;
            total += weights_[e];
        }
        return total;
    }
    std::vector<char> covered(universe_, 0);
    for (Vertex v : s)
        for (int e : elements_[v]) covered[e] = 1;
    double total = 0;
    for (int e = 0; e < universe_; ++e)
        if (covered[e]) total += unit_weights_ ? 1.0 : weights_[e];
    return total;
}

AdditiveFunction::AdditiveFunction(std::vector<double> weights) : weights_(std::move(weights)) {
    for (double w : weights_)
        if (w < 0) throw std::invalid_argument("additive: negative vertex weight");
}

double AdditiveFunction::evaluate(const VertexSet& s) const {
    double total = 0;
    for (Vertex v : s) total += weights_[v];
    return total;
}

ExplicitFunction::ExplicitFunction(int n, std::vector<double> table)
    : n_(n), table_(std::move(table)) {
    if (n_ < 0 || n_ > 16) throw std::invalid_argument("explicit: ground set must have n <= 16");
    if (table_.size() != (size_t{1} << n_))
        throw std::invalid_argument("explicit: table must have 2^n entries");
}

double ExplicitFunction::evaluate(const VertexSet& s) const {
    uint32_t mask = 0;
    for (Vertex v : s) mask |= uint32_t{1} << v;
    return table_[mask];
}

ResidualOracle::ResidualOracle(const ValueOracle& base, VertexSet conditioning)
    : base_(&base), cond_(std::move(conditioning)), cond_value_(base.value(cond_)) {}

double ResidualOracle::evaluate(const VertexSet& s) const {
    double v = base_->value(set_union_of(s, cond_)) - cond_value_;
    return v < 0 ? 0 : v;
}

std::string OracleWitness::describe() const {
    std::ostringstream os;
    auto dump = [&](const VertexSet& s) {
        os << "{";
        for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        os << "}";
    };
    os << "X=";
    dump(x);
    os << " Y=";
    dump(y);
    os << " v=" << v;
    return os.str();
}

VerifyReport verify_oracle(const ValueOracle& o, int n) {
    if (n < 0 || n > 16) throw std::invalid_argument("verify_oracle: requires n <= 16");
    if (n > o.ground_size()) throw std::invalid_argument("verify_oracle: n beyond ground set");

    const uint32_t full = uint32_t{1} << n;
    std::vector<double> val(full);
    std::vector<VertexSet> sets(full);
    for (uint32_t m = 0; m < full; ++m) {
        VertexSet s;
        for (int v = 0; v < n; ++v)
            if (m & (uint32_t{1} << v)) s.push_back(v);
        val[m] = o.value(s);
        sets[m] = std::move(s);
    }

    VerifyReport rep;
    for (uint32_t m = 0; m < full && rep.nonnegative; ++m) {
        if (val[m] < 0) {
            rep.nonnegative = false;
            rep.nonnegative_witness = sets[m];
        }
    }
    for (uint32_t m = 0; m < full && rep.monotone; ++m) {
        for (int v = 0; v < n && rep.monotone; ++v) {
            if (m & (uint32_t{1} << v)) continue;
            if (val[m | (uint32_t{1} << v)] < val[m]) {
                rep.monotone = false;
                rep.monotone_witness = OracleWitness{sets[m], {}, v};
            }
        }
    }
    // f(v | X) >= f(v | Y) for all X subset Y, v outside Y. Checking adjacent
    // pairs Y = X u {w} is equivalent and yields a valid (X, Y, v) witness.
    for (uint32_t m = 0; m < full && rep.submodular; ++m) {
        for (int v = 0; v < n && rep.submodular; ++v) {
            uint32_t vb = uint32_t{1} << v;
            if (m & vb) continue;
            for (int w = 0; w < n; ++w) {
                uint32_t wb = uint32_t{1} << w;
                if (w == v || (m & wb)) continue;
                double gain_small = val[m | vb] - val[m];
                double gain_large = val[m | wb | vb] - val[m | wb];
                if (gain_small < gain_large) {
                    rep.submodular = false;
                    rep.submodular_witness = OracleWitness{sets[m], sets[m | wb], v};
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace arbormax
