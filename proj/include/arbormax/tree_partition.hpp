#pragma once

#include <utility>
#include <vector>

#include "arbormax/graph.hpp"
#include "arbormax/oracle.hpp"
#include "arbormax/rational.hpp"

namespace arbormax {

// Edge-disjoint partition of an out-tree into out-subtrees. Parts may share
// vertices at cut points; their edge sets are pairwise disjoint and union to
// the source tree's edges.
struct Partition {
    std::vector<OutTree> parts;
    OutTree source;
    Rational s;
};

// Splits t (m >= 2 edges) at a separator vertex into two edge-disjoint
// out-subtrees with sizes in [m/3, 2m/3]. Returned pair is ordered by edge
// count ascending; on equal sizes the separator-rooted part comes first.
std::pair<OutTree, OutTree> balanced_split(const OutTree& t);

// Every part satisfies s <= m(T_j) <= 3s. Worklist procedure: repeatedly
// balanced_split any member with more than 3s edges. Requires m(t) >= s.
Partition partition_balanced(const OutTree& t, const Rational& s);

// Every part satisfies 1 <= m(T_j) <= floor(2s) and the number of parts is
// at most floor(m/s). Post-order accumulation: child residual branches are
// grouped and cut once a group reaches s edges; a leftover root residual is
// merged into an adjacent part and re-split once if it overflows floor(2s).
// Requires m(t) >= s and s >= 1/2 (floor(2s) = 0 is unsatisfiable).
Partition partition_by_size(const OutTree& t, const Rational& s);

// Part with maximum oracle value; ties break to the lowest part index.
const OutTree& best_part(const Partition& p, const ValueOracle& o);

}  // namespace arbormax
