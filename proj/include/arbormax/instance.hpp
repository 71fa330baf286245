#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbormax/graph.hpp"
#include "arbormax/oracle.hpp"
#include "arbormax/rec_approx.hpp"
#include "arbormax/reductions.hpp"

namespace arbormax {

// Parse or validation failure; message lists every offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk problem description. Objectives: weighted coverage, additive, or
// an explicit 2^n value table (verifier fixture, not restricted to
// submodular).
struct Instance {
    enum class Objective { Coverage, Additive, Explicit };

    bool directed = false;
    int n = 0;
    std::vector<Edge> edges;
    Objective objective = Objective::Coverage;
    int universe_size = 0;
    std::vector<std::vector<int>> coverage_sets;   // per vertex
    std::vector<double> element_weights;           // optional, per element
    std::vector<double> vertex_weights;            // additive
    std::vector<double> table;                     // explicit, 2^n entries
    int k = 1;
    std::optional<Vertex> root;

    std::unique_ptr<ValueOracle> make_oracle() const;
    Digraph graph() const;  // bidirected when the instance is undirected
};

Instance parse_instance(const std::string& bytes);
std::string emit_instance(const Instance& inst);

// Machine-readable result of a solver run. wall_time_ms is the only field
// excluded from determinism comparisons.
struct SolveReport {
    std::string algorithm;
    int k = 0;
    std::optional<int> d;
    std::optional<double> q;
    std::optional<std::string> delta;  // exact rational, e.g. "1/2"
    std::optional<int> radius;
    std::optional<Vertex> root;
    bool faithful = false;
    std::optional<std::string> subroutine;

    Vertex solution_root = -1;
    std::vector<Vertex> vertices;
    std::vector<Edge> tree_edges;  // (parent, child)
    double value = 0.0;
    int m = 0;
    bool within_k = false;
    std::optional<bool> within_delta;

    long long total_queries = 0;
    std::vector<GuessRecord> per_guess;
    double wall_time_ms = 0.0;

    std::optional<AlgoTrace> trace;
    std::optional<double> opt;     // filled when the exact solver also ran
    std::optional<int> r_star;
    std::optional<double> ratio;
    std::optional<double> epsilon;
    std::optional<double> sharp_bound;    // 1 / (16 (d+1)^3 r*^(1/d))
    std::optional<double> epsilon_bound;  // eps^3 / (16 (1+2 eps)^3 r*^eps)
};

std::string emit_report(const SolveReport& rep);

// Drops wall_time_ms so two reports can be compared byte for byte.
std::string report_determinism_key(const std::string& report_bytes);

}  // namespace arbormax
