#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arbormax/instance.hpp"

namespace arbormax {

// Seeded deterministic RNG with a stable algorithm, so generated instances
// are byte-identical across platforms and standard library versions.
struct SplitMix64 {
    uint64_t state = 0;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }
    bool chance(double p) {
        return static_cast<long double>(next()) < p * 18446744073709551616.0L;
    }
};

struct GenSpec {
    std::string model = "erdos";  // erdos | path | star | grid | random-out-tree
    int n = 1;
    double p = 0.5;      // erdos edge probability
    bool directed = true;
    std::string objective = "coverage";  // coverage | additive
    int universe_size = 0;               // 0 defaults to 2n
    int elements_per_vertex = 2;
    int max_weight = 3;  // additive weights drawn from {0, ..., max_weight}
    int k = 1;
    std::optional<Vertex> root;
    uint64_t seed = 0;
};

Instance gen_random(const GenSpec& spec);

}  // namespace arbormax
