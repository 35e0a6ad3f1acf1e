#pragma once

#include <vector>

#include "specfrac/dirac.hpp"
#include "specfrac/fractal_spec.hpp"

namespace specfrac {

// Interval endpoints as vertices, one edge per interval of the truncated
// triple. The Connes supremum over the Lipschitz ball of the commutator
// seminorm is the shortest-path distance of this graph (difference
// constraints |f(u)-f(v)| <= |u-v| dualize to shortest paths).
struct DistanceGraph {
    TripleKind kind = TripleKind::full;
    int level = 0;
    std::vector<double> vertices;                  // sorted ascending
    std::vector<std::vector<std::pair<int, double>>> adjacency;
    // every cell endpoint of the truncation, whether or not an interval of
    // this kind touches it; points here but not among the vertices are
    // disconnected (distance +inf)
    std::vector<double> lattice;

    int vertex_index(double x) const;  // -1 if absent (1e-13 merge radius)
    bool in_lattice(double x) const;
};

DistanceGraph build_graph(const FractalSpec& spec, TripleKind kind, int level,
                          std::size_t budget = kDefaultCellBudget);

// Shortest-path distance; +inf when the pair is disconnected at this
// truncation. Unknown points (outside the endpoint lattice) are an error.
double connes_distance(const DistanceGraph& g, double x, double y);
std::vector<double> connes_distances_from(const DistanceGraph& g, double x);

struct GapSumBound {
    double bound = 0.0;    // sum of lacuna lengths inside [x,y] up to the level
    double deficit = 0.0;  // (y-x) - bound: the level-n cell mass inside [x,y]
};

GapSumBound lacunary_gap_sum_bound(const FractalSpec& spec, double x, double y, int level,
                                   std::size_t budget = kDefaultCellBudget);

} // namespace specfrac
