#include "specfrac/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace specfrac {

namespace {
constexpr double kMergeRadius = 1e-13;
}

int DistanceGraph::vertex_index(double x) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), x - kMergeRadius);
    if (it == vertices.end() || std::fabs(*it - x) > kMergeRadius) return -1;
    return static_cast<int>(it - vertices.begin());
}

bool DistanceGraph::in_lattice(double x) const {
    auto it = std::lower_bound(lattice.begin(), lattice.end(), x - kMergeRadius);
    return it != lattice.end() && std::fabs(*it - x) <= kMergeRadius;
}

DistanceGraph build_graph(const FractalSpec& spec, TripleKind kind, int level,
                          std::size_t budget) {
    require_valid(spec);
    std::vector<std::pair<double, double>> intervals;
    if (kind == TripleKind::lacunary || kind == TripleKind::full)
        for (const auto& l : lacunae_up_to_level(spec, level, budget))
            intervals.emplace_back(l.left, l.right);
    if (kind == TripleKind::filled || kind == TripleKind::full)
        for (int k = 0; k <= level; ++k)
            for (const auto& c : cells_at_level(spec, k, budget))
                intervals.emplace_back(c.left, c.right);
    if (intervals.empty()) throw validation_error("build_graph: no intervals");

    DistanceGraph g;
    g.kind = kind;
    g.level = level;
    std::vector<double> pts;
    pts.reserve(2 * intervals.size());
    for (const auto& [u, v] : intervals) {
        pts.push_back(u);
        pts.push_back(v);
    }
    std::sort(pts.begin(), pts.end());
    for (double p : pts)
        if (g.vertices.empty() || p - g.vertices.back() > kMergeRadius)
            g.vertices.push_back(p);
    g.adjacency.assign(g.vertices.size(), {});
    for (const auto& [u, v] : intervals) {
        int a = g.vertex_index(u), b = g.vertex_index(v);
        double w = v - u;
        g.adjacency[static_cast<std::size_t>(a)].push_back({b, w});
        g.adjacency[static_cast<std::size_t>(b)].push_back({a, w});
    }
    std::vector<double> lat;
    for (const auto& c : cells_at_level(spec, level, budget)) {
        lat.push_back(c.left);
        lat.push_back(c.right);
    }
    lat.insert(lat.end(), g.vertices.begin(), g.vertices.end());
    std::sort(lat.begin(), lat.end());
    for (double p : lat)
        if (g.lattice.empty() || p - g.lattice.back() > kMergeRadius) g.lattice.push_back(p);
    return g;
}

std::vector<double> connes_distances_from(const DistanceGraph& g, double x) {
    int src = g.vertex_index(x);
    if (src < 0) {
        if (g.in_lattice(x))  // a point of the truncation no interval touches
            return std::vector<double>(g.vertices.size(), kInf);
        throw validation_error("connes_distance: unknown vertex");
    }
    std::vector<double> dist(g.vertices.size(), kInf);
    dist[static_cast<std::size_t>(src)] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : g.adjacency[static_cast<std::size_t>(u)]) {
            double nd = d + w;
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                pq.push({nd, v});
            }
        }
    }
    return dist;
}

double connes_distance(const DistanceGraph& g, double x, double y) {
    for (double p : {x, y})
        if (g.vertex_index(p) < 0 && !g.in_lattice(p))
            throw validation_error("connes_distance: unknown vertex");
    int dst = g.vertex_index(y);
    if (dst < 0) return kInf;  // lattice point no interval of this kind touches
    return connes_distances_from(g, x)[static_cast<std::size_t>(dst)];
}

GapSumBound lacunary_gap_sum_bound(const FractalSpec& spec, double x, double y, int level,
                                   std::size_t budget) {
    if (y < x) std::swap(x, y);
    GapSumBound out;
    for (const auto& l : lacunae_up_to_level(spec, level, budget))
        if (l.left >= x - kMergeRadius && l.right <= y + kMergeRadius)
            out.bound += l.length();
    out.deficit = (y - x) - out.bound;
    return out;
}

} // namespace specfrac
