#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heatineq {

// Finite weighted graph with symmetric nonnegative edge weights.  Loops
// (x == x) are allowed and their weight is counted once in the vertex
// measure m(x) = sum of incident weights.  Immutable after construction.
class WeightedGraph {
 public:
  // CSR adjacency, loops included as entries with nbr == vertex.
  std::vector<int> offsets;      // size n+1
  std::vector<int> nbr;          // neighbor indices
  std::vector<double> weight;    // parallel to nbr
  std::vector<double> measure;   // m(x)
  std::vector<std::uint8_t> boundary;  // 1 = boundary-marked vertex
  std::vector<std::vector<int>> coords;  // lattice coordinates, empty if n/a

  std::string generator;         // e.g. "torus(N=64,d=2)"
  bool connected = false;
  bool vertex_transitive = false;
  bool has_loops = false;
  double total_volume = 0.0;     // V(G) = sum m(x)

  int size() const { return static_cast<int>(measure.size()); }
  bool has_boundary() const { return !boundary_dist_.empty(); }

  // Hop distance from x to the nearest boundary-marked vertex; INT_MAX when
  // the graph has no boundary marks.
  int dist_to_boundary(int x) const {
    return boundary_dist_.empty() ? std::numeric_limits<int>::max()
                                  : boundary_dist_[static_cast<size_t>(x)];
  }

  std::span<const int> neighbors(int x) const {
    return {nbr.data() + offsets[x], nbr.data() + offsets[x + 1]};
  }
  std::span<const double> weights(int x) const {
    return {weight.data() + offsets[x], weight.data() + offsets[x + 1]};
  }

  // Canonical content hash (structure + weights + boundary), used by the
  // kernel cache.
  std::uint64_t content_hash() const;

  void finalize();  // computes measure, connectivity, boundary distances

 private:
  std::vector<int> boundary_dist_;
};

struct Edge {
  int u, v;
  double w;
};

// Generators ---------------------------------------------------------------

WeightedGraph two_point();
WeightedGraph cycle(int n);
WeightedGraph complete(int n);
// Cayley graph of (Z/NZ)^d with unit weights.
WeightedGraph torus(int n, int d);
// Box [-L, L]^d in Z^d with unit weights; vertices with any |coordinate| == L
// are boundary-marked.
WeightedGraph lattice_window(int half_width, int d);
WeightedGraph from_edges(int n, const std::vector<Edge>& edges,
                         std::string name = "explicit");

// Plain-text edge list, one edge per line: "x y w", '#' comments.
WeightedGraph load_edge_list(const std::string& path);
void save_edge_list(const WeightedGraph& g, const std::string& path);

// Parses "two_point", "cycle(8)", "torus(64,2)", "lattice_window(16,2)",
// "complete(5)".  Throws std::invalid_argument on bad specs.
WeightedGraph build_graph(const std::string& spec);

// Balls and volumes ---------------------------------------------------------

struct VertexSet {
  std::vector<int> members;  // distinct, sorted
  double volume = 0.0;       // V(A) = sum of m(x) over members
};

VertexSet make_vertex_set(const WeightedGraph& g, std::vector<int> members);

// Hop distances from x (loops ignored).
std::vector<int> bfs_distances(const WeightedGraph& g, int x);

// B(x, r) with V(x, r); distance is hop count ignoring loops.
VertexSet ball(const WeightedGraph& g, int x, int r);

// Delta(alpha) condition and the loop transform ------------------------------

struct DeltaAlphaResult {
  bool pass = true;
  int witness_x = -1, witness_y = -1;
  double witness_ratio = 0.0;  // omega_xy / m(x) of the worst pair
};

// Checks omega_xy >= alpha * m(x) over all ordered adjacent pairs (loops
// included).  On failure the worst pair is reported.
DeltaAlphaResult check_delta_alpha(const WeightedGraph& g, double alpha);

// Adds a loop at every vertex of a loopless graph so that the walk becomes
// lazy with p'(x,x) = 2*alpha exactly and p'(x,y) = (1-2*alpha) p(x,y);
// existing edges are rescaled by (1-2*alpha) and m is preserved.
WeightedGraph alpha_loop_transform(const WeightedGraph& g, double alpha);

// Volume growth profiling -----------------------------------------------------

struct GrowthProfile {
  int center = 0;
  std::vector<int> radii;       // 1..r_max
  std::vector<double> volumes;  // V(x, r)
  double growth_exponent = 0.0;   // slope of log V vs log r
  double growth_constant = 0.0;   // min_r V(x,r) / r^exponent
  std::vector<double> doubling_ratios;  // V(x,2r)/V(x,r) for 2r <= r_max
  double doubling_constant = 1.0;       // max of the ratios
};

GrowthProfile growth_profile(const WeightedGraph& g, int x, int r_max);

}  // namespace heatineq
