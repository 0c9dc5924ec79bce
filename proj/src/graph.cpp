#include "heatineq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace heatineq {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

WeightedGraph from_adjacency(int n, std::map<std::pair<int, int>, double> sym,
                             std::string name) {
  // sym holds each undirected edge once with u <= v.
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (auto& [e, w] : sym) {
    auto [u, v] = e;
    adj[u].push_back({v, w});
    if (u != v) adj[v].push_back({u, w});
  }
  WeightedGraph g;
  g.generator = std::move(name);
  g.offsets.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    std::sort(adj[x].begin(), adj[x].end());
    g.offsets[x + 1] = g.offsets[x] + static_cast<int>(adj[x].size());
  }
  g.nbr.reserve(g.offsets[n]);
  g.weight.reserve(g.offsets[n]);
  for (int x = 0; x < n; ++x)
    for (auto& [y, w] : adj[x]) {
      g.nbr.push_back(y);
      g.weight.push_back(w);
    }
  g.boundary.assign(n, 0);
  g.finalize();
  return g;
}

}  // namespace

void WeightedGraph::finalize() {
  const int n = static_cast<int>(offsets.size()) - 1;
  measure.assign(n, 0.0);
  has_loops = false;
  for (int x = 0; x < n; ++x) {
    double m = 0.0;
    for (int i = offsets[x]; i < offsets[x + 1]; ++i) {
      m += weight[i];
      if (nbr[i] == x) has_loops = true;
    }
    if (m <= 0.0)
      throw std::invalid_argument("isolated vertex " + std::to_string(x) +
                                  " (m(x) must be positive)");
    measure[x] = m;
  }
  total_volume = 0.0;
  for (double m : measure) total_volume += m;

  // connectivity by BFS (loops are harmless here)
  std::vector<std::uint8_t> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int i = offsets[x]; i < offsets[x + 1]; ++i) {
      int y = nbr[i];
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        q.push_back(y);
      }
    }
  }
  connected = (count == n);

  boundary_dist_.clear();
  bool any_boundary = false;
  for (auto b : boundary)
    if (b) any_boundary = true;
  if (any_boundary) {
    boundary_dist_.assign(n, std::numeric_limits<int>::max());
    std::deque<int> bq;
    for (int x = 0; x < n; ++x)
      if (boundary[x]) {
        boundary_dist_[x] = 0;
        bq.push_back(x);
      }
    while (!bq.empty()) {
      int x = bq.front();
      bq.pop_front();
      for (int i = offsets[x]; i < offsets[x + 1]; ++i) {
        int y = nbr[i];
        if (y == x) continue;
        if (boundary_dist_[y] > boundary_dist_[x] + 1) {
          boundary_dist_[y] = boundary_dist_[x] + 1;
          bq.push_back(y);
        }
      }
    }
  }
}

std::uint64_t WeightedGraph::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  int n = size();
  h = fnv1a(h, &n, sizeof n);
  h = fnv1a(h, offsets.data(), offsets.size() * sizeof(int));
  h = fnv1a(h, nbr.data(), nbr.size() * sizeof(int));
  h = fnv1a(h, weight.data(), weight.size() * sizeof(double));
  h = fnv1a(h, boundary.data(), boundary.size());
  return h;
}

WeightedGraph two_point() {
  std::map<std::pair<int, int>, double> sym{{{0, 1}, 1.0}};
  return from_adjacency(2, std::move(sym), "two_point");
}

WeightedGraph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
  std::map<std::pair<int, int>, double> sym;
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    sym[{std::min(i, j), std::max(i, j)}] = 1.0;
  }
  auto g = from_adjacency(n, std::move(sym), "cycle(" + std::to_string(n) + ")");
  g.vertex_transitive = true;
  g.coords.resize(n);
  for (int i = 0; i < n; ++i) g.coords[i] = {i};
  return g;
}

WeightedGraph complete(int n) {
  if (n < 2) throw std::invalid_argument("complete requires n >= 2");
  std::map<std::pair<int, int>, double> sym;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sym[{i, j}] = 1.0;
  auto g =
      from_adjacency(n, std::move(sym), "complete(" + std::to_string(n) + ")");
  g.vertex_transitive = true;
  return g;
}

WeightedGraph torus(int n, int d) {
  if (n < 3 || d < 1) throw std::invalid_argument("torus requires n >= 3, d >= 1");
  int total = 1;
  for (int k = 0; k < d; ++k) {
    if (total > 2'000'000 / n) throw std::invalid_argument("torus too large");
    total *= n;
  }
  auto index_of = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int k = 0; k < d; ++k) idx = idx * n + c[k];
    return idx;
  };
  std::map<std::pair<int, int>, double> sym;
  std::vector<std::vector<int>> coords(total, std::vector<int>(d, 0));
  std::vector<int> c(d, 0);
  for (int idx = 0; idx < total; ++idx) {
    coords[idx] = c;
    for (int k = 0; k < d; ++k) {
      std::vector<int> c2 = c;
      c2[k] = (c[k] + 1) % n;
      int j = index_of(c2);
      sym[{std::min(idx, j), std::max(idx, j)}] = 1.0;
    }
    for (int k = d - 1; k >= 0; --k) {
      if (++c[k] < n) break;
      c[k] = 0;
    }
  }
  auto g = from_adjacency(total, std::move(sym),
                          "torus(" + std::to_string(n) + "," + std::to_string(d) + ")");
  g.vertex_transitive = true;
  g.coords = std::move(coords);
  return g;
}

WeightedGraph lattice_window(int half_width, int d) {
  if (half_width < 1 || d < 1)
    throw std::invalid_argument("lattice_window requires L >= 1, d >= 1");
  const int side = 2 * half_width + 1;
  long long total = 1;
  for (int k = 0; k < d; ++k) {
    total *= side;
    if (total > 2'000'000) throw std::invalid_argument("lattice window too large");
  }
  const int n = static_cast<int>(total);
  auto index_of = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int k = 0; k < d; ++k) idx = idx * side + (c[k] + half_width);
    return idx;
  };
  std::map<std::pair<int, int>, double> sym;
  std::vector<std::vector<int>> coords(n, std::vector<int>(d, 0));
  std::vector<std::uint8_t> bnd(n, 0);
  std::vector<int> c(d, -half_width);
  for (int idx = 0; idx < n; ++idx) {
    coords[idx] = c;
    for (int k = 0; k < d; ++k)
      if (std::abs(c[k]) == half_width) bnd[idx] = 1;
    for (int k = 0; k < d; ++k) {
      if (c[k] + 1 <= half_width) {
        std::vector<int> c2 = c;
        ++c2[k];
        int j = index_of(c2);
        sym[{std::min(idx, j), std::max(idx, j)}] = 1.0;
      }
    }
    for (int k = d - 1; k >= 0; --k) {
      if (++c[k] <= half_width) break;
      c[k] = -half_width;
    }
  }
  // assemble manually to attach boundary before finalize
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (auto& [e, w] : sym) {
    auto [u, v] = e;
    adj[u].push_back({v, w});
    if (u != v) adj[v].push_back({u, w});
  }
  WeightedGraph g;
  g.generator =
      "lattice_window(" + std::to_string(half_width) + "," + std::to_string(d) + ")";
  g.offsets.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    std::sort(adj[x].begin(), adj[x].end());
    g.offsets[x + 1] = g.offsets[x] + static_cast<int>(adj[x].size());
  }
  for (int x = 0; x < n; ++x)
    for (auto& [y, w] : adj[x]) {
      g.nbr.push_back(y);
      g.weight.push_back(w);
    }
  g.boundary = std::move(bnd);
  g.coords = std::move(coords);
  g.finalize();
  return g;
}

WeightedGraph from_edges(int n, const std::vector<Edge>& edges, std::string name) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  std::map<std::pair<int, int>, double> sym;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.w < 0.0) throw std::invalid_argument("negative edge weight");
    if (e.w == 0.0) continue;
    auto key = std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
    auto it = sym.find(key);
    if (it != sym.end()) {
      if (it->second != e.w)
        throw std::invalid_argument("asymmetric duplicate edge weights for (" +
                                    std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    } else {
      sym[key] = e.w;
    }
  }
  return from_adjacency(n, std::move(sym), std::move(name));
}

WeightedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  std::vector<Edge> edges;
  int max_v = -1;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int u, v;
    double w;
    if (!(ls >> u >> v)) continue;
    if (!(ls >> w)) w = 1.0;
    if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id in " + path);
    max_v = std::max({max_v, u, v});
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw std::invalid_argument("empty edge list: " + path);
  return from_edges(max_v + 1, edges, "file(" + path + ")");
}

void save_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  out << "# " << g.generator << "\n";
  char buf[64];
  for (int x = 0; x < g.size(); ++x)
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i) {
      int y = g.nbr[i];
      if (y < x) continue;
      std::snprintf(buf, sizeof buf, "%.17g", g.weight[i]);
      out << x << " " << y << " " << buf << "\n";
    }
}

WeightedGraph build_graph(const std::string& spec) {
  auto open = spec.find('(');
  std::string name = spec.substr(0, open);
  std::vector<long> args;
  if (open != std::string::npos) {
    auto close = spec.find(')', open);
    if (close == std::string::npos)
      throw std::invalid_argument("malformed graph spec: " + spec);
    std::string inner = spec.substr(open + 1, close - open - 1);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) args.push_back(std::stol(tok));
  }
  auto need = [&](size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("graph spec " + name + " expects " +
                                  std::to_string(k) + " argument(s)");
  };
  if (name == "two_point") {
    need(0);
    return two_point();
  }
  if (name == "cycle") {
    need(1);
    return cycle(static_cast<int>(args[0]));
  }
  if (name == "complete") {
    need(1);
    return complete(static_cast<int>(args[0]));
  }
  if (name == "torus") {
    need(2);
    return torus(static_cast<int>(args[0]), static_cast<int>(args[1]));
  }
  if (name == "lattice_window") {
    need(2);
    return lattice_window(static_cast<int>(args[0]), static_cast<int>(args[1]));
  }
  throw std::invalid_argument("unknown graph generator: " + name);
}

VertexSet make_vertex_set(const WeightedGraph& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  VertexSet s;
  for (int x : members) {
    if (x < 0 || x >= g.size()) throw std::invalid_argument("vertex out of range");
    s.volume += g.measure[x];
  }
  s.members = std::move(members);
  return s;
}

std::vector<int> bfs_distances(const WeightedGraph& g, int x) {
  if (x < 0 || x >= g.size()) throw std::invalid_argument("unknown vertex");
  std::vector<int> dist(g.size(), std::numeric_limits<int>::max());
  dist[x] = 0;
  std::deque<int> q{x};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int y : g.neighbors(u)) {
      if (y == u) continue;  // loops do not change hop distance
      if (dist[y] > dist[u] + 1) {
        dist[y] = dist[u] + 1;
        q.push_back(y);
      }
    }
  }
  return dist;
}

VertexSet ball(const WeightedGraph& g, int x, int r) {
  if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
  auto dist = bfs_distances(g, x);
  std::vector<int> members;
  for (int y = 0; y < g.size(); ++y)
    if (dist[y] <= r) members.push_back(y);
  return make_vertex_set(g, std::move(members));
}

DeltaAlphaResult check_delta_alpha(const WeightedGraph& g, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  DeltaAlphaResult res;
  double worst = std::numeric_limits<double>::infinity();
  for (int x = 0; x < g.size(); ++x)
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i) {
      double ratio = g.weight[i] / g.measure[x];
      if (ratio < worst) {
        worst = ratio;
        res.witness_x = x;
        res.witness_y = g.nbr[i];
        res.witness_ratio = ratio;
      }
    }
  res.pass = (worst >= alpha);
  if (res.pass) {
    res.witness_x = res.witness_y = -1;
  }
  return res;
}

WeightedGraph alpha_loop_transform(const WeightedGraph& g, double alpha) {
  if (g.has_loops)
    throw std::invalid_argument("alpha_loop_transform requires a loopless graph");
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("alpha must lie in (0, 1/2]");
  const int n = g.size();
  const double scale = 1.0 - 2.0 * alpha;
  WeightedGraph out;
  out.generator = g.generator + "+loops(alpha=" + std::to_string(alpha) + ")";
  out.vertex_transitive = g.vertex_transitive;
  out.coords = g.coords;
  out.boundary = g.boundary;
  out.offsets.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    int deg = g.offsets[x + 1] - g.offsets[x];
    out.offsets[x + 1] = out.offsets[x] + deg + 1;  // +1 for the loop
  }
  out.nbr.resize(out.offsets[n]);
  out.weight.resize(out.offsets[n]);
  for (int x = 0; x < n; ++x) {
    int at = out.offsets[x];
    bool loop_placed = false;
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i) {
      int y = g.nbr[i];
      if (!loop_placed && y > x) {
        out.nbr[at] = x;
        out.weight[at] = 2.0 * alpha * g.measure[x];
        ++at;
        loop_placed = true;
      }
      out.nbr[at] = y;
      out.weight[at] = scale * g.weight[i];
      ++at;
    }
    if (!loop_placed) {
      out.nbr[at] = x;
      out.weight[at] = 2.0 * alpha * g.measure[x];
    }
  }
  if (scale == 0.0) {
    // alpha = 1/2: edges vanish and only loops remain
    out.nbr.clear();
    out.weight.clear();
    out.offsets.assign(n + 1, 0);
    for (int x = 0; x < n; ++x) {
      out.offsets[x + 1] = x + 1;
      out.nbr.push_back(x);
      out.weight.push_back(g.measure[x]);
    }
  }
  out.finalize();
  return out;
}

GrowthProfile growth_profile(const WeightedGraph& g, int x, int r_max) {
  if (r_max < 2) throw std::invalid_argument("growth_profile requires r_max >= 2");
  if (g.dist_to_boundary(x) <= r_max)
    throw std::invalid_argument(
        "boundary guard: B(x, r_max) touches a boundary-marked vertex");
  auto dist = bfs_distances(g, x);
  GrowthProfile p;
  p.center = x;
  std::vector<double> vol_by_r(static_cast<size_t>(r_max) + 1, 0.0);
  for (int y = 0; y < g.size(); ++y)
    if (dist[y] <= r_max) vol_by_r[static_cast<size_t>(dist[y])] += g.measure[y];
  for (int r = 1; r <= r_max; ++r) vol_by_r[r] += vol_by_r[r - 1];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int r = 1; r <= r_max; ++r) {
    p.radii.push_back(r);
    p.volumes.push_back(vol_by_r[r]);
    double lx = std::log(static_cast<double>(r)), ly = std::log(vol_by_r[r]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(r_max);
  p.growth_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  p.growth_constant = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= r_max; ++r)
    p.growth_constant = std::min(
        p.growth_constant, p.volumes[r - 1] / std::pow(r, p.growth_exponent));
  p.doubling_constant = 1.0;
  for (int r = 1; 2 * r <= r_max; ++r) {
    double ratio = p.volumes[2 * r - 1] / p.volumes[r - 1];
    p.doubling_ratios.push_back(ratio);
    p.doubling_constant = std::max(p.doubling_constant, ratio);
  }
  return p;
}

}  // namespace heatineq
