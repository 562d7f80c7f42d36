#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cactusdom {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Raised for malformed input documents and for structural preconditions
// (disconnected graph, wrong class) that the caller can report as input errors.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected simple graph on vertices 0..n-1 stored as a CSR adjacency with
// sorted neighbor lists. Immutable after construction.
//
// An optional label table maps each dense id to an external id; residual graphs
// produced by reductions and decomposition components use it to refer back to
// the vertices of the graph they were cut from.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Validates: ids in range, no self-loops, no duplicate edges.
  static Graph from_edges(Vertex n, std::vector<Edge> edges,
                          std::vector<Vertex> labels = {}) {
    if (n < 0) throw GraphError("negative vertex count");
    if (!labels.empty() && static_cast<Vertex>(labels.size()) != n)
      throw GraphError("label table size does not match vertex count");
    for (auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw GraphError("vertex id out of range in edge " + std::to_string(u) + " " +
                         std::to_string(v));
      if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i] == edges[i - 1])
        throw GraphError("duplicate edge " + std::to_string(edges[i].first) + " " +
                         std::to_string(edges[i].second));

    Graph g;
    g.n_ = n;
    g.m_ = static_cast<std::int64_t>(edges.size());
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.adj_.resize(static_cast<std::size_t>(2 * g.m_));
    std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // edges are sorted, so each neighbor list is filled in ascending order
    // for the "v" side; the "u" side needs a sort below.
    for (auto [u, v] : edges) {
      g.adj_[fill[u]++] = v;
      g.adj_[fill[v]++] = u;
    }
    for (Vertex v = 0; v < n; ++v)
      std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
    g.labels_ = std::move(labels);
    return g;
  }

  Vertex n() const { return n_; }
  std::int64_t m() const { return m_; }

  struct Neighbors {
    const Vertex* first;
    const Vertex* last;
    const Vertex* begin() const { return first; }
    const Vertex* end() const { return last; }
    std::size_t size() const { return static_cast<std::size_t>(last - first); }
    Vertex operator[](std::size_t i) const { return first[i]; }
  };

  Neighbors neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Edges with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<Vertex>& labels() const { return labels_; }
  Vertex label(Vertex v) const { return labels_.empty() ? v : labels_[v]; }

  // Dense id for an external label, if present.
  std::optional<Vertex> find_label(Vertex label) const {
    if (labels_.empty()) {
      if (label >= 0 && label < n_) return label;
      return std::nullopt;
    }
    for (Vertex v = 0; v < n_; ++v)
      if (labels_[v] == label) return v;
    return std::nullopt;
  }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && m_ == o.m_ && offsets_ == o.offsets_ && adj_ == o.adj_ &&
           labels_ == o.labels_;
  }

 private:
  Vertex n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<Vertex> labels_;
};

inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  Vertex count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.n();
}

// Subgraph induced by `keep` (ids of g), relabeled densely in the given order.
// Labels of the result are g's labels of the kept vertices.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep,
                              const std::vector<Edge>& extra_edges = {}) {
  std::vector<Vertex> local(g.n(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : keep)
    for (Vertex v : g.neighbors(u))
      if (u < v && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  for (auto [u, v] : extra_edges) {
    Edge e{local[u], local[v]};
    if (e.first > e.second) std::swap(e.first, e.second);
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  std::vector<Vertex> labels;
  labels.reserve(keep.size());
  for (Vertex v : keep) labels.push_back(g.label(v));
  return Graph::from_edges(static_cast<Vertex>(keep.size()), std::move(edges),
                           std::move(labels));
}

// Edge-list document: first line "n m", then m lines "u v". Lines starting
// with '#' are comments; "# label <id> <original>" comments are read back as
// the label table so emitted components round-trip.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  Vertex n = 0;
  std::int64_t m = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<Vertex, Vertex>> label_entries;

  auto fail = [&](const std::string& why) {
    throw GraphError("line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream cs(line.substr(first + 1));
      std::string word;
      long long id = 0, orig = 0;
      if (cs >> word && word == "label" && cs >> id >> orig)
        label_entries.emplace_back(static_cast<Vertex>(id), static_cast<Vertex>(orig));
      continue;
    }
    std::istringstream ls(line);
    long long a = 0, b = 0;
    std::string rest;
    if (!(ls >> a >> b) || (ls >> rest)) fail("malformed line '" + line + "'");
    if (!have_header) {
      if (a < 0 || b < 0 || a > 100'000'000) fail("bad header");
      n = static_cast<Vertex>(a);
      m = b;
      have_header = true;
      edges.reserve(static_cast<std::size_t>(std::min<long long>(b, 50'000'000)));
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n)
      fail("vertex id out of range (n=" + std::to_string(n) + ")");
    if (a == b) fail("self-loop at vertex " + std::to_string(a));
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_header) throw GraphError("missing header line 'n m'");
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw GraphError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));

  std::vector<Vertex> labels;
  if (!label_entries.empty()) {
    labels.assign(n, -1);
    for (auto [id, orig] : label_entries) {
      if (id < 0 || id >= n) throw GraphError("label for unknown vertex " + std::to_string(id));
      labels[id] = orig;
    }
    if (std::find(labels.begin(), labels.end(), -1) != labels.end())
      throw GraphError("label table is incomplete");
  }
  return Graph::from_edges(n, std::move(edges), std::move(labels));
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  if (g.has_labels())
    for (Vertex v = 0; v < g.n(); ++v) out << "# label " << v << ' ' << g.label(v) << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

// Small constructors used by tests, presets and the CLI.
namespace graphs {

inline Graph cycle(Vertex k) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return Graph::from_edges(k, e);
}

inline Graph path(Vertex vertices) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < vertices; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(vertices, e);
}

inline Graph star(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph complete(Vertex k) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < k; ++i)
    for (Vertex j = i + 1; j < k; ++j) e.emplace_back(i, j);
  return Graph::from_edges(k, e);
}

// Triangle {0,1,2}; leaf 3 on 1, leaf 4 on 2. Vertex 0 is the degree-2 tip.
inline Graph bull() { return Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}}); }

// Triangle {0,1,2} with leaf 3 on 1.
inline Graph three_pan() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}}); }

}  // namespace graphs

}  // namespace cactusdom
