#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cactusdom/game.hpp"

namespace cactusdom {

// Size guards for the exhaustive oracle.
struct OracleLimits {
  Vertex max_vertices = 24;              // domination-number subset search
  std::uint64_t max_pairs = 10'000'000;  // configurations x attacks
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  if (r > 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(r + 0.5L);
}

inline std::uint64_t configuration_count(Vertex n, std::size_t order, bool multiset) {
  return multiset ? saturating_binomial(static_cast<std::uint64_t>(n) + order - 1, order)
                  : saturating_binomial(static_cast<std::uint64_t>(n), order);
}

// Calls f(positions) for every sorted (multi)combination of `order` vertices.
template <class F>
void for_each_configuration(Vertex n, std::size_t order, bool multiset, F&& f) {
  std::vector<Vertex> c(order);
  auto rec = [&](auto&& self, std::size_t i, Vertex lo) -> void {
    if (i == order) {
      f(c);
      return;
    }
    for (Vertex v = lo; v < n; ++v) {
      c[i] = v;
      self(self, i + 1, multiset ? v : v + 1);
    }
  };
  rec(rec, 0, 0);
}

inline std::uint64_t encode(const std::vector<Vertex>& c, Vertex n) {
  std::uint64_t key = 0;
  for (Vertex v : c) key = key * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(v + 1);
  return key;
}

}  // namespace detail

inline std::vector<std::uint64_t> closed_neighborhood_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    masks[v] |= std::uint64_t{1} << v;
    for (Vertex w : g.neighbors(v)) masks[v] |= std::uint64_t{1} << w;
  }
  return masks;
}

// Minimum dominating set size by increasing-size subset search.
inline int domination_number(const Graph& g, const OracleLimits& limits = {}) {
  if (g.n() > limits.max_vertices || g.n() > 63)
    throw OracleBudgetExceeded("domination number: n=" + std::to_string(g.n()) +
                               " exceeds oracle limit " + std::to_string(limits.max_vertices));
  if (g.n() == 0) return 0;
  const auto masks = closed_neighborhood_masks(g);
  const std::uint64_t full = (g.n() == 64) ? ~0ULL : ((std::uint64_t{1} << g.n()) - 1);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(g.n()); ++k) {
    bool found = false;
    std::vector<Vertex> c(k);
    auto rec = [&](auto&& self, std::size_t i, Vertex lo, std::uint64_t covered) -> void {
      if (found) return;
      if (i == k) {
        found = covered == full;
        return;
      }
      for (Vertex v = lo; v < g.n() && !found; ++v) self(self, i + 1, v + 1, covered | masks[v]);
    };
    rec(rec, 0, 0, 0);
    if (found) return static_cast<int>(k);
  }
  return g.n();
}

// Winning region of the defender together with a positional successor map:
// successor[i][a] is the index (into `configurations`) answered to attack a
// from configuration i.
struct StrategyWitness {
  GameVariant variant = GameVariant::EDN;
  std::size_t order = 0;
  std::vector<Attack> attacks;
  std::vector<Configuration> configurations;
  std::vector<std::vector<int>> successor;

  std::optional<int> index_of(const Configuration& c) const {
    auto it = std::lower_bound(configurations.begin(), configurations.end(), c);
    if (it == configurations.end() || !(*it == c)) return std::nullopt;
    return static_cast<int>(it - configurations.begin());
  }
};

// Greatest fixed point of "every attack has an answer inside the set",
// computed by repeated deletion over the configuration graph. Returns nothing
// when the defender loses with `order` guards.
inline std::optional<StrategyWitness> solve_safety(const Graph& g, std::size_t order,
                                                   GameVariant variant,
                                                   const OracleLimits& limits = {}) {
  if (order == 0) throw std::invalid_argument("order must be at least 1");
  const bool multiset = variant == GameVariant::EGC;
  const Vertex n = g.n();
  const auto cyc = variant == GameVariant::EDE ? cycle_edges(g) : std::vector<Edge>{};
  const auto attacks = applicable_attacks(g, variant, order, cyc);

  const std::uint64_t count = detail::configuration_count(n, order, multiset);
  if (count == UINT64_MAX || count > limits.max_pairs ||
      count * attacks.size() > limits.max_pairs)
    throw OracleBudgetExceeded("state space of " + std::to_string(count) + " configurations x " +
                               std::to_string(attacks.size()) + " attacks exceeds budget " +
                               std::to_string(limits.max_pairs));
  if (!multiset && order > static_cast<std::size_t>(n)) return std::nullopt;

  std::vector<std::vector<Vertex>> configs;
  configs.reserve(static_cast<std::size_t>(count));
  std::unordered_map<std::uint64_t, int> index;
  detail::for_each_configuration(n, order, multiset, [&](const std::vector<Vertex>& c) {
    index.emplace(detail::encode(c, n), static_cast<int>(configs.size()));
    configs.push_back(c);
  });
  const std::size_t N = configs.size();

  // successors by enumerating every simultaneous guard move
  std::vector<std::vector<int>> succ(N);
  std::vector<Vertex> target(order), sorted(order);
  for (std::size_t i = 0; i < N; ++i) {
    const auto& c = configs[i];
    auto rec = [&](auto&& self, std::size_t j) -> void {
      if (j == order) {
        sorted = target;
        std::sort(sorted.begin(), sorted.end());
        auto it = index.find(detail::encode(sorted, n));
        if (it != index.end()) succ[i].push_back(it->second);
        return;
      }
      target[j] = c[j];
      self(self, j + 1);
      for (Vertex w : g.neighbors(c[j])) {
        target[j] = w;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
    std::sort(succ[i].begin(), succ[i].end());
    succ[i].erase(std::unique(succ[i].begin(), succ[i].end()), succ[i].end());
  }

  const std::size_t A = attacks.size();
  const std::size_t words = (A + 63) / 64;
  std::vector<std::uint64_t> sat(N * words, 0);
  for (std::size_t i = 0; i < N; ++i) {
    Configuration c(configs[i]);
    for (std::size_t a = 0; a < A; ++a)
      if (satisfies(c, attacks[a])) sat[i * words + a / 64] |= std::uint64_t{1} << (a % 64);
  }
  std::vector<std::uint64_t> full(words, ~0ULL);
  if (A % 64) full[words - 1] = (std::uint64_t{1} << (A % 64)) - 1;

  std::vector<char> alive(N, 1);
  std::vector<std::uint64_t> acc(words);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < N; ++i) {
      if (!alive[i]) continue;
      std::fill(acc.begin(), acc.end(), 0);
      for (int s : succ[i])
        if (alive[s])
          for (std::size_t w = 0; w < words; ++w) acc[w] |= sat[s * words + w];
      if (acc != full) {
        alive[i] = 0;
        changed = true;
      }
    }
  }

  StrategyWitness w;
  w.variant = variant;
  w.order = order;
  w.attacks = attacks;
  std::vector<int> remap(N, -1);
  for (std::size_t i = 0; i < N; ++i)
    if (alive[i]) {
      remap[i] = static_cast<int>(w.configurations.size());
      w.configurations.emplace_back(configs[i]);
    }
  if (w.configurations.empty()) return std::nullopt;
  auto has = [&](std::size_t s, std::size_t a) {
    return (sat[s * words + a / 64] >> (a % 64)) & 1;
  };
  for (std::size_t i = 0; i < N; ++i) {
    if (!alive[i]) continue;
    std::vector<int> row(A, -1);
    for (std::size_t a = 0; a < A; ++a) {
      if (has(i, a)) {
        row[a] = remap[i];
        continue;
      }
      for (int s : succ[i])
        if (alive[s] && has(static_cast<std::size_t>(s), a)) {
          row[a] = remap[s];
          break;
        }
    }
    w.successor.push_back(std::move(row));
  }
  return w;
}

struct ExactResult {
  int value = 0;
  StrategyWitness witness;
};

// Smallest order with a nonempty winning region, searching upward from the
// domination number.
inline ExactResult exact_number_with_witness(const Graph& g, GameVariant variant,
                                             const OracleLimits& limits = {},
                                             std::optional<int> max_order = std::nullopt) {
  if (g.n() == 0) throw std::invalid_argument("empty graph");
  const int start = domination_number(g, limits);
  const int stop = max_order ? *max_order : static_cast<int>(g.n());
  for (int k = start; k <= stop; ++k)
    if (auto w = solve_safety(g, static_cast<std::size_t>(k), variant, limits))
      return {k, std::move(*w)};
  throw OracleBudgetExceeded("no winning order up to " + std::to_string(stop));
}

inline int exact_number(const Graph& g, GameVariant variant, const OracleLimits& limits = {}) {
  return exact_number_with_witness(g, variant, limits).value;
}

// Independent check of a witness: every listed answer is a member of the
// set, honours its attack, is reachable by one simultaneous move and keeps
// the variant's duplicate rule. Returns human-readable violations.
inline std::vector<std::string> validate_witness(const Graph& g, const StrategyWitness& w) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < w.configurations.size(); ++i) {
    const auto& c = w.configurations[i];
    if (w.variant != GameVariant::EGC && c.has_duplicates())
      bad.push_back("duplicate guards in " + c.str());
    if (!is_dominating(g, c)) bad.push_back("not dominating: " + c.str());
    for (std::size_t a = 0; a < w.attacks.size(); ++a) {
      const int s = w.successor[i][a];
      if (s < 0 || s >= static_cast<int>(w.configurations.size())) {
        bad.push_back("no answer to " + w.attacks[a].str() + " from " + c.str());
        continue;
      }
      const auto& next = w.configurations[s];
      if (!satisfies(next, w.attacks[a]))
        bad.push_back(next.str() + " does not answer " + w.attacks[a].str());
      if (!traversable(g, c, next)) bad.push_back(c.str() + " -> " + next.str() + " not traversable");
    }
  }
  return bad;
}

}  // namespace cactusdom
