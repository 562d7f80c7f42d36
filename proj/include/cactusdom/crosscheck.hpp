#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cactusdom/block_cut_tree.hpp"
#include "cactusdom/decomposition.hpp"
#include "cactusdom/generator.hpp"
#include "cactusdom/oracle.hpp"
#include "cactusdom/reduction.hpp"
#include "cactusdom/strategy.hpp"

namespace cactusdom {

struct RelationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CrosscheckReport {
  Vertex n = 0;
  std::size_t m = 0;
  GraphKind kind = GraphKind::GeneralGraph;
  std::optional<int> gamma, egc, edn, ede, meden, bound;
  std::vector<RelationCheck> relations;
  std::optional<std::string> error;  // oracle budget, decomposition failure

  bool ok() const {
    return !error && std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.pass; });
  }

  std::string str() const {
    std::ostringstream out;
    out << "n=" << n << " m=" << m << " class=" << to_string(kind);
    auto put = [&](const char* k, const std::optional<int>& v) {
      if (v) out << " " << k << "=" << *v;
    };
    put("gamma", gamma);
    put("egc", egc);
    put("edn", edn);
    put("ede", ede);
    put("meden", meden);
    put("bound", bound);
    out << "\n";
    for (const auto& r : relations)
      out << "  " << (r.pass ? "pass " : "FAIL ") << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")")
          << "\n";
    if (error) out << "  ERROR " << *error << "\n";
    return out.str();
  }
};

inline nlohmann::json to_json(const CrosscheckReport& r) {
  nlohmann::json j{{"n", r.n}, {"m", r.m}, {"class", to_string(r.kind)}, {"ok", r.ok()}};
  auto put = [&](const char* k, const std::optional<int>& v) {
    if (v) j[k] = *v;
  };
  put("gamma", r.gamma);
  put("egc", r.egc);
  put("edn", r.edn);
  put("ede", r.ede);
  put("meden", r.meden);
  put("bound", r.bound);
  nlohmann::json rel = nlohmann::json::array();
  for (const auto& c : r.relations) rel.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["relations"] = std::move(rel);
  if (r.error) j["error"] = *r.error;
  return j;
}

struct CrosscheckOptions {
  OracleLimits limits{};
  std::size_t strategy_trials = 20;
  std::size_t strategy_length = 50;
  std::uint64_t seed = 1;
};

// Every value that applies to g, plus the relations between them.
inline CrosscheckReport crosscheck(const Graph& g, const CrosscheckOptions& opt = {}) {
  CrosscheckReport r;
  r.n = g.n();
  r.m = g.m();
  r.kind = classify(g).kind;
  auto rel = [&](std::string name, bool pass, std::string detail = {}) {
    r.relations.push_back({std::move(name), pass, std::move(detail)});
  };
  auto pair = [](int a, int b) { return std::to_string(a) + " vs " + std::to_string(b); };

  try {
    r.gamma = domination_number(g, opt.limits);
    r.egc = exact_number(g, GameVariant::EGC, opt.limits);
    r.edn = exact_number(g, GameVariant::EDN, opt.limits);
    r.ede = exact_number(g, GameVariant::EDE, opt.limits);
  } catch (const OracleBudgetExceeded& e) {
    r.error = std::string("oracle: ") + e.what();
  }
  if (r.ede) {
    rel("gamma <= egc", *r.gamma <= *r.egc, pair(*r.gamma, *r.egc));
    rel("egc <= edn", *r.egc <= *r.edn, pair(*r.egc, *r.edn));
    rel("edn <= ede", *r.edn <= *r.ede, pair(*r.edn, *r.ede));
  }

  if (r.kind == GraphKind::ChristmasCactus) {
    const auto asc = meden_christmas_cactus(g, LeafOrder::Ascending);
    const auto desc = meden_christmas_cactus(g, LeafOrder::Descending);
    r.meden = asc.guards;
    rel("leaf order independence", asc.guards == desc.guards, pair(asc.guards, desc.guards));
    const auto bad = check_trace(asc.trace, g.n());
    rel("trace is a partition", !bad, bad.value_or(""));
    if (r.ede) {
      rel("egc = meden", *r.egc == *r.meden, pair(*r.egc, *r.meden));
      rel("edn = meden", *r.edn == *r.meden, pair(*r.edn, *r.meden));
      rel("ede = meden", *r.ede == *r.meden, pair(*r.ede, *r.meden));
    }
    try {
      const auto engine = synthesize(g, asc.trace);
      const auto v = verify_strategy(engine, opt.strategy_trials, opt.strategy_length, opt.seed);
      rel("strategy survives random attacks", v.ok(), v.violations.empty() ? "" : v.violations.front());
    } catch (const std::exception& e) {
      rel("strategy survives random attacks", false, e.what());
    }
  }

  if (r.kind == GraphKind::ChristmasCactus || r.kind == GraphKind::Cactus) {
    try {
      r.bound = cactus_upper_bound(g);
      if (r.edn) rel("bound >= edn", *r.bound >= *r.edn, pair(*r.bound, *r.edn));
      if (r.meden) rel("bound = meden", *r.bound == *r.meden, pair(*r.bound, *r.meden));
    } catch (const DecompositionError& e) {
      rel("decomposition components are Christmas cacti", false, e.what());
    }
  }
  return r;
}

struct BenchRow {
  Vertex n = 0;
  std::size_t m = 0;
  double seconds = 0;
  int guards = 0;
  std::optional<double> ratio;  // against the previous row
};

// Wall time of the linear pass on generated Christmas cacti; best of `repeats`.
inline std::vector<BenchRow> bench(const std::vector<Vertex>& sizes, std::uint64_t seed, int repeats = 3) {
  std::vector<BenchRow> rows;
  for (Vertex n : sizes) {
    GeneratorSpec spec;
    spec.n = n;
    spec.seed = seed;
    const Graph g = generate(spec);
    BenchRow row;
    row.n = n;
    row.m = g.m();
    row.seconds = 1e300;
    for (int i = 0; i < std::max(1, repeats); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      row.guards = meden_christmas_cactus(g).guards;
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      row.seconds = std::min(row.seconds, dt.count());
    }
    if (!rows.empty() && rows.back().seconds > 0) row.ratio = row.seconds / rows.back().seconds;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cactusdom
