#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cactusdom/crosscheck.hpp"
#include "cactusdom/decomposition.hpp"
#include "cactusdom/generator.hpp"
#include "cactusdom/http.hpp"
#include "cactusdom/io.hpp"
#include "cactusdom/oracle.hpp"
#include "cactusdom/reduction.hpp"
#include "cactusdom/service.hpp"
#include "cactusdom/strategy.hpp"

using namespace cactusdom;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Global {
  std::string format = "edgelist";
  std::uint64_t seed = 1;
  bool json() const { return format == "json"; }
};

void emit_graph(const Global& gl, const Graph& g, std::ostream& out) {
  if (gl.json()) out << graph_to_json(g).dump() << "\n";
  else out << to_edge_list(g);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  out << text;
}

int cmd_compute(const Global& gl, const std::string& file, const std::string& trace_out, bool descending) {
  const Graph g = load_graph(file);
  auto r = meden_christmas_cactus(g, descending ? LeafOrder::Descending : LeafOrder::Ascending);
  if (!trace_out.empty()) write_file(trace_out, to_json(r.trace).dump(2) + "\n");
  if (gl.json()) std::cout << json{{"guards", r.guards}, {"n", g.n()}, {"m", g.m()}, {"trace", to_json(r.trace)}}.dump() << "\n";
  else std::cout << r.guards << "\n";
  return kOk;
}

int cmd_oracle(const Global& gl, const std::string& file, const std::string& variant, int max_order,
               const std::string& witness_out, std::uint64_t budget) {
  const Graph g = load_graph(file);
  OracleLimits lim;
  if (budget) lim.max_pairs = budget;
  const auto v = parse_variant(variant);
  auto r = exact_number_with_witness(g, v, lim, max_order > 0 ? std::optional<int>(max_order) : std::nullopt);
  const auto bad = validate_witness(g, r.witness);
  if (!witness_out.empty()) {
    json cs = json::array();
    for (const auto& c : r.witness.configurations) cs.push_back(c.positions());
    write_file(witness_out, json{{"variant", to_string(v)}, {"order", r.value}, {"configurations", cs}}.dump() + "\n");
  }
  if (gl.json())
    std::cout << json{{"variant", to_string(v)}, {"value", r.value}, {"domination_number", domination_number(g, lim)},
                      {"winning_configurations", r.witness.configurations.size()}, {"witness_violations", bad}}
                     .dump()
              << "\n";
  else
    std::cout << r.value << "\n";
  for (const auto& b : bad) std::cerr << "witness: " << b << "\n";
  return bad.empty() ? kOk : kViolation;
}

int cmd_decompose(const Global& gl, const std::string& file, const std::string& dir) {
  const Graph g = load_graph(file);
  const auto d = christmas_decomposition(g);
  const auto rep = cactus_upper_bound_report(d);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < d.components.size(); ++i) {
      std::ostringstream name;
      name << "component_" << std::setw(3) << std::setfill('0') << i << (gl.json() ? ".json" : ".txt");
      std::ostringstream body;
      emit_graph(gl, d.components[i].graph, body);
      write_file((std::filesystem::path(dir) / name.str()).string(), body.str());
    }
  }
  if (gl.json()) {
    json comps = json::array();
    for (std::size_t i = 0; i < d.components.size(); ++i)
      comps.push_back({{"n", d.components[i].graph.n()}, {"m", d.components[i].graph.m()},
                       {"red_copies", rep.component_red[i]}, {"meden", rep.component_meden[i]},
                       {"original", d.components[i].original}});
    std::cout << json{{"R", rep.R}, {"Rg", rep.Rg}, {"components", comps}, {"bound", rep.bound}}.dump() << "\n";
  } else {
    std::cout << "R " << rep.R << "\nRg " << rep.Rg << "\ncomponents " << d.components.size() << "\nbound "
              << rep.bound << "\n";
  }
  return kOk;
}

Attack parse_attack_line(const std::string& line) {
  std::istringstream in(line);
  std::string kind;
  long long a = 0, b = 0;
  in >> kind;
  if (kind == "attack" && (in >> a)) return Attack::vertex(static_cast<Vertex>(a));
  if (kind == "evictv" && (in >> a)) return Attack::evict_vertex(static_cast<Vertex>(a));
  if (kind == "evicte" && (in >> a >> b)) return Attack::evict_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  throw std::invalid_argument("expected 'attack v', 'evictv v' or 'evicte u v'");
}

int cmd_strategy(const Global& gl, const std::string& file, const std::vector<std::uint64_t>& verify, bool interactive,
                 int explore) {
  const Graph g = load_graph(file);
  DefenderEngine engine = synthesize(g);
  int rc = kOk;
  json out{{"guards", engine.guard_count()}, {"configuration", engine.current().positions()}};
  if (gl.json()) out["gadgets"] = engine.describe();
  else std::cout << "guards " << engine.guard_count() << "\ninitial " << engine.current().str() << "\n";

  auto report = [&](const char* what, const VerifyReport& r) {
    if (gl.json()) {
      out[what] = {{"trials", r.trials}, {"attacks", r.attacks}, {"violations", r.violations},
                   {"distinct_configurations", r.distinct_configurations}};
    } else {
      std::cout << what << " trials " << r.trials << " attacks " << r.attacks << " distinct "
                << r.distinct_configurations << " violations " << r.violations.size() << "\n";
      for (const auto& v : r.violations) std::cout << "  " << v << "\n";
    }
    if (!r.ok()) rc = kViolation;
  };
  if (!verify.empty()) {
    if (verify.size() != 3) throw std::invalid_argument("--verify takes trials length seed");
    report("verify", verify_strategy(engine, verify[0], verify[1], verify[2]));
  }
  if (explore > 0) report("explore", explore_strategy(engine, explore));
  if (gl.json()) std::cout << out.dump() << "\n";

  if (interactive) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const Attack a = parse_attack_line(line);
        const Configuration before = engine.current();
        engine.respond(a);
        if (!traversable(g, before, engine.current()) || !satisfies(engine.current(), a) ||
            !is_dominating(g, engine.current())) {
          std::cout << "violation " << engine.current().str() << "\n";
          rc = kViolation;
          continue;
        }
        if (gl.json()) std::cout << json{{"attack", a.str()}, {"configuration", engine.current().positions()}}.dump() << "\n";
        else std::cout << engine.current().str() << "\n";
      } catch (const std::invalid_argument& e) {
        std::cout << "error " << e.what() << "\n";
      }
      std::cout.flush();
    }
  }
  return rc;
}

int report_crosscheck(const Global& gl, const std::vector<CrosscheckReport>& reps) {
  bool ok = true;
  json all = json::array();
  for (const auto& r : reps) {
    ok = ok && r.ok();
    if (gl.json()) all.push_back(to_json(r));
    else std::cout << r.str();
  }
  if (gl.json()) std::cout << all.dump() << "\n";
  else std::cout << (ok ? "all relations hold" : "VIOLATION") << " (" << reps.size() << " graphs)\n";
  return ok ? kOk : kViolation;
}

int cmd_bench(const Global& gl, const std::string& sizes_text) {
  std::vector<Vertex> sizes;
  std::istringstream in(sizes_text);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
    }
    if (used != tok.size() || v < 1 || v > 100'000'000) throw std::invalid_argument("bad size '" + tok + "'");
    sizes.push_back(static_cast<Vertex>(v));
  }
  const auto rows = bench(sizes, gl.seed);
  if (gl.json()) {
    json out = json::array();
    for (const auto& r : rows) {
      json row{{"n", r.n}, {"m", r.m}, {"seconds", r.seconds}, {"guards", r.guards}};
      if (r.ratio) row["ratio"] = *r.ratio;
      out.push_back(row);
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << std::left << std::setw(12) << "n" << std::setw(12) << "m" << std::setw(14) << "seconds"
              << std::setw(10) << "guards" << "ratio\n";
    for (const auto& r : rows) {
      std::cout << std::setw(12) << r.n << std::setw(12) << r.m << std::setw(14) << std::setprecision(6) << r.seconds
                << std::setw(10) << r.guards;
      if (r.ratio) std::cout << std::setprecision(3) << *r.ratio;
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_serve(const std::string& host, int port, const std::string& static_dir, int idle_minutes) {
  SessionStore::Options opt;
  opt.idle_timeout = std::chrono::minutes(idle_minutes);
  SessionStore store(opt);
  httplib::Server svr;
  bind_routes(svr, store);
  if (!static_dir.empty() && !svr.set_mount_point("/", static_dir)) {
    std::cerr << "static directory not found: " << static_dir << "\n";
    return kInputError;
  }
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!svr.listen(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-eternal domination on cactus graphs"};
  app.require_subcommand(1);
  Global gl;
  app.add_option("--format", gl.format, "output format")->check(CLI::IsMember({"edgelist", "json"}));
  app.add_option("--seed", gl.seed, "random seed");

  std::string file, trace_out, variant = "edn", witness_out, dir, host = "127.0.0.1", static_dir;
  bool descending = false, interactive = false, general = false;
  int max_order = 0, explore = 0, port = 8080, idle = 30;
  std::uint64_t budget = 0;
  std::vector<std::uint64_t> verify;
  std::vector<std::string> files;
  std::string sizes = "100000,200000,400000";
  GeneratorSpec spec;
  std::string out_path;
  int corpus = 0, random_count = 0, min_n = 8, max_n = 9;

  auto* compute = app.add_subcommand("compute", "guards needed on a Christmas cactus (linear pass)");
  compute->add_option("graph", file, "graph file or - for stdin")->required();
  compute->add_option("--trace", trace_out, "write the reduction trace as JSON");
  compute->add_flag("--descending", descending, "process leaf blocks in descending order");

  auto* oracle = app.add_subcommand("oracle", "exact value by exhaustive game solving");
  oracle->add_option("graph", file)->required();
  oracle->add_option("--variant", variant)->check(CLI::IsMember({"egc", "edn", "ede"}));
  oracle->add_option("--max-order", max_order, "give up above this many guards");
  oracle->add_option("--witness", witness_out, "write the winning configurations as JSON");
  oracle->add_option("--budget", budget, "maximum configurations x attacks");

  auto* decompose = app.add_subcommand("decompose", "red vertices, decomposition and upper bound of a cactus");
  decompose->add_option("graph", file)->required();
  decompose->add_option("--emit-components", dir, "write each component to this directory");

  auto* strategy = app.add_subcommand("strategy", "build and exercise a defender");
  strategy->add_option("graph", file)->required();
  strategy->add_option("--verify", verify, "trials length seed")->expected(3);
  strategy->add_option("--explore", explore, "check every attack sequence up to this depth");
  strategy->add_flag("--interactive", interactive, "read attacks from stdin");

  auto* cross = app.add_subcommand("crosscheck", "check the value relations on graphs");
  cross->add_option("graphs", files, "graph files");
  cross->add_option("--corpus", corpus, "all Christmas cacti up to this many vertices");
  cross->add_option("--random", random_count, "this many random graphs");
  cross->add_option("--min-n", min_n);
  cross->add_option("--max-n", max_n);
  cross->add_flag("--general", general, "random graphs are cacti (not only Christmas cacti)");

  auto* gen = app.add_subcommand("generate", "random connected cactus");
  gen->add_option("--n", spec.n)->required();
  gen->add_option("--cycle-ratio", spec.cycle_ratio);
  gen->add_option("--max-cycle", spec.max_cycle);
  gen->add_flag("--general", general, "allow vertices in three or more blocks");
  gen->add_option("-o,--output", out_path);

  auto* benchc = app.add_subcommand("bench", "time the linear pass");
  benchc->add_option("--sizes", sizes, "comma-separated vertex counts")->expected(0, 1);

  auto* serve = app.add_subcommand("serve", "HTTP attack service");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--static", static_dir, "directory served at /");
  serve->add_option("--idle-minutes", idle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*compute) return cmd_compute(gl, file, trace_out, descending);
    if (*oracle) return cmd_oracle(gl, file, variant, max_order, witness_out, budget);
    if (*decompose) return cmd_decompose(gl, file, dir);
    if (*strategy) return cmd_strategy(gl, file, verify, interactive, explore);
    if (*cross) {
      std::vector<CrosscheckReport> reps;
      for (const auto& f : files) reps.push_back(crosscheck(load_graph(f)));
      if (corpus > 0)
        for (const auto& g : enumerate_christmas_cacti(corpus)) reps.push_back(crosscheck(g));
      for (int i = 0; i < random_count; ++i) {
        GeneratorSpec s;
        s.n = min_n + static_cast<Vertex>(i % (max_n - min_n + 1));
        s.christmas = !general;
        s.seed = gl.seed + static_cast<std::uint64_t>(i);
        reps.push_back(crosscheck(generate(s)));
      }
      return report_crosscheck(gl, reps);
    }
    if (*gen) {
      spec.christmas = !general;
      spec.seed = gl.seed;
      const Graph g = generate(spec);
      if (out_path.empty()) {
        emit_graph(gl, g, std::cout);
      } else {
        std::ostringstream body;
        emit_graph(gl, g, body);
        write_file(out_path, body.str());
      }
      return kOk;
    }
    if (*benchc) return cmd_bench(gl, sizes);
    if (*serve) return cmd_serve(host, port, static_dir, idle);
  } catch (const DecompositionError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const GraphError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const OracleBudgetExceeded& e) {
    std::cerr << "oracle budget exceeded: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
