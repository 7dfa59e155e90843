// Command-line front end: generators, single-shot runs of the covering and
// partition routines, and batch suites with CSV/JSON reports.
//
// Exit codes: 0 all checks passed, 1 a run or verification failed, 2 bad
// configuration (unreadable files, unknown kinds, malformed parameters).
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclepart/bmatching.hpp"
#include "cyclepart/clusters.hpp"
#include "cyclepart/constructions.hpp"
#include "cyclepart/covers.hpp"
#include "cyclepart/cycles.hpp"
#include "cyclepart/generators.hpp"
#include "cyclepart/graph.hpp"
#include "cyclepart/matching.hpp"
#include "cyclepart/oracles.hpp"
#include "cyclepart/params.hpp"
#include "cyclepart/pipeline.hpp"
#include "cyclepart/robmat.hpp"
#include "cyclepart/sampling.hpp"
#include "cyclepart/structural.hpp"

using nlohmann::ordered_json;
using namespace cyclepart;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

double wall_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

ordered_json row_json(const ClauseRow& row) {
  return ordered_json{{"name", row.name},
                      {"requirement", row.requirement},
                      {"actual", row.actual},
                      {"satisfied", row.satisfied},
                      {"gating", row.gating}};
}

ordered_json rows_json(const std::vector<ClauseRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) arr.push_back(row_json(row));
  return arr;
}

ordered_json family_json(const Family& family) {
  ordered_json arr = ordered_json::array();
  for (const Piece& piece : family)
    arr.push_back(
        ordered_json{{"colour", piece.colour}, {"vertices", piece.vertices}});
  return arr;
}

Family family_from_json(const ordered_json& arr) {
  Family family;
  for (const auto& item : arr) {
    Piece piece;
    piece.colour = item.at("colour").get<int>();
    piece.vertices = item.at("vertices").get<std::vector<int>>();
    family.push_back(std::move(piece));
  }
  return family;
}

ordered_json stage_json(const StageReport& st) {
  ordered_json counts = ordered_json::object();
  for (const auto& c : st.counts) counts[c.first] = c.second;
  return ordered_json{{"index", st.index},
                      {"name", st.name},
                      {"ok", st.ok},
                      {"message", st.message},
                      {"counts", counts},
                      {"rows", rows_json(st.rows)}};
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  write_text(path, j.dump(1) + "\n");
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  ordered_json j;
  in >> j;
  return j;
}

ParameterLedger ledger_from_json(const ordered_json& j, long long n,
                                 int m_hint) {
  LedgerMode mode = LedgerMode::kDesk;
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "strict")
      mode = LedgerMode::kStrict;
    else if (m != "desk")
      throw std::runtime_error("mode must be 'strict' or 'desk'");
  }
  if (j.contains("n")) n = j.at("n").get<long long>();
  if (j.contains("m_hint")) m_hint = j.at("m_hint").get<int>();
  return ParameterLedger::make(Frac::parse(j.at("nu").get<std::string>()),
                               Frac::parse(j.at("mu").get<std::string>()),
                               Frac::parse(j.at("d").get<std::string>()),
                               Frac::parse(j.at("eps").get<std::string>()),
                               j.at("r").get<int>(), n, m_hint, mode);
}

// ---- cover ----

int run_cover_posa(const std::string& input, const std::string& output) {
  ColouredGraph g = read_coloured_graph_file(input);
  Graph u = g.union_subgraph();
  Family family = posa_cover(u);
  // Re-check the cover over the emitted pieces, not the in-memory state.
  DynBitset seen(g.n());
  bool ok = true;
  std::string why;
  for (const Piece& piece : family) {
    int s = piece.order();
    for (int i = 0; i < s; ++i) {
      int v = piece.vertices[i];
      if (seen.test(v)) ok = false, why = "overlap";
      seen.set(v);
      if (s >= 2 && !u.has_edge(v, piece.vertices[(i + 1) % s]) &&
          !(s == 2 && i == 1))
        ok = false, why = "missing edge";
    }
  }
  if (seen.count() != static_cast<std::size_t>(g.n()))
    ok = false, why = "not a cover";
  ordered_json rep{{"task", "cover-posa"},
                   {"n", g.n()},
                   {"pieces", family_json(family)},
                   {"piece_count", family.size()},
                   {"verified", ok},
                   {"message", why}};
  if (!output.empty())
    write_json_file(output, rep);
  else
    std::printf("%s\n", rep.dump(1).c_str());
  return ok ? kExitPass : kExitFail;
}

int run_cover_egp(const std::string& input, int a_size, long long size_ratio,
                  long long degree_div, long long codegree_div,
                  const std::string& output) {
  ColouredGraph g = read_coloured_graph_file(input);
  if (a_size <= 0 || a_size >= g.n())
    throw CLI::ValidationError("--a-size must be in (0, n)");
  std::vector<int> a_side, b_side;
  for (int v = 0; v < a_size; ++v) a_side.push_back(v);
  for (int v = a_size; v < g.n(); ++v) b_side.push_back(v);
  EgpResult res = egp_cover(g, a_side, b_side,
                            EgpOptions{size_ratio, degree_div, codegree_div});
  bool covered = true;
  DynBitset hit(g.n());
  for (const Piece& piece : res.pieces)
    for (int v : piece.vertices) {
      if (hit.test(v)) covered = false;
      hit.set(v);
    }
  for (int v : b_side)
    if (!hit.test(v)) covered = false;
  ordered_json rep{{"task", "cover-egp"},
                   {"n", g.n()},
                   {"a_size", a_size},
                   {"success", res.success},
                   {"piece_count", res.pieces.size()},
                   {"pieces", family_json(res.pieces)},
                   {"b_covered_disjointly", covered},
                   {"rows", rows_json(res.rows)},
                   {"message", res.message}};
  if (!output.empty())
    write_json_file(output, rep);
  else
    std::printf("%s\n", rep.dump(1).c_str());
  return res.success && covered ? kExitPass : kExitFail;
}

// ---- cycle exact-length ----

int run_cycle_exact(const std::string& input, int length, int colour,
                    std::uint64_t seed, const std::string& output) {
  ColouredGraph g = read_coloured_graph_file(input);
  Graph host = colour == 0 ? g.union_subgraph() : g.mono_subgraph(colour);
  std::optional<std::vector<int>> cycle = exact_length_cycle(host, length, seed);
  bool valid = false;
  if (cycle) {
    valid = static_cast<int>(cycle->size()) == length;
    for (std::size_t i = 0; valid && i < cycle->size(); ++i)
      if (!host.has_edge((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]))
        valid = false;
  }
  ordered_json rep{{"task", "cycle-exact-length"},
                   {"n", g.n()},
                   {"length", length},
                   {"colour", colour},
                   {"found", cycle.has_value()},
                   {"cycle", cycle ? ordered_json(*cycle) : ordered_json::array()},
                   {"verified", valid}};
  if (!output.empty())
    write_json_file(output, rep);
  else
    std::printf("%s\n", rep.dump(1).c_str());
  return cycle && valid ? kExitPass : kExitFail;
}

// ---- sample ----

int run_sample(const std::string& input, const std::string& clusters,
               const std::string& p_str, std::uint64_t seed, int retries,
               bool override_floor, const std::string& output) {
  ColouredGraph g = read_coloured_graph_file(input);
  ClusterPartition cp = read_cluster_partition(clusters, g);
  DynBitset forbidden = cp.mask(0);
  SampleSet s = sample_with_properties(g, cp, forbidden, Frac::parse(p_str),
                                       seed, retries, override_floor);
  ordered_json rep{{"task", "sample"},
                   {"n", g.n()},
                   {"p", s.p.str()},
                   {"seed", seed},
                   {"attempts", s.attempts},
                   {"ok", s.ok},
                   {"window_ok", s.window_ok},
                   {"window_overridden", s.window_overridden},
                   {"size", s.a.count()},
                   {"set", s.a.to_vector()},
                   {"rows", rows_json(s.rows)},
                   {"message", s.message}};
  if (!output.empty())
    write_json_file(output, rep);
  else
    std::printf("%s\n", rep.dump(1).c_str());
  return s.ok ? kExitPass : kExitFail;
}

// ---- construct ----

int run_construct_degree(long long n, std::uint64_t seed, int materialize,
                         const std::string& output) {
  DegreeLowerBound res = build_degree_lower_bound(n, seed, 5, materialize);
  ordered_json rep{{"task", "construct-degree-lb"},
                   {"n", n},
                   {"seed", seed},
                   {"success", res.success},
                   {"resamples", res.resamples},
                   {"a_size", res.a_side.size()},
                   {"b_size", res.b_side.size()},
                   {"min_degree", res.min_degree},
                   {"delta_target", res.delta_target},
                   {"girth_target", res.girth_target},
                   {"materialized", res.materialized},
                   {"rows", rows_json(res.rows)},
                   {"message", res.message}};
  if (!output.empty()) {
    write_json_file(output + ".json", rep);
    if (res.materialized) write_coloured_graph_file(output + ".txt", res.g);
  } else {
    std::printf("%s\n", rep.dump(1).c_str());
  }
  return res.success ? kExitPass : kExitFail;
}

int run_construct_component(int r, const std::string& eps_str,
                            long long n_prime, const std::string& output) {
  BlowupConstruction res =
      build_component_lower_bound(r, Frac::parse(eps_str), n_prime);
  ordered_json rep{{"task", "construct-component-lb"},
                   {"r", r},
                   {"eps", res.eps.str()},
                   {"x_count", res.x_count()},
                   {"matching_size", res.matching_size},
                   {"n_prime_default", res.n_prime_default},
                   {"n_prime", res.n_prime},
                   {"overridden", res.overridden},
                   {"materialized", res.materialized},
                   {"success", res.success},
                   {"rows", rows_json(res.rows)},
                   {"message", res.message}};
  if (!output.empty()) {
    write_json_file(output + ".json", rep);
    if (res.materialized) write_coloured_graph_file(output + ".txt", res.g);
  } else {
    std::printf("%s\n", rep.dump(1).c_str());
  }
  return res.success ? kExitPass : kExitFail;
}

// ---- partition run ----

ordered_json partition_report(const ColouredGraph& g, const MainResult& res,
                              std::uint64_t seed) {
  ordered_json stages = ordered_json::array();
  for (const StageReport& st : res.remainder.stages) stages.push_back(stage_json(st));
  return ordered_json{
      {"task", "partition-run"},
      {"n", g.n()},
      {"r", g.r()},
      {"seed", seed},
      {"success", res.success},
      {"message", res.message},
      {"structural",
       ordered_json{{"type1", res.structural.type1},
                    {"k", res.structural.k},
                    {"balance_case", res.structural.balance_case},
                    {"side_cycle_len", res.structural.side_cycle_len},
                    {"cycles", family_json(res.structural.cycles)},
                    {"rows", rows_json(res.structural.rows)}}},
      {"stages", stages},
      {"piece_bound", res.remainder.piece_bound},
      {"headline_rows", rows_json(res.rows)},
      {"piece_count", res.family.size()},
      {"family", family_json(res.family)}};
}

int run_partition(const std::string& input, const std::string& clusters,
                  const std::string& params, std::uint64_t seed,
                  const std::string& report) {
  ColouredGraph g = read_coloured_graph_file(input);
  ClusterPartition cp = read_cluster_partition(clusters, g);
  ParameterLedger ledger =
      ledger_from_json(read_json_file(params), g.n(), cp.m());
  MainResult res = partition_main(g, ledger, cp, seed);
  ordered_json rep = partition_report(g, res, seed);
  if (!report.empty())
    write_json_file(report, rep);
  else
    std::printf("%s\n", rep.dump(1).c_str());
  return res.success ? kExitPass : kExitFail;
}

// ---- generate ----

int run_generate(const std::string& kind, const std::string& output,
                 std::uint64_t seed, int m, long long w, int r,
                 const std::string& pairs_str, int k, int holes, int n,
                 const std::string& mu_str, const std::string& nu_str,
                 const std::string& eps_str, const std::string& d_str) {
  ordered_json meta{{"kind", kind}, {"seed", seed}};
  if (kind == "blow-up") {
    std::vector<BlowupPair> pairs;
    std::stringstream ss(pairs_str);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      BlowupPair bp;
      if (std::sscanf(tok.c_str(), "%d:%d:%d:%lf", &bp.i, &bp.j, &bp.colour,
                      &bp.density) != 4)
        throw CLI::ValidationError("--pairs needs i:j:colour:density[,...]");
      pairs.push_back(bp);
    }
    if (pairs.empty())
      throw CLI::ValidationError("--pairs needs at least one entry");
    ColouredGraph g = blowup_host(m, w, r, pairs, seed);
    write_coloured_graph_file(output + ".txt", g);
    ClusterPartition cp =
        make_partition(g, consecutive_clusters(m, w), {},
                       Frac::parse(eps_str), Frac::parse(d_str));
    write_cluster_partition(output + ".clusters.json", cp);
    ordered_json jp = ordered_json::array();
    for (const auto& bp : pairs)
      jp.push_back(ordered_json{{"i", bp.i},
                                {"j", bp.j},
                                {"colour", bp.colour},
                                {"density", bp.density}});
    meta["m"] = m;
    meta["w"] = w;
    meta["r"] = r;
    meta["pairs"] = jp;
  } else if (kind == "robmat-type1" || kind == "robmat-type2") {
    int type = kind == "robmat-type1" ? 1 : 2;
    RobmatHost host =
        robmat_host(type, n, Frac::parse(mu_str), Frac::parse(nu_str), seed);
    std::vector<ColouredGraph::Edge> edges;
    host.g.for_each_edge([&](int u, int v) { edges.push_back({u, v, 1}); });
    write_coloured_graph_file(output + ".txt",
                              ColouredGraph(host.g.n(), 1, edges));
    meta["type"] = type;
    meta["n"] = n;
    meta["mu"] = mu_str;
    meta["nu"] = nu_str;
    meta["attempts"] = host.attempts;
    meta["side_a"] = host.side_a;
  } else if (kind == "planted") {
    PlantedTwoStage inst = planted_two_stage(m, w, k, holes, seed);
    write_coloured_graph_file(output + ".txt", inst.g);
    ClusterPartition cp =
        make_partition(inst.g, inst.clusters, inst.pockets,
                       Frac::parse(eps_str), Frac::parse(d_str));
    write_cluster_partition(output + ".clusters.json", cp);
    ordered_json jh = ordered_json::array();
    for (const auto& h : inst.holes)
      jh.push_back(ordered_json::array({h[0], h[1]}));
    meta["m"] = inst.m;
    meta["w"] = inst.w;
    meta["k_requested"] = k;
    meta["k"] = inst.k;
    meta["side_len"] = inst.side_len;
    meta["n"] = inst.n;
    meta["pockets"] = inst.pockets;
    meta["holes"] = jh;
    meta["pair_colour_rule"] = "1 + (i + j) mod 2";
  } else if (kind == "degree-lb") {
    return run_construct_degree(n, seed, -1, output);
  } else if (kind == "component-lb") {
    return run_construct_component(r, eps_str, 0, output);
  } else {
    throw CLI::ValidationError("unknown kind: " + kind);
  }
  write_json_file(output + ".meta.json", meta);
  return kExitPass;
}

// ---- run_suite ----

struct SuiteRow {
  std::string instance;
  std::uint64_t seed = 0;
  long long count = 0;
  long long bound = 0;
  bool passed = false;
  bool validated = false;
  double ms = 0;
  ordered_json artifact;  // written to its own file, then re-verified
};

std::vector<long long> parse_grid(const std::string& grid,
                                  const std::string& key,
                                  std::vector<long long> fallback) {
  // --grid "m=6,8;w=500" picks instance sizes per suite; unknown keys ignored.
  std::stringstream ss(grid);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos || part.substr(0, eq) != key) continue;
    std::vector<long long> vals;
    std::stringstream vs(part.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) vals.push_back(std::stoll(v));
    if (!vals.empty()) return vals;
  }
  return fallback;
}

int run_suite(const std::string& suite, const std::string& output, int seeds,
              const std::string& grid, bool override_floor) {
  std::vector<SuiteRow> rows;
  if (suite == "oracle") {
    // Random connected hosts, solver vs the exhaustive deficiency oracle.
    std::vector<long long> sizes = parse_grid(grid, "n", {5, 6, 7, 8});
    for (int s = 0; s < seeds; ++s)
      for (long long n : sizes) {
        SuiteRow row;
        row.instance = "oracle-n" + std::to_string(n);
        row.seed = 1000 + s;
        auto t0 = std::chrono::steady_clock::now();
        Graph g = random_graph(static_cast<int>(n), 0.5, row.seed * 77 + n);
        TwoMatching tm = has_perfect_2matching(g);
        std::vector<int> deficient = exhaustive_deficient_set(ListGraph::from(g));
        row.count = tm.exists ? 1 : 0;
        row.bound = deficient.empty() ? 1 : 0;
        row.passed = tm.exists == deficient.empty();
        row.ms = wall_ms(t0);
        ordered_json edges = ordered_json::array();
        g.for_each_edge([&](int u, int v) {
          edges.push_back(ordered_json::array({u, v}));
        });
        row.artifact =
            ordered_json{{"n", n},
                         {"edges", edges},
                         {"exists", tm.exists},
                         {"witness", tm.weighted_edges}};
        rows.push_back(std::move(row));
      }
  } else if (suite == "covers") {
    std::vector<long long> nbs = parse_grid(grid, "nb", {20, 30});
    for (int s = 0; s < seeds; ++s)
      for (long long nb : nbs)
        for (int r : {2, 3}) {
          SuiteRow row;
          row.instance =
              "egp-r" + std::to_string(r) + "-nb" + std::to_string(nb);
          row.seed = 2000 + s;
          auto t0 = std::chrono::steady_clock::now();
          EgpInstance inst =
              egp_instance(r, static_cast<int>(nb), row.seed * 31 + nb);
          EgpResult res =
              egp_cover(inst.g, inst.a_side, inst.b_side, inst.opts);
          row.count = static_cast<long long>(res.pieces.size());
          row.bound = 100LL * r * r;
          row.passed = res.success && row.count <= row.bound;
          row.ms = wall_ms(t0);
          row.artifact = ordered_json{{"r", r},
                                      {"nb", nb},
                                      {"b_first", inst.b_side.front()},
                                      {"pieces", family_json(res.pieces)}};
          rows.push_back(std::move(row));
        }
  } else if (suite == "pipeline") {
    std::vector<long long> ms = parse_grid(grid, "m", {6});
    std::vector<long long> ws = parse_grid(grid, "w", {500});
    for (int s = 0; s < seeds; ++s)
      for (long long m : ms)
        for (long long w : ws) {
          SuiteRow row;
          row.instance = "planted-m" + std::to_string(m) + "-w" +
                         std::to_string(w) + "-k" + std::to_string(s % 3);
          row.seed = 3000 + s;
          auto t0 = std::chrono::steady_clock::now();
          PlantedTwoStage inst = planted_two_stage(
              static_cast<int>(m), w, s % 3, s % 2, row.seed);
          ClusterPartition cp =
              make_partition(inst.g, inst.clusters, inst.pockets,
                             Frac::parse("0.025"), Frac::parse("0.9"));
          ParameterLedger ledger = ParameterLedger::make(
              Frac::parse("9e-4"), Frac::parse("4.5e-5"),
              Frac::parse("2.25e-5"), Frac::parse("2e-5"), 2, inst.g.n(),
              static_cast<int>(m),
              override_floor ? LedgerMode::kDesk : LedgerMode::kStrict);
          MainResult res = partition_main(inst.g, ledger, cp, row.seed);
          row.count = static_cast<long long>(res.family.size());
          row.bound = res.remainder.piece_bound + 400LL * 2 + 2;
          row.passed = res.success && row.count <= row.bound;
          row.ms = wall_ms(t0);
          row.artifact = ordered_json{{"m", m},
                                      {"w", w},
                                      {"k", inst.k},
                                      {"n", inst.n},
                                      {"family", family_json(res.family)}};
          rows.push_back(std::move(row));
        }
  } else {
    throw CLI::ValidationError("unknown suite: " + suite);
  }

  // Validation pass: re-read each row's emitted artifact and re-verify it.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string path = output + ".row" + std::to_string(i) + ".json";
    write_json_file(path, rows[i].artifact);
    ordered_json back = read_json_file(path);
    if (suite == "oracle") {
      Graph g(static_cast<int>(back.at("n").get<long long>()));
      for (const auto& e : back.at("edges"))
        g.add_edge(e[0].get<int>(), e[1].get<int>());
      if (back.at("exists").get<bool>()) {
        std::vector<std::array<int, 3>> witness;
        for (const auto& t : back.at("witness"))
          witness.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
        rows[i].validated = verify_two_matching(ListGraph::from(g), witness);
      } else {
        rows[i].validated = !exhaustive_deficient_set(ListGraph::from(g)).empty();
      }
    } else if (suite == "covers") {
      Family pieces = family_from_json(back.at("pieces"));
      int b_first = back.at("b_first").get<int>();
      EgpInstance inst = egp_instance(back.at("r").get<int>(),
                                      static_cast<int>(back.at("nb").get<long long>()),
                                      rows[i].seed * 31 + back.at("nb").get<long long>());
      DynBitset hit(inst.g.n());
      bool ok = validate_family(inst.g, pieces, false).ok;
      for (const Piece& piece : pieces)
        for (int v : piece.vertices) hit.set(v);
      for (int v = b_first; v < inst.g.n(); ++v)
        if (!hit.test(v)) ok = false;
      rows[i].validated = ok;
    } else if (suite == "pipeline") {
      Family family = family_from_json(back.at("family"));
      PlantedTwoStage inst = planted_two_stage(
          static_cast<int>(back.at("m").get<long long>()),
          back.at("w").get<long long>(),
          static_cast<int>(rows[i].seed - 3000) % 3,
          static_cast<int>(rows[i].seed - 3000) % 2, rows[i].seed);
      rows[i].validated = validate_family(inst.g, family, true).ok;
    }
    rows[i].passed = rows[i].passed && rows[i].validated;
  }

  std::ostringstream csv;
  csv << "instance,seed,count,bound,passed,validated,wall_ms\n";
  for (const SuiteRow& row : rows)
    csv << row.instance << ',' << row.seed << ',' << row.count << ','
        << row.bound << ',' << (row.passed ? 1 : 0) << ','
        << (row.validated ? 1 : 0) << ',' << static_cast<long long>(row.ms)
        << '\n';
  write_text(output + ".csv", csv.str());

  // Timing stays out of the JSON report so reruns are byte-identical.
  ordered_json jrows = ordered_json::array();
  bool all_passed = true;
  for (const SuiteRow& row : rows) {
    jrows.push_back(ordered_json{{"instance", row.instance},
                                 {"seed", row.seed},
                                 {"count", row.count},
                                 {"bound", row.bound},
                                 {"passed", row.passed},
                                 {"validated", row.validated}});
    all_passed = all_passed && row.passed;
  }
  write_json_file(output + ".json", ordered_json{{"suite", suite},
                                                 {"seeds", seeds},
                                                 {"rows", jrows},
                                                 {"all_passed", all_passed}});
  return all_passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monochromatic cycle partition toolkit"};
  app.require_subcommand(1);

  std::string input, output, clusters, params, report;
  std::uint64_t seed = 1;
  int a_size = 0, length = 0, colour = 0, retries = 10, materialize = -1;
  long long size_ratio = 0, degree_div = 0, codegree_div = 0;
  long long n_ll = 0, w = 500, n_prime = 0;
  int m = 6, r = 2, k = 0, holes = 0, n_int = 0, seeds = 5;
  bool override_floor = false;
  std::string p_str, eps_str = "0.02", d_str = "0.9", mu_str = "4.5e-5",
              nu_str = "9e-4", kind, pairs_str, suite, grid;

  CLI::App* cover = app.add_subcommand("cover", "vertex covers by cycles");
  cover->require_subcommand(1);
  CLI::App* posa = cover->add_subcommand("posa", "independence-bounded cover");
  posa->add_option("--input", input)->required();
  posa->add_option("--output", output);
  CLI::App* egp = cover->add_subcommand("egp", "bipartite monochromatic cover");
  egp->add_option("--input", input)->required();
  egp->add_option("--a-size", a_size)->required();
  egp->add_option("--size-ratio", size_ratio);
  egp->add_option("--degree-div", degree_div);
  egp->add_option("--codegree-div", codegree_div);
  egp->add_option("--output", output);

  CLI::App* cycle = app.add_subcommand("cycle", "cycle search");
  CLI::App* exact = cycle->add_subcommand("exact-length", "find an exact-length cycle");
  exact->add_option("--input", input)->required();
  exact->add_option("--length", length)->required();
  exact->add_option("--colour", colour);
  exact->add_option("--seed", seed);
  exact->add_option("--output", output);

  CLI::App* sample = app.add_subcommand("sample", "random set with degree properties");
  sample->add_option("--input", input)->required();
  sample->add_option("--clusters", clusters)->required();
  sample->add_option("--p", p_str)->required();
  sample->add_option("--seed", seed);
  sample->add_option("--retries", retries);
  sample->add_flag("--override-n-floor", override_floor);
  sample->add_option("--output", output);

  CLI::App* construct = app.add_subcommand("construct", "sharpness constructions");
  construct->require_subcommand(1);
  CLI::App* deg = construct->add_subcommand("degree-lb", "degree lower bound host");
  deg->add_option("--n", n_ll)->required();
  deg->add_option("--seed", seed);
  deg->add_option("--materialize", materialize);
  deg->add_option("--output", output);
  CLI::App* comp = construct->add_subcommand("component-lb", "component count lower bound");
  comp->add_option("--r", r)->required();
  comp->add_option("--eps", eps_str)->required();
  comp->add_option("--n-prime", n_prime);
  comp->add_option("--output", output);

  CLI::App* partition = app.add_subcommand("partition", "cycle partition pipeline");
  CLI::App* prun = partition->add_subcommand("run", "end-to-end partition");
  prun->add_option("--input", input)->required();
  prun->add_option("--clusters", clusters)->required();
  prun->add_option("--params", params)->required();
  prun->add_option("--seed", seed);
  prun->add_option("--report", report);

  CLI::App* gen = app.add_subcommand("generate", "instance generators");
  gen->add_option("--kind", kind)->required();
  gen->add_option("--output", output)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--m", m);
  gen->add_option("--w", w);
  gen->add_option("--r", r);
  gen->add_option("--pairs", pairs_str);
  gen->add_option("--k", k);
  gen->add_option("--holes", holes);
  gen->add_option("--n", n_int);
  gen->add_option("--mu", mu_str);
  gen->add_option("--nu", nu_str);
  gen->add_option("--eps", eps_str);
  gen->add_option("--d", d_str);

  CLI::App* rsuite = app.add_subcommand("run_suite", "batch suites with reports");
  rsuite->add_option("--suite", suite)->required();
  rsuite->add_option("--output", output)->required();
  rsuite->add_option("--seeds", seeds);
  rsuite->add_option("--grid", grid);
  rsuite->add_flag("--override-n-floor", override_floor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (posa->parsed()) return run_cover_posa(input, output);
    if (egp->parsed())
      return run_cover_egp(input, a_size, size_ratio, degree_div, codegree_div,
                           output);
    if (exact->parsed())
      return run_cycle_exact(input, length, colour, seed, output);
    if (sample->parsed())
      return run_sample(input, clusters, p_str, seed, retries, override_floor,
                        output);
    if (deg->parsed())
      return run_construct_degree(n_ll, seed, materialize, output);
    if (comp->parsed())
      return run_construct_component(r, eps_str, n_prime, output);
    if (prun->parsed())
      return run_partition(input, clusters, params, seed, report);
    if (gen->parsed())
      return run_generate(kind, output, seed, m, w, r, pairs_str, k, holes,
                          n_int, mu_str, nu_str, eps_str, d_str);
    if (rsuite->parsed())
      return run_suite(suite, output, seeds, grid, override_floor);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
