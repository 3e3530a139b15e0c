// tmotif: exact counting and sampling estimates of temporal motifs.
//
// Every subcommand prints one JSON report on stdout. Diagnostics go to
// stderr. Exit status: 0 success, 1 usage, 2 data error, 3 internal/overflow.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tmotif/tmotif.h"

namespace {

using json = nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct Failure {
  tm_status status;
  std::string message;
};

int exit_code(tm_status status) {
  switch (status) {
    case TM_OK: return 0;
    case TM_ERR_USAGE:
    case TM_ERR_CONFIG: return kExitUsage;
    case TM_ERR_PARSE:
    case TM_ERR_DOMAIN:
    case TM_ERR_STREAM_ORDER:
    case TM_ERR_BUDGET:
    case TM_ERR_IO: return kExitData;
    case TM_ERR_OVERFLOW:
    case TM_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(tm_status status) {
  if (status != TM_OK) throw Failure{status, tm_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<tm_graph, Deleter<tm_graph, tm_graph_free>>;
using MotifPtr = std::unique_ptr<tm_motif, Deleter<tm_motif, tm_motif_free>>;
using HistogramPtr = std::unique_ptr<tm_histogram, Deleter<tm_histogram, tm_histogram_free>>;
using EstimatePtr = std::unique_ptr<tm_estimate, Deleter<tm_estimate, tm_estimate_free>>;

json take_json(char* text) {
  std::unique_ptr<char, Deleter<char, tm_string_free>> owned(text);
  return json::parse(owned.get());
}

std::string take_string(char* text) {
  std::unique_ptr<char, Deleter<char, tm_string_free>> owned(text);
  return owned.get();
}

GraphPtr load_graph(const std::string& path) {
  tm_graph* g = nullptr;
  check(tm_graph_load_file(path.c_str(), &g));
  return GraphPtr(g);
}

// A motif argument is a file path if such a file exists, else a name or inline text.
MotifPtr load_motif(const std::string& spec) {
  tm_motif* m = nullptr;
  if (std::filesystem::is_regular_file(spec)) {
    check(tm_motif_load_file(spec.c_str(), &m));
  } else {
    check(tm_motif_parse(spec.c_str(), &m));
  }
  return MotifPtr(m);
}

json motif_echo(const std::string& spec, const tm_motif* m) {
  char* text = nullptr;
  check(tm_motif_to_text(m, &text));
  return {{"spec", spec},
          {"nodes", tm_motif_num_nodes(m)},
          {"edges", tm_motif_num_edges(m)},
          {"text", take_string(text)}};
}

json input_stats(const tm_graph* g) {
  tm_graph_stats s{};
  check(tm_graph_stats_get(g, &s));
  return {{"nodes", s.nodes},
          {"temporal_edges", s.temporal_edges},
          {"static_edges", s.static_edges},
          {"t_min", s.t_min},
          {"t_max", s.t_max}};
}

tm_algo parse_algo(const std::string& name) {
  if (name == "bt") return TM_ALGO_BT;
  if (name == "ex23") return TM_ALGO_EX23;
  return TM_ALGO_AUTO;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct QueryOptions {
  std::string input;
  std::string motif;
  std::int64_t delta = 0;
  std::string algo = "auto";
};

struct SamplingOptions {
  tm_sampling_config cfg{};
  double epsilon = 0.0;
  bool streaming = false;
};

void add_query_options(CLI::App* cmd, QueryOptions& q) {
  cmd->add_option("--input,-i", q.input, "Edge-list file: 'src dst t' per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--motif,-m", q.motif, "m23, bifan, triangle, or a motif file")->required();
  cmd->add_option("--delta,-d", q.delta,
                  "Time span in the input's native unit (e.g. 86400, or 3600 for bi-fan)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--algo", q.algo, "Exact counter")
      ->check(CLI::IsMember({"auto", "bt", "ex23"}));
}

void add_sampling_options(CLI::App* cmd, SamplingOptions& s) {
  tm_sampling_config_default(&s.cfg);
  cmd->add_option("--c", s.cfg.c, "Window width multiplier (>= 2)");
  cmd->add_option("--b", s.cfg.b, "Number of shifts");
  cmd->add_option("--r", s.cfg.r, "Sampling probability scale");
  cmd->add_option("--seed", s.cfg.seed, "Random seed");
  cmd->add_option("--threads", s.cfg.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--epsilon", s.epsilon, "Target relative error for the trade-off report");
}

json run_count(const QueryOptions& q) {
  auto g = load_graph(q.input);
  auto m = load_motif(q.motif);
  const auto start = std::chrono::steady_clock::now();
  tm_histogram* h = nullptr;
  check(tm_count(g.get(), m.get(), q.delta, parse_algo(q.algo), &h));
  HistogramPtr owned(h);
  const double ms = elapsed_ms(start);
  char* text = nullptr;
  check(tm_histogram_to_json(h, &text));
  return {{"mode", "exact"},
          {"motif", motif_echo(q.motif, m.get())},
          {"delta", q.delta},
          {"algo", q.algo},
          {"input", input_stats(g.get())},
          {"result", take_json(text)},
          {"timing", {{"wall_time_ms", ms}}}};
}

json run_estimate(const QueryOptions& q, SamplingOptions s) {
  auto m = load_motif(q.motif);
  s.cfg.target_epsilon = s.epsilon;
  const auto start = std::chrono::steady_clock::now();
  tm_estimate* e = nullptr;
  json input;
  if (s.streaming) {
    check(tm_estimate_stream_file(q.input.c_str(), m.get(), q.delta, &s.cfg, parse_algo(q.algo), &e));
  } else {
    auto g = load_graph(q.input);
    input = input_stats(g.get());
    check(tm_estimate_graph(g.get(), m.get(), q.delta, &s.cfg, parse_algo(q.algo), &e));
  }
  EstimatePtr owned(e);
  const double ms = elapsed_ms(start);
  char* text = nullptr;
  check(tm_estimate_to_json(e, &text));
  json result = take_json(text);
  result["wall_time_ms"] = ms;
  json report = {{"mode", "estimate"},
                 {"motif", motif_echo(q.motif, m.get())},
                 {"delta", q.delta},
                 {"algo", q.algo},
                 {"streaming", s.streaming},
                 {"result", result},
                 {"timing", {{"wall_time_ms", ms}}}};
  if (!input.is_null()) report["input"] = input;
  return report;
}

json run_diagnose(const QueryOptions& q, SamplingOptions s) {
  auto g = load_graph(q.input);
  auto m = load_motif(q.motif);
  s.cfg.target_epsilon = s.epsilon;
  const auto start = std::chrono::steady_clock::now();
  char* text = nullptr;
  check(tm_diagnose(g.get(), m.get(), q.delta, &s.cfg, parse_algo(q.algo), &text));
  const double ms = elapsed_ms(start);
  return {{"mode", "diagnose"},
          {"motif", motif_echo(q.motif, m.get())},
          {"delta", q.delta},
          {"algo", q.algo},
          {"input", input_stats(g.get())},
          {"result", take_json(text)},
          {"timing", {{"wall_time_ms", ms}}}};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Failure{TM_ERR_IO, "cannot write '" + path + "'"};
  out << contents;
}

std::string graph_text(const tm_graph* g) {
  char* text = nullptr;
  check(tm_graph_to_edge_list(g, &text));
  return take_string(text);
}

struct RandomGenOptions {
  std::uint64_t nodes = 10;
  std::uint64_t edges = 100;
  std::int64_t t_range = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

json run_gen_random(const RandomGenOptions& o) {
  tm_graph* g = nullptr;
  check(tm_gen_random(o.nodes, o.edges, o.t_range, o.seed, &g));
  GraphPtr owned(g);
  write_file(o.output, graph_text(g));
  return {{"mode", "gen"},
          {"generator", "random"},
          {"output", o.output},
          {"params", {{"nodes", o.nodes}, {"edges", o.edges}, {"t_range", o.t_range}, {"seed", o.seed}}},
          {"input", input_stats(g)}};
}

struct ReductionGenOptions {
  std::string graph;
  std::uint64_t nodes = 0;
  std::uint64_t k = 3;
  std::string output;
  std::string motif_output;
};

json run_gen_reduction(const ReductionGenOptions& o) {
  std::ifstream in(o.graph);
  if (!in) throw Failure{TM_ERR_IO, "cannot open '" + o.graph + "'"};
  std::vector<std::uint32_t> pairs;
  std::uint64_t n = o.nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#' || first[0] == '%') continue;
    std::uint32_t u = 0, v = 0;
    try {
      u = static_cast<std::uint32_t>(std::stoul(first));
    } catch (const std::exception&) {
      throw Failure{TM_ERR_PARSE, "line " + std::to_string(line_no) + ": expected 'u v'"};
    }
    if (!(fields >> v)) {
      throw Failure{TM_ERR_PARSE, "line " + std::to_string(line_no) + ": expected 'u v'"};
    }
    pairs.push_back(u);
    pairs.push_back(v);
    n = std::max<std::uint64_t>(n, std::max(u, v));
  }
  tm_graph* g = nullptr;
  tm_motif* m = nullptr;
  std::int64_t delta = 0;
  check(tm_gen_reduction(n, pairs.data(), pairs.size() / 2, o.k, &g, &m, &delta));
  GraphPtr graph(g);
  MotifPtr motif(m);
  write_file(o.output, graph_text(g));
  char* text = nullptr;
  check(tm_motif_to_text(m, &text));
  write_file(o.motif_output, take_string(text));
  return {{"mode", "gen"},
          {"generator", "reduction"},
          {"output", o.output},
          {"motif_output", o.motif_output},
          {"params", {{"nodes", n}, {"k", o.k}, {"undirected_edges", pairs.size() / 2}}},
          {"delta", delta},
          {"input", input_stats(g)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts and sampling estimates of temporal motifs"};
  app.require_subcommand(1);

  QueryOptions count_q;
  auto* count = app.add_subcommand("count", "Exact count-duration histogram");
  add_query_options(count, count_q);

  QueryOptions est_q;
  SamplingOptions est_s;
  auto* est = app.add_subcommand("estimate", "Sampling estimate of the motif count");
  add_query_options(est, est_q);
  add_sampling_options(est, est_s);
  est->add_flag("--streaming", est_s.streaming,
                "Stream a time-sorted input instead of loading it");

  QueryOptions diag_q;
  SamplingOptions diag_s;
  auto* diag = app.add_subcommand("diagnose", "Full pass at one shift with sampling diagnostics");
  add_query_options(diag, diag_q);
  add_sampling_options(diag, diag_s);

  auto* gen = app.add_subcommand("gen", "Generate inputs");
  gen->require_subcommand(1);
  RandomGenOptions rnd;
  auto* gen_random = gen->add_subcommand("random", "Uniform random temporal graph");
  gen_random->add_option("--nodes", rnd.nodes)->check(CLI::PositiveNumber);
  gen_random->add_option("--edges", rnd.edges);
  gen_random->add_option("--t-range", rnd.t_range)->check(CLI::PositiveNumber);
  gen_random->add_option("--seed", rnd.seed);
  gen_random->add_option("--output,-o", rnd.output)->required();
  ReductionGenOptions red;
  auto* gen_red = gen->add_subcommand("reduction", "Star-motif instance from a clique instance");
  gen_red->add_option("--graph", red.graph, "Undirected graph, 'u v' per line, nodes 1..n")
      ->required();
  gen_red->add_option("--nodes", red.nodes, "n, when larger than the largest node id");
  gen_red->add_option("--k", red.k, "Clique size")->check(CLI::PositiveNumber);
  gen_red->add_option("--output,-o", red.output)->required();
  gen_red->add_option("--motif-output", red.motif_output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    json report;
    if (*count) report = run_count(count_q);
    if (*est) report = run_estimate(est_q, est_s);
    if (*diag) report = run_diagnose(diag_q, diag_s);
    if (*gen_random) report = run_gen_random(rnd);
    if (*gen_red) report = run_gen_reduction(red);
    std::cout << report.dump(2) << '\n';
    return 0;
  } catch (const Failure& f) {
    std::cerr << "tmotif: " << tm_status_name(f.status) << " error: " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "tmotif: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
