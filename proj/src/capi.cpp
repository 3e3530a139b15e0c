#include "tmotif/tmotif.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "report.hpp"
#include "tmotif/core.hpp"
#include "tmotif/exact.hpp"
#include "tmotif/sampling.hpp"
#include "tmotif/testkit.hpp"

struct tm_graph {
  tmotif::TemporalGraph graph;
};

struct tm_motif {
  tmotif::Motif motif;
};

struct tm_histogram {
  tmotif::CountDurationHistogram histogram;
  std::vector<std::pair<tmotif::TimeDelta, tmotif::Count>> flat;
};

struct tm_estimate {
  tmotif::Estimate estimate;
  tmotif::SamplingConfig config;
};

namespace {

thread_local std::string g_last_error;

tm_status to_status(tmotif::ErrorKind kind) {
  using tmotif::ErrorKind;
  switch (kind) {
    case ErrorKind::kParse: return TM_ERR_PARSE;
    case ErrorKind::kConfig: return TM_ERR_CONFIG;
    case ErrorKind::kDomain: return TM_ERR_DOMAIN;
    case ErrorKind::kOverflow: return TM_ERR_OVERFLOW;
    case ErrorKind::kStreamOrder: return TM_ERR_STREAM_ORDER;
    case ErrorKind::kBudget: return TM_ERR_BUDGET;
    case ErrorKind::kUsage: return TM_ERR_USAGE;
    case ErrorKind::kIo: return TM_ERR_IO;
  }
  return TM_ERR_INTERNAL;
}

tm_status fail(tm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
tm_status guarded(Body&& body) {
  try {
    body();
    return TM_OK;
  } catch (const tmotif::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TM_ERR_INTERNAL, e.what());
  }
}

tm_status null_argument(const char* name) {
  return fail(TM_ERR_USAGE, std::string("null argument: ") + name);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

tmotif::Algorithm to_algorithm(tm_algo algo) {
  switch (algo) {
    case TM_ALGO_AUTO: return tmotif::Algorithm::kAuto;
    case TM_ALGO_BT: return tmotif::Algorithm::kBacktracking;
    case TM_ALGO_EX23: return tmotif::Algorithm::kEx23;
  }
  throw tmotif::Error(tmotif::ErrorKind::kUsage, "unknown algorithm");
}

tmotif::SamplingConfig to_config(const tm_sampling_config* cfg) {
  tmotif::SamplingConfig out;
  if (!cfg) return out;
  out.c = cfg->c;
  out.b = cfg->b;
  out.r = cfg->r;
  out.seed = cfg->seed;
  out.threads = cfg->threads;
  if (cfg->target_epsilon > 0.0) out.target_epsilon = cfg->target_epsilon;
  return out;
}

}  // namespace

extern "C" {

const char* tm_last_error(void) { return g_last_error.c_str(); }

const char* tm_status_name(tm_status status) {
  switch (status) {
    case TM_OK: return "ok";
    case TM_ERR_USAGE: return "usage";
    case TM_ERR_PARSE: return "parse";
    case TM_ERR_CONFIG: return "config";
    case TM_ERR_DOMAIN: return "domain";
    case TM_ERR_STREAM_ORDER: return "stream_order";
    case TM_ERR_BUDGET: return "budget";
    case TM_ERR_OVERFLOW: return "overflow";
    case TM_ERR_IO: return "io";
    case TM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void tm_string_free(char* s) { std::free(s); }

tm_status tm_graph_load_file(const char* path, tm_graph** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tm_graph{tmotif::load_temporal_graph_file(path)}; });
}

tm_status tm_graph_load_string(const char* text, size_t len, tm_graph** out) {
  if (!text && len > 0) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new tm_graph{tmotif::load_temporal_graph_string(std::string_view(text ? text : "", len))};
  });
}

void tm_graph_free(tm_graph* g) { delete g; }

tm_status tm_graph_stats_get(const tm_graph* g, tm_graph_stats* out) {
  if (!g) return null_argument("g");
  if (!out) return null_argument("out");
  return guarded([&] {
    out->nodes = g->graph.num_nodes();
    out->temporal_edges = g->graph.num_edges();
    out->static_edges = tmotif::static_projection(g->graph).edges.size();
    out->t_min = g->graph.t_min();
    out->t_max = g->graph.t_max();
  });
}

tm_status tm_graph_to_edge_list(const tm_graph* g, char** out) {
  if (!g) return null_argument("g");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::ostringstream text;
    tmotif::write_edge_list(text, g->graph);
    *out = copy_string(text.str());
  });
}

tm_status tm_motif_parse(const char* text, tm_motif** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new tm_motif{tmotif::parse_motif(text)}; });
}

tm_status tm_motif_load_file(const char* path, tm_motif** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw tmotif::Error(tmotif::ErrorKind::kIo, std::string("cannot open '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    *out = new tm_motif{tmotif::parse_motif(text.str())};
  });
}

void tm_motif_free(tm_motif* m) { delete m; }

size_t tm_motif_num_nodes(const tm_motif* m) { return m ? m->motif.num_nodes : 0; }

size_t tm_motif_num_edges(const tm_motif* m) { return m ? m->motif.num_edges() : 0; }

tm_status tm_motif_to_text(const tm_motif* m, char** out) {
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::string text;
    const auto& labels = m->motif.labels;
    auto name = [&](tmotif::NodeId id) {
      return id < labels.size() ? labels[id] : std::to_string(id);
    };
    for (const auto& [u, v] : m->motif.edges) text += name(u) + ' ' + name(v) + '\n';
    *out = copy_string(text);
  });
}

tm_status tm_count(const tm_graph* g, const tm_motif* m, int64_t delta, tm_algo algo,
                   tm_histogram** out) {
  if (!g) return null_argument("g");
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (delta < 0) throw tmotif::Error(tmotif::ErrorKind::kDomain, "delta must be nonnegative");
    const auto counter = tmotif::make_counter(to_algorithm(algo), m->motif);
    auto* h = new tm_histogram{counter(g->graph, m->motif, delta), {}};
    for (const auto& entry : h->histogram.entries()) h->flat.push_back(entry);
    *out = h;
  });
}

void tm_histogram_free(tm_histogram* h) { delete h; }

size_t tm_histogram_size(const tm_histogram* h) { return h ? h->flat.size() : 0; }

tm_status tm_histogram_entry(const tm_histogram* h, size_t i, int64_t* duration,
                             uint64_t* count) {
  if (!h) return null_argument("h");
  if (i >= h->flat.size()) return fail(TM_ERR_USAGE, "histogram index out of range");
  if (duration) *duration = h->flat[i].first;
  if (count) *count = h->flat[i].second;
  return TM_OK;
}

tm_status tm_histogram_total(const tm_histogram* h, uint64_t* total) {
  if (!h) return null_argument("h");
  if (!total) return null_argument("total");
  return guarded([&] { *total = tmotif::total_count(h->histogram); });
}

tm_status tm_histogram_to_json(const tm_histogram* h, char** out) {
  if (!h) return null_argument("h");
  if (!out) return null_argument("out");
  return guarded([&] { *out = copy_string(tmotif::report::histogram(h->histogram).dump()); });
}

void tm_sampling_config_default(tm_sampling_config* cfg) {
  if (!cfg) return;
  const tmotif::SamplingConfig defaults;
  cfg->c = defaults.c;
  cfg->b = defaults.b;
  cfg->r = defaults.r;
  cfg->seed = defaults.seed;
  cfg->threads = defaults.threads;
  cfg->target_epsilon = 0.0;
}

tm_status tm_estimate_graph(const tm_graph* g, const tm_motif* m, int64_t delta,
                            const tm_sampling_config* cfg, tm_algo algo, tm_estimate** out) {
  if (!g) return null_argument("g");
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto config = to_config(cfg);
    const auto counter = tmotif::make_counter(to_algorithm(algo), m->motif);
    *out = new tm_estimate{tmotif::estimate(g->graph, m->motif, delta, config, counter), config};
  });
}

tm_status tm_estimate_stream_file(const char* path, const tm_motif* m, int64_t delta,
                                  const tm_sampling_config* cfg, tm_algo algo,
                                  tm_estimate** out) {
  if (!path) return null_argument("path");
  if (!m) return null_argument("m");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto config = to_config(cfg);
    const auto counter = tmotif::make_counter(to_algorithm(algo), m->motif);
    auto est = tmotif::estimate_streaming(tmotif::edge_list_file_replay(path), m->motif, delta,
                                          config, counter);
    *out = new tm_estimate{std::move(est), config};
  });
}

void tm_estimate_free(tm_estimate* e) { delete e; }

double tm_estimate_value(const tm_estimate* e) { return e ? e->estimate.value : 0.0; }

size_t tm_estimate_num_shifts(const tm_estimate* e) {
  return e ? e->estimate.per_shift.size() : 0;
}

double tm_estimate_shift_value(const tm_estimate* e, size_t k) {
  if (!e || k >= e->estimate.per_shift.size()) return 0.0;
  return e->estimate.per_shift[k];
}

uint64_t tm_estimate_sampled_intervals(const tm_estimate* e) {
  return e ? e->estimate.sampled_interval_count : 0;
}

double tm_estimate_sampled_edge_fraction(const tm_estimate* e) {
  return e ? e->estimate.sampled_edge_fraction : 0.0;
}

int tm_estimate_peak_retained_edges(const tm_estimate* e, uint64_t* out) {
  if (!e || !e->estimate.peak_retained_edges) return 0;
  if (out) *out = *e->estimate.peak_retained_edges;
  return 1;
}

tm_status tm_estimate_to_json(const tm_estimate* e, char** out) {
  if (!e) return null_argument("e");
  if (!out) return null_argument("out");
  return guarded(
      [&] { *out = copy_string(tmotif::report::estimate(e->estimate, e->config).dump()); });
}

tm_status tm_diagnose(const tm_graph* g, const tm_motif* m, int64_t delta,
                      const tm_sampling_config* cfg, tm_algo algo, char** json_out) {
  if (!g) return null_argument("g");
  if (!m) return null_argument("m");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const auto config = to_config(cfg);
    const auto counter = tmotif::make_counter(to_algorithm(algo), m->motif);
    const auto d = tmotif::diagnose(g->graph, m->motif, delta, config, counter);
    *json_out = copy_string(tmotif::report::diagnosis(d, config).dump());
  });
}

tm_status tm_gen_random(uint64_t n, uint64_t m, int64_t t_range, uint64_t seed, tm_graph** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new tm_graph{tmotif::testkit::random_temporal_graph(n, m, t_range, seed)};
  });
}

tm_status tm_gen_reduction(uint64_t n, const uint32_t* edges, size_t num_edges, uint64_t k,
                           tm_graph** graph_out, tm_motif** motif_out, int64_t* delta) {
  if (!edges && num_edges > 0) return null_argument("edges");
  if (!graph_out) return null_argument("graph_out");
  if (!motif_out) return null_argument("motif_out");
  return guarded([&] {
    tmotif::testkit::CliqueInstance inst;
    inst.n = n;
    inst.k = k;
    for (size_t i = 0; i < num_edges; ++i) inst.edges.emplace_back(edges[2 * i], edges[2 * i + 1]);
    auto red = tmotif::testkit::clique_reduction_instance(inst);
    auto graph = std::make_unique<tm_graph>(tm_graph{std::move(red.graph)});
    auto motif = std::make_unique<tm_motif>(tm_motif{std::move(red.star)});
    if (delta) *delta = red.delta;
    *graph_out = graph.release();
    *motif_out = motif.release();
  });
}

}  // extern "C"
