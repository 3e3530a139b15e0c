#include "report.hpp"

#include <algorithm>
#include <numeric>

namespace tmotif::report {

namespace {

template <typename T>
nlohmann::json summary(const std::vector<T>& v) {
  nlohmann::json out = {{"length", v.size()}};
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  out["min"] = *lo;
  out["max"] = *hi;
  out["mean"] = sum / static_cast<double>(v.size());
  out["sum"] = sum;
  out["nonzero"] = std::count_if(v.begin(), v.end(), [](T x) { return x != T{}; });
  return out;
}

}  // namespace

nlohmann::json histogram(const CountDurationHistogram& h) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [d, c] : h.entries()) counts[std::to_string(d)] = c;
  return {{"histogram", counts}, {"total", total_count(h)}};
}

nlohmann::json config(const SamplingConfig& cfg) {
  nlohmann::json out = {{"c", cfg.c}, {"b", cfg.b}, {"r", cfg.r}, {"seed", cfg.seed},
                        {"threads", cfg.threads}};
  if (cfg.target_epsilon) out["target_epsilon"] = *cfg.target_epsilon;
  return out;
}

nlohmann::json estimate(const Estimate& e, const SamplingConfig& cfg) {
  nlohmann::json out = {
      {"value", e.value},
      {"per_shift", e.per_shift},
      {"shifts", e.shifts},
      {"sampled_interval_count", e.sampled_interval_count},
      {"total_interval_count", e.total_interval_count},
      {"sampled_edge_fraction", e.sampled_edge_fraction},
      {"config", config(cfg)},
  };
  if (e.rho) out["rho"] = *e.rho;
  if (e.peak_retained_edges) out["peak_retained_edges"] = *e.peak_retained_edges;
  return out;
}

nlohmann::json diagnosis(const Diagnosis& d, const SamplingConfig& cfg) {
  nlohmann::json tradeoff = {{"sampling_term", d.tradeoff.sampling_term},
                             {"shift_term", d.tradeoff.shift_term}};
  if (d.tradeoff.budget) tradeoff["budget"] = *d.tradeoff.budget;
  nlohmann::json out = {
      {"shift", d.grid.shift},
      {"width", d.grid.width},
      {"num_intervals", d.grid.num_intervals},
      {"edges", summary(d.edge_counts)},
      {"q", summary(d.probabilities.q)},
      {"y", summary(d.counts.y)},
      {"y_norm1", d.y_norm1},
      {"rho", d.rho},
      {"conditional_variance", d.conditional_variance},
      {"tradeoff", tradeoff},
      {"config", config(cfg)},
  };
  out["sparsity"] = d.sparsity ? nlohmann::json(*d.sparsity) : nlohmann::json(nullptr);
  return out;
}

nlohmann::json graph_stats(const TemporalGraph& g) {
  return {{"nodes", g.num_nodes()},
          {"temporal_edges", g.num_edges()},
          {"static_edges", static_projection(g).edges.size()},
          {"t_min", g.t_min()},
          {"t_max", g.t_max()}};
}

}  // namespace tmotif::report
