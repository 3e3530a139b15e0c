#include "tmotif/core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace tmotif {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool is_comment(std::string_view first_token) {
  return !first_token.empty() && (first_token.front() == '#' || first_token.front() == '%');
}

class LabelInterner {
 public:
  NodeId intern(std::string_view label) {
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<NodeId>(labels_.size());
    labels_.emplace_back(label);
    ids_.emplace(labels_.back(), id);
    return id;
  }

  std::vector<std::string> take_labels() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

}  // namespace

TemporalGraph TemporalGraph::from_edges(std::vector<TemporalEdge> edges,
                                        std::vector<std::string> labels) {
  TemporalGraph g;
  std::sort(edges.begin(), edges.end(), time_order_less);
  std::size_t n = labels.size();
  for (const auto& e : edges) {
    n = std::max<std::size_t>(n, std::max(e.src, e.dst) + std::size_t{1});
  }
  g.edges_ = std::move(edges);
  g.num_nodes_ = n;
  g.labels_ = std::move(labels);
  return g;
}

std::pair<std::size_t, std::size_t> TemporalGraph::index_range(Timestamp lo,
                                                               Timestamp hi) const {
  if (lo > hi) return {0, 0};
  auto first = std::lower_bound(edges_.begin(), edges_.end(), lo,
                                [](const TemporalEdge& e, Timestamp t) { return e.t < t; });
  auto last = std::upper_bound(first, edges_.end(), hi,
                               [](Timestamp t, const TemporalEdge& e) { return t < e.t; });
  return {static_cast<std::size_t>(first - edges_.begin()),
          static_cast<std::size_t>(last - edges_.begin())};
}

TemporalGraph TemporalGraph::time_slice(Timestamp lo, Timestamp hi) const {
  const auto [first, last] = index_range(lo, hi);
  return index_slice(first, last);
}

TemporalGraph TemporalGraph::index_slice(std::size_t first, std::size_t last) const {
  last = std::min(last, edges_.size());
  first = std::min(first, last);
  TemporalGraph g;
  g.edges_.assign(edges_.begin() + static_cast<std::ptrdiff_t>(first),
                  edges_.begin() + static_cast<std::ptrdiff_t>(last));
  g.num_nodes_ = num_nodes_;
  return g;
}

void Motif::validate() const {
  if (edges.empty()) throw Error(ErrorKind::kParse, "motif has no edges");
  std::vector<bool> seen(num_nodes, false);
  for (const auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw Error(ErrorKind::kParse, "motif edge references node outside 0..k-1");
    }
    seen[u] = true;
    seen[v] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::kParse, "motif node ids are not dense");
  }
}

Motif make_motif(std::vector<std::pair<NodeId, NodeId>> edges) {
  Motif m;
  for (const auto& [u, v] : edges) {
    m.num_nodes = std::max<std::size_t>(m.num_nodes, std::max(u, v) + std::size_t{1});
  }
  m.edges = std::move(edges);
  m.validate();
  return m;
}

Motif parse_motif(std::string_view text) {
  const auto trimmed = split_ws(text);
  if (trimmed.size() == 1) {
    if (trimmed[0] == "m23") return make_motif({{0, 1}, {1, 0}, {0, 1}});
    if (trimmed[0] == "bifan") return make_motif({{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    if (trimmed[0] == "triangle") return make_motif({{0, 1}, {1, 2}, {2, 0}});
    throw Error(ErrorKind::kParse, "unknown motif name '" + std::string(trimmed[0]) + "'");
  }

  LabelInterner interner;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || is_comment(tokens[0])) continue;
    if (tokens.size() != 2) {
      throw Error(ErrorKind::kParse,
                  "motif line " + std::to_string(line_no) + ": expected 'u v'");
    }
    const NodeId u = interner.intern(tokens[0]);
    const NodeId v = interner.intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw Error(ErrorKind::kParse, "motif has no edges");
  Motif m = make_motif(std::move(edges));
  m.labels = interner.take_labels();
  return m;
}

std::optional<EdgeLine> parse_edge_line(std::string_view line, std::size_t line_no) {
  const auto tokens = split_ws(line);
  if (tokens.empty() || is_comment(tokens[0])) return std::nullopt;
  if (tokens.size() != 3) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 'src dst t'");
  }
  EdgeLine out{tokens[0], tokens[1], 0};
  const auto tok = tokens[2];
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out.t);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": timestamp '" +
                                       std::string(tok) + "' is not an integer");
  }
  return out;
}

TemporalGraph load_temporal_graph(std::istream& in) {
  LabelInterner interner;
  std::vector<TemporalEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    const auto parsed = parse_edge_line(line, ++line_no);
    if (!parsed) continue;
    const NodeId src = interner.intern(parsed->src);
    const NodeId dst = interner.intern(parsed->dst);
    edges.push_back({src, dst, parsed->t, edges.size()});
  }
  return TemporalGraph::from_edges(std::move(edges), interner.take_labels());
}

TemporalGraph load_temporal_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  return load_temporal_graph(in);
}

TemporalGraph load_temporal_graph_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_temporal_graph(in);
}

void write_edge_list(std::ostream& out, const TemporalGraph& g) {
  const auto& labels = g.labels();
  auto name = [&](NodeId id) -> std::string {
    return id < labels.size() ? labels[id] : std::to_string(id);
  };
  for (const auto& e : g.edges()) {
    out << name(e.src) << ' ' << name(e.dst) << ' ' << e.t << '\n';
  }
}

TemporalGraph normalize_timestamps(const TemporalGraph& g) {
  if (g.empty() || g.t_min() == 0) return g;
  const Timestamp base = g.t_min();
  std::vector<TemporalEdge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) {
    if (base < 0 && e.t > std::numeric_limits<Timestamp>::max() + base) {
      throw Error(ErrorKind::kOverflow, "timestamp range exceeds 64 bits");
    }
    e.t -= base;
  }
  return TemporalGraph::from_edges(std::move(edges), g.labels());
}

TimeDelta duration(std::span<const TemporalEdge> edges) {
  if (edges.empty()) return 0;
  return edges.back().t - edges.front().t;
}

TimeDelta duration(const MotifInstance& inst, const TemporalGraph& g) {
  if (inst.edge_indices.empty()) return 0;
  const auto all = g.edges();
  return all[inst.edge_indices.back()].t - all[inst.edge_indices.front()].t;
}

bool is_delta_instance(std::span<const TemporalEdge> candidate, const Motif& m,
                       TimeDelta delta) {
  if (candidate.size() != m.num_edges() || candidate.empty()) return false;
  for (std::size_t i = 1; i < candidate.size(); ++i) {
    if (!time_order_less(candidate[i - 1], candidate[i])) return false;
  }
  if (duration(candidate) > delta) return false;

  // The motif fixes f on every node it touches, so the bijection exists iff
  // the forced assignment is consistent and injective.
  std::map<NodeId, NodeId> forward;   // motif -> data
  std::map<NodeId, NodeId> backward;  // data -> motif
  auto bind = [&](NodeId motif_node, NodeId data_node) {
    auto [fit, f_new] = forward.emplace(motif_node, data_node);
    if (!f_new && fit->second != data_node) return false;
    auto [bit, b_new] = backward.emplace(data_node, motif_node);
    return b_new || bit->second == motif_node;
  };
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (!bind(m.edges[i].first, candidate[i].src)) return false;
    if (!bind(m.edges[i].second, candidate[i].dst)) return false;
  }
  return true;
}

StaticGraph static_projection(const TemporalGraph& g) {
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> counts;
  for (const auto& e : g.edges()) ++counts[{e.src, e.dst}];
  StaticGraph s;
  s.edges.reserve(counts.size());
  for (const auto& [pair, k] : counts) s.edges.push_back({pair.first, pair.second, k});
  return s;
}

}  // namespace tmotif
