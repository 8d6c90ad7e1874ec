#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tempcc {

using NodeId = std::uint32_t;
using TimeIndex = std::uint32_t;
/// Free-parameter identifier of one timed interaction.
using ParamId = std::uint32_t;

/// An undirected contact between u and v during snapshot t (1-based).
/// Canonical form has u < v.
struct ContactEvent {
  NodeId u = 0;
  NodeId v = 0;
  TimeIndex t = 0;

  friend auto operator<=>(const ContactEvent& a, const ContactEvent& b) {
    if (auto c = a.t <=> b.t; c != 0) return c;
    if (auto c = a.u <=> b.u; c != 0) return c;
    return a.v <=> b.v;
  }
  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

/// One direction of a contact inside a snapshot. Both directions of a contact
/// carry the same parameter.
struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  ParamId param = 0;
};

/// Snapshot sequence G^1..G^T over a fixed node set. Immutable once built.
///
/// Events are stored canonicalized, deduplicated and sorted by (t, u, v); the
/// position of an event in that order is its parameter id.
class TemporalNetwork {
 public:
  TemporalNetwork(std::vector<std::string> labels, TimeIndex horizon, std::vector<ContactEvent> events)
      : labels_(std::move(labels)), horizon_(horizon) {
    if (labels_.empty()) throw std::invalid_argument("temporal network needs at least one node");
    if (horizon_ < 1) throw std::invalid_argument("temporal network horizon must be >= 1");
    for (NodeId i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw std::invalid_argument("duplicate node label '" + labels_[i] + "'");
      }
    }
    const auto n = static_cast<NodeId>(labels_.size());
    for (auto& e : events) {
      if (e.u == e.v) throw std::invalid_argument("self-contact on node " + labels_.at(e.u));
      if (e.u >= n || e.v >= n) throw std::out_of_range("contact references unknown node id");
      if (e.t < 1 || e.t > horizon_) {
        throw std::out_of_range("contact time " + std::to_string(e.t) + " outside 1.." +
                                std::to_string(horizon_));
      }
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    events_ = std::move(events);

    snapshot_begin_.assign(horizon_ + 2, 0);
    for (const auto& e : events_) ++snapshot_begin_[e.t + 1];
    for (std::size_t t = 1; t < snapshot_begin_.size(); ++t) snapshot_begin_[t] += snapshot_begin_[t - 1];

    arcs_.reserve(2 * events_.size());
    for (ParamId id = 0; id < events_.size(); ++id) {
      arcs_.push_back({events_[id].u, events_[id].v, id});
      arcs_.push_back({events_[id].v, events_[id].u, id});
    }
    // Within a snapshot: by source node, then ascending neighbor.
    std::sort(arcs_.begin(), arcs_.end(), [this](const Arc& a, const Arc& b) {
      const TimeIndex ta = events_[a.param].t;
      const TimeIndex tb = events_[b.param].t;
      if (ta != tb) return ta < tb;
      if (a.from != b.from) return a.from < b.from;
      return a.to < b.to;
    });
  }

  std::size_t node_count() const { return labels_.size(); }
  TimeIndex horizon() const { return horizon_; }
  std::span<const ContactEvent> events() const { return events_; }
  std::size_t event_count() const { return events_.size(); }
  std::span<const std::string> labels() const { return labels_; }
  const std::string& label(NodeId id) const { return labels_.at(id); }

  NodeId node_id(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw std::out_of_range("unknown node '" + std::string(label) + "'");
    return it->second;
  }

  bool contains(NodeId id) const { return id < labels_.size(); }

  void require_node(NodeId id) const {
    if (!contains(id)) throw std::out_of_range("unknown node id " + std::to_string(id));
  }

  void require_time(TimeIndex t) const {
    if (t < 1 || t > horizon_) {
      throw std::out_of_range("snapshot " + std::to_string(t) + " outside 1.." + std::to_string(horizon_));
    }
  }

  /// Events of snapshot t, in parameter-id order.
  std::span<const ContactEvent> snapshot(TimeIndex t) const {
    require_time(t);
    return std::span(events_).subspan(snapshot_begin_[t], snapshot_begin_[t + 1] - snapshot_begin_[t]);
  }

  /// Directed arcs of snapshot t (two per contact), sorted by (from, to).
  std::span<const Arc> snapshot_arcs(TimeIndex t) const {
    require_time(t);
    return std::span(arcs_).subspan(2 * snapshot_begin_[t], 2 * (snapshot_begin_[t + 1] - snapshot_begin_[t]));
  }

  /// Snapshot in which the interaction behind `param` is active.
  TimeIndex param_time(ParamId param) const { return events_.at(param).t; }

  /// Copy without the given nodes and every contact touching them. Labels and
  /// the horizon are kept.
  TemporalNetwork without_nodes(const std::set<NodeId>& removed) const {
    std::vector<std::string> labels;
    std::vector<NodeId> remap(labels_.size(), static_cast<NodeId>(-1));
    for (NodeId i = 0; i < labels_.size(); ++i) {
      if (removed.count(i)) continue;
      remap[i] = static_cast<NodeId>(labels.size());
      labels.push_back(labels_[i]);
    }
    std::vector<ContactEvent> events;
    for (const auto& e : events_) {
      if (removed.count(e.u) || removed.count(e.v)) continue;
      events.push_back({remap[e.u], remap[e.v], e.t});
    }
    return TemporalNetwork(std::move(labels), horizon_, std::move(events));
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  TimeIndex horizon_;
  std::vector<ContactEvent> events_;
  std::vector<std::size_t> snapshot_begin_;  // indexed by t, size T+2
  std::vector<Arc> arcs_;
};

/// Bijection between canonical timed interactions and dense parameter ids.
class SymbolTable {
 public:
  explicit SymbolTable(const TemporalNetwork& net) : events_(net.events().begin(), net.events().end()) {}

  std::size_t size() const { return events_.size(); }

  /// Parameter of the contact {u, v} at time t, in either direction.
  std::optional<ParamId> find(NodeId u, NodeId v, TimeIndex t) const {
    if (u > v) std::swap(u, v);
    const ContactEvent key{u, v, t};
    auto it = std::lower_bound(events_.begin(), events_.end(), key);
    if (it == events_.end() || *it != key) return std::nullopt;
    return static_cast<ParamId>(it - events_.begin());
  }

  ParamId at(NodeId u, NodeId v, TimeIndex t) const {
    auto id = find(u, v, t);
    if (!id) throw std::out_of_range("no such timed interaction");
    return *id;
  }

  const ContactEvent& event(ParamId id) const { return events_.at(id); }

 private:
  std::vector<ContactEvent> events_;
};

/// Number of distinct nodes that ever share a contact with `node`.
inline std::size_t aggregated_degree(const TemporalNetwork& net, NodeId node) {
  net.require_node(node);
  std::set<NodeId> neighbors;
  for (const auto& e : net.events()) {
    if (e.u == node) neighbors.insert(e.v);
    if (e.v == node) neighbors.insert(e.u);
  }
  return neighbors.size();
}

/// Aggregated degree of every node, indexed by node id.
inline std::vector<std::size_t> aggregated_degrees(const TemporalNetwork& net) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& e : net.events()) pairs.emplace(e.u, e.v);
  std::vector<std::size_t> degree(net.node_count(), 0);
  for (const auto& [u, v] : pairs) {
    ++degree[u];
    ++degree[v];
  }
  return degree;
}

// --- contact-list text format ------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseOptions {
  /// Raw timestamps falling in the same window of this width share a snapshot.
  std::uint64_t window = 1;
  /// When true, non-empty windows are renumbered 1..T in order. When false the
  /// snapshot index is raw / window and must be at least 1.
  bool rebase = true;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t self_contacts_rejected = 0;
  std::size_t duplicates_collapsed = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  char sep = 0;
  if (line.find('\t') != std::string_view::npos) {
    sep = '\t';
  } else if (line.find(',') != std::string_view::npos) {
    sep = ',';
  }
  if (sep != 0) {
    std::size_t start = 0;
    while (true) {
      auto pos = line.find(sep, start);
      out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  }
  // Whitespace-separated fallback.
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\r') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Reads "t<sep>u<sep>v" lines (sep = tab or comma; '#' starts a comment line).
/// Node labels are interned in order of first appearance.
inline TemporalNetwork parse_contact_list(std::istream& in, const ParseOptions& options = {},
                                          ParseStats* stats = nullptr) {
  if (options.window == 0) throw std::invalid_argument("time window width must be >= 1");
  struct RawEvent {
    std::uint64_t time;
    NodeId u;
    NodeId v;
  };
  ParseStats local;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<RawEvent> raw;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = index.emplace(std::string(label), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    ++local.lines;
    auto fields = detail::split_fields(body);
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields 't u v', got " + std::to_string(fields.size()));
    std::uint64_t time = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), time);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw ParseError(line_no, "timestamp '" + std::string(fields[0]) + "' is not a non-negative integer");
    }
    if (fields[1].empty() || fields[2].empty()) throw ParseError(line_no, "empty node label");
    if (fields[1] == fields[2]) {
      ++local.self_contacts_rejected;
      continue;
    }
    const NodeId u = intern(fields[1]);
    const NodeId v = intern(fields[2]);
    raw.push_back({time, u, v});
  }
  if (raw.empty()) throw std::invalid_argument("contact list contains no events");

  std::vector<std::uint64_t> windows;
  windows.reserve(raw.size());
  std::uint64_t min_time = raw.front().time;
  for (const auto& r : raw) min_time = std::min(min_time, r.time);
  for (const auto& r : raw) {
    windows.push_back(options.rebase ? (r.time - min_time) / options.window : r.time / options.window);
  }
  std::map<std::uint64_t, TimeIndex> snapshot_of;
  if (options.rebase) {
    for (auto w : windows) snapshot_of.emplace(w, 0);
    TimeIndex next = 1;
    for (auto& [w, t] : snapshot_of) t = next++;
  }

  std::vector<ContactEvent> events;
  events.reserve(raw.size());
  TimeIndex horizon = 1;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    TimeIndex t = 0;
    if (options.rebase) {
      t = snapshot_of.at(windows[i]);
    } else {
      if (windows[i] < 1) throw std::invalid_argument("timestamp maps to snapshot 0; use rebasing");
      t = static_cast<TimeIndex>(windows[i]);
    }
    horizon = std::max(horizon, t);
    events.push_back({std::min(raw[i].u, raw[i].v), std::max(raw[i].u, raw[i].v), t});
  }
  const std::size_t before = events.size();
  TemporalNetwork net(std::move(labels), horizon, std::move(events));
  local.duplicates_collapsed = before - net.event_count();
  if (stats) *stats = local;
  return net;
}

/// Writes one "t<sep>u<sep>v" line per event using snapshot indices, so that
/// parsing back with rebase = false reproduces the event set.
inline void write_contact_list(const TemporalNetwork& net, std::ostream& out, char sep = '\t') {
  for (const auto& e : net.events()) {
    out << e.t << sep << net.label(e.u) << sep << net.label(e.v) << '\n';
  }
}

}  // namespace tempcc
