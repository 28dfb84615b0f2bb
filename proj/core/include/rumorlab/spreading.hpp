#pragma once

#include "rumorlab/graph.hpp"
#include "rumorlab/rng.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rumorlab {

enum class Protocol { trickle, diffusion };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);

/// When a simulation stops. Either bound may be absent; with both present the
/// run stops at whichever is reached first. An unbounded run is only allowed
/// on explicit graphs, where it ends once nothing is left to happen. Trickle
/// moves in whole steps, so it finishes the step that reaches max_infections
/// and may end with a few more infected nodes than requested.
struct Horizon {
  std::optional<double> max_time;
  std::optional<std::size_t> max_infections;

  static Horizon until(double t) { return {t, std::nullopt}; }
  static Horizon infections(std::size_t k) { return {std::nullopt, k}; }
  bool bounded() const { return max_time || max_infections; }
};

struct SpreadParams {
  Protocol protocol = Protocol::trickle;
  /// Trickle: adversary connections per server (integer >= 1).
  /// Diffusion: report rate, any positive real.
  double theta = 1.0;
  /// Diffusion spreading rate.
  double lambda = 1.0;
  Horizon horizon;
  NodeId source = 0;
};

/// Throws std::invalid_argument when the parameters do not fit the protocol.
void validate(const SpreadParams& params);

struct InfectionRecord {
  NodeId node = kNoNode;
  /// Neighbour that delivered the message; kNoNode for the source.
  NodeId parent = kNoNode;
  double time = 0.0;
  /// Adversary report times in increasing order. Trickle keeps every tap that
  /// fired before the horizon; diffusion has at most one entry.
  std::vector<double> reports;

  std::optional<double> first_report() const {
    if (reports.empty()) return std::nullopt;
    return reports.front();
  }
};

struct SpreadTrace {
  Protocol protocol = Protocol::trickle;
  NodeId source = 0;
  /// Infected nodes in infection order; infected.front() is the source.
  std::vector<InfectionRecord> infected;
  /// Realized horizon: max_time, the time of the K-th infection, or the time
  /// of the last event for an unbounded run.
  double stop_time = 0.0;

  const InfectionRecord* find(NodeId v) const;
  std::size_t size() const { return infected.size(); }

  /// Appends a record and indexes it.
  InfectionRecord& add(NodeId node, NodeId parent, double time);

private:
  std::unordered_map<NodeId, std::size_t> index_;
};

SpreadTrace simulate_trickle(Graph& g, const SpreadParams& params, Rng& rng);
SpreadTrace simulate_diffusion(Graph& g, const SpreadParams& params, Rng& rng);
SpreadTrace simulate(Graph& g, const SpreadParams& params, Rng& rng);

/// Result of running a spread only until the first adversary report.
struct FirstReport {
  /// Every node whose first report happened at `time` (trickle can tie).
  std::vector<NodeId> reporters;
  /// Empty when the horizon was reached before any report.
  std::optional<double> time;
  std::size_t infected = 0;
};

/// Simulates until the earliest report. The horizon in `params` is honoured
/// if set; otherwise the run continues until a report occurs.
FirstReport first_report_trial(Graph& g, const SpreadParams& params, Rng& rng);

/// CSV with columns node,X,first_report_time,parent. Trickle times print as
/// integers, diffusion times with 9 significant digits.
void write_trace_csv(std::ostream& out, const SpreadTrace& trace);

}  // namespace rumorlab
