#pragma once

#include "rumorlab/rng.hpp"
#include "rumorlab/spreading.hpp"

#include <limits>
#include <map>
#include <variant>
#include <vector>

namespace rumorlab {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

/// Taps on every server. `first` holds τ_v for each node that reported by
/// the observation time; `all` holds every report time when requested.
struct EavesdropperView {
  std::map<NodeId, double> first;
  std::map<NodeId, std::vector<double>> all;
  bool keep_all = false;
};

/// Corrupted servers leaking their exact receipt time and the neighbour that
/// delivered the message.
struct SpyView {
  struct Spy {
    NodeId node;
    double time;
    NodeId sender;
  };
  /// In order of receipt time.
  std::vector<Spy> spies;
};

/// Infected set at one time, sorted by node id.
struct SnapshotView {
  std::vector<NodeId> infected;
};

struct Observation {
  Protocol protocol = Protocol::trickle;
  double observed_until = 0.0;
  std::variant<EavesdropperView, SpyView, SnapshotView> view;

  const EavesdropperView& eavesdropper() const;
  const SpyView& spy() const;
  const SnapshotView& snapshot() const;
};

Observation observe_eavesdropper(const SpreadTrace& trace, double t, bool keep_all = false);

/// Every infected non-source node becomes a spy with probability p. One
/// Bernoulli draw is taken per infected non-source node, in infection order,
/// whether or not its receipt time is within `t`.
Observation observe_spy(const SpreadTrace& trace, double p, double t, Rng& rng);

Observation observe_snapshot(const SpreadTrace& trace, double T);

/// Eavesdropper view containing only the earliest reports of a first-report
/// run, observed at that report time.
Observation observe_first_reports(const FirstReport& first, Protocol protocol);

}  // namespace rumorlab
