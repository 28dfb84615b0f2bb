#include "rumorlab/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace rumorlab {

std::string_view to_string(Protocol p) {
  return p == Protocol::trickle ? "trickle" : "diffusion";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "trickle") return Protocol::trickle;
  if (name == "diffusion") return Protocol::diffusion;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

void validate(const SpreadParams& params) {
  if (!(params.theta > 0.0) || !std::isfinite(params.theta))
    throw std::invalid_argument("theta must be a positive finite number");
  if (params.protocol == Protocol::trickle && params.theta != std::floor(params.theta))
    throw std::invalid_argument("trickle needs an integer theta (number of adversary connections)");
  if (params.protocol == Protocol::diffusion && !(params.lambda > 0.0))
    throw std::invalid_argument("diffusion needs a positive spreading rate lambda");
  if (params.horizon.max_time && !(*params.horizon.max_time >= 0.0))
    throw std::invalid_argument("max_time must be non-negative");
  if (params.horizon.max_infections && *params.horizon.max_infections == 0)
    throw std::invalid_argument("max_infections must be at least 1");
}

const InfectionRecord* SpreadTrace::find(NodeId v) const {
  auto it = index_.find(v);
  return it == index_.end() ? nullptr : &infected[it->second];
}

InfectionRecord& SpreadTrace::add(NodeId node, NodeId parent, double time) {
  if (!index_.try_emplace(node, infected.size()).second)
    throw std::logic_error("node " + std::to_string(node) + " infected twice");
  infected.push_back({node, parent, time, {}});
  return infected.back();
}

namespace {

void check_source(Graph& g, const SpreadParams& params) {
  if (!g.contains(params.source))
    throw GraphError("source " + std::to_string(params.source) + " is not in the graph");
  if (g.is_lazy() && !params.horizon.bounded())
    throw std::invalid_argument("a lazy tree needs a finite horizon");
}

/// Dense infected-flag lookup that grows with a lazy graph.
class InfectedSet {
public:
  bool contains(NodeId v) const { return v < flags_.size() && flags_[v]; }
  void insert(NodeId v) {
    if (v >= flags_.size()) flags_.resize(std::max<std::size_t>(v + 1, 2 * flags_.size()), 0);
    flags_[v] = 1;
  }

private:
  std::vector<char> flags_;
};

class TrickleEngine {
public:
  TrickleEngine(Graph& g, const SpreadParams& params, Rng& rng)
      : g_(g), taps_(static_cast<std::size_t>(params.theta)), rng_(rng) {
    trace.protocol = Protocol::trickle;
    trace.source = params.source;
    infect(params.source, kNoNode, 0);
    active_.insert(active_.end(), pending_.begin(), pending_.end());
    pending_.clear();
  }

  /// Advances one time step; `tapped` receives the nodes that reported.
  void step(std::vector<NodeId>& tapped) {
    ++now;
    tapped.clear();
    for (auto& a : active_) {
      std::size_t r = rng_.below(a.honest.size() + a.taps);
      if (r < a.honest.size()) {
        NodeId target = a.honest[r];
        a.honest[r] = a.honest.back();
        a.honest.pop_back();
        if (!infected_.contains(target)) infect(target, a.node, now);
      } else {
        --a.taps;
        trace.infected[a.slot].reports.push_back(static_cast<double>(now));
        tapped.push_back(a.node);
      }
    }
    std::erase_if(active_, [](const Active& a) { return a.honest.empty() && a.taps == 0; });
    active_.insert(active_.end(), pending_.begin(), pending_.end());
    pending_.clear();
  }

  bool idle() const { return active_.empty(); }

  SpreadTrace trace;
  std::size_t now = 0;

private:
  struct Active {
    NodeId node;
    std::size_t slot;
    std::vector<NodeId> honest;
    std::size_t taps;
  };

  void infect(NodeId v, NodeId parent, std::size_t time) {
    infected_.insert(v);
    std::size_t slot = trace.size();
    trace.add(v, parent, static_cast<double>(time));
    Active a{v, slot, {}, taps_};
    for (NodeId w : g_.neighbors(v))
      if (!infected_.contains(w)) a.honest.push_back(w);
    pending_.push_back(std::move(a));
  }

  Graph& g_;
  std::size_t taps_;
  Rng& rng_;
  InfectedSet infected_;
  std::vector<Active> active_;
  std::vector<Active> pending_;
};

class DiffusionEngine {
public:
  enum class Kind { infect, report };
  struct Event {
    double time;
    std::uint64_t seq;
    Kind kind;
    NodeId node;
    NodeId from;
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  DiffusionEngine(Graph& g, const SpreadParams& params, Rng& rng)
      : g_(g), params_(params), rng_(rng) {
    trace.protocol = Protocol::diffusion;
    trace.source = params.source;
    infect(params.source, kNoNode, 0.0);
  }

  bool empty() const { return queue_.empty(); }
  const Event& peek() const { return queue_.top(); }

  /// Applies the next event. Returns false if it was a stale infection.
  bool apply(Event& applied) {
    applied = queue_.top();
    queue_.pop();
    if (applied.kind == Kind::report) {
      trace.infected[slot_of(applied.node)].reports.push_back(applied.time);
      return true;
    }
    if (infected_.contains(applied.node)) return false;
    infect(applied.node, applied.from, applied.time);
    return true;
  }

  SpreadTrace trace;

private:
  std::size_t slot_of(NodeId v) const {
    auto* rec = trace.find(v);
    return static_cast<std::size_t>(rec - trace.infected.data());
  }

  void infect(NodeId v, NodeId parent, double time) {
    infected_.insert(v);
    trace.add(v, parent, time);
    if (params_.horizon.max_infections && trace.size() >= *params_.horizon.max_infections) return;
    for (NodeId w : g_.neighbors(v))
      if (!infected_.contains(w))
        queue_.push({time + rng_.exponential(params_.lambda), seq_++, Kind::infect, w, v});
    queue_.push({time + rng_.exponential(params_.theta), seq_++, Kind::report, v, kNoNode});
  }

  Graph& g_;
  const SpreadParams& params_;
  Rng& rng_;
  InfectedSet infected_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
};

bool infection_cap_reached(const SpreadParams& params, const SpreadTrace& trace) {
  return params.horizon.max_infections && trace.size() >= *params.horizon.max_infections;
}

}  // namespace

SpreadTrace simulate_trickle(Graph& g, const SpreadParams& params, Rng& rng) {
  if (params.protocol != Protocol::trickle)
    throw std::invalid_argument("simulate_trickle called with a diffusion configuration");
  validate(params);
  check_source(g, params);

  TrickleEngine engine(g, params, rng);
  auto limit = params.horizon.max_time
                   ? static_cast<std::size_t>(std::floor(*params.horizon.max_time))
                   : std::numeric_limits<std::size_t>::max();
  std::vector<NodeId> tapped;
  while (engine.now < limit && !infection_cap_reached(params, engine.trace) && !engine.idle())
    engine.step(tapped);

  bool stopped_by_clock = params.horizon.max_time && engine.now == limit;
  engine.trace.stop_time = stopped_by_clock ? *params.horizon.max_time : static_cast<double>(engine.now);
  return std::move(engine.trace);
}

SpreadTrace simulate_diffusion(Graph& g, const SpreadParams& params, Rng& rng) {
  if (params.protocol != Protocol::diffusion)
    throw std::invalid_argument("simulate_diffusion called with a trickle configuration");
  validate(params);
  check_source(g, params);

  DiffusionEngine engine(g, params, rng);
  double last = 0.0;
  DiffusionEngine::Event ev{};
  while (!infection_cap_reached(params, engine.trace) && !engine.empty()) {
    if (params.horizon.max_time && engine.peek().time > *params.horizon.max_time) break;
    if (engine.apply(ev)) last = ev.time;
  }
  if (infection_cap_reached(params, engine.trace))
    engine.trace.stop_time = engine.trace.infected.back().time;
  else if (params.horizon.max_time)
    engine.trace.stop_time = *params.horizon.max_time;
  else
    engine.trace.stop_time = last;
  return std::move(engine.trace);
}

SpreadTrace simulate(Graph& g, const SpreadParams& params, Rng& rng) {
  return params.protocol == Protocol::trickle ? simulate_trickle(g, params, rng)
                                              : simulate_diffusion(g, params, rng);
}

FirstReport first_report_trial(Graph& g, const SpreadParams& params, Rng& rng) {
  validate(params);
  if (!g.contains(params.source))
    throw GraphError("source " + std::to_string(params.source) + " is not in the graph");
  FirstReport out;

  if (params.protocol == Protocol::trickle) {
    TrickleEngine engine(g, params, rng);
    auto limit = params.horizon.max_time
                     ? static_cast<std::size_t>(std::floor(*params.horizon.max_time))
                     : std::numeric_limits<std::size_t>::max();
    std::vector<NodeId> tapped;
    while (engine.now < limit && !infection_cap_reached(params, engine.trace) && !engine.idle()) {
      engine.step(tapped);
      if (!tapped.empty()) {
        std::sort(tapped.begin(), tapped.end());
        out.reporters = tapped;
        out.time = static_cast<double>(engine.now);
        break;
      }
    }
    out.infected = engine.trace.size();
    return out;
  }

  DiffusionEngine engine(g, params, rng);
  DiffusionEngine::Event ev{};
  while (!infection_cap_reached(params, engine.trace) && !engine.empty()) {
    if (params.horizon.max_time && engine.peek().time > *params.horizon.max_time) break;
    if (engine.apply(ev) && ev.kind == DiffusionEngine::Kind::report) {
      out.reporters = {ev.node};
      out.time = ev.time;
      break;
    }
  }
  out.infected = engine.trace.size();
  return out;
}

void write_trace_csv(std::ostream& out, const SpreadTrace& trace) {
  auto old_precision = out.precision(9);
  auto put_time = [&](double x) {
    if (trace.protocol == Protocol::trickle)
      out << static_cast<long long>(x);
    else
      out << x;
  };
  out << "node,X,first_report_time,parent\n";
  for (const auto& rec : trace.infected) {
    out << rec.node << ',';
    put_time(rec.time);
    out << ',';
    if (auto r = rec.first_report()) put_time(*r);
    out << ',';
    if (rec.parent != kNoNode) out << rec.parent;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace rumorlab
