#include "rumorlab/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace rumorlab {

namespace {

template <class View>
const View& get_view(const Observation& obs, const char* name) {
  if (const auto* v = std::get_if<View>(&obs.view)) return *v;
  throw std::invalid_argument(std::string("observation is not a ") + name + " view");
}

}  // namespace

const EavesdropperView& Observation::eavesdropper() const {
  return get_view<EavesdropperView>(*this, "eavesdropper");
}
const SpyView& Observation::spy() const { return get_view<SpyView>(*this, "spy"); }
const SnapshotView& Observation::snapshot() const {
  return get_view<SnapshotView>(*this, "snapshot");
}

Observation observe_eavesdropper(const SpreadTrace& trace, double t, bool keep_all) {
  if (!(t >= 0.0)) throw std::invalid_argument("observation time must be non-negative");
  EavesdropperView view;
  view.keep_all = keep_all;
  for (const auto& rec : trace.infected) {
    auto first = rec.first_report();
    if (!first || *first > t) continue;
    view.first.emplace(rec.node, *first);
    if (keep_all) {
      auto& times = view.all[rec.node];
      for (double r : rec.reports)
        if (r <= t) times.push_back(r);
    }
  }
  return {trace.protocol, t, std::move(view)};
}

Observation observe_spy(const SpreadTrace& trace, double p, double t, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spy probability must lie in [0, 1]");
  if (!(t >= 0.0)) throw std::invalid_argument("observation time must be non-negative");
  SpyView view;
  for (const auto& rec : trace.infected) {
    if (rec.node == trace.source) continue;
    bool spy = rng.bernoulli(p);
    if (spy && rec.time <= t) view.spies.push_back({rec.node, rec.time, rec.parent});
  }
  std::stable_sort(view.spies.begin(), view.spies.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return {trace.protocol, t, std::move(view)};
}

Observation observe_snapshot(const SpreadTrace& trace, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("snapshot time must be non-negative");
  SnapshotView view;
  for (const auto& rec : trace.infected)
    if (rec.time <= T) view.infected.push_back(rec.node);
  std::sort(view.infected.begin(), view.infected.end());
  return {trace.protocol, T, std::move(view)};
}

Observation observe_first_reports(const FirstReport& first, Protocol protocol) {
  EavesdropperView view;
  double until = first.time.value_or(0.0);
  for (NodeId v : first.reporters) view.first.emplace(v, *first.time);
  return {protocol, until, std::move(view)};
}

}  // namespace rumorlab
