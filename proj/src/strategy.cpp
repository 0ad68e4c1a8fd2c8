#include "atlstit/strategy.hpp"

#include <limits>
#include <string>

namespace atlstit {

JointAction MemorylessStrategy::at(StateId s, std::size_t n_agents) const {
  JointAction j = JointAction::unconstrained(n_agents);
  for (std::size_t k = 0; k < members.size(); ++k) j.choice[members[k]] = choice[k][s];
  return j;
}

StrategySpace::StrategySpace(const Cgs& g, std::vector<AgentId> members)
    : g_(&g), members_(std::move(members)) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (AgentId a : members_)
    for (std::size_t s = 0; s < g.num_states(); ++s) {
      const std::uint64_t k = g.num_actions(a, static_cast<StateId>(s));
      size_ = size_ > kMax / k ? kMax : size_ * k;
    }
}

MemorylessStrategy StrategySpace::at(std::uint64_t index) const {
  MemorylessStrategy f;
  f.members = members_;
  f.choice.assign(members_.size(), std::vector<ActionId>(g_->num_states(), 0));
  for (std::size_t k = 0; k < members_.size(); ++k)
    for (std::size_t s = 0; s < g_->num_states(); ++s) {
      const std::uint64_t radix = g_->num_actions(members_[k], static_cast<StateId>(s));
      f.choice[k][s] = static_cast<ActionId>(index % radix);
      index /= radix;
    }
  return f;
}

void StrategySpace::require_at_most(std::uint64_t limit) const {
  if (size_ > limit)
    throw InstanceTooLarge("instance size guard exceeded: " + std::to_string(size_) +
                           " memoryless strategies (limit " + std::to_string(limit) + ")");
}

InducedGraph induced_graph(const Cgs& g, const MemorylessStrategy& f) {
  InducedGraph e;
  e.succ.resize(g.num_states());
  for (std::size_t v = 0; v < g.num_states(); ++v) {
    const StateSet next = successors(g, static_cast<StateId>(v), f.at(static_cast<StateId>(v), g.num_agents()));
    e.succ[v] = next.members();
  }
  return e;
}

namespace {

// Reachable set from `start`, including it, never expanding states in `stop`.
std::vector<std::uint8_t> reach_avoiding(const InducedGraph& e, StateId start,
                                         const StateSet* stop) {
  std::vector<std::uint8_t> seen(e.succ.size(), 0);
  std::vector<StateId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const StateId v = stack.back();
    stack.pop_back();
    for (StateId u : e.succ[v]) {
      if (seen[u] || (stop && stop->contains(u))) continue;
      seen[u] = 1;
      stack.push_back(u);
    }
  }
  return seen;
}

bool has_cycle_within(const InducedGraph& e, const std::vector<std::uint8_t>& region) {
  // Colours: 0 unvisited, 1 on stack, 2 done.
  std::vector<std::uint8_t> colour(e.succ.size(), 0);
  for (std::size_t root = 0; root < e.succ.size(); ++root) {
    if (!region[root] || colour[root]) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{static_cast<StateId>(root), 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < e.succ[v].size()) {
        const StateId u = e.succ[v][next++];
        if (!region[u]) continue;
        if (colour[u] == 1) return true;
        if (colour[u] == 0) {
          colour[u] = 1;
          stack.push_back({u, 0});
        }
      } else {
        colour[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

StateSet enforced_states(const InducedGraph& e, PathGoal goal, const StateSet& phi,
                         const StateSet& psi) {
  const std::size_t n = e.succ.size();
  StateSet out(n);
  for (std::size_t w = 0; w < n; ++w) {
    const StateId start = static_cast<StateId>(w);
    bool ok = true;
    switch (goal) {
      case PathGoal::Next:
        for (StateId u : e.succ[w]) ok = ok && phi.contains(u);
        break;
      case PathGoal::Globally: {
        const auto seen = reach_avoiding(e, start, nullptr);
        for (std::size_t v = 0; v < n && ok; ++v) ok = !seen[v] || phi.contains(static_cast<StateId>(v));
        break;
      }
      case PathGoal::Until: {
        if (psi.contains(start)) break;
        const auto region = reach_avoiding(e, start, &psi);
        for (std::size_t v = 0; v < n && ok; ++v)
          ok = !region[v] || phi.contains(static_cast<StateId>(v));
        ok = ok && !has_cycle_within(e, region);
        break;
      }
    }
    if (ok) out.insert(start);
  }
  return out;
}

}  // namespace atlstit
