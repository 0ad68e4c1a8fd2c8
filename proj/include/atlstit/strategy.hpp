#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "atlstit/cgs.hpp"

namespace atlstit {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Last-state-dependent strategy of a coalition: one action per (member, state).
struct MemorylessStrategy {
  std::vector<AgentId> members;               // sorted
  std::vector<std::vector<ActionId>> choice;  // [member index][state]

  /// The coalition's joint action at s; non-members are left free.
  JointAction at(StateId s, std::size_t n_agents) const;
};

/// Enumerates every memoryless strategy of a coalition by index, so that
/// callers can split the index range across threads.
class StrategySpace {
 public:
  StrategySpace(const Cgs& g, std::vector<AgentId> members);

  /// Number of strategies; saturates at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  MemorylessStrategy at(std::uint64_t index) const;
  void require_at_most(std::uint64_t limit) const;

 private:
  const Cgs* g_;
  std::vector<AgentId> members_;
  std::uint64_t size_ = 1;
};

/// E_f: the one-step graph induced by a strategy. succ[v] lists every state
/// reachable from v when the coalition plays f at v and the others play anything.
struct InducedGraph {
  std::vector<std::vector<StateId>> succ;
};

InducedGraph induced_graph(const Cgs& g, const MemorylessStrategy& f);

enum class PathGoal { Next, Globally, Until };

/// States from which every path of the induced graph satisfies the goal:
///   Next      every successor is in `phi`
///   Globally  every reachable state, including the start, is in `phi`
///   Until     the region reachable without entering `psi` lies inside
///             `phi` and contains no cycle
/// `psi` is only read for Until.
StateSet enforced_states(const InducedGraph& e, PathGoal goal, const StateSet& phi,
                         const StateSet& psi);

}  // namespace atlstit
