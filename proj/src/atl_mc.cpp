#include "atlstit/atl_mc.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace atlstit {
namespace {

std::vector<AgentId> members_or_throw(const Cgs& g, const Coalition& c) {
  std::vector<AgentId> out;
  for (const auto& name : c) {
    auto a = g.find_agent(name);
    if (!a) throw EvalError("unknown coalition member '" + name + "'");
    out.push_back(*a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Decides w ∈ pre(C, T). `blocked` is scratch space indexed by the
// coalition's joint actions at w.
bool controllable_at(const Cgs& g, const std::vector<AgentId>& members, StateId w,
                     const StateSet& target, std::vector<std::uint8_t>& blocked) {
  std::size_t joint = 1;
  for (AgentId a : members) joint *= g.num_actions(a, w);
  blocked.assign(joint, 0);
  for (std::size_t i = 0; i < g.num_profiles(w); ++i) {
    if (target.contains(g.successor(w, i))) continue;
    const Profile p = g.decode_profile(w, i);
    std::size_t proj = 0;
    for (AgentId a : members) proj = proj * g.num_actions(a, w) + static_cast<std::size_t>(p[a]);
    blocked[proj] = 1;
  }
  for (std::uint8_t b : blocked)
    if (!b) return true;
  return false;
}

StateSet pre_serial(const Cgs& g, const std::vector<AgentId>& members, const StateSet& target) {
  StateSet out(g.num_states());
  std::vector<std::uint8_t> scratch;
  for (std::size_t w = 0; w < g.num_states(); ++w)
    if (controllable_at(g, members, static_cast<StateId>(w), target, scratch))
      out.insert(static_cast<StateId>(w));
  return out;
}

StateSet pre_parallel(const Cgs& g, const std::vector<AgentId>& members, const StateSet& target) {
  StateSet out(g.num_states());
  const long n = static_cast<long>(g.num_states());
#pragma omp parallel
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (long w = 0; w < n; ++w)
      if (controllable_at(g, members, static_cast<StateId>(w), target, scratch))
        out.insert(static_cast<StateId>(w));
  }
  return out;
}

StateSet pre_ids(const Cgs& g, const std::vector<AgentId>& members, const StateSet& target,
                 Exec exec) {
  return exec == Exec::Parallel ? pre_parallel(g, members, target)
                                : pre_serial(g, members, target);
}

}  // namespace

StateSet pre(const Cgs& g, const Coalition& c, const StateSet& target, Exec exec) {
  return pre_ids(g, members_or_throw(g, c), target, exec);
}

StateSet eval_atl(const Cgs& g, const AtlFormula& f, Exec exec) {
  switch (f.op()) {
    case AtlOp::Atom:
      return g.valuation(f.name());
    case AtlOp::Not:
      return eval_atl(g, f.sub(), exec).complement();
    case AtlOp::And:
      return eval_atl(g, f.lhs(), exec) & eval_atl(g, f.rhs(), exec);
    case AtlOp::CoalX: {
      const auto members = members_or_throw(g, f.coalition());
      return pre_ids(g, members, eval_atl(g, f.sub(), exec), exec);
    }
    case AtlOp::CoalG: {
      // Greatest fixpoint of Z = [[phi]] ∩ pre(C, Z).
      const auto members = members_or_throw(g, f.coalition());
      const StateSet phi = eval_atl(g, f.sub(), exec);
      StateSet z = StateSet::all(g.num_states());
      while (true) {
        StateSet next = phi & pre_ids(g, members, z, exec);
        if (next == z) return z;
        z = std::move(next);
      }
    }
    case AtlOp::CoalU: {
      // Least fixpoint of Z = [[psi]] ∪ ([[phi]] ∩ pre(C, Z)).
      const auto members = members_or_throw(g, f.coalition());
      const StateSet phi = eval_atl(g, f.lhs(), exec);
      const StateSet psi = eval_atl(g, f.rhs(), exec);
      StateSet z(g.num_states());
      while (true) {
        StateSet next = psi | (phi & pre_ids(g, members, z, exec));
        if (next == z) return z;
        z = std::move(next);
      }
    }
  }
  throw std::logic_error("eval_atl: unreachable");
}

// --- oracle ----------------------------------------------------------------

namespace {

StateSet enforce_by_enumeration(const Cgs& g, const std::vector<AgentId>& members, PathGoal goal,
                                const StateSet& phi, const StateSet& psi,
                                const OracleOptions& opts) {
  const StrategySpace space(g, members);
  space.require_at_most(opts.max_strategies);
  const std::size_t n = g.num_states();
  const long long total = static_cast<long long>(space.size());

  StateSet won(n);
  if (opts.exec == Exec::Serial) {
    for (long long i = 0; i < total && !won.is_full(); ++i) {
      const InducedGraph e = induced_graph(g, space.at(static_cast<std::uint64_t>(i)));
      won = won | enforced_states(e, goal, phi, psi);
    }
    return won;
  }

#pragma omp parallel
  {
    StateSet local(n);
#pragma omp for schedule(dynamic, 64)
    for (long long i = 0; i < total; ++i) {
      const InducedGraph e = induced_graph(g, space.at(static_cast<std::uint64_t>(i)));
      local = local | enforced_states(e, goal, phi, psi);
    }
#pragma omp critical
    won = won | local;
  }
  return won;
}

}  // namespace

StateSet eval_atl_oracle(const Cgs& g, const AtlFormula& f, const OracleOptions& opts) {
  switch (f.op()) {
    case AtlOp::Atom:
      return g.valuation(f.name());
    case AtlOp::Not:
      return eval_atl_oracle(g, f.sub(), opts).complement();
    case AtlOp::And:
      return eval_atl_oracle(g, f.lhs(), opts) & eval_atl_oracle(g, f.rhs(), opts);
    case AtlOp::CoalX: {
      const auto members = members_or_throw(g, f.coalition());
      const StateSet phi = eval_atl_oracle(g, f.sub(), opts);
      return enforce_by_enumeration(g, members, PathGoal::Next, phi, phi, opts);
    }
    case AtlOp::CoalG: {
      const auto members = members_or_throw(g, f.coalition());
      const StateSet phi = eval_atl_oracle(g, f.sub(), opts);
      return enforce_by_enumeration(g, members, PathGoal::Globally, phi, phi, opts);
    }
    case AtlOp::CoalU: {
      const auto members = members_or_throw(g, f.coalition());
      const StateSet phi = eval_atl_oracle(g, f.lhs(), opts);
      const StateSet psi = eval_atl_oracle(g, f.rhs(), opts);
      return enforce_by_enumeration(g, members, PathGoal::Until, phi, psi, opts);
    }
  }
  throw std::logic_error("eval_atl_oracle: unreachable");
}

}  // namespace atlstit
