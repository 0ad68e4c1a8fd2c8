#include "atlstit/stit_eval.hpp"

#include <algorithm>
#include <map>

#include "atlstit/strategy.hpp"

namespace atlstit {

// --- fragment --------------------------------------------------------------

bool check_moment_determined(const SxFormula& f) {
  switch (f.op()) {
    case SxOp::Atom:
      return true;
    case SxOp::Not:
      return check_moment_determined(f.sub());
    case SxOp::And:
      return check_moment_determined(f.lhs()) && check_moment_determined(f.rhs());
    case SxOp::Next:
    case SxOp::Globally:
    case SxOp::Until:
      return false;
    case SxOp::Box:
      return is_one_step(f.sub());
    case SxOp::Stit:
      // [C]Xq still depends on the history's first profile.
      return check_moment_determined(f.sub());
    case SxOp::Strat: {
      const SxFormula& b = f.sub();
      if (check_moment_determined(b)) return true;
      if (b.op() == SxOp::Next || b.op() == SxOp::Globally) return check_moment_determined(b.sub());
      if (b.op() == SxOp::Until)
        return check_moment_determined(b.lhs()) && check_moment_determined(b.rhs());
      return false;
    }
  }
  return false;
}

bool is_one_step(const SxFormula& f) {
  if (check_moment_determined(f)) return true;
  switch (f.op()) {
    case SxOp::Next:
      return check_moment_determined(f.sub());
    case SxOp::Not:
      return is_one_step(f.sub());
    case SxOp::And:
      return is_one_step(f.lhs()) && is_one_step(f.rhs());
    case SxOp::Stit:
      return is_one_step(f.sub());
    default:
      return false;
  }
}

void require_supported(const SxFormula& f) {
  auto reject = [&](const char* why) {
    throw UnsupportedFragment("unsupported fragment: " + print_formula(f) + " (" + why + ")");
  };
  switch (f.op()) {
    case SxOp::Atom:
      return;
    case SxOp::Not:
    case SxOp::Next:
    case SxOp::Globally:
      return require_supported(f.sub());
    case SxOp::And:
    case SxOp::Until:
      require_supported(f.lhs());
      return require_supported(f.rhs());
    case SxOp::Box:
      if (!is_one_step(f.sub())) reject("the operand of [] may look at most one step ahead");
      return require_supported(f.sub());
    case SxOp::Stit:
      if (!is_one_step(f.sub())) reject("the operand of [C] may look at most one step ahead");
      return require_supported(f.sub());
    case SxOp::Strat:
      if (!check_moment_determined(f))
        reject("strategic bodies must be X, G or U over moment-determined operands");
      return require_supported(f.sub());
  }
}

// --- indices ---------------------------------------------------------------

SxIndex make_index(const Cgs& g, Moment m, LassoHistory h) {
  if (m.states.empty()) throw InconsistentLasso("empty moment");
  if (h.anchor != m.last())
    throw InconsistentLasso("lasso starts at " + g.state_name(h.anchor) + " but the moment ends at " +
                            g.state_name(m.last()));
  check_lasso(g, h);
  return SxIndex{std::move(m), std::move(h)};
}

SxIndex root_index(const Cgs& g, LassoHistory h) {
  Moment m{{h.anchor}, {}};
  return make_index(g, std::move(m), std::move(h));
}

// --- evaluation ------------------------------------------------------------

class SxEvaluator::Impl {
 public:
  Impl(const Cgs& g, const SxOptions& opts) : g_(g), opts_(opts) {}

  bool eval(const SxFormula& f, const SxIndex& ix) {
    switch (f.op()) {
      case SxOp::Atom:
        return g_.valuation(f.name()).contains(ix.moment.last());
      case SxOp::Not:
        return !eval(f.sub(), ix);
      case SxOp::And:
        return eval(f.lhs(), ix) && eval(f.rhs(), ix);
      case SxOp::Next:
        return eval(f.sub(), suffix(ix, 1));
      case SxOp::Globally: {
        for (std::size_t i = 0; i < ix.history.period_end(); ++i)
          if (!eval(f.sub(), suffix(ix, i))) return false;
        return true;
      }
      case SxOp::Until: {
        for (std::size_t j = 0; j < ix.history.period_end(); ++j) {
          const SxIndex at_j = suffix(ix, j);
          if (eval(f.rhs(), at_j)) return true;
          if (!eval(f.lhs(), at_j)) return false;
        }
        return false;
      }
      case SxOp::Box:
      case SxOp::Stit: {
        // The operand sees at most the first profile, so one history per
        // first profile covers H_m.
        const Coalition all;
        const Coalition& c = f.op() == SxOp::Box ? all : f.coalition();
        const std::vector<AgentId> members = g_.coalition_ids(c);
        const StateId w = ix.moment.last();
        const Profile& own = ix.history.profile_at(0);
        for (const auto& h : first_step_representatives(g_, w)) {
          const Profile& first = h.profile_at(0);
          if (f.op() == SxOp::Stit &&
              !std::all_of(members.begin(), members.end(),
                           [&](AgentId a) { return first[a] == own[a]; }))
            continue;
          if (!eval(f.sub(), SxIndex{ix.moment, h})) return false;
        }
        return true;
      }
      case SxOp::Strat:
        return strategic(f).contains(ix.moment.last());
    }
    throw std::logic_error("eval_sx: unreachable");
  }

  const Cgs& graph() const { return g_; }

  // States w such that ⟨⟨C⟩⟩^s body holds at λ_w.
  const StateSet& strategic(const SxFormula& f) {
    auto it = strat_cache_.find(f.id());
    if (it != strat_cache_.end()) return it->second;
    const SxFormula& body = f.sub();
    StateSet out(g_.num_states());
    if (check_moment_determined(body)) {
      out = denotation(body);
    } else {
      const StrategySpace space(g_, g_.coalition_ids(f.coalition()));
      space.require_at_most(opts_.max_strategies);
      PathGoal goal = PathGoal::Next;
      StateSet phi, psi;
      if (body.op() == SxOp::Until) {
        goal = PathGoal::Until;
        phi = denotation(body.lhs());
        psi = denotation(body.rhs());
      } else {
        goal = body.op() == SxOp::Next ? PathGoal::Next : PathGoal::Globally;
        phi = denotation(body.sub());
        psi = phi;
      }
      for (std::uint64_t i = 0; i < space.size() && !out.is_full(); ++i)
        out = out | enforced_states(induced_graph(g_, space.at(i)), goal, phi, psi);
    }
    return strat_cache_.emplace(f.id(), std::move(out)).first->second;
  }

 private:
  // Denotation of a moment-determined formula, read at the canonical lasso.
  StateSet denotation(const SxFormula& f) {
    auto it = md_cache_.find(f.id());
    if (it != md_cache_.end()) return it->second;
    StateSet out(g_.num_states());
    for (std::size_t v = 0; v < g_.num_states(); ++v) {
      const StateId w = static_cast<StateId>(v);
      if (eval(f, SxIndex{Moment{{w}, {}}, canonical_lasso(g_, w)})) out.insert(w);
    }
    return md_cache_.emplace(f.id(), out).first->second;
  }

  SxIndex suffix(const SxIndex& ix, std::size_t i) const {
    SxIndex out{ix.moment, lasso_suffix(g_, ix.history, i)};
    StateId s = ix.history.anchor;
    for (std::size_t k = 0; k < i; ++k) {
      const std::size_t p = g_.encode_profile(s, ix.history.profile_at(k));
      s = g_.successor(s, p);
      out.moment.states.push_back(s);
      out.moment.via.push_back(p);
    }
    return out;
  }

  const Cgs& g_;
  SxOptions opts_;
  std::map<const void*, StateSet> strat_cache_;
  std::map<const void*, StateSet> md_cache_;
};

namespace {

void require_known_agents(const Cgs& g, const SxFormula& f) {
  for (const auto& a : agents_of(f))
    if (!g.find_agent(a)) throw UnsupportedFragment("unknown agent '" + a + "'");
}

}  // namespace

SxEvaluator::SxEvaluator(const Cgs& g, const SxOptions& opts)
    : impl_(std::make_unique<Impl>(g, opts)) {}
SxEvaluator::~SxEvaluator() = default;

bool SxEvaluator::eval(const SxFormula& f, const SxIndex& ix) {
  const Cgs& g = impl_->graph();
  require_supported(f);
  require_known_agents(g, f);
  if (ix.moment.states.empty() || ix.history.anchor != ix.moment.last())
    throw InconsistentLasso("lasso does not start at the moment's last state");
  check_lasso(g, ix.history);
  return impl_->eval(f, ix);
}

StateSet SxEvaluator::strategic_states(const SxFormula& f) {
  if (f.op() != SxOp::Strat) throw std::invalid_argument("strategic_states: not a <<C>>^s formula");
  require_supported(f);
  require_known_agents(impl_->graph(), f);
  return impl_->strategic(f);
}

bool eval_sx(const Cgs& g, const SxFormula& f, const SxIndex& ix, const SxOptions& opts) {
  return SxEvaluator(g, opts).eval(f, ix);
}

bool holds_strategically(const Cgs& g, StateId w, const Coalition& c, const SxFormula& body,
                         const SxOptions& opts) {
  if (w < 0 || static_cast<std::size_t>(w) >= g.num_states())
    throw std::out_of_range("holds_strategically: unknown state");
  return SxEvaluator(g, opts).strategic_states(SxFormula::strat(c, body)).contains(w);
}

}  // namespace atlstit
