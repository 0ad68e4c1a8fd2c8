#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "atlstit/stit_eval.hpp"

namespace atlstit {

const Profile& LassoHistory::profile_at(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return loop.at((i - stem.size()) % loop.size());
}

bool LassoHistory::operator<(const LassoHistory& o) const {
  return std::tie(anchor, stem, loop) < std::tie(o.anchor, o.stem, o.loop);
}

void check_lasso(const Cgs& g, const LassoHistory& h) {
  if (h.anchor < 0 || static_cast<std::size_t>(h.anchor) >= g.num_states())
    throw InconsistentLasso("lasso anchor is not a state");
  if (h.loop.empty()) throw InconsistentLasso("lasso loop is empty");
  StateId s = h.anchor;
  StateId loop_start = s;
  for (std::size_t i = 0; i < h.period_end(); ++i) {
    if (i == h.stem.size()) loop_start = s;
    const Profile& p = h.profile_at(i);
    if (!g.profile_valid(s, p))
      throw InconsistentLasso("profile " + std::to_string(i + 1) + " is not available at " +
                              g.state_name(s));
    s = g.step(s, p);
  }
  if (s != loop_start)
    throw InconsistentLasso("loop does not close: it starts at " + g.state_name(loop_start) +
                            " and ends at " + g.state_name(s));
}

std::vector<StateId> lasso_states(const Cgs& g, const LassoHistory& h, std::size_t n) {
  std::vector<StateId> out;
  out.reserve(n);
  StateId s = h.anchor;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(s);
    if (i + 1 < n) s = g.step(s, h.profile_at(i));
  }
  return out;
}

LassoHistory lasso_suffix(const Cgs& g, const LassoHistory& h, std::size_t i) {
  LassoHistory out;
  StateId s = h.anchor;
  for (std::size_t k = 0; k < i; ++k) s = g.step(s, h.profile_at(k));
  out.anchor = s;
  if (i <= h.stem.size()) {
    out.stem.assign(h.stem.begin() + static_cast<long>(i), h.stem.end());
    out.loop = h.loop;
  } else {
    const std::size_t r = (i - h.stem.size()) % h.loop.size();
    out.loop.assign(h.loop.begin() + static_cast<long>(r), h.loop.end());
    out.loop.insert(out.loop.end(), h.loop.begin(), h.loop.begin() + static_cast<long>(r));
  }
  return out;
}

LassoHistory normalize_lasso(const Cgs& g, const LassoHistory& h) {
  LassoHistory out = h;
  while (!out.stem.empty() && out.stem.back() == out.loop.back()) {
    const auto st = lasso_states(g, out, out.period_end() + 1);
    // The last stem step and the last loop step must leave the same state.
    if (st[out.stem.size() - 1] != st[out.period_end() - 1]) break;
    out.stem.pop_back();
    std::rotate(out.loop.rbegin(), out.loop.rbegin() + 1, out.loop.rend());
  }
  // Shortest period of the loop that still closes.
  const std::size_t n = out.loop.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = out.loop[i] == out.loop[i - d];
    if (!periodic) continue;
    LassoHistory shorter = out;
    shorter.loop.resize(d);
    const auto st = lasso_states(g, shorter, shorter.period_end() + 1);
    if (st.back() != st[shorter.stem.size()]) continue;
    out = std::move(shorter);
    break;
  }
  return out;
}

// --- literals --------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

Profile parse_profile(const Cgs& g, StateId s, const std::string& tok) {
  std::vector<std::string> labels;
  std::string cur;
  for (char c : tok) {
    if (c == ',') {
      labels.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  labels.push_back(cur);
  if (labels.size() != g.num_agents())
    throw InconsistentLasso("profile '" + tok + "' needs " + std::to_string(g.num_agents()) +
                            " comma-separated labels");
  Profile p;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    auto act = g.find_action(static_cast<AgentId>(a), s, labels[a]);
    if (!act)
      throw InconsistentLasso("action '" + labels[a] + "' is not available to " +
                              g.agent_name(static_cast<AgentId>(a)) + " at " + g.state_name(s));
    p.push_back(*act);
  }
  return p;
}

}  // namespace

LassoHistory parse_lasso(const Cgs& g, std::string_view text) {
  const auto semi = text.find(';');
  const auto bar = text.find('|');
  if (semi == std::string_view::npos || bar == std::string_view::npos || bar < semi)
    throw InconsistentLasso("lasso literal must look like 'w0 ; s1 | s1'");
  LassoHistory h;
  const std::string anchor = trim(text.substr(0, semi));
  auto w = g.find_state(anchor);
  if (!w) throw InconsistentLasso("unknown state '" + anchor + "'");
  h.anchor = *w;
  StateId s = h.anchor;
  for (const auto& tok : split_ws(std::string(text.substr(semi + 1, bar - semi - 1)))) {
    h.stem.push_back(parse_profile(g, s, tok));
    s = g.step(s, h.stem.back());
  }
  for (const auto& tok : split_ws(std::string(text.substr(bar + 1)))) {
    h.loop.push_back(parse_profile(g, s, tok));
    s = g.step(s, h.loop.back());
  }
  check_lasso(g, h);
  return h;
}

std::string format_lasso(const Cgs& g, const LassoHistory& h) {
  std::string out = g.state_name(h.anchor) + " ;";
  StateId s = h.anchor;
  for (std::size_t i = 0; i < h.period_end(); ++i) {
    if (i == h.stem.size()) out += " |";
    out += ' ' + g.format_profile(s, h.profile_at(i));
    s = g.step(s, h.profile_at(i));
  }
  return out;
}

// --- distinguished lassos --------------------------------------------------

namespace {

// Cuts a walk (states[0..n], profiles[0..n-1]) whose last state repeats an
// earlier one.
LassoHistory cut_walk(StateId anchor, const std::vector<StateId>& states,
                      const std::vector<Profile>& profiles) {
  const StateId last = states.back();
  const auto first = static_cast<std::size_t>(
      std::find(states.begin(), states.end(), last) - states.begin());
  LassoHistory h;
  h.anchor = anchor;
  h.stem.assign(profiles.begin(), profiles.begin() + static_cast<long>(first));
  h.loop.assign(profiles.begin() + static_cast<long>(first), profiles.end());
  return h;
}

template <class Pick>
LassoHistory walk_until_repeat(const Cgs& g, StateId w, Pick pick) {
  std::vector<StateId> states{w};
  std::vector<Profile> profiles;
  std::vector<std::uint8_t> seen(g.num_states(), 0);
  seen[w] = 1;
  while (true) {
    const StateId s = states.back();
    const std::size_t idx = pick(s);
    profiles.push_back(g.decode_profile(s, idx));
    const StateId t = g.successor(s, idx);
    states.push_back(t);
    if (seen[t]) return cut_walk(w, states, profiles);
    seen[t] = 1;
  }
}

// BFS tree from `src` over profile indices in order: parent state and the
// profile index used to reach each state.
struct BfsTree {
  std::vector<int> dist;
  std::vector<StateId> parent;
  std::vector<std::size_t> via;
};

BfsTree bfs(const Cgs& g, StateId src) {
  const std::size_t n = g.num_states();
  BfsTree t{std::vector<int>(n, -1), std::vector<StateId>(n, -1), std::vector<std::size_t>(n, 0)};
  std::deque<StateId> q{src};
  t.dist[src] = 0;
  while (!q.empty()) {
    const StateId s = q.front();
    q.pop_front();
    for (std::size_t p = 0; p < g.num_profiles(s); ++p) {
      const StateId u = g.successor(s, p);
      if (t.dist[u] >= 0) continue;
      t.dist[u] = t.dist[s] + 1;
      t.parent[u] = s;
      t.via[u] = p;
      q.push_back(u);
    }
  }
  return t;
}

std::vector<Profile> path_to(const Cgs& g, const BfsTree& t, StateId target) {
  std::vector<Profile> out;
  for (StateId v = target; t.dist[v] > 0; v = t.parent[v])
    out.push_back(g.decode_profile(t.parent[v], t.via[v]));
  std::reverse(out.begin(), out.end());
  return out;
}

// Shortest cycle through v: the best edge v -> u plus the BFS path u -> v.
std::vector<Profile> shortest_cycle(const Cgs& g, StateId v) {
  std::vector<Profile> best;
  for (std::size_t p = 0; p < g.num_profiles(v); ++p) {
    const StateId u = g.successor(v, p);
    const BfsTree t = bfs(g, u);
    if (t.dist[v] < 0) continue;
    if (!best.empty() && static_cast<std::size_t>(t.dist[v]) + 1 >= best.size()) continue;
    best = {g.decode_profile(v, p)};
    const auto rest = path_to(g, t, v);
    best.insert(best.end(), rest.begin(), rest.end());
  }
  return best;
}

}  // namespace

LassoHistory canonical_lasso(const Cgs& g, StateId w) {
  return walk_until_repeat(g, w, [](StateId) { return std::size_t{0}; });
}

LassoHistory shortest_lasso(const Cgs& g, StateId w) {
  const BfsTree from_w = bfs(g, w);
  LassoHistory best;
  std::size_t best_len = 0;
  for (std::size_t v = 0; v < g.num_states(); ++v) {
    if (from_w.dist[v] < 0) continue;
    const auto cycle = shortest_cycle(g, static_cast<StateId>(v));
    if (cycle.empty()) continue;  // every reachable state has a successor, but v may lie off-cycle
    const std::size_t len = static_cast<std::size_t>(from_w.dist[v]) + cycle.size();
    if (best_len != 0 && len >= best_len) continue;
    best.anchor = w;
    best.stem = path_to(g, from_w, static_cast<StateId>(v));
    best.loop = cycle;
    best_len = len;
  }
  return normalize_lasso(g, best);
}

std::vector<LassoHistory> first_step_representatives(const Cgs& g, StateId w) {
  std::vector<LassoHistory> out;
  for (std::size_t p = 0; p < g.num_profiles(w); ++p) {
    const LassoHistory rest = canonical_lasso(g, g.successor(w, p));
    LassoHistory h;
    h.anchor = w;
    h.stem.push_back(g.decode_profile(w, p));
    h.stem.insert(h.stem.end(), rest.stem.begin(), rest.stem.end());
    h.loop = rest.loop;
    out.push_back(normalize_lasso(g, h));
  }
  return out;
}

// --- pool and sampling -----------------------------------------------------

namespace {

bool pool_order(const LassoHistory& a, const LassoHistory& b) {
  if (a.stem.size() != b.stem.size()) return a.stem.size() < b.stem.size();
  if (a.stem != b.stem) return a.stem < b.stem;
  if (a.loop.size() != b.loop.size()) return a.loop.size() < b.loop.size();
  return a.loop < b.loop;
}

}  // namespace

LassoPool lasso_pool(const Cgs& g, StateId w, const LassoPoolOptions& opts) {
  const std::size_t max_stem = opts.max_stem ? opts.max_stem : g.num_states();
  const std::size_t max_loop = opts.max_loop ? opts.max_loop : g.num_states();
  const std::size_t max_len = max_stem + max_loop;
  // The walk itself can be much larger than the pool; bound it too.
  const std::size_t node_budget = opts.cap * 64;

  LassoPool pool;
  std::set<LassoHistory> found;
  std::vector<StateId> states{w};
  std::vector<Profile> profiles;
  std::size_t nodes = 0;

  // Iterative DFS over profile sequences; `next[d]` is the next profile index
  // to try at depth d.
  std::vector<std::size_t> next{0};
  while (!next.empty() && pool.complete) {
    const std::size_t d = next.size() - 1;
    const StateId s = states[d];
    if (d == max_len || next[d] >= g.num_profiles(s)) {
      next.pop_back();
      states.pop_back();
      if (!profiles.empty()) profiles.pop_back();
      continue;
    }
    const std::size_t idx = next[d]++;
    profiles.push_back(g.decode_profile(s, idx));
    states.push_back(g.successor(s, idx));
    next.push_back(0);
    if (++nodes > node_budget) pool.complete = false;

    const std::size_t len = profiles.size();
    const std::size_t lo = len > max_loop ? len - max_loop : 0;
    for (std::size_t i = lo; i < len && i <= max_stem; ++i) {
      if (states[i] != states[len]) continue;
      LassoHistory h;
      h.anchor = w;
      h.stem.assign(profiles.begin(), profiles.begin() + static_cast<long>(i));
      h.loop.assign(profiles.begin() + static_cast<long>(i), profiles.end());
      found.insert(normalize_lasso(g, h));
      if (found.size() > opts.cap) pool.complete = false;
    }
  }
  pool.lassos.assign(found.begin(), found.end());
  std::sort(pool.lassos.begin(), pool.lassos.end(), pool_order);
  return pool;
}

std::vector<LassoHistory> sample_lassos(const Cgs& g, StateId w, std::size_t count,
                                        std::uint64_t seed, const LassoPoolOptions& opts) {
  std::vector<LassoHistory> out;
  std::set<LassoHistory> seen;
  auto add = [&](const LassoHistory& h) {
    if (seen.insert(h).second) out.push_back(h);
  };
  add(shortest_lasso(g, w));
  for (const auto& h : first_step_representatives(g, w)) add(h);

  std::mt19937_64 rng(seed);
  const LassoPool pool = lasso_pool(g, w, opts);
  if (pool.complete) {
    std::vector<std::size_t> picks(pool.lassos.size());
    for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
    if (picks.size() > count) {
      // Partial Fisher-Yates with our own draws, so the choice does not
      // depend on the standard library's std::shuffle.
      for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> d(i, picks.size() - 1);
        std::swap(picks[i], picks[d(rng)]);
      }
      picks.resize(count);
      std::sort(picks.begin(), picks.end());
    }
    for (std::size_t i : picks) add(pool.lassos[i]);
    return out;
  }
  for (std::size_t k = 0; k < count; ++k)
    add(normalize_lasso(g, walk_until_repeat(g, w, [&](StateId s) {
      std::uniform_int_distribution<std::size_t> d(0, g.num_profiles(s) - 1);
      return d(rng);
    })));
  return out;
}

}  // namespace atlstit
