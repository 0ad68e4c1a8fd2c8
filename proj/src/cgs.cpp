#include "atlstit/cgs.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace atlstit {

using nlohmann::json;

// --- StateSet --------------------------------------------------------------

std::size_t StateSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

StateSet StateSet::operator&(const StateSet& o) const {
  StateSet r(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_.at(i);
  return r;
}

StateSet StateSet::operator|(const StateSet& o) const {
  StateSet r(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_.at(i);
  return r;
}

StateSet StateSet::complement() const {
  StateSet r(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] ? 0 : 1;
  return r;
}

bool StateSet::subset_of(const StateSet& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_.at(i)) return false;
  return true;
}

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<StateId>(i));
  return out;
}

// --- errors ----------------------------------------------------------------

namespace {
std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}
}  // namespace

CgsError::CgsError(std::vector<std::string> violations)
    : std::runtime_error(join(violations, "; ")), violations_(std::move(violations)) {}

// --- JSON ------------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw CgsError({"malformed document: unknown key '" + it.key() + "' in " + where});
  }
}

std::vector<std::string> string_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw CgsError({"malformed document: " + where + " must be an array"});
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw CgsError({"malformed document: " + where + " must contain strings"});
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

CgsDocument parse_cgs_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CgsError({std::string("malformed document: ") + e.what()});
  }
  if (!root.is_object()) throw CgsError({"malformed document: top level must be an object"});
  reject_unknown_keys(root, {"agents", "states", "actions", "delta", "valuation"}, "document");
  for (const char* k : {"agents", "states", "actions", "delta"})
    if (!root.contains(k)) throw CgsError({std::string("malformed document: missing key '") + k + "'"});

  CgsDocument doc;
  doc.agents = string_array(root["agents"], "agents");
  doc.states = string_array(root["states"], "states");

  const json& acts = root["actions"];
  if (!acts.is_object()) throw CgsError({"malformed document: actions must be an object"});
  for (auto it = acts.begin(); it != acts.end(); ++it) {
    if (!it.value().is_object())
      throw CgsError({"malformed document: actions." + it.key() + " must be an object"});
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
      doc.actions[it.key()][jt.key()] =
          string_array(jt.value(), "actions." + it.key() + "." + jt.key());
  }

  const json& delta = root["delta"];
  if (!delta.is_array()) throw CgsError({"malformed document: delta must be an array"});
  for (const auto& row : delta) {
    if (!row.is_object()) throw CgsError({"malformed document: delta rows must be objects"});
    reject_unknown_keys(row, {"state", "profile", "next"}, "delta row");
    if (!row.contains("state") || !row.contains("profile") || !row.contains("next") ||
        !row["state"].is_string() || !row["next"].is_string() || !row["profile"].is_object())
      throw CgsError({"malformed document: delta rows need string state/next and object profile"});
    CgsDocument::Transition t;
    t.state = row["state"].get<std::string>();
    t.next = row["next"].get<std::string>();
    for (auto it = row["profile"].begin(); it != row["profile"].end(); ++it) {
      if (!it.value().is_string())
        throw CgsError({"malformed document: profile entries must be strings"});
      t.profile[it.key()] = it.value().get<std::string>();
    }
    doc.delta.push_back(std::move(t));
  }

  if (root.contains("valuation")) {
    const json& val = root["valuation"];
    if (!val.is_object()) throw CgsError({"malformed document: valuation must be an object"});
    for (auto it = val.begin(); it != val.end(); ++it)
      doc.valuation[it.key()] = string_array(it.value(), "valuation." + it.key());
  }
  return doc;
}

std::string dump_cgs_document(const CgsDocument& doc) {
  json root;
  root["agents"] = doc.agents;
  root["states"] = doc.states;
  json acts = json::object();
  for (const auto& [s, per_agent] : doc.actions)
    for (const auto& [a, labels] : per_agent) acts[s][a] = labels;
  root["actions"] = acts;
  json delta = json::array();
  for (const auto& t : doc.delta) {
    json row;
    row["state"] = t.state;
    row["profile"] = t.profile;
    row["next"] = t.next;
    delta.push_back(row);
  }
  root["delta"] = delta;
  json val = json::object();
  for (const auto& [p, states] : doc.valuation) val[p] = states;
  root["valuation"] = val;
  return root.dump(2) + "\n";
}

// --- validation ------------------------------------------------------------

namespace {

// Advances a mixed-radix counter, last digit fastest. False on wrap-around.
template <class Radix>
bool odometer_next(std::vector<std::size_t>& idx, Radix radix) {
  for (std::size_t k = idx.size(); k > 0; --k) {
    if (++idx[k - 1] < radix(k - 1)) return true;
    idx[k - 1] = 0;
  }
  return false;
}

std::string bracket_profile(const std::vector<std::string>& labels) {
  return "[" + join(labels, ",") + "]";
}

}  // namespace

std::vector<std::string> validate(const CgsDocument& doc) {
  std::vector<std::string> bad;
  if (doc.agents.empty()) bad.push_back("no agents");
  if (doc.states.empty()) bad.push_back("no states");

  std::set<std::string> states, agents;
  for (const auto& s : doc.states)
    if (!states.insert(s).second) bad.push_back("duplicate state '" + s + "'");
  for (const auto& a : doc.agents)
    if (!agents.insert(a).second) bad.push_back("duplicate agent '" + a + "'");

  for (const auto& [s, per_agent] : doc.actions) {
    if (!states.count(s)) bad.push_back("actions mention unknown state '" + s + "'");
    for (const auto& [a, labels] : per_agent) {
      if (!agents.count(a)) bad.push_back("actions mention unknown agent '" + a + "'");
      std::set<std::string> seen;
      for (const auto& l : labels)
        if (!seen.insert(l).second)
          bad.push_back("duplicate action '" + l + "' in Act_" + a + "^" + s);
    }
  }

  // Menus per (state, agent); a state with a broken menu is skipped for
  // the totality check.
  std::map<std::string, bool> menus_ok;
  for (const auto& s : doc.states) {
    bool ok = true;
    for (const auto& a : doc.agents) {
      const std::vector<std::string>* labels = nullptr;
      if (auto it = doc.actions.find(s); it != doc.actions.end())
        if (auto jt = it->second.find(a); jt != it->second.end()) labels = &jt->second;
      if (!labels || labels->empty()) {
        bad.push_back("empty Act_" + a + "^" + s);
        ok = false;
      }
    }
    menus_ok[s] = ok;
  }

  auto menu = [&](const std::string& s, const std::string& a) -> const std::vector<std::string>& {
    return doc.actions.at(s).at(a);
  };

  std::map<std::string, std::set<std::vector<std::string>>> covered;
  for (const auto& t : doc.delta) {
    if (!states.count(t.state)) {
      bad.push_back("delta mentions unknown state '" + t.state + "'");
      continue;
    }
    if (!states.count(t.next))
      bad.push_back("delta target '" + t.next + "' is not a state");
    std::vector<std::string> labels;
    bool row_ok = true;
    for (const auto& a : doc.agents) {
      auto it = t.profile.find(a);
      if (it == t.profile.end()) {
        bad.push_back("delta profile at " + t.state + " misses agent '" + a + "'");
        row_ok = false;
        continue;
      }
      labels.push_back(it->second);
      if (menus_ok[t.state]) {
        const auto& m = menu(t.state, a);
        if (std::find(m.begin(), m.end(), it->second) == m.end()) {
          bad.push_back("action '" + it->second + "' not in Act_" + a + "^" + t.state);
          row_ok = false;
        }
      }
    }
    for (const auto& [a, l] : t.profile)
      if (!agents.count(a)) {
        bad.push_back("delta profile at " + t.state + " mentions unknown agent '" + a + "'");
        row_ok = false;
      }
    if (!row_ok) continue;
    if (!covered[t.state].insert(labels).second)
      bad.push_back("duplicate delta entry at (" + t.state + ", " + bracket_profile(labels) + ")");
  }

  // Totality over the product of menus.
  for (const auto& s : doc.states) {
    if (!menus_ok[s] || doc.agents.empty()) continue;
    std::vector<std::size_t> idx(doc.agents.size(), 0);
    do {
      std::vector<std::string> labels;
      for (std::size_t k = 0; k < doc.agents.size(); ++k)
        labels.push_back(menu(s, doc.agents[k])[idx[k]]);
      if (!covered[s].count(labels))
        bad.push_back("delta not total at (" + s + ", " + bracket_profile(labels) + ")");
    } while (odometer_next(idx, [&](std::size_t k) { return menu(s, doc.agents[k]).size(); }));
  }

  for (const auto& [p, ss] : doc.valuation) {
    if (p.empty()) bad.push_back("empty atom name in valuation");
    for (const auto& s : ss)
      if (!states.count(s)) bad.push_back("valuation of '" + p + "' mentions unknown state '" + s + "'");
  }
  return bad;
}

// --- Cgs -------------------------------------------------------------------

Cgs Cgs::from_document(const CgsDocument& doc) {
  auto bad = validate(doc);
  if (!bad.empty()) throw CgsError(std::move(bad));

  Cgs g;
  g.agent_names_ = doc.agents;
  g.state_names_ = doc.states;
  const std::size_t ns = doc.states.size();
  const std::size_t na = doc.agents.size();
  g.actions_.resize(ns);
  g.profile_count_.resize(ns);
  g.delta_.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    std::size_t count = 1;
    for (std::size_t a = 0; a < na; ++a) {
      g.actions_[s].push_back(doc.actions.at(doc.states[s]).at(doc.agents[a]));
      count *= g.actions_[s].back().size();
    }
    g.profile_count_[s] = count;
    g.delta_[s].assign(count, -1);
  }
  for (const auto& t : doc.delta) {
    const StateId s = g.state_index(t.state);
    Profile p(na);
    for (std::size_t a = 0; a < na; ++a)
      p[a] = *g.find_action(static_cast<AgentId>(a), s, t.profile.at(doc.agents[a]));
    g.delta_[s][g.encode_profile(s, p)] = g.state_index(t.next);
  }
  for (const auto& [atom, ss] : doc.valuation) g.valuation_[atom] = g.names_to_set(ss);
  return g;
}

CgsDocument Cgs::to_document() const {
  CgsDocument doc;
  doc.agents = agent_names_;
  doc.states = state_names_;
  for (std::size_t s = 0; s < num_states(); ++s)
    for (std::size_t a = 0; a < num_agents(); ++a)
      doc.actions[state_names_[s]][agent_names_[a]] = actions_[s][a];
  for (std::size_t s = 0; s < num_states(); ++s) {
    for (std::size_t i = 0; i < profile_count_[s]; ++i) {
      CgsDocument::Transition t;
      t.state = state_names_[s];
      const Profile p = decode_profile(static_cast<StateId>(s), i);
      for (std::size_t a = 0; a < num_agents(); ++a)
        t.profile[agent_names_[a]] = actions_[s][a][p[a]];
      t.next = state_names_[delta_[s][i]];
      doc.delta.push_back(std::move(t));
    }
  }
  for (const auto& [atom, set] : valuation_) {
    auto& v = doc.valuation[atom];
    for (StateId s : set.members()) v.push_back(state_names_[s]);
  }
  return doc;
}

std::optional<StateId> Cgs::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<AgentId> Cgs::find_agent(std::string_view name) const {
  for (std::size_t i = 0; i < agent_names_.size(); ++i)
    if (agent_names_[i] == name) return static_cast<AgentId>(i);
  return std::nullopt;
}

StateId Cgs::state_index(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

AgentId Cgs::agent_index(std::string_view name) const {
  if (auto a = find_agent(name)) return *a;
  throw std::out_of_range("unknown agent '" + std::string(name) + "'");
}

std::vector<AgentId> Cgs::coalition_ids(const Coalition& c) const {
  std::vector<AgentId> out;
  for (const auto& name : c) out.push_back(agent_index(name));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ActionId> Cgs::find_action(AgentId a, StateId s, std::string_view label) const {
  const auto& m = actions(a, s);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == label) return static_cast<ActionId>(i);
  return std::nullopt;
}

Profile Cgs::decode_profile(StateId s, std::size_t index) const {
  Profile p(num_agents());
  for (std::size_t k = num_agents(); k > 0; --k) {
    const std::size_t radix = actions_[s][k - 1].size();
    p[k - 1] = static_cast<ActionId>(index % radix);
    index /= radix;
  }
  return p;
}

std::size_t Cgs::encode_profile(StateId s, const Profile& p) const {
  if (!profile_valid(s, p))
    throw std::out_of_range("profile " + format_profile(s, p) + " is not available at " +
                            state_name(s));
  std::size_t index = 0;
  for (std::size_t k = 0; k < num_agents(); ++k)
    index = index * actions_[s][k].size() + static_cast<std::size_t>(p[k]);
  return index;
}

bool Cgs::profile_valid(StateId s, const Profile& p) const {
  if (s < 0 || static_cast<std::size_t>(s) >= num_states() || p.size() != num_agents())
    return false;
  for (std::size_t k = 0; k < num_agents(); ++k)
    if (p[k] < 0 || static_cast<std::size_t>(p[k]) >= actions_[s][k].size()) return false;
  return true;
}

std::string Cgs::format_profile(StateId s, const Profile& p) const {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += ',';
    const bool ok = s >= 0 && static_cast<std::size_t>(s) < num_states() && k < num_agents() &&
                    p[k] >= 0 && static_cast<std::size_t>(p[k]) < actions_[s][k].size();
    out += ok ? actions_[s][k][p[k]] : "?" + std::to_string(p[k]);
  }
  return out;
}

std::vector<std::string> Cgs::atoms() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : valuation_) out.push_back(k);
  return out;
}

StateSet Cgs::valuation(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? StateSet(num_states()) : it->second;
}

StateSet Cgs::names_to_set(const std::vector<std::string>& names) const {
  StateSet out(num_states());
  for (const auto& n : names) out.insert(state_index(n));
  return out;
}

std::string Cgs::format_set(const StateSet& s) const {
  std::string out = "{";
  bool first = true;
  for (StateId w : s.members()) {
    if (!first) out += ", ";
    out += state_names_[w];
    first = false;
  }
  return out + "}";
}

Cgs load_cgs(std::string_view text) { return Cgs::from_document(parse_cgs_document(text)); }

Cgs load_cgs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_cgs(buf.str());
}

std::string dump_cgs(const Cgs& g) { return dump_cgs_document(g.to_document()); }

std::vector<std::string> validate(const Cgs& g) { return validate(g.to_document()); }

// --- successor queries -----------------------------------------------------

StateSet successors(const Cgs& g, StateId w, const JointAction& j) {
  if (w < 0 || static_cast<std::size_t>(w) >= g.num_states())
    throw std::out_of_range("unknown state id " + std::to_string(w));
  if (j.choice.size() != g.num_agents())
    throw std::out_of_range("joint action has wrong arity");
  for (std::size_t a = 0; a < g.num_agents(); ++a) {
    const ActionId c = j.choice[a];
    if (c != JointAction::kFree &&
        (c < 0 || static_cast<std::size_t>(c) >= g.num_actions(static_cast<AgentId>(a), w)))
      throw std::out_of_range("action " + std::to_string(c) + " not in Act_" + g.agent_name(a) +
                              "^" + g.state_name(w));
  }
  StateSet out(g.num_states());
  for (std::size_t i = 0; i < g.num_profiles(w); ++i) {
    const Profile p = g.decode_profile(w, i);
    bool agrees = true;
    for (std::size_t a = 0; a < p.size() && agrees; ++a)
      agrees = j.choice[a] == JointAction::kFree || j.choice[a] == p[a];
    if (agrees) out.insert(g.successor(w, i));
  }
  return out;
}

JointAction make_joint_action(const Cgs& g, StateId w,
                              const std::map<std::string, std::string>& labels) {
  JointAction j = JointAction::unconstrained(g.num_agents());
  for (const auto& [agent, label] : labels) {
    const AgentId a = g.agent_index(agent);
    auto act = g.find_action(a, w, label);
    if (!act)
      throw std::out_of_range("action '" + label + "' not in Act_" + agent + "^" + g.state_name(w));
    j.choice[a] = *act;
  }
  return j;
}

// --- random generation -----------------------------------------------------

namespace {

std::string agent_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "ag" + std::to_string(i);
}

std::string atom_label(std::size_t i) {
  static const char* names[] = {"p", "q", "r", "t", "u", "v"};
  if (i < 6) return names[i];
  return "p" + std::to_string(i);
}

}  // namespace

Cgs random_cgs(const RandomCgsParams& params) {
  if (params.n_states == 0 || params.n_agents == 0 || params.max_actions == 0 ||
      params.n_atoms == 0)
    throw std::invalid_argument("random_cgs: all bounds must be >= 1");
  std::mt19937_64 rng(params.seed);
  auto uniform = [&](std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
  };

  CgsDocument doc;
  for (std::size_t i = 0; i < params.n_agents; ++i) doc.agents.push_back(agent_label(i));
  for (std::size_t i = 0; i < params.n_states; ++i) doc.states.push_back("w" + std::to_string(i));
  for (const auto& s : doc.states)
    for (const auto& a : doc.agents) {
      const std::size_t k = 1 + uniform(params.max_actions);
      auto& menu = doc.actions[s][a];
      for (std::size_t i = 1; i <= k; ++i) menu.push_back("s" + std::to_string(i));
    }
  for (const auto& s : doc.states) {
    std::vector<std::size_t> idx(doc.agents.size(), 0);
    do {
      CgsDocument::Transition t;
      t.state = s;
      for (std::size_t k = 0; k < doc.agents.size(); ++k)
        t.profile[doc.agents[k]] = doc.actions[s][doc.agents[k]][idx[k]];
      t.next = doc.states[uniform(params.n_states)];
      doc.delta.push_back(std::move(t));
    } while (odometer_next(idx, [&](std::size_t k) { return doc.actions[s][doc.agents[k]].size(); }));
  }
  for (std::size_t i = 0; i < params.n_atoms; ++i) {
    auto& v = doc.valuation[atom_label(i)];
    for (const auto& s : doc.states)
      if (uniform(2)) v.push_back(s);
  }
  return Cgs::from_document(doc);
}

}  // namespace atlstit
