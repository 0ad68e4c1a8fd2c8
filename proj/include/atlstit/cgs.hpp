#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlstit/formula.hpp"

namespace atlstit {

using StateId = int;
using AgentId = int;
using ActionId = int;

/// One action index per agent, in agent document order.
using Profile = std::vector<ActionId>;

/// Set of states of one structure, stored densely. Bytes rather than bits so
/// that parallel writers touching distinct states do not race.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe, bool full = false)
      : bits_(universe, full ? 1 : 0) {}

  static StateSet all(std::size_t universe) { return StateSet(universe, true); }

  std::size_t universe() const { return bits_.size(); }
  bool contains(StateId s) const { return bits_.at(static_cast<std::size_t>(s)) != 0; }
  void insert(StateId s) { bits_.at(static_cast<std::size_t>(s)) = 1; }
  void erase(StateId s) { bits_.at(static_cast<std::size_t>(s)) = 0; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == universe(); }

  StateSet operator&(const StateSet& o) const;
  StateSet operator|(const StateSet& o) const;
  StateSet complement() const;
  bool subset_of(const StateSet& o) const;
  bool operator==(const StateSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const StateSet& o) const { return bits_ != o.bits_; }

  std::vector<StateId> members() const;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Partial assignment of actions to agents at one state. Agents outside the
/// coalition hold kFree.
struct JointAction {
  static constexpr ActionId kFree = -1;
  std::vector<ActionId> choice;

  static JointAction unconstrained(std::size_t n_agents) {
    return JointAction{std::vector<ActionId>(n_agents, kFree)};
  }
};

class CgsError : public std::runtime_error {
 public:
  explicit CgsError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// String-keyed form of a structure, as read from or written to JSON. It may
/// violate any invariant; validate() reports which.
struct CgsDocument {
  struct Transition {
    std::string state;
    std::map<std::string, std::string> profile;
    std::string next;
  };
  std::vector<std::string> agents;
  std::vector<std::string> states;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> actions;
  std::vector<Transition> delta;
  std::map<std::string, std::vector<std::string>> valuation;
};

/// Parses the JSON CGS format. Throws CgsError on malformed input; does not
/// check the structural invariants.
CgsDocument parse_cgs_document(std::string_view text);
std::string dump_cgs_document(const CgsDocument& doc);

/// Lists every violated invariant; empty iff the document describes a CGS.
std::vector<std::string> validate(const CgsDocument& doc);

/// A validated, index-based concurrent game structure. Immutable.
class Cgs {
 public:
  /// Throws CgsError listing all violations.
  static Cgs from_document(const CgsDocument& doc);
  CgsDocument to_document() const;

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_agents() const { return agent_names_.size(); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& agent_names() const { return agent_names_; }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::string& agent_name(AgentId a) const { return agent_names_.at(a); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<AgentId> find_agent(std::string_view name) const;
  /// Throws std::out_of_range with a readable message.
  StateId state_index(std::string_view name) const;
  AgentId agent_index(std::string_view name) const;
  /// Agent ids of a named coalition; throws on unknown members.
  std::vector<AgentId> coalition_ids(const Coalition& c) const;

  const std::vector<std::string>& actions(AgentId a, StateId s) const {
    return actions_.at(s).at(a);
  }
  std::size_t num_actions(AgentId a, StateId s) const { return actions(a, s).size(); }
  std::optional<ActionId> find_action(AgentId a, StateId s, std::string_view label) const;

  /// Number of full action profiles available at s.
  std::size_t num_profiles(StateId s) const { return profile_count_.at(s); }
  /// Profiles are numbered lexicographically, first agent most significant.
  Profile decode_profile(StateId s, std::size_t index) const;
  std::size_t encode_profile(StateId s, const Profile& p) const;
  bool profile_valid(StateId s, const Profile& p) const;
  std::string format_profile(StateId s, const Profile& p) const;

  StateId successor(StateId s, std::size_t profile_index) const {
    return delta_.at(s).at(profile_index);
  }
  StateId step(StateId s, const Profile& p) const { return successor(s, encode_profile(s, p)); }

  /// Atoms that appear in the valuation.
  std::vector<std::string> atoms() const;
  /// Denotation of an atom; atoms absent from the valuation denote the empty set.
  StateSet valuation(const std::string& atom) const;
  StateSet names_to_set(const std::vector<std::string>& names) const;
  std::string format_set(const StateSet& s) const;

 private:
  std::vector<std::string> agent_names_;
  std::vector<std::string> state_names_;
  std::vector<std::vector<std::vector<std::string>>> actions_;  // [state][agent]
  std::vector<std::size_t> profile_count_;
  std::vector<std::vector<StateId>> delta_;  // [state][profile index]
  std::map<std::string, StateSet> valuation_;
};

Cgs load_cgs(std::string_view text);
Cgs load_cgs_file(const std::string& path);
std::string dump_cgs(const Cgs& g);

/// Re-checks the invariants of an already-built structure.
std::vector<std::string> validate(const Cgs& g);

/// δ[w, j]: states reachable in one step when the coalition of j plays j.
/// Throws std::out_of_range on a bad state or a component outside the menu.
StateSet successors(const Cgs& g, StateId w, const JointAction& j);
/// Name-based form; agents not mentioned are unconstrained.
JointAction make_joint_action(const Cgs& g, StateId w,
                              const std::map<std::string, std::string>& labels);

struct RandomCgsParams {
  std::size_t n_states = 3;
  std::size_t n_agents = 2;
  std::size_t max_actions = 2;
  std::size_t n_atoms = 2;
  std::uint64_t seed = 0;
};

/// Deterministic in the seed. States w0.., agents a, b, .., actions s1..,
/// atoms p, q, .. . Menu sizes uniform in [1, max_actions]; each transition
/// target uniform over states.
Cgs random_cgs(const RandomCgsParams& params);

}  // namespace atlstit
