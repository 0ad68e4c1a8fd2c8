#include "atlstit/unravel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "atlstit/strategy.hpp"

namespace atlstit {

bool Moment::precedes(const Moment& other) const {
  if (len() >= other.len()) return false;
  return std::equal(states.begin(), states.end(), other.states.begin()) &&
         std::equal(via.begin(), via.end(), other.via.begin());
}

std::vector<int> BdtFragment::histories_through(int node) const {
  std::vector<int> out;
  std::vector<int> stack{node};
  std::set<int> seen;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v < 0 || static_cast<std::size_t>(v) >= nodes.size() || !seen.insert(v).second) continue;
    if (nodes[v].children.empty()) {
      out.push_back(v);
      continue;
    }
    for (auto it = nodes[v].children.rbegin(); it != nodes[v].children.rend(); ++it)
      stack.push_back(*it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t BdtFragment::count_at_length(std::size_t len) const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [&](const MomentNode& n) { return n.moment.len() == len; }));
}

BdtFragment unravel(const Cgs& g, StateId root, std::size_t depth, std::size_t max_moments) {
  if (root < 0 || static_cast<std::size_t>(root) >= g.num_states())
    throw std::out_of_range("unravel: unknown state id " + std::to_string(root));
  if (depth == 0) throw std::invalid_argument("unravel: depth must be >= 1");

  BdtFragment f;
  f.source = g;
  f.root = root;
  f.depth = depth;
  f.nodes.push_back(MomentNode{Moment{{root}, {}}, -1, {}, {}, {}});

  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    if (f.nodes[i].moment.len() > depth) continue;
    const StateId last = f.nodes[i].moment.last();
    const std::size_t branching = g.num_profiles(last);
    if (f.nodes.size() + branching > max_moments)
      throw InstanceTooLarge("instance size guard exceeded: more than " +
                             std::to_string(max_moments) + " moments");
    std::vector<int> kids;
    for (std::size_t p = 0; p < branching; ++p) {
      Moment m = f.nodes[i].moment;
      m.states.push_back(g.successor(last, p));
      m.via.push_back(p);
      kids.push_back(static_cast<int>(f.nodes.size()));
      f.nodes.push_back(MomentNode{std::move(m), static_cast<int>(i), {}, {}, {}});
    }
    f.nodes[i].children = std::move(kids);
  }

  // Histories below each node. Children come after parents in BFS order.
  std::vector<std::vector<int>> below(f.nodes.size());
  for (std::size_t i = f.nodes.size(); i-- > 0;) {
    if (f.nodes[i].children.empty()) {
      below[i] = {static_cast<int>(i)};
      continue;
    }
    for (int c : f.nodes[i].children) below[i].insert(below[i].end(), below[c].begin(), below[c].end());
    std::sort(below[i].begin(), below[i].end());
  }

  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    MomentNode& node = f.nodes[i];
    if (node.children.empty()) continue;
    const StateId last = node.moment.last();
    node.cells.resize(g.num_agents());
    node.exe.resize(g.num_agents());
    for (std::size_t a = 0; a < g.num_agents(); ++a) {
      const auto& menu = g.actions(static_cast<AgentId>(a), last);
      for (std::size_t l = 0; l < menu.size(); ++l) {
        ChoiceCell cell{menu[l], {}};
        for (std::size_t p = 0; p < node.children.size(); ++p) {
          if (g.decode_profile(last, p)[a] != static_cast<ActionId>(l)) continue;
          const auto& h = below[node.children[p]];
          cell.histories.insert(cell.histories.end(), h.begin(), h.end());
        }
        std::sort(cell.histories.begin(), cell.histories.end());
        node.exe[a][menu[l]] = static_cast<int>(node.cells[a].size());
        node.cells[a].push_back(std::move(cell));
      }
    }
  }
  return f;
}

const char* to_string(FrameCondition c) {
  switch (c) {
    case FrameCondition::Order: return "ORDER";
    case FrameCondition::TD: return "TD";
    case FrameCondition::Partition: return "PARTITION";
    case FrameCondition::NC: return "NC";
    case FrameCondition::IA: return "IA";
    case FrameCondition::EL: return "EL";
    case FrameCondition::LE: return "LE";
    case FrameCondition::Determinism: return "DET";
  }
  return "?";
}

bool FrameReport::has(FrameCondition c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const FrameViolation& v) { return v.condition == c; });
}

std::string format_moment(const Cgs& g, const Moment& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    if (i) out += ',';
    out += m.states[i] >= 0 && static_cast<std::size_t>(m.states[i]) < g.num_states()
               ? g.state_name(m.states[i])
               : "?";
  }
  return out + "]";
}

// --- frame verification ----------------------------------------------------

namespace {

class FrameChecker {
 public:
  explicit FrameChecker(const BdtFragment& f) : f_(f), g_(f.source), n_(f.nodes.size()) {}

  FrameReport run() {
    check_order();
    if (!tree_ok_) return std::move(report_);  // later checks walk the tree
    below_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) below_[i] = f_.histories_through(static_cast<int>(i));
    check_td();
    for (std::size_t i = 0; i < n_; ++i) {
      if (f_.nodes[i].children.empty()) continue;
      check_cells(static_cast<int>(i));
    }
    return std::move(report_);
  }

 private:
  void add(FrameCondition c, std::string detail) {
    if (++per_condition_[c] > 20) return;
    report_.violations.push_back({c, std::move(detail)});
  }
  std::string at(int i) const { return "at " + format_moment(g_, f_.nodes[i].moment); }
  bool valid_id(int i) const { return i >= 0 && static_cast<std::size_t>(i) < n_; }

  void check_order() {
    // Parent links form a tree rooted at node 0, lengths grow by one.
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& node = f_.nodes[i];
      if (node.moment.states.empty() || node.moment.via.size() + 1 != node.moment.len()) {
        add(FrameCondition::Order, "malformed moment #" + std::to_string(i));
        tree_ok_ = false;
        continue;
      }
      if (i == 0) {
        if (node.parent != -1) add(FrameCondition::Order, "root moment has a predecessor");
        continue;
      }
      int v = static_cast<int>(i);
      std::size_t steps = 0;
      while (v > 0 && steps <= n_) {
        v = valid_id(f_.nodes[v].parent) ? f_.nodes[v].parent : -1;
        ++steps;
      }
      if (v != 0) {
        add(FrameCondition::Order, "moment " + at(static_cast<int>(i)).substr(3) +
                                       " does not descend from the root");
        tree_ok_ = false;
      }
    }
    if (!tree_ok_) return;

    std::set<std::pair<std::vector<StateId>, std::vector<std::size_t>>> distinct;
    for (std::size_t i = 0; i < n_; ++i)
      if (!distinct.insert({f_.nodes[i].moment.states, f_.nodes[i].moment.via}).second)
        add(FrameCondition::Order, "duplicate moment " + at(static_cast<int>(i)));

    // ⊏ (prefix order) must coincide with the ancestor relation, and the
    // predecessors of every moment must form a chain.
    for (std::size_t j = 0; j < n_; ++j) {
      std::set<int> ancestors;
      for (int v = f_.nodes[j].parent; v >= 0; v = f_.nodes[v].parent) ancestors.insert(v);
      std::vector<int> preds;
      for (std::size_t i = 0; i < n_; ++i) {
        const bool prefix = f_.nodes[i].moment.precedes(f_.nodes[j].moment);
        if (prefix) preds.push_back(static_cast<int>(i));
        if (prefix != (ancestors.count(static_cast<int>(i)) > 0))
          add(FrameCondition::Order, "order and tree disagree between " +
                                         format_moment(g_, f_.nodes[i].moment) + " and " +
                                         format_moment(g_, f_.nodes[j].moment));
      }
      std::sort(preds.begin(), preds.end(), [&](int a, int b) {
        return f_.nodes[a].moment.len() < f_.nodes[b].moment.len();
      });
      for (std::size_t k = 1; k < preds.size(); ++k)
        if (!f_.nodes[preds[k - 1]].moment.precedes(f_.nodes[preds[k]].moment))
          add(FrameCondition::Order, "backward branching below " + at(static_cast<int>(j)));
    }
  }

  void check_td() {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& node = f_.nodes[i];
      const int id = static_cast<int>(i);
      if (node.children.empty()) {
        if (node.moment.len() != f_.depth + 1)
          add(FrameCondition::TD, "moment " + at(id).substr(3) + " has no successor");
        continue;
      }
      const StateId last = node.moment.last();
      if (node.children.size() != g_.num_profiles(last))
        add(FrameCondition::TD, at(id) + ": " + std::to_string(node.children.size()) +
                                    " branches, expected " +
                                    std::to_string(g_.num_profiles(last)));
      for (std::size_t p = 0; p < node.children.size(); ++p) {
        const int c = node.children[p];
        if (!valid_id(c)) {
          add(FrameCondition::TD, at(id) + ": dangling successor");
          continue;
        }
        Moment expect = node.moment;
        if (p < g_.num_profiles(last)) expect.states.push_back(g_.successor(last, p));
        expect.via.push_back(p);
        if (f_.nodes[c].parent != id || !(f_.nodes[c].moment == expect))
          add(FrameCondition::TD, at(id) + ": successor along profile " +
                                      g_.format_profile(last, g_.decode_profile(last, p % g_.num_profiles(last))) +
                                      " is " + format_moment(g_, f_.nodes[c].moment));
      }
      // Along every history through the moment there is exactly one
      // immediate successor.
      for (int h : below_[i]) {
        std::size_t found = 0;
        for (int v = h; v >= 0; v = f_.nodes[v].parent)
          if (f_.nodes[v].moment.len() == node.moment.len() + 1 &&
              node.moment.precedes(f_.nodes[v].moment))
            ++found;
        if (found != 1)
          add(FrameCondition::TD, at(id) + ": history " + format_moment(g_, f_.nodes[h].moment) +
                                      " has " + std::to_string(found) + " immediate successors");
      }
    }
  }

  // Index of the child (first step) that history h takes from node m.
  int first_step(int m, int h) const {
    int v = h;
    while (v >= 0 && f_.nodes[v].parent != m) v = f_.nodes[v].parent;
    return v;
  }

  void check_cells(int m) {
    const auto& node = f_.nodes[m];
    const StateId last = node.moment.last();
    const auto& hist = below_[m];
    const std::set<int> hist_set(hist.begin(), hist.end());
    const std::size_t na = g_.num_agents();

    if (node.cells.size() != na || node.exe.size() != na) {
      add(FrameCondition::Partition, at(m) + ": choice data missing for some agent");
      return;
    }

    // cell_of[a][h] for histories in at most one cell; -1 when in none.
    std::vector<std::map<int, int>> cell_of(na);
    for (std::size_t a = 0; a < na; ++a) {
      const auto& cells = node.cells[a];
      const std::string who = g_.agent_name(static_cast<AgentId>(a));
      if (cells.size() != g_.num_actions(static_cast<AgentId>(a), last))
        add(FrameCondition::Partition, at(m) + ": agent " + who + " has " +
                                           std::to_string(cells.size()) + " cells, expected " +
                                           std::to_string(g_.num_actions(static_cast<AgentId>(a), last)));
      std::set<int> covered;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].histories.empty())
          add(FrameCondition::Partition, at(m) + ": empty cell " + who + ":" + cells[c].label);
        for (int h : cells[c].histories) {
          if (!hist_set.count(h)) {
            add(FrameCondition::Partition, at(m) + ": cell " + who + ":" + cells[c].label +
                                               " holds a history not through the moment");
            continue;
          }
          if (!covered.insert(h).second) {
            add(FrameCondition::Partition, at(m) + ": cells of " + who + " overlap");
            continue;
          }
          cell_of[a][h] = static_cast<int>(c);
        }
      }
      if (covered.size() != hist.size())
        add(FrameCondition::Partition, at(m) + ": cells of " + who + " do not cover H_m");

      // NC: histories that stay together after m are in the same cell.
      std::map<int, int> cell_of_branch;
      for (int h : hist) {
        auto it = cell_of[a].find(h);
        if (it == cell_of[a].end()) continue;
        const int branch = first_step(m, h);
        auto [pos, fresh] = cell_of_branch.emplace(branch, it->second);
        if (!fresh && pos->second != it->second)
          add(FrameCondition::NC, at(m) + ": undivided histories through " +
                                      format_moment(g_, f_.nodes[branch].moment) +
                                      " are split by " + who);
      }

      // Lbl/Exe.
      std::set<std::string> tps(g_.actions(static_cast<AgentId>(a), last).begin(),
                                g_.actions(static_cast<AgentId>(a), last).end());
      for (const auto& [tau, c] : node.exe[a]) {
        if (!tps.count(tau))
          add(FrameCondition::LE, at(m) + ": Exe_" + who + " defined on '" + tau +
                                      "' outside Tps");
        if (c < 0 || static_cast<std::size_t>(c) >= cells.size()) {
          add(FrameCondition::LE, at(m) + ": Exe_" + who + "('" + tau + "') is not a cell");
          continue;
        }
        if (cells[c].label != tau)
          add(FrameCondition::LE, at(m) + ": Lbl(Exe_" + who + "('" + tau + "')) = '" +
                                      cells[c].label + "'");
      }
      for (const auto& tau : tps)
        if (!node.exe[a].count(tau))
          add(FrameCondition::LE, at(m) + ": Exe_" + who + " undefined on available type '" +
                                      tau + "'");
      for (int h : hist) {
        auto it = cell_of[a].find(h);
        if (it == cell_of[a].end()) continue;
        const auto& label = cells[it->second].label;
        auto e = node.exe[a].find(label);
        if (e == node.exe[a].end() || e->second != it->second)
          add(FrameCondition::EL, at(m) + ": Exe_" + who + "(Lbl_" + who + ") misses the cell of " +
                                      format_moment(g_, f_.nodes[h].moment));
      }
    }

    check_independence(m, cell_of);

    // Determinism: same cell for every agent implies same successor.
    std::map<std::vector<int>, int> successor_of;
    for (int h : hist) {
      std::vector<int> sig;
      bool complete = true;
      for (std::size_t a = 0; a < na; ++a) {
        auto it = cell_of[a].find(h);
        complete = complete && it != cell_of[a].end();
        sig.push_back(complete ? it->second : -1);
      }
      if (!complete) continue;
      const int branch = first_step(m, h);
      auto [pos, fresh] = successor_of.emplace(sig, branch);
      if (!fresh && pos->second != branch)
        add(FrameCondition::Determinism,
            at(m) + ": histories in one Choice_Ags cell reach " +
                format_moment(g_, f_.nodes[pos->second].moment) + " and " +
                format_moment(g_, f_.nodes[branch].moment));
    }
  }

  // IA: every selection of one cell per agent has a common history.
  void check_independence(int m, const std::vector<std::map<int, int>>& cell_of) {
    const auto& node = f_.nodes[m];
    const std::size_t na = node.cells.size();
    for (const auto& cells : node.cells)
      if (cells.empty()) return;  // reported as a partition failure
    std::set<std::vector<int>> realised;
    for (int h : below_[m]) {
      std::vector<int> sig;
      for (std::size_t a = 0; a < na; ++a) {
        auto it = cell_of[a].find(h);
        sig.push_back(it == cell_of[a].end() ? -1 : it->second);
      }
      realised.insert(sig);
    }
    std::vector<int> pick(na, 0);
    while (true) {
      if (!realised.count(pick)) {
        std::string sel;
        for (std::size_t a = 0; a < na; ++a)
          sel += (a ? ", " : "") + g_.agent_name(static_cast<AgentId>(a)) + ":" +
                 node.cells[a][pick[a]].label;
        add(FrameCondition::IA, at(m) + ": selection {" + sel + "} has empty intersection");
      }
      std::size_t k = na;
      while (k > 0) {
        --k;
        if (++pick[k] < static_cast<int>(node.cells[k].size())) break;
        pick[k] = 0;
        if (k == 0) return;
      }
    }
  }

  const BdtFragment& f_;
  const Cgs& g_;
  std::size_t n_;
  bool tree_ok_ = true;
  std::vector<std::vector<int>> below_;
  std::map<FrameCondition, int> per_condition_;
  FrameReport report_;
};

}  // namespace

FrameReport verify_frame(const BdtFragment& f) { return FrameChecker(f).run(); }

// --- export ----------------------------------------------------------------

std::string dump_fragment(const BdtFragment& f) {
  const Cgs& g = f.source;
  std::ostringstream out;
  for (const auto& node : f.nodes) {
    out << format_moment(g, node.moment) << " via (";
    for (std::size_t i = 0; i < node.moment.via.size(); ++i) {
      const StateId s = node.moment.states[i];
      out << (i ? ")(" : "") << g.format_profile(s, g.decode_profile(s, node.moment.via[i]));
    }
    out << ")";
    if (node.children.empty()) {
      out << " | leaf\n";
      continue;
    }
    const StateId last = node.moment.last();
    out << " |";
    for (std::size_t a = 0; a < node.cells.size(); ++a) {
      for (const auto& cell : node.cells[a]) {
        out << ' ' << g.agent_name(static_cast<AgentId>(a)) << '.' << cell.label << "={";
        bool first = true;
        for (std::size_t p = 0; p < node.children.size(); ++p) {
          if (g.actions(static_cast<AgentId>(a), last)[g.decode_profile(last, p)[a]] != cell.label)
            continue;
          out << (first ? "" : " ") << '(' << g.format_profile(last, g.decode_profile(last, p))
              << ")->" << g.state_name(g.successor(last, p));
          first = false;
        }
        out << '}';
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace atlstit
