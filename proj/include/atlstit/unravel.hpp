#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "atlstit/cgs.hpp"

namespace atlstit {

/// A moment of the unravelled tree: a δ-consistent state sequence starting at
/// the root, together with the profiles that produced it. Two profiles with
/// the same target state give different moments.
struct Moment {
  std::vector<StateId> states;   // λ(1), ..., λ(len)
  std::vector<std::size_t> via;  // profile index used at λ(i), i < len

  std::size_t len() const { return states.size(); }
  StateId last() const { return states.back(); }
  /// λ ⊏ λ': strictly shorter and a prefix.
  bool precedes(const Moment& other) const;
  bool operator==(const Moment& o) const { return states == o.states && via == o.via; }
};

/// A cell of Choice_α^m: the histories through m in which α performs `label`.
struct ChoiceCell {
  std::string label;
  std::vector<int> histories;  // ids of leaf moments, sorted
};

struct MomentNode {
  Moment moment;
  int parent = -1;
  /// children[i] is the successor along profile i of the last state. Empty
  /// for moments at the truncation depth.
  std::vector<int> children;
  /// Per agent, defined only for non-leaf moments.
  std::vector<std::vector<ChoiceCell>> cells;
  /// Exe_α^m: action label -> index into cells[α]. Partial by construction.
  std::vector<std::map<std::string, int>> exe;
};

/// Depth-k truncation of the labelled bdt-frame associated to a CGS, rooted
/// at one state. Histories are represented by the leaf moments (maximal
/// branches of length k+1).
struct BdtFragment {
  Cgs source;
  StateId root = 0;
  std::size_t depth = 0;
  std::vector<MomentNode> nodes;  // nodes[0] is the root moment, BFS order

  bool is_leaf(int node) const { return nodes.at(node).children.empty(); }
  /// H_m restricted to the fragment.
  std::vector<int> histories_through(int node) const;
  std::size_t count_at_length(std::size_t len) const;
};

/// Throws InstanceTooLarge (strategy.hpp) beyond `max_moments`.
BdtFragment unravel(const Cgs& g, StateId root, std::size_t depth,
                    std::size_t max_moments = 1'000'000);

enum class FrameCondition { Order, TD, Partition, NC, IA, EL, LE, Determinism };

const char* to_string(FrameCondition c);

struct FrameViolation {
  FrameCondition condition;
  std::string detail;
};

struct FrameReport {
  std::vector<FrameViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(FrameCondition c) const;
};

/// Checks the frame conditions on the fragment's stored data. Per-moment
/// conditions are exact; the history-level ones are checked on the
/// truncated histories only.
FrameReport verify_frame(const BdtFragment& f);

/// One line per moment: state sequence, profiles taken, and for each agent
/// the labelled cells with the branches they contain.
std::string dump_fragment(const BdtFragment& f);

std::string format_moment(const Cgs& g, const Moment& m);

}  // namespace atlstit
