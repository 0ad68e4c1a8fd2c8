#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlstit/cgs.hpp"
#include "atlstit/formula.hpp"
#include "atlstit/unravel.hpp"

namespace atlstit {

class InconsistentLasso : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFragment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ultimately periodic history: from `anchor`, play `stem` once, then `loop`
/// forever. The state after the stem equals the state after stem + loop.
struct LassoHistory {
  StateId anchor = 0;
  std::vector<Profile> stem;
  std::vector<Profile> loop;

  std::size_t period_end() const { return stem.size() + loop.size(); }
  const Profile& profile_at(std::size_t i) const;
  bool operator==(const LassoHistory& o) const {
    return anchor == o.anchor && stem == o.stem && loop == o.loop;
  }
  bool operator<(const LassoHistory& o) const;
};

/// Throws InconsistentLasso.
void check_lasso(const Cgs& g, const LassoHistory& h);

/// States at positions 0..n-1 (position 0 is the anchor).
std::vector<StateId> lasso_states(const Cgs& g, const LassoHistory& h, std::size_t n);

LassoHistory lasso_suffix(const Cgs& g, const LassoHistory& h, std::size_t i);

/// Rotates redundant stem tails into the loop and cuts the loop to its
/// shortest closing period, so that lassos of the same history compare equal.
LassoHistory normalize_lasso(const Cgs& g, const LassoHistory& h);

/// Literal form `w0 ; s1 | s1`: anchor, stem profiles, loop profiles.
/// Profiles are separated by blanks; a multi-agent profile joins its labels
/// with commas in agent order.
LassoHistory parse_lasso(const Cgs& g, std::string_view text);
std::string format_lasso(const Cgs& g, const LassoHistory& h);

/// Always plays profile 0 until a state repeats.
LassoHistory canonical_lasso(const Cgs& g, StateId w);
/// A lasso of minimal stem + loop length; ties broken by profile order.
LassoHistory shortest_lasso(const Cgs& g, StateId w);
/// One lasso per profile available at w: that profile, then the canonical
/// lasso of its target.
std::vector<LassoHistory> first_step_representatives(const Cgs& g, StateId w);

struct LassoPoolOptions {
  /// Bounds on stem and loop length; 0 means |W|.
  std::size_t max_stem = 0;
  std::size_t max_loop = 0;
  /// Enumeration stops past this many lassos (LassoPool::complete false).
  std::size_t cap = 4096;
};

struct LassoPool {
  std::vector<LassoHistory> lassos;  // sorted: stem length, then profiles
  bool complete = true;
};

/// Every normalised lasso from w within the bounds, or a truncated prefix of
/// the enumeration when `cap` is reached.
LassoPool lasso_pool(const Cgs& g, StateId w, const LassoPoolOptions& opts = {});

/// Extremes (shortest lasso and the first-step representatives) followed by
/// `count` further lassos: a seeded subsample of the exhaustive pool when it
/// is complete, random walks cut at the first repeated state otherwise.
/// Duplicates are dropped; deterministic in the seed.
std::vector<LassoHistory> sample_lassos(const Cgs& g, StateId w, std::size_t count,
                                        std::uint64_t seed, const LassoPoolOptions& opts = {});

/// Index ⟨m, h⟩. The lasso starts at the moment's last state.
struct SxIndex {
  Moment moment;
  LassoHistory history;
};

/// Throws InconsistentLasso when the lasso does not start at the moment's
/// last state or is not δ-consistent.
SxIndex make_index(const Cgs& g, Moment m, LassoHistory h);
/// ⟨λ_w, h⟩.
SxIndex root_index(const Cgs& g, LassoHistory h);

struct SxOptions {
  /// Strategy guard for each strategic subformula.
  std::uint64_t max_strategies = std::uint64_t{1} << 20;
};

/// Evaluator bound to one structure. Strategic and moment-determined
/// subformulas are cached by node identity, so formulas must outlive it.
/// Not shareable between threads.
class SxEvaluator {
 public:
  explicit SxEvaluator(const Cgs& g, const SxOptions& opts = {});
  ~SxEvaluator();
  SxEvaluator(const SxEvaluator&) = delete;
  SxEvaluator& operator=(const SxEvaluator&) = delete;

  /// Same contract as eval_sx.
  bool eval(const SxFormula& f, const SxIndex& ix);
  /// States w with ⟨⟨C⟩⟩^s body true at λ_w; `f` must be a Strat node.
  StateSet strategic_states(const SxFormula& f);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

/// Truth at an index. Throws UnsupportedFragment outside the supported
/// fragment and InconsistentLasso on a bad index.
bool eval_sx(const Cgs& g, const SxFormula& f, const SxIndex& ix, const SxOptions& opts = {});

/// ⟨⟨C⟩⟩^s body at λ_w, searching memoryless strategies.
bool holds_strategically(const Cgs& g, StateId w, const Coalition& c, const SxFormula& body,
                         const SxOptions& opts = {});

/// Syntactic test for truth depending on the last state only.
bool check_moment_determined(const SxFormula& f);

/// True iff the formula's value depends on at most the first profile of the
/// history (moment-determined parts and one X step).
bool is_one_step(const SxFormula& f);

/// Throws UnsupportedFragment with the offending subformula.
void require_supported(const SxFormula& f);

}  // namespace atlstit
