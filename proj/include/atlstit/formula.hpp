#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlstit {

/// A coalition is a finite set of agent names. Ordering is lexicographic,
/// which makes printing canonical.
using Coalition = std::set<std::string>;

std::string format_coalition(const Coalition& c);

/// Reserved letter used to encode true/false; see make_top().
inline constexpr std::string_view kReservedAtom = "p0";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// ---------------------------------------------------------------------------
// ATL
// ---------------------------------------------------------------------------

enum class AtlOp { Atom, Not, And, CoalX, CoalG, CoalU };

/// Immutable ATL formula. Copies share structure.
class AtlFormula {
 public:
  static AtlFormula atom(std::string name);
  static AtlFormula negation(AtlFormula sub);
  static AtlFormula conjunction(AtlFormula lhs, AtlFormula rhs);
  static AtlFormula coal_next(Coalition c, AtlFormula sub);
  static AtlFormula coal_globally(Coalition c, AtlFormula sub);
  static AtlFormula coal_until(Coalition c, AtlFormula lhs, AtlFormula rhs);

  AtlOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Coalition& coalition() const { return node_->coalition; }
  /// Operand of unary nodes, left operand of binary ones.
  const AtlFormula& lhs() const { return node_->kids.at(0); }
  const AtlFormula& rhs() const { return node_->kids.at(1); }
  const AtlFormula& sub() const { return lhs(); }

  std::size_t size() const;
  std::size_t depth() const;
  bool operator==(const AtlFormula& other) const;
  bool operator!=(const AtlFormula& other) const { return !(*this == other); }
  /// Node identity, usable as a cache key while the formula is alive.
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    AtlOp op;
    std::string name;
    Coalition coalition;
    std::vector<AtlFormula> kids;
  };
  explicit AtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// SX (stit with next/until and strategic ability)
// ---------------------------------------------------------------------------

enum class SxOp { Atom, Not, And, Next, Globally, Until, Box, Stit, Strat };

class SxFormula {
 public:
  static SxFormula atom(std::string name);
  static SxFormula negation(SxFormula sub);
  static SxFormula conjunction(SxFormula lhs, SxFormula rhs);
  static SxFormula next(SxFormula sub);
  static SxFormula globally(SxFormula sub);
  static SxFormula until(SxFormula lhs, SxFormula rhs);
  static SxFormula box(SxFormula sub);
  static SxFormula stit(Coalition c, SxFormula sub);
  static SxFormula strat(Coalition c, SxFormula sub);

  SxOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Coalition& coalition() const { return node_->coalition; }
  const SxFormula& lhs() const { return node_->kids.at(0); }
  const SxFormula& rhs() const { return node_->kids.at(1); }
  const SxFormula& sub() const { return lhs(); }

  std::size_t size() const;
  bool operator==(const SxFormula& other) const;
  bool operator!=(const SxFormula& other) const { return !(*this == other); }
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    SxOp op;
    std::string name;
    Coalition coalition;
    std::vector<SxFormula> kids;
  };
  explicit SxFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Sugar. Everything reduces to negation, conjunction and the reserved atom.
//   top      = !(p0 & !p0)
//   bottom   = !top
//   a | b    = !(!a & !b)
//   a -> b   = !(a & !b)
//   a <-> b  = (a -> b) & (b -> a)
template <class F> F make_top() {
  return F::negation(F::conjunction(F::atom(std::string(kReservedAtom)),
                                    F::negation(F::atom(std::string(kReservedAtom)))));
}
template <class F> F make_bottom() { return F::negation(make_top<F>()); }
template <class F> F make_or(F a, F b) {
  return F::negation(F::conjunction(F::negation(std::move(a)), F::negation(std::move(b))));
}
template <class F> F make_implies(F a, F b) {
  return F::negation(F::conjunction(std::move(a), F::negation(std::move(b))));
}
template <class F> F make_iff(F a, F b) {
  return F::conjunction(make_implies(a, b), make_implies(b, a));
}

/// Recognises the desugared shape of an implication. On success writes the
/// antecedent and consequent.
bool match_implication(const AtlFormula& f, AtlFormula* antecedent, AtlFormula* consequent);

AtlFormula parse_atl(std::string_view text);
SxFormula parse_sx(std::string_view text);

std::string print_formula(const AtlFormula& f);
std::string print_formula(const SxFormula& f);

/// Tr: ATL -> SX.
SxFormula translate(const AtlFormula& f);

using AtlSubstitution = std::map<std::string, AtlFormula>;
using SxSubstitution = std::map<std::string, SxFormula>;

/// Simultaneous uniform substitution of atoms.
AtlFormula substitute(const AtlFormula& f, const AtlSubstitution& sigma);
SxFormula substitute(const SxFormula& f, const SxSubstitution& sigma);

std::set<std::string> atoms_of(const AtlFormula& f);
std::set<std::string> agents_of(const AtlFormula& f);
std::set<std::string> agents_of(const SxFormula& f);

// ---------------------------------------------------------------------------
// Axiom schemata
// ---------------------------------------------------------------------------

enum class SchemaName { Bot, Top, GC, S, FP_G, GFP_G, FP_U, LFP_U };

inline constexpr SchemaName kAllSchemata[] = {SchemaName::Bot,  SchemaName::Top,
                                              SchemaName::GC,   SchemaName::S,
                                              SchemaName::FP_G, SchemaName::GFP_G,
                                              SchemaName::FP_U, SchemaName::LFP_U};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string schema_to_string(SchemaName s);
/// Accepts the names produced by schema_to_string plus "⊥"/"⊤".
SchemaName schema_from_string(std::string_view s);

/// Coalition metavariable bindings. Keys: "A", "B", and "Ags" (the latter
/// only for GC).
using CoalitionBindings = std::map<std::string, Coalition>;

/// Binds the coalition metavariables of the schema template, then applies
/// sigma to its letters p, q, r.
AtlFormula instantiate_schema(SchemaName name, const CoalitionBindings& coalitions,
                              const AtlSubstitution& sigma = {});

// ---------------------------------------------------------------------------
// Random formulas (test corpora, sweeps)
// ---------------------------------------------------------------------------

struct FormulaGenOptions {
  std::size_t max_depth = 3;
  std::vector<std::string> atoms{"p", "q"};
  std::vector<std::string> agents{"a", "b"};
};

/// Depth counts operator nesting; atoms have depth 0.
AtlFormula random_atl_formula(std::mt19937_64& rng, const FormulaGenOptions& opts);

}  // namespace atlstit
