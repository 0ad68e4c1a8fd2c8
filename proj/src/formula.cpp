#include "atlstit/formula.hpp"

#include <algorithm>
#include <sstream>

namespace atlstit {

std::string format_coalition(const Coalition& c) {
  std::string out;
  for (const auto& a : c) {
    if (!out.empty()) out += ',';
    out += a;
  }
  return out;
}

// --- ATL construction ------------------------------------------------------

AtlFormula AtlFormula::atom(std::string name) {
  return AtlFormula(std::make_shared<const Node>(Node{AtlOp::Atom, std::move(name), {}, {}}));
}
AtlFormula AtlFormula::negation(AtlFormula sub) {
  return AtlFormula(std::make_shared<const Node>(Node{AtlOp::Not, {}, {}, {std::move(sub)}}));
}
AtlFormula AtlFormula::conjunction(AtlFormula lhs, AtlFormula rhs) {
  return AtlFormula(
      std::make_shared<const Node>(Node{AtlOp::And, {}, {}, {std::move(lhs), std::move(rhs)}}));
}
AtlFormula AtlFormula::coal_next(Coalition c, AtlFormula sub) {
  return AtlFormula(
      std::make_shared<const Node>(Node{AtlOp::CoalX, {}, std::move(c), {std::move(sub)}}));
}
AtlFormula AtlFormula::coal_globally(Coalition c, AtlFormula sub) {
  return AtlFormula(
      std::make_shared<const Node>(Node{AtlOp::CoalG, {}, std::move(c), {std::move(sub)}}));
}
AtlFormula AtlFormula::coal_until(Coalition c, AtlFormula lhs, AtlFormula rhs) {
  return AtlFormula(std::make_shared<const Node>(
      Node{AtlOp::CoalU, {}, std::move(c), {std::move(lhs), std::move(rhs)}}));
}

std::size_t AtlFormula::size() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.size();
  return n;
}

std::size_t AtlFormula::depth() const {
  std::size_t d = 0;
  for (const auto& k : node_->kids) d = std::max(d, k.depth() + 1);
  return d;
}

bool AtlFormula::operator==(const AtlFormula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.op != b.op || a.name != b.name || a.coalition != b.coalition) return false;
  return a.kids == b.kids;
}

// --- SX construction -------------------------------------------------------

SxFormula SxFormula::atom(std::string name) {
  return SxFormula(std::make_shared<const Node>(Node{SxOp::Atom, std::move(name), {}, {}}));
}
SxFormula SxFormula::negation(SxFormula sub) {
  return SxFormula(std::make_shared<const Node>(Node{SxOp::Not, {}, {}, {std::move(sub)}}));
}
SxFormula SxFormula::conjunction(SxFormula lhs, SxFormula rhs) {
  return SxFormula(
      std::make_shared<const Node>(Node{SxOp::And, {}, {}, {std::move(lhs), std::move(rhs)}}));
}
SxFormula SxFormula::next(SxFormula sub) {
  return SxFormula(std::make_shared<const Node>(Node{SxOp::Next, {}, {}, {std::move(sub)}}));
}
SxFormula SxFormula::globally(SxFormula sub) {
  return SxFormula(std::make_shared<const Node>(Node{SxOp::Globally, {}, {}, {std::move(sub)}}));
}
SxFormula SxFormula::until(SxFormula lhs, SxFormula rhs) {
  return SxFormula(
      std::make_shared<const Node>(Node{SxOp::Until, {}, {}, {std::move(lhs), std::move(rhs)}}));
}
SxFormula SxFormula::box(SxFormula sub) {
  return SxFormula(std::make_shared<const Node>(Node{SxOp::Box, {}, {}, {std::move(sub)}}));
}
SxFormula SxFormula::stit(Coalition c, SxFormula sub) {
  return SxFormula(
      std::make_shared<const Node>(Node{SxOp::Stit, {}, std::move(c), {std::move(sub)}}));
}
SxFormula SxFormula::strat(Coalition c, SxFormula sub) {
  return SxFormula(
      std::make_shared<const Node>(Node{SxOp::Strat, {}, std::move(c), {std::move(sub)}}));
}

std::size_t SxFormula::size() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.size();
  return n;
}

bool SxFormula::operator==(const SxFormula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.op != b.op || a.name != b.name || a.coalition != b.coalition) return false;
  return a.kids == b.kids;
}

bool match_implication(const AtlFormula& f, AtlFormula* antecedent, AtlFormula* consequent) {
  if (f.op() != AtlOp::Not) return false;
  const AtlFormula& body = f.sub();
  if (body.op() != AtlOp::And || body.rhs().op() != AtlOp::Not) return false;
  if (antecedent) *antecedent = body.lhs();
  if (consequent) *consequent = body.rhs().sub();
  return true;
}

// --- printing --------------------------------------------------------------
//
// Binary forms and negation carry their own parentheses. Operands of other
// operators are parenthesised unless they are atoms or self-parenthesised.
// The body of <<C>>^s is printed bare so that "<<C>>^s X phi" reads as one
// construct.

namespace {

bool self_delimited(AtlOp op) {
  return op == AtlOp::Atom || op == AtlOp::Not || op == AtlOp::And;
}
bool self_delimited(SxOp op) {
  return op == SxOp::Atom || op == SxOp::Not || op == SxOp::And || op == SxOp::Until;
}

void print_atl(const AtlFormula& f, std::string& out);

void print_atl_operand(const AtlFormula& f, std::string& out) {
  if (self_delimited(f.op())) {
    print_atl(f, out);
  } else {
    out += '(';
    print_atl(f, out);
    out += ')';
  }
}

void print_atl(const AtlFormula& f, std::string& out) {
  switch (f.op()) {
    case AtlOp::Atom:
      out += f.name();
      return;
    case AtlOp::Not:
      out += "(! ";
      print_atl_operand(f.sub(), out);
      out += ')';
      return;
    case AtlOp::And:
      out += '(';
      print_atl_operand(f.lhs(), out);
      out += " & ";
      print_atl_operand(f.rhs(), out);
      out += ')';
      return;
    case AtlOp::CoalX:
    case AtlOp::CoalG:
      out += "<<" + format_coalition(f.coalition()) + ">> ";
      out += f.op() == AtlOp::CoalX ? "X " : "G ";
      print_atl_operand(f.sub(), out);
      return;
    case AtlOp::CoalU:
      out += "<<" + format_coalition(f.coalition()) + ">> (";
      print_atl_operand(f.lhs(), out);
      out += " U ";
      print_atl_operand(f.rhs(), out);
      out += ')';
      return;
  }
}

void print_sx(const SxFormula& f, std::string& out);

void print_sx_operand(const SxFormula& f, std::string& out) {
  if (self_delimited(f.op())) {
    print_sx(f, out);
  } else {
    out += '(';
    print_sx(f, out);
    out += ')';
  }
}

void print_sx(const SxFormula& f, std::string& out) {
  switch (f.op()) {
    case SxOp::Atom:
      out += f.name();
      return;
    case SxOp::Not:
      out += "(! ";
      print_sx_operand(f.sub(), out);
      out += ')';
      return;
    case SxOp::And:
      out += '(';
      print_sx_operand(f.lhs(), out);
      out += " & ";
      print_sx_operand(f.rhs(), out);
      out += ')';
      return;
    case SxOp::Next:
      out += "X ";
      print_sx_operand(f.sub(), out);
      return;
    case SxOp::Globally:
      out += "G ";
      print_sx_operand(f.sub(), out);
      return;
    case SxOp::Until:
      out += '(';
      print_sx_operand(f.lhs(), out);
      out += " U ";
      print_sx_operand(f.rhs(), out);
      out += ')';
      return;
    case SxOp::Box:
      out += "[] ";
      print_sx_operand(f.sub(), out);
      return;
    case SxOp::Stit:
      // "[ ]" keeps the empty coalition distinct from the box token.
      out += f.coalition().empty() ? "[ ] " : "[" + format_coalition(f.coalition()) + "] ";
      print_sx_operand(f.sub(), out);
      return;
    case SxOp::Strat:
      out += "<<" + format_coalition(f.coalition()) + ">>^s ";
      print_sx(f.sub(), out);
      return;
  }
}

}  // namespace

std::string print_formula(const AtlFormula& f) {
  std::string out;
  print_atl(f, out);
  return out;
}

std::string print_formula(const SxFormula& f) {
  std::string out;
  print_sx(f, out);
  return out;
}

// --- translation -----------------------------------------------------------

SxFormula translate(const AtlFormula& f) {
  switch (f.op()) {
    case AtlOp::Atom:
      return SxFormula::box(SxFormula::atom(f.name()));
    case AtlOp::Not:
      return SxFormula::negation(translate(f.sub()));
    case AtlOp::And:
      return SxFormula::conjunction(translate(f.lhs()), translate(f.rhs()));
    case AtlOp::CoalX:
      return SxFormula::strat(f.coalition(), SxFormula::next(translate(f.sub())));
    case AtlOp::CoalG:
      return SxFormula::strat(f.coalition(), SxFormula::globally(translate(f.sub())));
    case AtlOp::CoalU:
      return SxFormula::strat(f.coalition(),
                              SxFormula::until(translate(f.lhs()), translate(f.rhs())));
  }
  throw std::logic_error("translate: unreachable");
}

// --- substitution ----------------------------------------------------------

AtlFormula substitute(const AtlFormula& f, const AtlSubstitution& sigma) {
  if (sigma.empty()) return f;
  switch (f.op()) {
    case AtlOp::Atom: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case AtlOp::Not:
      return AtlFormula::negation(substitute(f.sub(), sigma));
    case AtlOp::And:
      return AtlFormula::conjunction(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case AtlOp::CoalX:
      return AtlFormula::coal_next(f.coalition(), substitute(f.sub(), sigma));
    case AtlOp::CoalG:
      return AtlFormula::coal_globally(f.coalition(), substitute(f.sub(), sigma));
    case AtlOp::CoalU:
      return AtlFormula::coal_until(f.coalition(), substitute(f.lhs(), sigma),
                                    substitute(f.rhs(), sigma));
  }
  throw std::logic_error("substitute: unreachable");
}

SxFormula substitute(const SxFormula& f, const SxSubstitution& sigma) {
  if (sigma.empty()) return f;
  switch (f.op()) {
    case SxOp::Atom: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case SxOp::Not:
      return SxFormula::negation(substitute(f.sub(), sigma));
    case SxOp::And:
      return SxFormula::conjunction(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case SxOp::Next:
      return SxFormula::next(substitute(f.sub(), sigma));
    case SxOp::Globally:
      return SxFormula::globally(substitute(f.sub(), sigma));
    case SxOp::Until:
      return SxFormula::until(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case SxOp::Box:
      return SxFormula::box(substitute(f.sub(), sigma));
    case SxOp::Stit:
      return SxFormula::stit(f.coalition(), substitute(f.sub(), sigma));
    case SxOp::Strat:
      return SxFormula::strat(f.coalition(), substitute(f.sub(), sigma));
  }
  throw std::logic_error("substitute: unreachable");
}

namespace {
void collect_atoms(const AtlFormula& f, std::set<std::string>& out) {
  if (f.op() == AtlOp::Atom) {
    out.insert(f.name());
    return;
  }
  collect_atoms(f.lhs(), out);
  if (f.op() == AtlOp::And || f.op() == AtlOp::CoalU) collect_atoms(f.rhs(), out);
}

void collect_agents(const AtlFormula& f, std::set<std::string>& out) {
  if (f.op() == AtlOp::Atom) return;
  out.insert(f.coalition().begin(), f.coalition().end());
  collect_agents(f.lhs(), out);
  if (f.op() == AtlOp::And || f.op() == AtlOp::CoalU) collect_agents(f.rhs(), out);
}

void collect_agents(const SxFormula& f, std::set<std::string>& out) {
  if (f.op() == SxOp::Atom) return;
  out.insert(f.coalition().begin(), f.coalition().end());
  collect_agents(f.lhs(), out);
  if (f.op() == SxOp::And || f.op() == SxOp::Until) collect_agents(f.rhs(), out);
}
}  // namespace

std::set<std::string> atoms_of(const AtlFormula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<std::string> agents_of(const AtlFormula& f) {
  std::set<std::string> out;
  collect_agents(f, out);
  return out;
}

std::set<std::string> agents_of(const SxFormula& f) {
  std::set<std::string> out;
  collect_agents(f, out);
  return out;
}

// --- random formulas -------------------------------------------------------

namespace {

Coalition random_coalition(std::mt19937_64& rng, const std::vector<std::string>& agents) {
  Coalition c;
  for (const auto& a : agents)
    if (rng() & 1u) c.insert(a);
  return c;
}

AtlFormula random_atl(std::mt19937_64& rng, const FormulaGenOptions& opts, std::size_t budget) {
  auto pick_atom = [&] {
    return AtlFormula::atom(opts.atoms[rng() % opts.atoms.size()]);
  };
  if (budget == 0) return pick_atom();
  // Bias towards the coalition operators; they are what the engines disagree on
  // when something is wrong.
  switch (rng() % 8) {
    case 0:
      return pick_atom();
    case 1:
      return AtlFormula::negation(random_atl(rng, opts, budget - 1));
    case 2: {
      auto l = random_atl(rng, opts, budget - 1);
      auto r = random_atl(rng, opts, rng() % budget);
      return AtlFormula::conjunction(std::move(l), std::move(r));
    }
    case 3:
    case 4:
      return AtlFormula::coal_next(random_coalition(rng, opts.agents),
                                   random_atl(rng, opts, budget - 1));
    case 5:
      return AtlFormula::coal_globally(random_coalition(rng, opts.agents),
                                       random_atl(rng, opts, budget - 1));
    default: {
      auto c = random_coalition(rng, opts.agents);
      auto l = random_atl(rng, opts, rng() % budget);
      auto r = random_atl(rng, opts, budget - 1);
      return AtlFormula::coal_until(std::move(c), std::move(l), std::move(r));
    }
  }
}

}  // namespace

AtlFormula random_atl_formula(std::mt19937_64& rng, const FormulaGenOptions& opts) {
  if (opts.atoms.empty()) throw std::invalid_argument("random_atl_formula: no atoms");
  return random_atl(rng, opts, opts.max_depth);
}

}  // namespace atlstit
