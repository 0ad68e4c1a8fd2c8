#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlstit/atl_mc.hpp"
#include "atlstit/cgs.hpp"
#include "atlstit/formula.hpp"
#include "atlstit/stit_eval.hpp"

namespace atlstit {

// --- correspondence --------------------------------------------------------

struct LassoVerdict {
  LassoHistory lasso;
  bool value = false;
};

struct CorrespondenceReport {
  StateId state = 0;
  bool atl = false;
  std::vector<LassoVerdict> sx;
  /// All SX verdicts equal each other and the ATL verdict.
  bool agreement = false;
};

/// Compares w ∈ eval_atl(φ) with Tr(φ) at ⟨λ_w, h⟩ for the sampled lassos
/// (sample_lassos with `samples` and `seed`).
CorrespondenceReport correspondence_check(const Cgs& g, const AtlFormula& f, StateId w,
                                          std::size_t samples, std::uint64_t seed,
                                          const SxOptions& opts = {});

// --- semantic sweeps -------------------------------------------------------

struct Instantiation {
  SchemaName schema;
  CoalitionBindings coalitions;
  AtlSubstitution sigma;
  std::string sigma_label;  // for reports, e.g. "p->!q"
};

/// Every schema with σ ∈ {identity, p↦¬q, p↦⟨⟨a⟩⟩Xq} and every binding of
/// its coalition metavariables to subsets of `agents` (disjoint A, B for S;
/// Ags bound to all agents). The third σ uses the first agent.
std::vector<Instantiation> default_instantiations(const std::vector<std::string>& agents);

struct Counterexample {
  std::size_t model = 0;   // index into the model list
  std::string formula;     // ATL concrete syntax
  std::string state;
  std::string lasso;       // empty when the ATL side failed
  std::string detail;
};

struct SweepOptions {
  /// Extra lassos per state for the SX side; 0 checks only the extremes.
  std::size_t lasso_samples = 0;
  std::uint64_t seed = 0;
  bool check_sx = true;
  Exec exec = Exec::Serial;
  SxOptions sx;
};

struct SweepReport {
  std::size_t checked = 0;  // (model, formula, state) triples
  std::vector<Counterexample> counterexamples;
  /// Instantiations refused before evaluation and formulas naming agents
  /// outside a model, with the reason.
  std::vector<std::string> rejected;
  bool clean() const { return counterexamples.empty(); }
};

/// Checks that each formula holds at every state under eval_atl and that its
/// translation holds at the sampled indices ⟨λ_w, h⟩. Models are processed in
/// parallel under Exec::Parallel; the report order is the input order.
SweepReport validity_sweep(const std::vector<Cgs>& models, const std::vector<AtlFormula>& formulas,
                           const SweepOptions& opts = {});

SweepReport axiom_sweep(const std::vector<Cgs>& models, const std::vector<Instantiation>& insts,
                        const SweepOptions& opts = {});

// --- proofs ----------------------------------------------------------------

struct Justification {
  enum class Kind { Axiom, MP, Subst, XMono, GNec };
  Kind kind = Kind::Axiom;
  SchemaName schema = SchemaName::Top;  // Axiom
  CoalitionBindings coalitions;         // Axiom
  AtlSubstitution sigma;                // Axiom, Subst
  std::size_t premise = 0;              // 1-based: MP antecedent line, Subst/XMono/GNec source
  std::size_t implication = 0;          // MP
  Coalition coalition;                  // XMono
};

struct ProofLine {
  AtlFormula formula;
  Justification by;
};

struct ProofScript {
  std::vector<ProofLine> lines;
};

class ProofFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON array of {"formula": ..., "by": {"kind": ..., ...}}. Throws
/// ProofFormatError on malformed input.
ProofScript parse_proof_script(std::string_view text);
ProofScript load_proof_file(const std::string& path);

struct ProofVerdict {
  bool accepted = true;
  std::size_t line = 0;  // 1-based line of the first rejection
  std::string reason;
  std::size_t lines = 0;
};

ProofVerdict check_proof(const ProofScript& s);

/// Validity sweep over the proved formulas. The script is assumed to have
/// been accepted by check_proof.
SweepReport soundness_spotcheck(const ProofScript& s, const std::vector<Cgs>& models,
                                const SweepOptions& opts = {});

}  // namespace atlstit
