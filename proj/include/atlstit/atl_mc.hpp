#pragma once

#include <cstdint>
#include <stdexcept>

#include "atlstit/cgs.hpp"
#include "atlstit/formula.hpp"
#include "atlstit/strategy.hpp"

namespace atlstit {

/// Selects the serial reference kernel or the OpenMP one. Results are
/// identical; only the schedule differs.
enum class Exec { Serial, Parallel };

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Controllable predecessor: states where the coalition has a joint action
/// all of whose outcomes lie in `target`.
StateSet pre(const Cgs& g, const Coalition& c, const StateSet& target, Exec exec = Exec::Serial);

/// Fixpoint model checking. Atoms missing from the valuation denote the
/// empty set. Throws EvalError on coalition members unknown to g.
StateSet eval_atl(const Cgs& g, const AtlFormula& f, Exec exec = Exec::Serial);

struct OracleOptions {
  /// Per coalition subformula.
  std::uint64_t max_strategies = std::uint64_t{1} << 20;
  Exec exec = Exec::Serial;
};

/// Brute force: enumerates every memoryless strategy of each coalition
/// subformula and decides the path objective on the induced graph.
/// Throws InstanceTooLarge past the strategy guard.
StateSet eval_atl_oracle(const Cgs& g, const AtlFormula& f, const OracleOptions& opts = {});

}  // namespace atlstit
