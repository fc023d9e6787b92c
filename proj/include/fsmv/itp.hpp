// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_ITP_HPP
#define FSMV_ITP_HPP

#include <optional>
#include <string>
#include <vector>

#include "fsmv/fsmlang.hpp"
#include "fsmv/outcome.hpp"
#include "fsmv/sat.hpp"
#include "fsmv/unroll.hpp"

namespace fsmv {

// Interpolation split of the bounded reachability formula at bound k:
// A covers the (over-approximated) initial states and the first
// transition, B the remaining transitions and the property disjunction.
// The two share only step-1 variables.
struct AbPair {
  Formula a;
  Formula b;
  int k = 1;
};

struct ItpConfig {
  int k0 = 1;                        // initial bound
  std::optional<int> increment;      // restart increment; default n
  int max_restarts = 64;             // exceeding this yields BoundReached
  // Re-check the Craig conditions on every computed interpolant
  // (A => ITP, ITP & B unsat, variable containment). Test builds turn
  // this on; violations throw ContractError.
  bool validate_interpolants = false;
};

struct ItpEvent {
  enum class Query { Init, AbCheck, Fixpoint };
  int k;
  int iteration;  // interpolants joined at this bound before the query
  Query query;
  bool sat;
  std::optional<std::string> interpolant;  // rendered, on Unsat AbCheck
  std::optional<std::string> note;         // "restart", "unsafe", "safe", ...
};

// Existential elimination by iterated Shannon expansion, simplifying as
// it goes: the result is the strongest consequence of f over the
// remaining variables. Elimination order follows `order`.
Formula eliminate(const Formula& f, const std::vector<VarId>& order);

// Set overload; eliminates in ascending name order.
Formula eliminate(const Formula& f, const std::set<VarId>& elim);

// v_1_i -> x_i, structurally. Throws ForeignVariableError on anything
// but step-1 timed variables.
Formula rename_to_state_vars(const Formula& itp, const SymbolicFsm& fsm);

// Unbounded model checking via interpolation: repeatedly over-approximate
// the reachable states by interpolants of the bounded reachability
// split, restart with a larger bound on a spurious hit, and stop at a
// fixpoint or a genuine counterexample.
class ItpEngine {
 public:
  ItpEngine(const SymbolicFsm& fsm, SatEngine& sat, ItpConfig cfg = {});

  AbPair build_ab(const Formula& q, const Formula& prop, int k);

  // Craig interpolant of an unsatisfiable pair: eliminate from A every
  // variable B does not share, then simplify.
  Formula compute_interpolant(const AbPair& ab);

  CheckOutcome run(const Formula& prop);

  const std::vector<ItpEvent>& events() const { return events_; }

 private:
  const SymbolicFsm& fsm_;
  SatEngine& sat_;
  ItpConfig cfg_;
  Unroller unroller_;
  std::vector<ItpEvent> events_;
};

}  // namespace fsmv

#endif  // FSMV_ITP_HPP
