// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_KIND_HPP
#define FSMV_KIND_HPP

#include <optional>
#include <vector>

#include "fsmv/fsmlang.hpp"
#include "fsmv/outcome.hpp"
#include "fsmv/sat.hpp"
#include "fsmv/unroll.hpp"

namespace fsmv {

// Completeness rule for the bounded search:
//  Bound2n   - stop Safe once k reaches 2^n, the state-count bound.
//  LoopFree  - stop Safe once no loop-free path of length k leaves the
//              initial states (recurrence-diameter test).
//  None      - report BoundReached at max_k.
enum class CompletenessMode { Bound2n, LoopFree, None };

struct KindConfig {
  std::optional<int> max_k;  // default: 2^n
  CompletenessMode completeness = CompletenessMode::Bound2n;
  // Also run the inductive step each round and stop Safe("induction")
  // when it proves the property. This selects the strengthened formula
  // (P assumed on steps 0..k-1 plus loop-freeness); when false,
  // induction_step() computes the plain variant, path(0,k) & !P@k, and
  // the run loop does not consult it.
  bool strengthened_induction = false;
};

struct KindEvent {
  enum class Query { Base, Bmc, Induction, LoopFreeBound };
  int k;
  Query query;
  bool sat;
};

// Bounded model checking with k-induction: base case, then per-k
// reachability queries that fold I into every unrolling, with the
// selected completeness rule deciding when a run of UNSATs proves
// safety.
class KindEngine {
 public:
  KindEngine(const SymbolicFsm& fsm, SatEngine& sat, KindConfig cfg = {});

  // I@0 & !P@0.
  SatResult check_base(const Formula& prop);

  // I@0 & path(0,k) & !P@k, k >= 1.
  SatResult bmc_step(const Formula& prop, int k);

  // path(0,k) & !P@k, optionally strengthened with P on earlier steps
  // and loop-freeness. Unsat together with a clean base prefix proves P.
  SatResult induction_step(const Formula& prop, int k);

  CheckOutcome run(const Formula& prop);

  const std::vector<KindEvent>& events() const { return events_; }

 private:
  Formula not_prop_at(const Formula& prop, int k);

  const SymbolicFsm& fsm_;
  SatEngine& sat_;
  KindConfig cfg_;
  Unroller unroller_;
  std::vector<KindEvent> events_;
};

}  // namespace fsmv

#endif  // FSMV_KIND_HPP
