// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_UNROLL_HPP
#define FSMV_UNROLL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "fsmv/fsmlang.hpp"
#include "fsmv/outcome.hpp"

namespace fsmv {

// Step-indexed copy of a state bit, rendered "v_<step>_<bit>". The
// naming never collides with the x*/y* model variables.
struct TimedVar {
  int step = 0;
  int bit = 0;

  std::string name() const {
    return "v_" + std::to_string(step) + "_" + std::to_string(bit);
  }
  VarId var_id() const { return VarId(name()); }

  static std::optional<TimedVar> parse(const std::string& name);
};

// Instantiates I, T, P and path formulas at explicit time steps for one
// checker run. The timed-variable table is memoized per (step, bit) and
// confined to the run.
class Unroller {
 public:
  explicit Unroller(const SymbolicFsm& fsm) : fsm_(fsm) {}

  const SymbolicFsm& fsm() const { return fsm_; }

  VarId timed(int step, int bit);

  // f over X with every x_i replaced by v_k_i. Throws
  // ForeignVariableError if f mentions anything outside X.
  Formula at_step(const Formula& f, int k);

  // T with X at step k and Y at step k+1.
  Formula trans_at(int k);

  // Conjunction of trans_at(i) for i in [from, to); ConstTrue when empty.
  Formula path(int from, int to);

  // Pairwise state distinctness over steps [from, to]: for each pair at
  // least one bit differs.
  Formula loop_free(int from, int to);

  // Reads v_i_* for 0 <= i <= k out of a model; steps whose bit pattern
  // is declared also carry the state name.
  Trace decode_trace(const Assignment& model, int k) const;

 private:
  const SymbolicFsm& fsm_;
  std::map<std::pair<int, int>, VarId> table_;
};

}  // namespace fsmv

#endif  // FSMV_UNROLL_HPP
