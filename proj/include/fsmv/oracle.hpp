// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_ORACLE_HPP
#define FSMV_ORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "fsmv/fsmlang.hpp"
#include "fsmv/outcome.hpp"

namespace fsmv {
namespace oracle {

// Explicit-state ground truth. Works on the declared edge list, never on
// T, so it cross-checks the symbolic compilation instead of trusting it.
struct ReachSet {
  std::vector<std::string> order;              // BFS visit order, bit-strings
  std::map<std::string, int> depth;            // shortest distance from an init
  std::map<std::string, std::string> parent;   // BFS tree, absent for inits

  bool contains(const std::string& bits) const { return depth.count(bits) != 0; }
  std::size_t size() const { return depth.size(); }
};

ReachSet reachable(const SymbolicFsm& fsm);

// BFS check: Unsafe with a shortest counterexample if any reachable
// state falsifies prop, Safe("explicit") otherwise.
CheckOutcome check_explicit(const SymbolicFsm& fsm, const Formula& prop);

// Maximum BFS depth over reachable states (the reachability diameter).
int diameter(const SymbolicFsm& fsm);

}  // namespace oracle
}  // namespace fsmv

#endif  // FSMV_ORACLE_HPP
