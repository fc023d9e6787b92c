// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/oracle.hpp"

#include <algorithm>
#include <deque>

namespace fsmv {
namespace oracle {

ReachSet reachable(const SymbolicFsm& fsm) {
  std::map<std::string, std::vector<std::string>> succs;
  for (const auto& [from, to] : fsm.edges)
    succs[fsm.bits_of.at(from)].push_back(fsm.bits_of.at(to));

  ReachSet rs;
  std::deque<std::string> queue;
  for (const auto& name : fsm.inits) {
    const std::string& bits = fsm.bits_of.at(name);
    if (rs.depth.emplace(bits, 0).second) {
      rs.order.push_back(bits);
      queue.push_back(bits);
    }
  }
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    auto it = succs.find(cur);
    if (it == succs.end()) continue;
    for (const std::string& next : it->second) {
      if (rs.depth.emplace(next, rs.depth.at(cur) + 1).second) {
        rs.parent.emplace(next, cur);
        rs.order.push_back(next);
        queue.push_back(next);
      }
    }
  }
  return rs;
}

CheckOutcome check_explicit(const SymbolicFsm& fsm, const Formula& prop) {
  ReachSet rs = reachable(fsm);
  for (const std::string& bits : rs.order) {
    if (!evaluate(prop, fsm.state_assignment(bits))) {
      Trace trace;
      std::string cur = bits;
      for (;;) {
        trace.push_back(TraceStep{cur, fsm.name_of_bits(cur)});
        auto it = rs.parent.find(cur);
        if (it == rs.parent.end()) break;
        cur = it->second;
      }
      std::reverse(trace.begin(), trace.end());
      CheckOutcome out;
      out.verdict = Verdict::Unsafe;
      out.k = rs.depth.at(bits);
      out.trace = std::move(trace);
      return out;
    }
  }
  CheckOutcome out;
  out.verdict = Verdict::Safe;
  out.method = "explicit";
  out.k = rs.depth.empty()
              ? 0
              : std::max_element(rs.depth.begin(), rs.depth.end(),
                                 [](const auto& a, const auto& b) {
                                   return a.second < b.second;
                                 })
                    ->second;
  return out;
}

int diameter(const SymbolicFsm& fsm) {
  ReachSet rs = reachable(fsm);
  int d = 0;
  for (const auto& [bits, depth] : rs.depth) d = std::max(d, depth);
  return d;
}

}  // namespace oracle
}  // namespace fsmv
