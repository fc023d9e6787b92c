// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_OUTCOME_HPP
#define FSMV_OUTCOME_HPP

#include <optional>
#include <string>
#include <vector>

namespace fsmv {

// One state along a counterexample. The name is present when the
// bit-string is a declared state (it always is for engine-produced
// traces on well-formed models).
struct TraceStep {
  std::string bits;
  std::optional<std::string> state;

  friend bool operator==(const TraceStep& a, const TraceStep& b) {
    return a.bits == b.bits && a.state == b.state;
  }
};

using Trace = std::vector<TraceStep>;

enum class Verdict { Safe, Unsafe, BoundReached };

std::string to_string(Verdict v);

struct CheckStats {
  long sat_queries = 0;
  int interpolants = 0;
  int restarts = 0;
  double wall_time_s = 0.0;
};

// Result of one engine run. Safe outcomes name the terminating rule
// ("base-exhaustive", "loop-free", "induction", "interpolant-fixpoint",
// "explicit"); Unsafe outcomes carry a validated trace.
struct CheckOutcome {
  Verdict verdict = Verdict::BoundReached;
  std::string method;
  int k = 0;
  std::optional<Trace> trace;
  CheckStats stats;

  bool safe() const { return verdict == Verdict::Safe; }
  bool unsafe() const { return verdict == Verdict::Unsafe; }
};

}  // namespace fsmv

#endif  // FSMV_OUTCOME_HPP
