// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_SAT_HPP
#define FSMV_SAT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsmv/formula.hpp"

namespace fsmv {

// Literal over dense 1-based variable indices assigned by the CNF
// converter.
class Literal {
 public:
  Literal(int var, bool positive) : var_(var), positive_(positive) {}

  int var() const { return var_; }
  bool positive() const { return positive_; }
  int dimacs() const { return positive_ ? var_ : -var_; }
  Literal negated() const { return Literal(var_, !positive_); }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.var_ == b.var_ && a.positive_ == b.positive_;
  }

 private:
  int var_;
  bool positive_;
};

using Clause = std::vector<Literal>;

// Tseitin encoding of a Formula. Equisatisfiable, never equivalent:
// auxiliary variables name internal nodes. No clause is ever empty; a
// root-level contradiction is flagged through trivially_false instead.
struct CnfFormula {
  std::vector<Clause> clauses;
  std::map<VarId, int> var_map;  // original variables, first-occurrence order
  int aux_count = 0;
  bool trivially_false = false;

  int var_count() const { return static_cast<int>(var_map.size()) + aux_count; }
};

CnfFormula to_cnf(const Formula& f);

// Standard DIMACS rendering, header "p cnf <vars> <clauses>".
std::string to_dimacs(const CnfFormula& cnf);

// Sat carries a model over the original variables of the query formula;
// variables the search left unconstrained default to false.
struct SatResult {
  std::optional<Assignment> model;

  bool sat() const { return model.has_value(); }
  static SatResult unsat() { return SatResult{std::nullopt}; }
};

struct SatConfig {
  // Conflict budget per query; exceeding it throws ResourceLimitError.
  long max_conflicts = 5'000'000;
  // Default decision order is static by first occurrence, which keeps
  // verdicts and models reproducible. The activity heuristic is the
  // usual VSIDS-style alternative; with a fixed seed it is equally
  // deterministic, just not stable across formula reorderings.
  bool activity_heuristic = false;
  unsigned seed = 0;
  // When set, every query is dumped as query_<n>.cnf into this directory.
  std::optional<std::string> dump_dir;
};

// Decision procedure facade. An engine instance is confined to one
// checker run; it counts queries and optionally dumps them.
class SatEngine {
 public:
  explicit SatEngine(SatConfig cfg = {});

  // Unsat iff f has no satisfying assignment.
  SatResult check(const Formula& f);

  // true iff !f is unsatisfiable.
  bool holds(const Formula& f);

  // true iff f & !g is unsatisfiable.
  bool implies(const Formula& f, const Formula& g);

  long queries() const { return queries_; }
  const SatConfig& config() const { return cfg_; }

 private:
  void dump(const CnfFormula& cnf) const;

  SatConfig cfg_;
  long queries_ = 0;
};

}  // namespace fsmv

#endif  // FSMV_SAT_HPP
