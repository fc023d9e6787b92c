// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/itp.hpp"

#include <algorithm>
#include <chrono>

#include "fsmv/errors.hpp"

namespace fsmv {

Formula eliminate(const Formula& f, const std::vector<VarId>& order) {
  std::set<VarId> fv = vars(f);
  Formula cur = f;
  for (const VarId& v : order) {
    if (!fv.count(v))
      throw ContractError("eliminate: variable not in formula: " + v.name());
    std::map<VarId, Formula> to_true{{v, mk_true()}};
    std::map<VarId, Formula> to_false{{v, mk_false()}};
    cur = simplify(mk_or({substitute(cur, to_true), substitute(cur, to_false)}));
  }
  return cur;
}

Formula eliminate(const Formula& f, const std::set<VarId>& elim) {
  return eliminate(f, std::vector<VarId>(elim.begin(), elim.end()));
}

Formula rename_to_state_vars(const Formula& itp, const SymbolicFsm& fsm) {
  std::map<VarId, Formula> m;
  for (const VarId& v : vars(itp)) {
    auto tv = TimedVar::parse(v.name());
    if (!tv || tv->step != 1 || tv->bit >= fsm.n)
      throw ForeignVariableError(
          "rename_to_state_vars: not a step-1 variable: " + v.name());
    m.emplace(v, mk_var(fsm.x[tv->bit]));
  }
  return substitute(itp, m);
}

ItpEngine::ItpEngine(const SymbolicFsm& fsm, SatEngine& sat, ItpConfig cfg)
    : fsm_(fsm), sat_(sat), cfg_(cfg), unroller_(fsm) {
  if (cfg_.k0 < 1) throw ContractError("k0 must be at least 1");
  if (cfg_.increment && *cfg_.increment < 1)
    throw ContractError("k increment must be at least 1");
}

AbPair ItpEngine::build_ab(const Formula& q, const Formula& prop, int k) {
  if (k < 1) throw ContractError("build_ab: k must be at least 1");
  Formula a = mk_and({unroller_.at_step(q, 0), unroller_.trans_at(0)});
  std::vector<Formula> bad;
  bad.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i)
    bad.push_back(mk_not(unroller_.at_step(prop, i)));
  std::vector<Formula> b_parts;
  if (k > 1) b_parts.push_back(unroller_.path(1, k));
  b_parts.push_back(mk_or(std::move(bad)));
  return AbPair{std::move(a), mk_and(std::move(b_parts)), k};
}

Formula ItpEngine::compute_interpolant(const AbPair& ab) {
  std::set<VarId> va = vars(ab.a);
  std::set<VarId> vb = vars(ab.b);

  // Eliminate vars(A) \ vars(B), timed variables in (step, bit) order so
  // the step-0 block goes first, ascending bit index.
  std::vector<VarId> elim;
  for (const VarId& v : va)
    if (!vb.count(v)) elim.push_back(v);
  auto rank = [](const VarId& v) {
    auto tv = TimedVar::parse(v.name());
    if (tv) return std::make_tuple(0, tv->step, tv->bit, std::string());
    return std::make_tuple(1, 0, 0, v.name());
  };
  std::sort(elim.begin(), elim.end(),
            [&](const VarId& a, const VarId& b) { return rank(a) < rank(b); });

  Formula itp = eliminate(ab.a, elim);

  if (cfg_.validate_interpolants) {
    if (!sat_.implies(ab.a, itp))
      throw ContractError("interpolant violates A => ITP");
    if (sat_.check(mk_and({itp, ab.b})).sat())
      throw ContractError("interpolant violates ITP & B unsat");
    std::set<VarId> vi = vars(itp);
    for (const VarId& v : vi)
      if (!va.count(v) || !vb.count(v))
        throw ContractError("interpolant mentions non-shared variable " + v.name());
  }
  return itp;
}

CheckOutcome ItpEngine::run(const Formula& prop) {
  auto started = std::chrono::steady_clock::now();
  events_.clear();
  long queries_before = sat_.queries();

  CheckOutcome out;
  auto finish = [&](CheckOutcome o) {
    o.stats.sat_queries = sat_.queries() - queries_before;
    o.stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    return o;
  };

  // Initial states must satisfy the property before any unrolling.
  SatResult init_check = sat_.check(
      mk_and({unroller_.at_step(fsm_.init, 0), mk_not(unroller_.at_step(prop, 0))}));
  events_.push_back({0, 0, ItpEvent::Query::Init, init_check.sat(),
                     std::nullopt,
                     init_check.sat() ? std::optional<std::string>("unsafe")
                                      : std::nullopt});
  if (init_check.sat()) {
    out.verdict = Verdict::Unsafe;
    out.k = 0;
    out.trace = unroller_.decode_trace(*init_check.model, 0);
    return finish(std::move(out));
  }

  const int increment = cfg_.increment ? *cfg_.increment : fsm_.n;
  int k = cfg_.k0;
  int restarts = 0;

  for (;;) {
    Formula q = fsm_.init;
    bool joined = false;  // has any interpolant been disjoined at this bound
    int iteration = 0;
    for (;;) {
      AbPair ab = build_ab(q, prop, k);
      SatResult hit = sat_.check(mk_and({ab.a, ab.b}));
      if (hit.sat()) {
        if (!joined) {
          // Q is still exactly I: the model is a genuine counterexample.
          events_.push_back({k, iteration, ItpEvent::Query::AbCheck, true,
                             std::nullopt, std::string("unsafe")});
          Trace full = unroller_.decode_trace(*hit.model, k);
          int violating = k;
          for (int i = 1; i <= k; ++i) {
            if (!evaluate(prop, fsm_.state_assignment(full[i].bits))) {
              violating = i;
              break;
            }
          }
          full.resize(static_cast<std::size_t>(violating) + 1);
          out.verdict = Verdict::Unsafe;
          out.k = violating;
          out.trace = std::move(full);
          return finish(std::move(out));
        }
        events_.push_back({k, iteration, ItpEvent::Query::AbCheck, true,
                           std::nullopt, std::string("restart")});
        if (++restarts > cfg_.max_restarts) {
          out.verdict = Verdict::BoundReached;
          out.k = k;
          out.stats.restarts = restarts - 1;
          out.stats.interpolants = static_cast<int>(count_interpolants());
          return finish(std::move(out));
        }
        k += increment;
        break;  // restart with Q reset to I
      }

      Formula itp = compute_interpolant(ab);
      events_.push_back({k, iteration, ItpEvent::Query::AbCheck, false,
                         render(itp), std::nullopt});
      Formula renamed = rename_to_state_vars(itp, fsm_);

      bool fix = sat_.implies(renamed, q);
      events_.push_back({k, iteration, ItpEvent::Query::Fixpoint, !fix,
                         std::nullopt,
                         fix ? std::optional<std::string>("safe") : std::nullopt});
      if (fix) {
        out.verdict = Verdict::Safe;
        out.method = "interpolant-fixpoint";
        out.k = k;
        out.stats.restarts = restarts;
        out.stats.interpolants = static_cast<int>(count_interpolants());
        return finish(std::move(out));
      }
      q = mk_or({std::move(q), std::move(renamed)});
      joined = true;
      ++iteration;
    }
  }
}

}  // namespace fsmv
