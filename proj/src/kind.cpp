// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/kind.hpp"

#include <chrono>

#include "fsmv/errors.hpp"

namespace fsmv {

KindEngine::KindEngine(const SymbolicFsm& fsm, SatEngine& sat, KindConfig cfg)
    : fsm_(fsm), sat_(sat), cfg_(cfg), unroller_(fsm) {
  if (cfg_.max_k && *cfg_.max_k < 1)
    throw ContractError("max_k must be at least 1");
}

Formula KindEngine::not_prop_at(const Formula& prop, int k) {
  return mk_not(unroller_.at_step(prop, k));
}

SatResult KindEngine::check_base(const Formula& prop) {
  return sat_.check(
      mk_and({unroller_.at_step(fsm_.init, 0), not_prop_at(prop, 0)}));
}

SatResult KindEngine::bmc_step(const Formula& prop, int k) {
  if (k < 1) throw ContractError("bmc_step: k must be at least 1");
  return sat_.check(mk_and({unroller_.at_step(fsm_.init, 0),
                            unroller_.path(0, k), not_prop_at(prop, k)}));
}

SatResult KindEngine::induction_step(const Formula& prop, int k) {
  if (k < 1) throw ContractError("induction_step: k must be at least 1");
  std::vector<Formula> parts{unroller_.path(0, k)};
  if (cfg_.strengthened_induction) {
    for (int i = 0; i < k; ++i) parts.push_back(unroller_.at_step(prop, i));
    parts.push_back(unroller_.loop_free(0, k));
  }
  parts.push_back(not_prop_at(prop, k));
  return sat_.check(mk_and(std::move(parts)));
}

CheckOutcome KindEngine::run(const Formula& prop) {
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

  SatResult base = check_base(prop);
  events_.push_back({0, KindEvent::Query::Base, base.sat()});
  if (base.sat()) {
    out.verdict = Verdict::Unsafe;
    out.k = 0;
    out.trace = unroller_.decode_trace(*base.model, 0);
    return finish(std::move(out));
  }

  const long state_bound = 1L << fsm_.n;
  const long max_k = cfg_.max_k ? *cfg_.max_k : state_bound;

  for (int k = 1;; ++k) {
    if (cfg_.completeness == CompletenessMode::Bound2n && k >= state_bound) {
      out.verdict = Verdict::Safe;
      out.method = "base-exhaustive";
      out.k = k;
      return finish(std::move(out));
    }
    if (k > max_k) {
      out.verdict = Verdict::BoundReached;
      out.k = static_cast<int>(max_k);
      return finish(std::move(out));
    }

    SatResult step = bmc_step(prop, k);
    events_.push_back({k, KindEvent::Query::Bmc, step.sat()});
    if (step.sat()) {
      out.verdict = Verdict::Unsafe;
      out.k = k;
      out.trace = unroller_.decode_trace(*step.model, k);
      return finish(std::move(out));
    }

    if (cfg_.strengthened_induction) {
      SatResult ind = induction_step(prop, k);
      events_.push_back({k, KindEvent::Query::Induction, ind.sat()});
      if (!ind.sat()) {
        out.verdict = Verdict::Safe;
        out.method = "induction";
        out.k = k;
        return finish(std::move(out));
      }
    }

    if (cfg_.completeness == CompletenessMode::LoopFree) {
      SatResult lf = sat_.check(mk_and({unroller_.at_step(fsm_.init, 0),
                                        unroller_.path(0, k),
                                        unroller_.loop_free(0, k)}));
      events_.push_back({k, KindEvent::Query::LoopFreeBound, lf.sat()});
      if (!lf.sat()) {
        out.verdict = Verdict::Safe;
        out.method = "loop-free";
        out.k = k;
        return finish(std::move(out));
      }
    }
  }
}

}  // namespace fsmv
