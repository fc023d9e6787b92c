// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/unroll.hpp"

#include <algorithm>

#include "fsmv/errors.hpp"

namespace fsmv {

std::optional<TimedVar> TimedVar::parse(const std::string& name) {
  if (name.rfind("v_", 0) != 0) return std::nullopt;
  std::size_t sep = name.find('_', 2);
  if (sep == std::string::npos || sep == 2 || sep + 1 >= name.size())
    return std::nullopt;
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  std::string step_part = name.substr(2, sep - 2);
  std::string bit_part = name.substr(sep + 1);
  if (!all_digits(step_part) || !all_digits(bit_part)) return std::nullopt;
  return TimedVar{std::stoi(step_part), std::stoi(bit_part)};
}

VarId Unroller::timed(int step, int bit) {
  auto key = std::make_pair(step, bit);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  VarId v = TimedVar{step, bit}.var_id();
  table_.emplace(key, v);
  return v;
}

Formula Unroller::at_step(const Formula& f, int k) {
  std::set<VarId> fv = vars(f);
  std::set<VarId> allowed(fsm_.x.begin(), fsm_.x.end());
  for (const VarId& v : fv) {
    if (!allowed.count(v))
      throw ForeignVariableError("at_step: formula mentions non-state variable " +
                                 v.name());
  }
  std::map<VarId, Formula> m;
  for (int i = 0; i < fsm_.n; ++i) m.emplace(fsm_.x[i], mk_var(timed(k, i)));
  return substitute(f, m);
}

Formula Unroller::trans_at(int k) {
  std::map<VarId, Formula> m;
  for (int i = 0; i < fsm_.n; ++i) {
    m.emplace(fsm_.x[i], mk_var(timed(k, i)));
    m.emplace(fsm_.y[i], mk_var(timed(k + 1, i)));
  }
  return substitute(fsm_.trans, m);
}

Formula Unroller::path(int from, int to) {
  if (from > to) throw ContractError("path: from > to");
  std::vector<Formula> steps;
  steps.reserve(static_cast<std::size_t>(to - from));
  for (int i = from; i < to; ++i) steps.push_back(trans_at(i));
  return mk_and(std::move(steps));
}

Formula Unroller::loop_free(int from, int to) {
  if (from > to) throw ContractError("loop_free: from > to");
  std::vector<Formula> pairs;
  for (int i = from; i <= to; ++i) {
    for (int j = i + 1; j <= to; ++j) {
      std::vector<Formula> diffs;
      diffs.reserve(fsm_.n);
      for (int b = 0; b < fsm_.n; ++b)
        diffs.push_back(mk_xor(mk_var(timed(i, b)), mk_var(timed(j, b))));
      pairs.push_back(mk_or(std::move(diffs)));
    }
  }
  return mk_and(std::move(pairs));
}

Trace Unroller::decode_trace(const Assignment& model, int k) const {
  Trace trace;
  trace.reserve(static_cast<std::size_t>(k) + 1);
  for (int step = 0; step <= k; ++step) {
    std::string bits(static_cast<std::size_t>(fsm_.n), '0');
    for (int b = 0; b < fsm_.n; ++b) {
      bool value = model.value_or_false(TimedVar{step, b}.var_id());
      bits[static_cast<std::size_t>(fsm_.n - 1 - b)] = value ? '1' : '0';
    }
    trace.push_back(TraceStep{bits, fsm_.name_of_bits(bits)});
  }
  return trace;
}

}  // namespace fsmv
