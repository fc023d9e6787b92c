// SPDX-License-Identifier: MIT OR Apache-2.0
//
// Self-contained SAT core: Tseitin CNF conversion plus a CDCL search
// with two-watched-literal propagation, first-UIP clause learning and
// Luby restarts. Decisions follow a static first-occurrence order by
// default so that verdicts and models are reproducible run to run.

#include "fsmv/sat.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "fsmv/errors.hpp"

namespace fsmv {

namespace {

// ---------------------------------------------------------------------
// CDCL solver over DIMACS-style signed literals, variables 1..nv.

class CdclSolver {
 public:
  CdclSolver(int nv, long max_conflicts, bool activity, unsigned seed)
      : nv_(nv),
        max_conflicts_(max_conflicts),
        activity_mode_(activity),
        rng_(seed),
        value_(nv + 1, 0),
        level_(nv + 1, 0),
        reason_(nv + 1, -1),
        seen_(nv + 1, 0),
        activity_(nv + 1, 0.0),
        watches_(2 * (nv + 1)) {}

  // Returns false on an immediate top-level contradiction.
  bool add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end(),
              [](int a, int b) { return std::abs(a) != std::abs(b)
                                           ? std::abs(a) < std::abs(b)
                                           : a < b; });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i] == -lits[i + 1]) return true;  // tautology
    if (lits.empty()) return ok_ = false;
    if (lits.size() == 1) {
      pending_units_.push_back(lits[0]);
      return true;
    }
    attach(std::move(lits));
    return true;
  }

  // nullopt = unsat. Otherwise value per variable, indexed 1..nv.
  std::optional<std::vector<bool>> solve() {
    if (!ok_) return std::nullopt;
    for (int u : pending_units_) {
      if (lit_value(u) < 0) return std::nullopt;
      if (lit_value(u) == 0) enqueue(u, -1);
    }
    long conflicts = 0;
    long conflicts_since_restart = 0;
    int restarts = 0;
    long restart_limit = 100 * luby(1);
    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        if (decision_level() == 0) return std::nullopt;
        if (++conflicts > max_conflicts_)
          throw ResourceLimitError("SAT conflict budget exceeded (" +
                                   std::to_string(max_conflicts_) + ")");
        std::vector<int> learnt;
        int bt_level = analyze(confl, learnt);
        backtrack(bt_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = attach(learnt);
          enqueue(learnt[0], ci);
        }
        var_inc_ /= kActivityDecay;
        if (++conflicts_since_restart >= restart_limit) {
          conflicts_since_restart = 0;
          restart_limit = 100 * luby(++restarts + 1);
          backtrack(0);
        }
      } else {
        int next = pick_branch();
        if (next == 0) return extract_model();
        trail_lim_.push_back(trail_.size());
        enqueue(next, -1);
      }
    }
  }

 private:
  static constexpr double kActivityDecay = 0.95;

  static std::size_t widx(int lit) {
    return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
  }

  int lit_value(int lit) const {
    int v = value_[std::abs(lit)];
    return lit > 0 ? v : -v;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int attach(std::vector<int> lits) {
    int ci = static_cast<int>(clauses_.size());
    watches_[widx(lits[0])].push_back(ci);
    watches_[widx(lits[1])].push_back(ci);
    clauses_.push_back(std::move(lits));
    return ci;
  }

  void enqueue(int lit, int reason) {
    int v = std::abs(lit);
    value_[v] = lit > 0 ? 1 : -1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];  // p just became true; visit watchers of -p
      auto& ws = watches_[widx(-p)];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        int ci = ws[i];
        auto& c = clauses_[ci];
        if (c[0] == -p) std::swap(c[0], c[1]);
        if (lit_value(c[0]) > 0) {  // satisfied by the other watch
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[widx(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;  // this clause no longer watches -p
          continue;
        }
        ws[j++] = ws[i++];
        if (lit_value(c[0]) < 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return ci;
        }
        if (lit_value(c[0]) == 0) enqueue(c[0], ci);
      }
      ws.resize(j);
    }
    return -1;
  }

  // First-UIP conflict analysis. Fills learnt (asserting literal first)
  // and returns the backtrack level.
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.push_back(0);  // slot for the asserting literal
    int counter = 0;
    int p = 0;
    std::size_t index = trail_.size();
    std::vector<int> to_clear;
    for (;;) {
      const auto& c = clauses_[confl];
      for (int q : c) {
        if (q == p) continue;
        int v = std::abs(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          to_clear.push_back(v);
          bump(v);
          if (level_[v] >= decision_level())
            ++counter;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[std::abs(trail_[index - 1])]) --index;
      p = trail_[--index];
      seen_[std::abs(p)] = 0;
      if (--counter == 0) break;
      confl = reason_[std::abs(p)];
    }
    learnt[0] = -p;
    int bt = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[std::abs(learnt[i])] > level_[std::abs(learnt[best])]) best = i;
      std::swap(learnt[1], learnt[best]);
      bt = level_[std::abs(learnt[1])];
    }
    for (int v : to_clear) seen_[v] = 0;
    return bt;
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level) return;
    std::size_t limit = trail_lim_[target_level];
    for (std::size_t i = trail_.size(); i > limit; --i)
      value_[std::abs(trail_[i - 1])] = 0;
    trail_.resize(limit);
    trail_lim_.resize(target_level);
    qhead_ = limit;
    decide_hint_ = 1;
  }

  void bump(int v) {
    if (!activity_mode_) return;
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (int i = 1; i <= nv_; ++i) activity_[i] *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }

  // 0 when every variable is assigned. Polarity is always false-first,
  // which realizes the "unconstrained defaults to false" model rule.
  int pick_branch() {
    if (activity_mode_) {
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      if (coin(rng_) < 0.02) {
        std::uniform_int_distribution<int> pick(1, nv_);
        for (int tries = 0; tries < 8; ++tries) {
          int v = pick(rng_);
          if (value_[v] == 0) return -v;
        }
      }
      int best = 0;
      for (int v = 1; v <= nv_; ++v)
        if (value_[v] == 0 && (best == 0 || activity_[v] > activity_[best]))
          best = v;
      return best == 0 ? 0 : -best;
    }
    for (int v = decide_hint_; v <= nv_; ++v) {
      if (value_[v] == 0) {
        decide_hint_ = v;
        return -v;
      }
    }
    return 0;
  }

  std::vector<bool> extract_model() const {
    std::vector<bool> model(nv_ + 1, false);
    for (int v = 1; v <= nv_; ++v) model[v] = value_[v] > 0;
    return model;
  }

  static long luby(int i) {
    // Luby sequence 1,1,2,1,1,2,4,... via the usual size/seq descent.
    int size = 1, seq = 0;
    while (size < i) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != i - 1) {
      size = (size - 1) / 2;
      --seq;
      i = ((i - 1) % size) + 1;
    }
    return 1L << seq;
  }

  int nv_;
  long max_conflicts_;
  bool activity_mode_;
  std::mt19937 rng_;
  bool ok_ = true;
  std::vector<int8_t> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<int> pending_units_;
  std::size_t qhead_ = 0;
  int decide_hint_ = 1;
};

// ---------------------------------------------------------------------
// Tseitin conversion.

class TseitinEncoder {
 public:
  explicit TseitinEncoder(CnfFormula& out) : out_(out) {}

  void run(const Formula& f) {
    assign_var_indices(f);
    if (f.kind() == Formula::Kind::False) {
      out_.trivially_false = true;
      return;
    }
    if (f.kind() == Formula::Kind::True) return;
    int root = encode(f);
    emit({root});
  }

 private:
  void assign_var_indices(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Var:
        if (out_.var_map.emplace(f.var(), next_index_ + 1).second) ++next_index_;
        return;
      case Formula::Kind::True:
      case Formula::Kind::False:
        return;
      default:
        for (const Formula& k : f.children()) assign_var_indices(k);
    }
  }

  int fresh_aux() {
    ++out_.aux_count;
    return ++next_index_;
  }

  int true_lit() {
    if (true_var_ == 0) {
      true_var_ = fresh_aux();
      emit({true_var_});
    }
    return true_var_;
  }

  void emit(std::vector<int> lits) {
    Clause c;
    c.reserve(lits.size());
    for (int l : lits) c.push_back(Literal(std::abs(l), l > 0));
    out_.clauses.push_back(std::move(c));
  }

  int encode(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
        return true_lit();
      case Formula::Kind::False:
        return -true_lit();
      case Formula::Kind::Var:
        return out_.var_map.at(f.var());
      default:
        break;
    }
    auto hit = memo_.find(f.node_id());
    if (hit != memo_.end()) return hit->second;

    std::vector<int> kids;
    kids.reserve(f.children().size());
    for (const Formula& k : f.children()) kids.push_back(encode(k));
    int l = fresh_aux();
    switch (f.kind()) {
      case Formula::Kind::Not:
        emit({-l, -kids[0]});
        emit({l, kids[0]});
        break;
      case Formula::Kind::And: {
        std::vector<int> big{l};
        for (int a : kids) {
          emit({-l, a});
          big.push_back(-a);
        }
        emit(std::move(big));
        break;
      }
      case Formula::Kind::Or: {
        std::vector<int> big{-l};
        for (int a : kids) {
          emit({l, -a});
          big.push_back(a);
        }
        emit(std::move(big));
        break;
      }
      case Formula::Kind::Xor:
        emit({-l, kids[0], kids[1]});
        emit({-l, -kids[0], -kids[1]});
        emit({l, kids[0], -kids[1]});
        emit({l, -kids[0], kids[1]});
        break;
      case Formula::Kind::Implies:
        emit({-l, -kids[0], kids[1]});
        emit({l, kids[0]});
        emit({l, -kids[1]});
        break;
      case Formula::Kind::Iff:
        emit({-l, -kids[0], kids[1]});
        emit({-l, kids[0], -kids[1]});
        emit({l, kids[0], kids[1]});
        emit({l, -kids[0], -kids[1]});
        break;
      default:
        throw ContractError("corrupt formula node");
    }
    memo_.emplace(f.node_id(), l);
    return l;
  }

  CnfFormula& out_;
  std::unordered_map<const void*, int> memo_;
  int next_index_ = 0;
  int true_var_ = 0;
};

}  // namespace

CnfFormula to_cnf(const Formula& f) {
  CnfFormula cnf;
  TseitinEncoder(cnf).run(f);
  return cnf;
}

std::string to_dimacs(const CnfFormula& cnf) {
  std::ostringstream out;
  if (cnf.trivially_false) {
    out << "p cnf " << cnf.var_count() << " 1\n0\n";
    return out.str();
  }
  out << "p cnf " << cnf.var_count() << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (const Literal& l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

SatEngine::SatEngine(SatConfig cfg) : cfg_(std::move(cfg)) {}

SatResult SatEngine::check(const Formula& f) {
  ++queries_;
  CnfFormula cnf = to_cnf(f);
  if (cfg_.dump_dir) dump(cnf);
  if (cnf.trivially_false) return SatResult::unsat();

  CdclSolver solver(cnf.var_count(), cfg_.max_conflicts, cfg_.activity_heuristic,
                    cfg_.seed);
  for (const Clause& c : cnf.clauses) {
    std::vector<int> lits;
    lits.reserve(c.size());
    for (const Literal& l : c) lits.push_back(l.dimacs());
    solver.add_clause(std::move(lits));
  }
  auto model = solver.solve();
  if (!model) return SatResult::unsat();

  Assignment a;
  for (const auto& [v, idx] : cnf.var_map) a.set(v, (*model)[idx]);
  return SatResult{std::move(a)};
}

bool SatEngine::holds(const Formula& f) { return !check(mk_not(f)).sat(); }

bool SatEngine::implies(const Formula& f, const Formula& g) {
  return !check(mk_and({f, mk_not(g)})).sat();
}

void SatEngine::dump(const CnfFormula& cnf) const {
  namespace fs = std::filesystem;
  fs::create_directories(*cfg_.dump_dir);
  std::ostringstream name;
  name << "query_" << queries_ << ".cnf";
  std::ofstream file(fs::path(*cfg_.dump_dir) / name.str());
  file << to_dimacs(cnf);
}

}  // namespace fsmv
