// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace fsmv {

VarId::VarId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw ContractError("variable name must be non-empty");
  for (char c : name_) {
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ContractError("variable name contains whitespace: '" + name_ + "'");
  }
}

bool Assignment::value_or_false(const VarId& v) const {
  auto it = values_.find(v);
  return it == values_.end() ? false : it->second;
}

bool Assignment::value(const VarId& v) const {
  auto it = values_.find(v);
  if (it == values_.end())
    throw EvalError("unbound variable in evaluation: " + v.name());
  return it->second;
}

namespace detail {
struct FormulaNode {
  Formula::Kind kind;
  std::vector<Formula> kids;  // Not: 1, Xor/Implies/Iff: 2, And/Or: >= 2
  VarId var{std::string("_")};
  std::size_t hash = 0;
};
}  // namespace detail

namespace {

std::size_t combine(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

Formula make_node(Formula::Kind kind, std::vector<Formula> kids = {},
                  VarId var = VarId(std::string("_"))) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = kind;
  node->kids = std::move(kids);
  node->var = std::move(var);
  std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b1u + 1;
  if (kind == Formula::Kind::Var) h = combine(h, VarIdHash()(node->var));
  for (const Formula& k : node->kids) h = combine(h, k.hash());
  node->hash = h;
  return Formula(detail::NodePtr(std::move(node)));
}

}  // namespace

Formula::Kind Formula::kind() const { return node_->kind; }

const VarId& Formula::var() const {
  if (kind() != Kind::Var) throw ContractError("var() on a non-variable formula");
  return node_->var;
}

const std::vector<Formula>& Formula::children() const { return node_->kids; }

std::size_t Formula::hash() const { return node_->hash; }

const void* Formula::node_id() const { return node_.get(); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->kind != b.node_->kind) return false;
  if (a.node_->kind == Formula::Kind::Var) return a.node_->var == b.node_->var;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (ka[i] != kb[i]) return false;
  return true;
}

Formula mk_true() {
  static const Formula t = make_node(Formula::Kind::True);
  return t;
}

Formula mk_false() {
  static const Formula f = make_node(Formula::Kind::False);
  return f;
}

Formula mk_var(VarId v) { return make_node(Formula::Kind::Var, {}, std::move(v)); }

Formula mk_not(Formula f) { return make_node(Formula::Kind::Not, {std::move(f)}); }

Formula mk_and(std::vector<Formula> children) {
  if (children.empty()) return mk_true();
  if (children.size() == 1) return children.front();
  return make_node(Formula::Kind::And, std::move(children));
}

Formula mk_or(std::vector<Formula> children) {
  if (children.empty()) return mk_false();
  if (children.size() == 1) return children.front();
  return make_node(Formula::Kind::Or, std::move(children));
}

Formula mk_xor(Formula a, Formula b) {
  return make_node(Formula::Kind::Xor, {std::move(a), std::move(b)});
}

Formula mk_implies(Formula a, Formula b) {
  return make_node(Formula::Kind::Implies, {std::move(a), std::move(b)});
}

Formula mk_iff(Formula a, Formula b) {
  return make_node(Formula::Kind::Iff, {std::move(a), std::move(b)});
}

namespace {

void collect_vars(const Formula& f, std::set<VarId>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Var:
      out.insert(f.var());
      return;
    default:
      for (const Formula& k : f.children()) collect_vars(k, out);
  }
}

}  // namespace

std::set<VarId> vars(const Formula& f) {
  std::set<VarId> out;
  collect_vars(f, out);
  return out;
}

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Var:
      return a.value(f.var());
    case Formula::Kind::Not:
      return !evaluate(f.child(0), a);
    case Formula::Kind::And:
      for (const Formula& k : f.children())
        if (!evaluate(k, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& k : f.children())
        if (evaluate(k, a)) return true;
      return false;
    case Formula::Kind::Xor:
      return evaluate(f.child(0), a) != evaluate(f.child(1), a);
    case Formula::Kind::Implies:
      return !evaluate(f.child(0), a) || evaluate(f.child(1), a);
    case Formula::Kind::Iff:
      return evaluate(f.child(0), a) == evaluate(f.child(1), a);
  }
  throw ContractError("corrupt formula node");
}

namespace {

using NodeMemo = std::unordered_map<const void*, Formula>;

Formula substitute_rec(const Formula& f, const std::map<VarId, Formula>& m,
                       NodeMemo& memo) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Var: {
      auto it = m.find(f.var());
      return it == m.end() ? f : it->second;
    }
    default:
      break;
  }
  auto hit = memo.find(f.node_id());
  if (hit != memo.end()) return hit->second;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const Formula& k : f.children()) {
    kids.push_back(substitute_rec(k, m, memo));
    changed = changed || !(kids.back() == k);
  }
  Formula out = f;
  if (changed) {
    switch (f.kind()) {
      case Formula::Kind::Not:
        out = mk_not(std::move(kids[0]));
        break;
      case Formula::Kind::And:
        out = mk_and(std::move(kids));
        break;
      case Formula::Kind::Or:
        out = mk_or(std::move(kids));
        break;
      case Formula::Kind::Xor:
        out = mk_xor(std::move(kids[0]), std::move(kids[1]));
        break;
      case Formula::Kind::Implies:
        out = mk_implies(std::move(kids[0]), std::move(kids[1]));
        break;
      case Formula::Kind::Iff:
        out = mk_iff(std::move(kids[0]), std::move(kids[1]));
        break;
      default:
        break;
    }
  }
  memo.emplace(f.node_id(), out);
  return out;
}

// Negation with local folding only; used by the simplifier.
Formula fold_not(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return mk_false();
    case Formula::Kind::False:
      return mk_true();
    case Formula::Kind::Not:
      return f.child(0);
    default:
      return mk_not(f);
  }
}

bool is_complement(const Formula& a, const Formula& b) {
  if (a.kind() == Formula::Kind::Not && a.child(0) == b) return true;
  if (b.kind() == Formula::Kind::Not && b.child(0) == a) return true;
  return false;
}

Formula simplify_rec(const Formula& f, NodeMemo& memo);

// Shared machinery for And/Or: flatten same-kind children, drop the
// neutral constant, collapse on the absorbing constant, deduplicate,
// and detect p together with !p.
Formula simplify_nary(Formula::Kind kind, const Formula& f, NodeMemo& memo) {
  const bool conj = kind == Formula::Kind::And;
  const Formula absorbing = conj ? mk_false() : mk_true();
  const Formula neutral = conj ? mk_true() : mk_false();

  std::vector<Formula> flat;
  for (const Formula& k : f.children()) {
    Formula s = simplify_rec(k, memo);
    if (s.kind() == kind) {
      for (const Formula& g : s.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(s));
    }
  }

  std::vector<Formula> kept;
  for (Formula& s : flat) {
    if (s == absorbing) return absorbing;
    if (s == neutral) continue;
    bool duplicate = false;
    for (const Formula& seen : kept) {
      if (seen == s) {
        duplicate = true;
        break;
      }
      if (is_complement(seen, s)) return absorbing;
    }
    if (!duplicate) kept.push_back(std::move(s));
  }
  return conj ? mk_and(std::move(kept)) : mk_or(std::move(kept));
}

Formula simplify_rec(const Formula& f, NodeMemo& memo) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Var:
      return f;
    default:
      break;
  }
  auto hit = memo.find(f.node_id());
  if (hit != memo.end()) return hit->second;

  Formula out = f;
  switch (f.kind()) {
    case Formula::Kind::Not:
      out = fold_not(simplify_rec(f.child(0), memo));
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out = simplify_nary(f.kind(), f, memo);
      break;
    case Formula::Kind::Xor: {
      Formula a = simplify_rec(f.child(0), memo);
      Formula b = simplify_rec(f.child(1), memo);
      if (a == mk_false()) out = b;
      else if (b == mk_false()) out = a;
      else if (a == mk_true()) out = fold_not(b);
      else if (b == mk_true()) out = fold_not(a);
      else if (a == b) out = mk_false();
      else if (is_complement(a, b)) out = mk_true();
      else out = mk_xor(std::move(a), std::move(b));
      break;
    }
    case Formula::Kind::Implies: {
      Formula a = simplify_rec(f.child(0), memo);
      Formula b = simplify_rec(f.child(1), memo);
      if (a == mk_false() || b == mk_true()) out = mk_true();
      else if (a == mk_true()) out = b;
      else if (b == mk_false()) out = fold_not(a);
      else if (a == b) out = mk_true();
      else out = mk_implies(std::move(a), std::move(b));
      break;
    }
    case Formula::Kind::Iff: {
      Formula a = simplify_rec(f.child(0), memo);
      Formula b = simplify_rec(f.child(1), memo);
      if (a == mk_true()) out = b;
      else if (b == mk_true()) out = a;
      else if (a == mk_false()) out = fold_not(b);
      else if (b == mk_false()) out = fold_not(a);
      else if (a == b) out = mk_true();
      else if (is_complement(a, b)) out = mk_false();
      else out = mk_iff(std::move(a), std::move(b));
      break;
    }
    default:
      break;
  }
  memo.emplace(f.node_id(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<VarId, Formula>& m) {
  if (m.empty()) return f;
  NodeMemo memo;
  return substitute_rec(f, m, memo);
}

Formula simplify(const Formula& f) {
  NodeMemo memo;
  return simplify_rec(f, memo);
}

namespace {

void render_rec(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Var:
      out += f.var().name();
      return;
    case Formula::Kind::Not:
      out += '!';
      render_rec(f.child(0), out);  // compounds parenthesize themselves
      return;
    default:
      break;
  }
  const char* op = nullptr;
  switch (f.kind()) {
    case Formula::Kind::And: op = " & "; break;
    case Formula::Kind::Or: op = " | "; break;
    case Formula::Kind::Xor: op = " ^ "; break;
    case Formula::Kind::Implies: op = " -> "; break;
    case Formula::Kind::Iff: op = " <-> "; break;
    default: throw ContractError("corrupt formula node");
  }
  out += '(';
  bool first = true;
  for (const Formula& k : f.children()) {
    if (!first) out += op;
    first = false;
    render_rec(k, out);
  }
  out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, out);
  return out;
}

}  // namespace fsmv
