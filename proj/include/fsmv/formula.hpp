// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_FORMULA_HPP
#define FSMV_FORMULA_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fsmv/errors.hpp"

namespace fsmv {

// Named Boolean variable. Equality and ordering are by name.
class VarId {
 public:
  explicit VarId(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const VarId& a, const VarId& b) { return a.name_ == b.name_; }
  friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
  friend bool operator<(const VarId& a, const VarId& b) { return a.name_ < b.name_; }

 private:
  std::string name_;
};

// Total map from variables to truth values. Entries are kept ordered so
// iteration (and therefore rendering) is deterministic.
class Assignment {
 public:
  Assignment() = default;

  void set(const VarId& v, bool value) { values_[v] = value; }
  bool contains(const VarId& v) const { return values_.count(v) != 0; }

  // Value of v, or false when v is unbound (the "default to false" rule).
  bool value_or_false(const VarId& v) const;

  // Value of v; throws EvalError naming the variable when unbound.
  bool value(const VarId& v) const;

  std::size_t size() const { return values_.size(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.values_ == b.values_;
  }

 private:
  std::map<VarId, bool> values_;
};

class Formula;

namespace detail {
struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;
}  // namespace detail

// Immutable Boolean formula tree. Values are cheap to copy (shared
// subtrees), equality is structural. And/Or are n-ary and order
// preserving with at least two children; the 0-ary cases are the
// constants and the 1-ary case is the child itself -- the mk_and/mk_or
// factories collapse by child count only, never by content.
class Formula {
 public:
  enum class Kind { True, False, Var, Not, And, Or, Xor, Implies, Iff };

  // Construct from a prebuilt node; use the mk_* factories instead.
  explicit Formula(detail::NodePtr node) : node_(std::move(node)) {}

  Kind kind() const;
  const VarId& var() const;                      // Kind::Var only
  const std::vector<Formula>& children() const;  // empty for leaves
  const Formula& child(std::size_t i) const { return children()[i]; }

  bool is_const() const { return kind() == Kind::True || kind() == Kind::False; }

  std::size_t hash() const;
  const void* node_id() const;  // stable identity of the shared node

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  detail::NodePtr node_;
};

Formula mk_true();
Formula mk_false();
Formula mk_var(VarId v);
inline Formula mk_var(const std::string& name) { return mk_var(VarId(name)); }
Formula mk_not(Formula f);
// Empty list yields the neutral constant, a single child is returned as is.
Formula mk_and(std::vector<Formula> children);
Formula mk_or(std::vector<Formula> children);
Formula mk_xor(Formula a, Formula b);
Formula mk_implies(Formula a, Formula b);
Formula mk_iff(Formula a, Formula b);
inline Formula mk_const(bool b) { return b ? mk_true() : mk_false(); }

// Exactly the variables occurring in f.
std::set<VarId> vars(const Formula& f);

// Standard Boolean semantics; Xor is inequality, Implies(p,q) is !p | q.
// Throws EvalError naming the first unbound variable.
bool evaluate(const Formula& f, const Assignment& a);

// Simultaneous substitution: occurrences introduced by a replacement are
// not substituted again.
Formula substitute(const Formula& f, const std::map<VarId, Formula>& m);

// Best-effort rewriting to a logically equivalent, usually smaller,
// formula: constant folding, double negation, idempotence, complement,
// flattening of nested And/And and Or/Or. Not a canonical form.
Formula simplify(const Formula& f);

// Deterministic text rendering: infix, parenthesized compounds, operator
// spelling !, &, |, ^, ->, <->. Used in logs, golden files and JSON.
std::string render(const Formula& f);

struct VarIdHash {
  std::size_t operator()(const VarId& v) const {
    return std::hash<std::string>()(v.name());
  }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace fsmv

#endif  // FSMV_FORMULA_HPP
