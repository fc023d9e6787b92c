// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_FSMLANG_HPP
#define FSMV_FSMLANG_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsmv/formula.hpp"

namespace fsmv {

// Parsed model file. Line-oriented format:
//
//   SIZE : 2          # number of state bits
//   s0 : 00           # state name and encoding, one per line
//   INIT(s0)
//   NEXT(s0) := s1    # one edge; repeat a source for nondeterminism
//   PROP : !(x1 & x0) # optional default property
//
// '#' starts a comment, blank lines are ignored.
struct FsmAst {
  int size = 0;
  std::vector<std::pair<std::string, std::string>> state_defs;  // (name, bits)
  std::vector<std::string> inits;
  std::vector<std::pair<std::string, std::string>> nexts;  // (from, to)
  std::optional<std::string> prop;

  friend bool operator==(const FsmAst& a, const FsmAst& b) {
    return a.size == b.size && a.state_defs == b.state_defs && a.inits == b.inits &&
           a.nexts == b.nexts && a.prop == b.prop;
  }
};

FsmAst parse(const std::string& text);

// Canonical rendering; parse(render_ast(ast)) == ast.
std::string render_ast(const FsmAst& ast);

// Compiled symbolic model. Bit i of a state is variable x<i> before a
// transition and y<i> after it; bit-strings are written most significant
// bit first, so "10" over a 2-bit model means x1 & !x0.
struct SymbolicFsm {
  int n = 0;
  std::vector<VarId> x;  // x[i] = bit i (x[0] is the least significant)
  std::vector<VarId> y;
  std::vector<std::string> state_names;  // declaration order
  std::map<std::string, std::string> bits_of;
  std::map<std::string, std::string> name_of;
  std::vector<std::string> inits;
  // Effective edge list: the declared NEXT pairs, plus one self-loop per
  // deadlock state when those are allowed. Copied syntactically from the
  // AST, never derived from T, so the explicit oracle stays independent
  // of the symbolic compilation.
  std::vector<std::pair<std::string, std::string>> edges;
  Formula init = mk_false();   // I, over x
  Formula trans = mk_false();  // T, over x and y

  std::optional<std::string> name_of_bits(const std::string& bits) const;
  // x-assignment for a state encoding (bit i taken from the right end).
  Assignment state_assignment(const std::string& bits) const;
};

// Conjunction of literals for a bit-string: positive where the bit is
// '1', negated where '0'. vars are given most significant first.
Formula encode_state(const std::string& bits, const std::vector<VarId>& vars);

struct CompileOptions {
  // Deadlock states are an error by default; the flag gives each one an
  // implicit self-loop instead.
  bool allow_deadlock = false;
};

SymbolicFsm compile(const FsmAst& ast, const CompileOptions& opts = {});

// Invariant property over the current-state variables.
struct PropertySpec {
  std::string source;
  Formula compiled = mk_true();
};

// Expression grammar over atoms x0..x(n-1) and declared state names
// (a name denotes its encoding), operators ! & ^ | -> <-> with that
// precedence, -> right-associative.
PropertySpec parse_property(const std::string& text, const SymbolicFsm& fsm);

}  // namespace fsmv

#endif  // FSMV_FSMLANG_HPP
