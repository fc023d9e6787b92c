// SPDX-License-Identifier: MIT OR Apache-2.0

#include "fsmv/fsmlang.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fsmv/errors.hpp"

namespace fsmv {

std::string ParseError::format(const std::string& what, int line, int col) {
  if (line <= 0) return what;
  std::string out = "line " + std::to_string(line);
  if (col > 0) out += ", column " + std::to_string(col);
  return out + ": " + what;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), is_name_char);
}

bool valid_bits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

FsmAst parse(const std::string& text) {
  FsmAst ast;
  bool size_seen = false;
  bool init_seen = false;
  std::set<std::string> names;
  std::set<std::string> encodings;
  // (line, name) uses of states, validated once all declarations are read.
  std::vector<std::pair<int, std::string>> used;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;

    if (line.rfind("SIZE", 0) == 0) {
      std::string rest = strip(line.substr(4));
      if (rest.empty() || rest[0] != ':')
        throw ParseError("expected ':' after SIZE", lineno);
      rest = strip(rest.substr(1));
      std::size_t pos = 0;
      int n = 0;
      try {
        n = std::stoi(rest, &pos);
      } catch (const std::exception&) {
        throw ParseError("SIZE needs a positive integer", lineno);
      }
      if (pos != rest.size() || n <= 0)
        throw ParseError("SIZE needs a positive integer", lineno);
      if (size_seen) throw ParseError("duplicate SIZE line", lineno);
      size_seen = true;
      ast.size = n;
      continue;
    }

    if (line.rfind("INIT", 0) == 0) {
      std::string rest = strip(line.substr(4));
      if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')')
        throw ParseError("expected INIT(<state>)", lineno);
      std::string name = strip(rest.substr(1, rest.size() - 2));
      if (!valid_name(name)) throw ParseError("bad state name in INIT", lineno);
      ast.inits.push_back(name);
      used.emplace_back(lineno, name);
      init_seen = true;
      continue;
    }

    if (line.rfind("NEXT", 0) == 0) {
      std::string rest = strip(line.substr(4));
      std::size_t close = rest.find(')');
      if (rest.empty() || rest[0] != '(' || close == std::string::npos)
        throw ParseError("expected NEXT(<state>) := <state>", lineno);
      std::string from = strip(rest.substr(1, close - 1));
      std::string tail = strip(rest.substr(close + 1));
      if (tail.rfind(":=", 0) != 0)
        throw ParseError("expected ':=' in NEXT line", lineno);
      std::string to = strip(tail.substr(2));
      if (!valid_name(from) || !valid_name(to))
        throw ParseError("bad state name in NEXT line", lineno);
      ast.nexts.emplace_back(from, to);
      used.emplace_back(lineno, from);
      used.emplace_back(lineno, to);
      continue;
    }

    if (line.rfind("PROP", 0) == 0) {
      std::string rest = strip(line.substr(4));
      if (rest.empty() || rest[0] != ':')
        throw ParseError("expected ':' after PROP", lineno);
      std::string expr = strip(rest.substr(1));
      if (expr.empty()) throw ParseError("empty PROP expression", lineno);
      if (ast.prop) throw ParseError("duplicate PROP line", lineno);
      ast.prop = expr;
      continue;
    }

    // State declaration: <name> : <bits>
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("unrecognized statement: '" + line + "'", lineno);
    std::string name = strip(line.substr(0, colon));
    std::string bits = strip(line.substr(colon + 1));
    if (!valid_name(name))
      throw ParseError("bad state name '" + name + "'", lineno);
    if (!valid_bits(bits))
      throw ParseError("encoding must be a non-empty string of 0s and 1s", lineno);
    if (!size_seen)
      throw ParseError("state declared before SIZE", lineno);
    if (static_cast<int>(bits.size()) != ast.size)
      throw ParseError("encoding '" + bits + "' has " +
                           std::to_string(bits.size()) + " bits, SIZE is " +
                           std::to_string(ast.size),
                       lineno, static_cast<int>(colon) + 2);
    if (!names.insert(name).second)
      throw ParseError("duplicate state name '" + name + "'", lineno);
    if (!encodings.insert(bits).second)
      throw ParseError("duplicate encoding '" + bits + "'", lineno);
    ast.state_defs.emplace_back(name, bits);
  }

  if (!size_seen) throw ParseError("missing SIZE line");
  if (ast.state_defs.empty()) throw ParseError("no states declared");
  if (!init_seen) throw ParseError("missing INIT line");
  for (const auto& [line, name] : used) {
    if (!names.count(name))
      throw ParseError("undeclared state '" + name + "'", line);
  }
  return ast;
}

std::string render_ast(const FsmAst& ast) {
  std::ostringstream out;
  out << "SIZE : " << ast.size << "\n";
  for (const auto& [name, bits] : ast.state_defs) out << name << " : " << bits << "\n";
  for (const auto& name : ast.inits) out << "INIT(" << name << ")\n";
  for (const auto& [from, to] : ast.nexts)
    out << "NEXT(" << from << ") := " << to << "\n";
  if (ast.prop) out << "PROP : " << *ast.prop << "\n";
  return out.str();
}

Formula encode_state(const std::string& bits, const std::vector<VarId>& vars) {
  if (bits.size() != vars.size())
    throw ContractError("encode_state: bit-string and variable list differ in length");
  std::vector<Formula> lits;
  lits.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    Formula v = mk_var(vars[i]);
    lits.push_back(bits[i] == '1' ? v : mk_not(v));
  }
  return mk_and(std::move(lits));
}

std::optional<std::string> SymbolicFsm::name_of_bits(const std::string& bits) const {
  auto it = name_of.find(bits);
  if (it == name_of.end()) return std::nullopt;
  return it->second;
}

Assignment SymbolicFsm::state_assignment(const std::string& bits) const {
  Assignment a;
  for (int i = 0; i < n; ++i) a.set(x[i], bits[n - 1 - i] == '1');
  return a;
}

SymbolicFsm compile(const FsmAst& ast, const CompileOptions& opts) {
  SymbolicFsm fsm;
  fsm.n = ast.size;
  for (int i = 0; i < fsm.n; ++i) {
    fsm.x.push_back(VarId("x" + std::to_string(i)));
    fsm.y.push_back(VarId("y" + std::to_string(i)));
  }
  // Most significant bit first, matching the bit-string convention.
  std::vector<VarId> x_desc(fsm.x.rbegin(), fsm.x.rend());
  std::vector<VarId> y_desc(fsm.y.rbegin(), fsm.y.rend());

  for (const auto& [name, bits] : ast.state_defs) {
    fsm.state_names.push_back(name);
    fsm.bits_of[name] = bits;
    fsm.name_of[bits] = name;
  }
  fsm.inits = ast.inits;
  fsm.edges = ast.nexts;

  std::map<std::string, std::vector<std::string>> succs;
  for (const auto& [from, to] : fsm.edges) succs[from].push_back(to);

  std::vector<std::string> deadlocked;
  for (const auto& name : fsm.state_names)
    if (!succs.count(name)) deadlocked.push_back(name);
  if (!deadlocked.empty()) {
    if (!opts.allow_deadlock) {
      std::string list;
      for (const auto& name : deadlocked) {
        if (!list.empty()) list += ", ";
        list += name;
      }
      throw CompileError("deadlock states (no outgoing NEXT): " + list);
    }
    for (const auto& name : deadlocked) {
      fsm.edges.emplace_back(name, name);
      succs[name].push_back(name);
    }
  }

  std::vector<Formula> init_terms;
  for (const auto& name : fsm.inits)
    init_terms.push_back(encode_state(fsm.bits_of.at(name), x_desc));
  fsm.init = mk_or(std::move(init_terms));

  std::vector<Formula> trans_terms;
  for (const auto& name : fsm.state_names) {
    const auto& targets = succs.at(name);
    std::vector<Formula> target_terms;
    target_terms.reserve(targets.size());
    for (const auto& t : targets)
      target_terms.push_back(encode_state(fsm.bits_of.at(t), y_desc));
    trans_terms.push_back(mk_implies(encode_state(fsm.bits_of.at(name), x_desc),
                                     mk_or(std::move(target_terms))));
  }
  fsm.trans = mk_and(std::move(trans_terms));
  return fsm;
}

// ---------------------------------------------------------------------
// Property expressions.

namespace {

struct Token {
  enum Type { Ident, Bang, AndOp, OrOp, XorOp, Arrow, DArrow, LParen, RParen, End };
  Type type;
  std::string text;
  int col;
};

class PropLexer {
 public:
  explicit PropLexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src_.size()) {
      char c = src_[i];
      int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (is_name_char(c)) {
        std::size_t j = i;
        while (j < src_.size() && is_name_char(src_[j])) ++j;
        out.push_back({Token::Ident, src_.substr(i, j - i), col});
        i = j;
        continue;
      }
      switch (c) {
        case '!': out.push_back({Token::Bang, "!", col}); ++i; break;
        case '&': out.push_back({Token::AndOp, "&", col}); ++i; break;
        case '|': out.push_back({Token::OrOp, "|", col}); ++i; break;
        case '^': out.push_back({Token::XorOp, "^", col}); ++i; break;
        case '(': out.push_back({Token::LParen, "(", col}); ++i; break;
        case ')': out.push_back({Token::RParen, ")", col}); ++i; break;
        case '-':
          if (i + 1 < src_.size() && src_[i + 1] == '>') {
            out.push_back({Token::Arrow, "->", col});
            i += 2;
            break;
          }
          throw ParseError("stray '-' in property", 0, col);
        case '<':
          if (i + 2 < src_.size() && src_[i + 1] == '-' && src_[i + 2] == '>') {
            out.push_back({Token::DArrow, "<->", col});
            i += 3;
            break;
          }
          throw ParseError("stray '<' in property", 0, col);
        default:
          throw ParseError(std::string("unexpected character '") + c +
                               "' in property",
                           0, col);
      }
    }
    out.push_back({Token::End, "", static_cast<int>(src_.size()) + 1});
    return out;
  }

 private:
  const std::string& src_;
};

// Precedence, tightest first: ! & ^ | -> <-> with -> right-associative.
class PropParser {
 public:
  PropParser(std::vector<Token> tokens, const SymbolicFsm& fsm)
      : tokens_(std::move(tokens)), fsm_(fsm) {}

  Formula run() {
    Formula f = parse_iff();
    expect(Token::End, "end of property");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  void expect(Token::Type t, const std::string& what) {
    if (peek().type != t)
      throw ParseError("expected " + what + " before '" + peek().text + "'", 0,
                       peek().col);
    ++pos_;
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek().type == Token::DArrow) {
      take();
      f = mk_iff(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek().type == Token::Arrow) {
      take();
      return mk_implies(std::move(f), parse_implies());  // right-associative
    }
    return f;
  }

  Formula parse_or() {
    std::vector<Formula> terms{parse_xor()};
    while (peek().type == Token::OrOp) {
      take();
      terms.push_back(parse_xor());
    }
    return mk_or(std::move(terms));
  }

  Formula parse_xor() {
    Formula f = parse_and();
    while (peek().type == Token::XorOp) {
      take();
      f = mk_xor(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    std::vector<Formula> terms{parse_unary()};
    while (peek().type == Token::AndOp) {
      take();
      terms.push_back(parse_unary());
    }
    return mk_and(std::move(terms));
  }

  Formula parse_unary() {
    if (peek().type == Token::Bang) {
      take();
      return mk_not(parse_unary());
    }
    if (peek().type == Token::LParen) {
      take();
      Formula f = parse_iff();
      expect(Token::RParen, "')'");
      return f;
    }
    if (peek().type == Token::Ident) return atom(take());
    throw ParseError("expected an atom before '" + peek().text + "'", 0, peek().col);
  }

  Formula atom(const Token& tok) {
    const std::string& name = tok.text;
    // x<i> is a state bit unless a state shadows the exact name.
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }) &&
        !fsm_.bits_of.count(name)) {
      int idx = std::stoi(name.substr(1));
      if (idx >= fsm_.n)
        throw ParseError("bit index out of range: " + name + " on a " +
                             std::to_string(fsm_.n) + "-bit model",
                         0, tok.col);
      return mk_var(fsm_.x[idx]);
    }
    auto it = fsm_.bits_of.find(name);
    if (it == fsm_.bits_of.end())
      throw ParseError("unknown atom '" + name + "'", 0, tok.col);
    std::vector<VarId> x_desc(fsm_.x.rbegin(), fsm_.x.rend());
    return encode_state(it->second, x_desc);
  }

  std::vector<Token> tokens_;
  const SymbolicFsm& fsm_;
  std::size_t pos_ = 0;
};

}  // namespace

PropertySpec parse_property(const std::string& text, const SymbolicFsm& fsm) {
  Formula compiled = PropParser(PropLexer(text).run(), fsm).run();
  return PropertySpec{text, std::move(compiled)};
}

}  // namespace fsmv
