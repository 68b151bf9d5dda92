#pragma once

// Input language: ring, matrix and module declarations followed by one
// command.
//
//   program := stmt* command
//   stmt    := "ring" IDENT ("S"|"E") "p=" INT "v=" INT ";"
//            | "matrix" IDENT "[" row ("," row)* "]" "rowdegs" "[" INT* "]" ";"
//            | "module" IDENT "=" "coker" IDENT ";"
//   row     := "[" poly ("," poly)* "]"
//   command := IDENT ( "--" IDENT [value] )* [";"]
//   value   := INT | INT ":" INT | IDENT
//
// Polynomials use the canonical rendering (`3*x0^2*x1-e0*e2`, `0`); a
// matrix lives over the most recent ring. '#' starts a comment.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/field.hpp"
#include "bgg/rings.hpp"
#include "bgg/smodules.hpp"

namespace bgg::dsl {

enum class ErrorKind { Lexical, Syntax, Homogeneity, Semantic };

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Lexical: return "lexical";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Homogeneity: return "homogeneity";
    case ErrorKind::Semantic: return "semantic";
  }
  return "?";
}

struct Pos {
  int line = 1, col = 1;
  friend bool operator==(const Pos&, const Pos&) = default;
};

struct ParseError : std::runtime_error {
  ErrorKind kind;
  Pos pos;
  std::string token;
  ParseError(ErrorKind k, Pos p, std::string tok, const std::string& what)
      : std::runtime_error(std::string(kind_name(k)) + " error at " + std::to_string(p.line) + ":" +
                           std::to_string(p.col) + " near '" + tok + "': " + what),
        kind(k), pos(p), token(std::move(tok)) {}
};

struct Token {
  enum Kind { Ident, Int, Flag, Punct, End } kind = End;
  std::string text;
  Pos pos;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  Pos p;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') p.line++, p.col = 1;
      else p.col++;
    }
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Pos at = p;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), at});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && ident_char(src[j])) {
        while (j < src.size() && ident_char(src[j])) ++j;
        throw ParseError(ErrorKind::Lexical, at, src.substr(i, j - i), "malformed number");
      }
      if (j - i > 18) throw ParseError(ErrorKind::Lexical, at, src.substr(i, j - i), "integer too long");
      out.push_back({Token::Int, src.substr(i, j - i), at});
    } else if (c == '-' && i + 2 < src.size() && src[i + 1] == '-' && std::isalpha(static_cast<unsigned char>(src[i + 2]))) {
      j = i + 2;
      while (j < src.size() && (ident_char(src[j]) || src[j] == '-')) ++j;
      out.push_back({Token::Flag, src.substr(i + 2, j - i - 2), at});
    } else if (std::string("[],;=*^+-:").find(c) != std::string::npos) {
      j = i + 1;
      out.push_back({Token::Punct, std::string(1, c), at});
    } else {
      throw ParseError(ErrorKind::Lexical, at, std::string(1, c), "unexpected character");
    }
    advance(j - i);
  }
  out.push_back({Token::End, "", p});
  return out;
}

// ---- syntax tree ----

struct Factor {
  char symbol = 'x';
  int index = 0;
  int exponent = 1;
  Pos pos;
  friend bool operator==(const Factor& a, const Factor& b) {
    return a.symbol == b.symbol && a.index == b.index && a.exponent == b.exponent;
  }
};

struct Term {
  bool negative = false;
  std::uint64_t coef = 1;
  bool explicit_coef = false;
  std::vector<Factor> factors;
  friend bool operator==(const Term& a, const Term& b) {
    return a.negative == b.negative && a.coef == b.coef && a.factors == b.factors;
  }
};

struct PolyText {
  std::vector<Term> terms;  // empty for the literal 0
  Pos pos;
  friend bool operator==(const PolyText& a, const PolyText& b) { return a.terms == b.terms; }
};

struct RingDecl {
  std::string name;
  char kind = 'S';
  std::int64_t p = 0;
  int v = 0;
  Pos pos;
  friend bool operator==(const RingDecl& a, const RingDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.p == b.p && a.v == b.v;
  }
};

struct MatrixDecl {
  std::string name;
  std::string ring;  // most recent ring at the point of declaration
  std::vector<std::vector<PolyText>> rows;
  std::vector<int> rowdegs;
  Pos pos;
  friend bool operator==(const MatrixDecl& a, const MatrixDecl& b) {
    return a.name == b.name && a.ring == b.ring && a.rows == b.rows && a.rowdegs == b.rowdegs;
  }
};

struct ModuleDecl {
  std::string name, matrix;
  Pos pos;
  friend bool operator==(const ModuleDecl& a, const ModuleDecl& b) { return a.name == b.name && a.matrix == b.matrix; }
};

using Decl = std::variant<RingDecl, MatrixDecl, ModuleDecl>;

struct Arg {
  std::string flag;
  std::optional<std::string> value;
  Pos pos;
  friend bool operator==(const Arg& a, const Arg& b) { return a.flag == b.flag && a.value == b.value; }
};

struct Command {
  std::string name;
  std::vector<Arg> args;
  Pos pos;
  friend bool operator==(const Command& a, const Command& b) { return a.name == b.name && a.args == b.args; }

  const Arg* find(const std::string& flag) const {
    for (const auto& a : args)
      if (a.flag == flag) return &a;
    return nullptr;
  }
};

struct Program {
  std::vector<Decl> decls;
  Command command;
  friend bool operator==(const Program&, const Program&) = default;
};

// ---- parser ----

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Program program() {
    Program prog;
    std::string ring;
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::End) throw ParseError(ErrorKind::Syntax, t.pos, "<end>", "no command");
      if (t.kind != Token::Ident) throw ParseError(ErrorKind::Syntax, t.pos, t.text, "expected a declaration or command");
      if (t.text == "ring") {
        RingDecl r = ring_decl();
        ring = r.name;
        prog.decls.emplace_back(std::move(r));
      } else if (t.text == "matrix") {
        if (ring.empty()) throw ParseError(ErrorKind::Semantic, t.pos, t.text, "matrix before any ring");
        MatrixDecl m = matrix_decl();
        m.ring = ring;
        prog.decls.emplace_back(std::move(m));
      } else if (t.text == "module") {
        prog.decls.emplace_back(module_decl());
      } else {
        prog.command = command();
        break;
      }
    }
    if (peek().kind != Token::End) throw ParseError(ErrorKind::Syntax, peek().pos, peek().text, "text after the command");
    return prog;
  }

  /// A bare command, for command lines given outside the program text.
  Command command_only() {
    if (peek().kind != Token::Ident) throw ParseError(ErrorKind::Syntax, peek().pos, peek().text, "expected a command");
    Command c = command();
    if (peek().kind != Token::End) throw ParseError(ErrorKind::Syntax, peek().pos, peek().text, "text after the command");
    return c;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  static std::string shown(const Token& t) { return t.kind == Token::End ? "<end>" : t.text; }
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(ErrorKind::Syntax, t.pos, shown(t), what);
  }
  Token expect_punct(char c) {
    Token t = next();
    if (t.kind != Token::Punct || t.text[0] != c) fail(t, std::string("expected '") + c + "'");
    return t;
  }
  Token expect_ident(const std::string& word = {}) {
    Token t = next();
    if (t.kind != Token::Ident || (!word.empty() && t.text != word))
      fail(t, word.empty() ? "expected a name" : "expected '" + word + "'");
    return t;
  }
  std::int64_t expect_int(bool allow_sign) {
    bool neg = false;
    if (allow_sign && peek().kind == Token::Punct && (peek().text == "-" || peek().text == "+")) neg = next().text == "-";
    Token t = next();
    if (t.kind != Token::Int) fail(t, "expected an integer");
    const auto x = static_cast<std::int64_t>(std::stoull(t.text));
    return neg ? -x : x;
  }

  RingDecl ring_decl() {
    RingDecl r;
    r.pos = next().pos;
    r.name = expect_ident().text;
    Token k = expect_ident();
    if (k.text != "S" && k.text != "E") fail(k, "expected S or E");
    r.kind = k.text[0];
    expect_ident("p");
    expect_punct('=');
    r.p = expect_int(false);
    expect_ident("v");
    expect_punct('=');
    const Token vt = peek();
    const auto v = expect_int(false);
    if (v < 1 || v > 7) throw ParseError(ErrorKind::Semantic, vt.pos, vt.text, "v must lie in 1..7");
    r.v = static_cast<int>(v);
    expect_punct(';');
    return r;
  }

  MatrixDecl matrix_decl() {
    MatrixDecl m;
    m.pos = next().pos;
    m.name = expect_ident().text;
    expect_punct('[');
    do {
      expect_punct('[');
      std::vector<PolyText> row;
      do row.push_back(poly());
      while (accept(','));
      expect_punct(']');
      m.rows.push_back(std::move(row));
    } while (accept(','));
    expect_punct(']');
    expect_ident("rowdegs");
    expect_punct('[');
    while (!(peek().kind == Token::Punct && peek().text == "]")) m.rowdegs.push_back(static_cast<int>(expect_int(true)));
    expect_punct(']');
    expect_punct(';');
    return m;
  }

  ModuleDecl module_decl() {
    ModuleDecl d;
    d.pos = next().pos;
    d.name = expect_ident().text;
    expect_punct('=');
    expect_ident("coker");
    d.matrix = expect_ident().text;
    expect_punct(';');
    return d;
  }

  Command command() {
    Command c;
    const Token t = next();
    c.name = t.text;
    c.pos = t.pos;
    while (peek().kind == Token::Flag) {
      Arg a;
      const Token f = next();
      a.flag = f.text;
      a.pos = f.pos;
      if (peek().kind == Token::Ident) {
        a.value = next().text;
      } else if (peek().kind == Token::Int || (peek().kind == Token::Punct && peek().text == "-" && peek(1).kind == Token::Int)) {
        std::string s = std::to_string(expect_int(true));
        if (accept(':')) s += ":" + std::to_string(expect_int(true));
        a.value = s;
      }
      c.args.push_back(std::move(a));
    }
    accept(';');
    return c;
  }

  bool accept(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PolyText poly() {
    PolyText p;
    p.pos = peek().pos;
    if (peek().kind == Token::Int && peek().text == "0" && !is_product_next(1)) {
      next();
      return p;
    }
    bool negative = false;
    if (peek().kind == Token::Punct && (peek().text == "-" || peek().text == "+")) negative = next().text == "-";
    while (true) {
      Term t = term();
      t.negative = negative;
      p.terms.push_back(std::move(t));
      if (peek().kind == Token::Punct && (peek().text == "-" || peek().text == "+"))
        negative = next().text == "-";
      else
        break;
    }
    return p;
  }

  bool is_product_next(std::size_t k) const {
    const Token& t = peek(k);
    return t.kind == Token::Punct && (t.text == "*" || t.text == "^");
  }

  Term term() {
    Term t;
    bool first = true;
    do {
      const Token f = next();
      if (f.kind == Token::Int) {
        if (!first) fail(f, "coefficient must come first");
        t.coef = std::stoull(f.text);
        t.explicit_coef = true;
      } else if (f.kind == Token::Ident) {
        Factor x;
        x.pos = f.pos;
        if (f.text.size() < 2 || !std::all_of(f.text.begin() + 1, f.text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          throw ParseError(ErrorKind::Lexical, f.pos, f.text, "expected a variable like x0 or e2");
        x.symbol = f.text[0];
        if (x.symbol != 'x' && x.symbol != 'e') throw ParseError(ErrorKind::Lexical, f.pos, f.text, "variables are x<i> or e<i>");
        if (f.text.size() > 3) throw ParseError(ErrorKind::Lexical, f.pos, f.text, "variable index too large");
        x.index = std::stoi(f.text.substr(1));
        if (accept('^')) {
          const Token e = next();
          if (e.kind != Token::Int || e.text.size() > 3) fail(e, "expected an exponent");
          x.exponent = std::stoi(e.text);
        }
        t.factors.push_back(x);
      } else {
        fail(f, "expected a coefficient or variable");
      }
      first = false;
    } while (accept('*'));
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline Program parse(const std::string& src) { return Parser(src).program(); }
inline Command parse_command(const std::string& src) { return Parser(src).command_only(); }

// ---- rendering ----

inline std::string render(const PolyText& p) {
  if (p.terms.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < p.terms.size(); ++k) {
    const Term& t = p.terms[k];
    if (t.negative) s += '-';
    else if (k > 0) s += '+';
    std::string body;
    if (t.explicit_coef || t.factors.empty()) body = std::to_string(t.coef);
    for (const auto& f : t.factors) {
      if (!body.empty()) body += '*';
      body += f.symbol + std::to_string(f.index);
      if (f.exponent != 1) body += '^' + std::to_string(f.exponent);
    }
    s += body;
  }
  return s;
}

inline std::string render(const Command& c) {
  std::string s = c.name;
  for (const auto& a : c.args) {
    s += " --" + a.flag;
    if (a.value) s += ' ' + *a.value;
  }
  return s;
}

/// One declaration per line, rows of a matrix on separate lines.
inline std::string render(const Program& prog) {
  std::ostringstream os;
  for (const auto& d : prog.decls) {
    if (const auto* r = std::get_if<RingDecl>(&d)) {
      os << "ring " << r->name << ' ' << r->kind << " p=" << r->p << " v=" << r->v << ";\n";
    } else if (const auto* m = std::get_if<MatrixDecl>(&d)) {
      os << "matrix " << m->name << " [";
      for (std::size_t i = 0; i < m->rows.size(); ++i) {
        os << (i ? ",\n  [" : "\n  [");
        for (std::size_t j = 0; j < m->rows[i].size(); ++j) os << (j ? ", " : "") << render(m->rows[i][j]);
        os << ']';
      }
      os << "\n] rowdegs [";
      for (std::size_t i = 0; i < m->rowdegs.size(); ++i) os << (i ? " " : "") << m->rowdegs[i];
      os << "];\n";
    } else {
      const auto& mod = std::get<ModuleDecl>(d);
      os << "module " << mod.name << " = coker " << mod.matrix << ";\n";
    }
  }
  os << render(prog.command) << '\n';
  return os.str();
}

// ---- loading ----

using Matrix = std::variant<SMap, EMap>;

/// Declarations turned into values. The subject of the command is the last
/// declared module, or the last matrix when there is no module.
struct Session {
  std::int64_t p = 0;
  std::map<std::string, RingDecl> rings;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, FPModuleS> modules;
  std::string subject;
  Command command;

  bool subject_is_module() const { return modules.count(subject) > 0; }
  const FPModuleS& module() const {
    if (!subject_is_module()) throw ParseError(ErrorKind::Semantic, command.pos, command.name, "the command needs a module over S");
    return modules.at(subject);
  }
  const EMap& ematrix() const {
    auto it = matrices.find(subject);
    if (subject_is_module() || it == matrices.end() || !std::holds_alternative<EMap>(it->second))
      throw ParseError(ErrorKind::Semantic, command.pos, command.name, "the command needs a matrix over E");
    return std::get<EMap>(it->second);
  }
};

namespace detail {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

template <class Alg>
Poly<Alg> build_poly(const Alg& alg, const PolyText& text, std::int64_t p) {
  using Mono = typename Alg::Mono;
  std::vector<typename Poly<Alg>::Term> terms;
  for (const auto& t : text.terms) {
    Scalar c(static_cast<std::int64_t>(t.coef % static_cast<std::uint64_t>(p)));
    if (t.negative) c = -c;
    Mono m = Alg::one();
    bool zero = false;
    for (const auto& f : t.factors) {
      const char want = Alg::kind == RingKind::Exterior ? 'e' : 'x';
      const std::string tok = f.symbol + std::to_string(f.index);
      if (f.symbol != want)
        throw ParseError(ErrorKind::Semantic, f.pos, tok, std::string("variables of this ring are ") + want + "<i>");
      if (f.index >= alg.v) throw ParseError(ErrorKind::Semantic, f.pos, tok, "variable index out of range");
      for (int k = 0; k < f.exponent && !zero; ++k) {
        Mono var;
        if constexpr (Alg::kind == RingKind::Exterior) var = Mono{1} << f.index;
        else var = SymmetricAlgebra::variable(f.index);
        if constexpr (Alg::kind == RingKind::Symmetric)
          if (SymmetricAlgebra::exponent(m, f.index) == 255)
            throw ParseError(ErrorKind::Semantic, f.pos, tok, "exponent too large");
        const auto prod = Alg::mul(m, var);
        if (!prod) zero = true;
        else m = prod->first, c = prod->second < 0 ? -c : c;
      }
    }
    if (!zero) terms.emplace_back(m, c);
  }
  return Poly<Alg>::from_terms(alg, std::move(terms));
}

template <class Alg>
GradedMap<Alg> build_matrix(const Alg& alg, const MatrixDecl& m, std::int64_t p) {
  const std::size_t nr = m.rows.size(), nc = m.rows.front().size();
  for (const auto& row : m.rows)
    if (row.size() != nc) throw ParseError(ErrorKind::Semantic, row.front().pos, m.name, "rows of different lengths");
  if (m.rowdegs.size() != nr)
    throw ParseError(ErrorKind::Semantic, m.pos, m.name, "rowdegs lists " + std::to_string(m.rowdegs.size()) + " degrees for " + std::to_string(nr) + " rows");
  std::vector<std::vector<Poly<Alg>>> e(nr);
  std::vector<std::optional<int>> coldeg(nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) {
      const PolyText& text = m.rows[r][c];
      e[r].push_back(build_poly(alg, text, p));
      const auto& q = e[r].back();
      if (q.is_zero()) continue;
      if (!q.is_homogeneous()) throw ParseError(ErrorKind::Homogeneity, text.pos, render(text), "polynomial is not homogeneous");
      const int deg = m.rowdegs[r] + *q.degree();
      if (coldeg[c] && *coldeg[c] != deg)
        throw ParseError(ErrorKind::Homogeneity, text.pos, render(text),
                         "entry degree puts column " + std::to_string(c) + " in degree " + std::to_string(deg) +
                             " but an earlier row puts it in " + std::to_string(*coldeg[c]));
      coldeg[c] = deg;
    }
  std::vector<int> src;
  for (const auto& d : coldeg) src.push_back(d.value_or(m.rowdegs.front()));
  GradedMap<Alg> out(GradedFree<Alg>(alg, src), GradedFree<Alg>(alg, m.rowdegs));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = e[r][c];
  return out;
}

}  // namespace detail

/// Checks names, primes and homogeneity, and sets the working prime.
inline Session load(const Program& prog) {
  Session s;
  auto fresh = [&](const std::string& name, Pos pos) {
    if (s.rings.count(name) || s.matrices.count(name) || s.modules.count(name))
      throw ParseError(ErrorKind::Semantic, pos, name, "name declared twice");
  };
  for (const auto& d : prog.decls) {
    if (const auto* r = std::get_if<RingDecl>(&d)) {
      fresh(r->name, r->pos);
      if (!detail::is_prime(r->p) || r->p == 2 || r->p >= (std::int64_t{1} << 31))
        throw ParseError(ErrorKind::Semantic, r->pos, std::to_string(r->p), "p must be an odd prime below 2^31");
      if (s.p && s.p != r->p) throw ParseError(ErrorKind::Semantic, r->pos, std::to_string(r->p), "all rings must share one prime");
      s.p = r->p;
      PrimeField::set_prime(static_cast<std::uint32_t>(r->p));
      s.rings[r->name] = *r;
    } else if (const auto* m = std::get_if<MatrixDecl>(&d)) {
      fresh(m->name, m->pos);
      const RingDecl& ring = s.rings.at(m->ring);
      if (ring.kind == 'S') s.matrices.emplace(m->name, detail::build_matrix(SymmetricAlgebra(ring.v), *m, s.p));
      else s.matrices.emplace(m->name, detail::build_matrix(ExteriorAlgebra(ring.v), *m, s.p));
      s.subject = m->name;
    } else {
      const auto& mod = std::get<ModuleDecl>(d);
      fresh(mod.name, mod.pos);
      auto it = s.matrices.find(mod.matrix);
      if (it == s.matrices.end()) throw ParseError(ErrorKind::Semantic, mod.pos, mod.matrix, "unknown matrix");
      if (!std::holds_alternative<SMap>(it->second))
        throw ParseError(ErrorKind::Semantic, mod.pos, mod.matrix, "coker needs a matrix over S");
      s.modules.emplace(mod.name, FPModuleS(std::get<SMap>(it->second)));
      s.subject = mod.name;
    }
  }
  if (s.subject.empty()) throw ParseError(ErrorKind::Semantic, prog.command.pos, prog.command.name, "nothing declared for the command to act on");
  s.command = prog.command;
  return s;
}

// ---- canonical text for values ----

inline std::string ring_text(const std::string& name, char kind, std::int64_t p, int v) {
  return "ring " + name + ' ' + kind + " p=" + std::to_string(p) + " v=" + std::to_string(v) + ";\n";
}

/// A matrix value in the layout of render(Program). A map without columns
/// is written with one zero column, which presents the same cokernel.
template <class Alg>
std::string matrix_text(const std::string& name, const GradedMap<Alg>& f) {
  if (f.rows() == 0) throw std::invalid_argument("matrix_text: a matrix needs at least one row");
  std::ostringstream os;
  os << "matrix " << name << " [";
  for (std::size_t r = 0; r < f.rows(); ++r) {
    os << (r ? ",\n  [" : "\n  [");
    for (std::size_t c = 0; c < f.cols(); ++c) os << (c ? ", " : "") << f.at(r, c).render();
    if (f.cols() == 0) os << '0';
    os << ']';
  }
  os << "\n] rowdegs [";
  for (std::size_t r = 0; r < f.rows(); ++r) os << (r ? " " : "") << f.target().degrees[r];
  os << "];\n";
  return os.str();
}

}  // namespace bgg::dsl
