// Parser for ground normal logic programs.
//
// Grammar (one statement per `.`):
//   rule       := atom ":-" body "." | atom "." | ":-" body "."
//   body       := literal ("," literal)*
//   literal    := ["not"] atom
//   atom       := lowercase ident, optionally with parenthesized constant
//                 arguments; `move(a,b)` is a single opaque atom name
//   query      := "?-" body "." (accepted by parse_query / parse_file)
// `%` starts a comment running to end of line.
//
// Names starting with "chk_" and the name "nmr_check" are reserved for
// generated consistency checks and rejected in input.
#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dccasp/program.hpp"

namespace dccasp {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::uint32_t line, std::uint32_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        message(std::move(msg)),
        line(line),
        column(column) {}

  std::string message;
  std::uint32_t line;
  std::uint32_t column;
};

namespace detail {

enum class Tok { Ident, Not, Implies, QueryMark, Comma, Dot, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;           // atom spelling for Ident
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.column = col_;
    if (eof()) return t;
    char c = peek();
    if (c == ',') {
      advance();
      t.kind = Tok::Comma;
      return t;
    }
    if (c == '.') {
      advance();
      t.kind = Tok::Dot;
      return t;
    }
    if (c == ':') {
      advance();
      if (eof() || peek() != '-') fail("expected '-' after ':'");
      advance();
      t.kind = Tok::Implies;
      return t;
    }
    if (c == '?') {
      advance();
      if (eof() || peek() != '-') fail("expected '-' after '?'");
      advance();
      t.kind = Tok::QueryMark;
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.text = lex_atom();
      t.kind = t.text == "not" ? Tok::Not : Tok::Ident;
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string lex_ident() {
    std::string s;
    while (!eof() && ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }

  // Atom name, optionally with a balanced argument list. The arguments are
  // constants only; the full spelling (whitespace stripped) is the name.
  std::string lex_atom() {
    std::string name = lex_ident();
    if (eof() || peek() != '(') return name;
    name += '(';
    advance();
    int depth = 1;
    bool expect_term = true;
    while (depth > 0) {
      if (eof()) fail("unterminated argument list");
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '(') {
        ++depth;
        name += c;
        advance();
        expect_term = true;
        continue;
      }
      if (c == ')') {
        if (expect_term) fail("expected constant before ')'");
        --depth;
        name += c;
        advance();
        continue;
      }
      if (c == ',') {
        if (expect_term) fail("expected constant before ','");
        name += c;
        advance();
        expect_term = true;
        continue;
      }
      if (std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c))) {
        if (!expect_term) fail("expected ',' or ')' in argument list");
        while (!eof() && ident_char(peek())) {
          name += peek();
          advance();
        }
        expect_term = false;
        continue;
      }
      fail(std::string("invalid character '") + c + "' in argument list");
    }
    return name;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, Program& prog) : lex_(src), prog_(prog) {
    shift();
  }

  // Statements only; a query directive is a syntax error.
  void parse_statements() {
    while (cur_.kind != Tok::End) statement(/*allow_query=*/false);
  }

  // Statements plus at most one `?- ....` directive, anywhere in the file.
  std::optional<Query> parse_file() {
    while (cur_.kind != Tok::End) statement(/*allow_query=*/true);
    return std::move(file_query_);
  }

  Query parse_query_text() {
    if (cur_.kind == Tok::QueryMark) shift();
    Query q;
    q.goals = body();
    if (cur_.kind == Tok::Dot) shift();
    if (cur_.kind != Tok::End)
      fail("unexpected input after query");
    return q;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    shift();
  }

  AtomId atom() {
    if (cur_.kind == Tok::Not) fail("'not' is not allowed here");
    if (cur_.kind != Tok::Ident) fail("expected atom");
    if (cur_.text == "nmr_check" || cur_.text.rfind("chk_", 0) == 0)
      fail("'" + cur_.text + "' is reserved for generated checks");
    AtomId id = prog_.intern(cur_.text);
    shift();
    return id;
  }

  Literal literal() {
    bool positive = true;
    if (cur_.kind == Tok::Not) {
      positive = false;
      shift();
    }
    return Literal(atom(), positive);
  }

  std::vector<Literal> body() {
    std::vector<Literal> lits;
    lits.push_back(literal());
    while (cur_.kind == Tok::Comma) {
      shift();
      lits.push_back(literal());
    }
    return lits;
  }

  void statement(bool allow_query) {
    if (cur_.kind == Tok::QueryMark) {
      if (!allow_query) fail("query directive is not allowed in a program");
      Token mark = cur_;
      shift();
      Query q;
      q.goals = body();
      expect(Tok::Dot, "'.'");
      if (file_query_)
        throw ParseError("multiple query directives", mark.line, mark.column);
      file_query_ = std::move(q);
      return;
    }
    if (cur_.kind == Tok::Implies) {
      shift();
      std::vector<Literal> b = body();
      expect(Tok::Dot, "'.'");
      prog_.add_rule(std::nullopt, std::move(b));
      return;
    }
    if (cur_.kind == Tok::Not) fail("'not' is not allowed in a rule head");
    AtomId head = atom();
    if (cur_.kind == Tok::Dot) {
      shift();
      prog_.add_rule(head, {});
      return;
    }
    expect(Tok::Implies, "':-' or '.'");
    std::vector<Literal> b = body();
    expect(Tok::Dot, "'.'");
    prog_.add_rule(head, std::move(b));
  }

  Lexer lex_;
  Program& prog_;
  Token cur_;
  std::optional<Query> file_query_;
};

}  // namespace detail

// Appends the statements in `text` to an existing program (used when the
// CLI concatenates several input files into one program).
inline void parse_into(Program& prog, std::string_view text) {
  detail::Parser(text, prog).parse_statements();
}

inline Program parse_program(std::string_view text) {
  Program p;
  parse_into(p, text);
  return p;
}

// Query text is `?- l1, ..., ln.` or bare `l1, ..., ln`; new atoms intern
// into `prog` as ruleless atoms.
inline Query parse_query(std::string_view text, Program& prog) {
  detail::Parser parser(text, prog);
  Query q = parser.parse_query_text();
  if (q.goals.empty()) throw ParseError("empty query", 1, 1);
  return q;
}

// Program file with an optional single embedded `?- ....` directive.
inline std::optional<Query> parse_file_into(Program& prog,
                                            std::string_view text) {
  return detail::Parser(text, prog).parse_file();
}

}  // namespace dccasp
