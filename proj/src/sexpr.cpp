#include "lowdefect/sexpr.hpp"

#include <cctype>

namespace lowdefect {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read() {
    skip_space();
    SExpr e = value();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("trailing input", line_, col_);
    return e;
  }

 private:
  SExpr value() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    char c = text_[pos_];
    if (c == '(') {
      SExpr list;
      list.line = line_;
      list.column = col_;
      bump();
      skip_space();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        list.items.push_back(value());
        skip_space();
      }
      if (pos_ >= text_.size()) throw ParseError("missing ')'", line_, col_);
      bump();  // ')'
      return list;
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    SExpr atom;
    atom.is_atom = true;
    atom.line = line_;
    atom.column = col_;
    if (c == '"') {
      atom.quoted = true;
      bump();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') throw ParseError("unterminated string", atom.line, atom.column);
        atom.atom += text_[pos_];
        bump();
      }
      if (pos_ >= text_.size())
        throw ParseError("unterminated string", atom.line, atom.column);
      bump();  // closing quote
      return atom;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"') {
      atom.atom += text_[pos_];
      bump();
    }
    return atom;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) { return Reader(text).read(); }

}  // namespace lowdefect
