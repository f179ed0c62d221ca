#include "lowdefect/expression.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lowdefect {

namespace {

void collect_variables(const Expression& e, int index, std::vector<unsigned>& out) {
  const auto& n = e.node(index);
  switch (n.kind) {
    case Expression::Kind::Constant:
      break;
    case Expression::Kind::Product:
      collect_variables(e, n.left, out);
      collect_variables(e, n.right, out);
      break;
    case Expression::Kind::Step:
      collect_variables(e, n.left, out);
      out.push_back(n.variable);
      break;
  }
}

}  // namespace

Expression Expression::constant(std::uint64_t value) {
  if (value < 1) throw Error(Error::Kind::Structural, "constants must be positive");
  Expression e;
  e.nodes_.push_back({Kind::Constant, value, 0, -1, -1});
  return e;
}

Expression Expression::product(const Expression& a, const Expression& b) {
  auto va = a.variables();
  auto vb = b.variables();
  std::vector<unsigned> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  if (!common.empty())
    throw Error(Error::Kind::Structural,
                "product factors share variable x" + std::to_string(common.front()));
  Expression e;
  e.nodes_ = a.nodes_;
  int shift = static_cast<int>(e.nodes_.size());
  for (Node n : b.nodes_) {
    if (n.left >= 0) n.left += shift;
    if (n.right >= 0) n.right += shift;
    e.nodes_.push_back(n);
  }
  e.nodes_.push_back({Kind::Product, 0, 0, shift - 1, static_cast<int>(e.nodes_.size()) - 1});
  return e;
}

Expression Expression::step(const Expression& inner, unsigned variable, std::uint64_t addend) {
  if (variable < 1) throw Error(Error::Kind::Structural, "variable ids start at 1");
  if (addend < 1) throw Error(Error::Kind::Structural, "step addend must be positive");
  auto vars = inner.variables();
  if (std::binary_search(vars.begin(), vars.end(), variable))
    throw Error(Error::Kind::Structural,
                "variable x" + std::to_string(variable) + " already used");
  Expression e;
  e.nodes_ = inner.nodes_;
  e.nodes_.push_back(
      {Kind::Step, addend, variable, static_cast<int>(e.nodes_.size()) - 1, -1});
  return e;
}

unsigned Expression::degree() const {
  unsigned d = 0;
  for (const Node& n : nodes_)
    if (n.kind == Kind::Step) ++d;
  return d;
}

std::vector<unsigned> Expression::variables() const {
  std::vector<unsigned> out;
  collect_variables(*this, root_index(), out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Printing: factors of a product are juxtaposed; a step factor is
// parenthesized; two adjacent integer factors are separated by a space.
std::string print(const Expression& e, int index) {
  const auto& n = e.node(index);
  switch (n.kind) {
    case Expression::Kind::Constant:
      return std::to_string(n.value);
    case Expression::Kind::Product: {
      std::string l = print(e, n.left);
      std::string r = print(e, n.right);
      if (e.node(n.left).kind == Expression::Kind::Step) l = "(" + l + ")";
      if (e.node(n.right).kind == Expression::Kind::Step) r = "(" + r + ")";
      bool need_space = !l.empty() && !r.empty() &&
                        std::isdigit(static_cast<unsigned char>(l.back())) &&
                        std::isdigit(static_cast<unsigned char>(r.front()));
      return l + (need_space ? " " : "") + r;
    }
    case Expression::Kind::Step: {
      std::string inner = print(e, n.left);
      if (e.node(n.left).kind == Expression::Kind::Step) inner = "(" + inner + ")";
      return inner + "x" + std::to_string(n.variable) + "+" + std::to_string(n.value);
    }
  }
  return {};
}

}  // namespace

std::string Expression::to_string() const { return print(*this, root_index()); }

unsigned long long Expression::complexity(const ComplexityTable& table) const {
  unsigned long long total = 0;
  for (const Node& n : nodes_) {
    if (n.kind == Kind::Constant || n.kind == Kind::Step) total += table.complexity(n.value);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Parser.  Phase 1 reads a generic arithmetic form (sums of juxtaposed
// factors); phase 2 converts it to the low-defect AST, rejecting shapes the
// construction rules cannot produce.

namespace {

struct Token {
  enum Type { Int, Var, LParen, RParen, Plus, End } type;
  std::uint64_t value = 0;  // Int value or Var index
  std::size_t column = 0;   // 1-based position in the input
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t col = pos_ + 1;
    if (pos_ >= text_.size()) return {Token::End, 0, col};
    char c = text_[pos_];
    if (c == '(') { ++pos_; return {Token::LParen, 0, col}; }
    if (c == ')') { ++pos_; return {Token::RParen, 0, col}; }
    if (c == '+') { ++pos_; return {Token::Plus, 0, col}; }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("variable needs an index (x1, x2, ...)", 1, col);
      std::uint64_t v = read_number(col);
      if (v < 1) throw ParseError("variable index must be at least 1", 1, col);
      return {Token::Var, v, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {Token::Int, read_number(col), col};
    throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
  }

 private:
  std::uint64_t read_number(std::size_t col) {
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) throw ParseError("integer literal too large", 1, col);
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Generic parse tree.
struct Raw {
  enum Type { Int, Var, Sum, Prod } type;
  std::uint64_t value = 0;        // Int / Var
  std::size_t column = 0;
  std::vector<Raw> items;         // Sum terms or Prod factors
};

class RawParser {
 public:
  explicit RawParser(std::string_view text) : lexer_(text) { advance(); }

  Raw parse() {
    Raw r = sum();
    if (tok_.type != Token::End)
      throw ParseError("trailing input", 1, tok_.column);
    return r;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  Raw sum() {
    Raw r{Raw::Sum, 0, tok_.column, {}};
    r.items.push_back(prod());
    while (tok_.type == Token::Plus) {
      advance();
      r.items.push_back(prod());
    }
    if (r.items.size() == 1) return std::move(r.items.front());
    return r;
  }

  Raw prod() {
    Raw r{Raw::Prod, 0, tok_.column, {}};
    while (true) {
      if (tok_.type == Token::Int) {
        r.items.push_back({Raw::Int, tok_.value, tok_.column, {}});
        advance();
      } else if (tok_.type == Token::Var) {
        r.items.push_back({Raw::Var, tok_.value, tok_.column, {}});
        advance();
      } else if (tok_.type == Token::LParen) {
        std::size_t col = tok_.column;
        advance();
        Raw inner = sum();
        if (tok_.type != Token::RParen) throw ParseError("missing ')'", 1, tok_.column);
        advance();
        inner.column = col;
        r.items.push_back(std::move(inner));
      } else {
        break;
      }
    }
    if (r.items.empty())
      throw ParseError("expected a constant, variable or '('", 1, tok_.column);
    if (r.items.size() == 1) return std::move(r.items.front());
    return r;
  }

  Lexer lexer_;
  Token tok_;
};

[[noreturn]] void structural(const std::string& message) {
  throw Error(Error::Kind::Structural, message);
}

Expression lower(const Raw& raw, std::set<unsigned>& used);

// A product's factors, flattened; a single non-product item yields one factor.
const std::vector<Raw>& factors_of(const Raw& raw, std::vector<Raw>& storage) {
  if (raw.type == Raw::Prod) return raw.items;
  storage.clear();
  storage.push_back(raw);
  return storage;
}

Expression lower_product(const std::vector<Raw>& factors, std::size_t count,
                         std::set<unsigned>& used) {
  // count factors from the front; a variable anywhere here is not attached
  // to a step, which the construction rules cannot produce.
  Expression result = Expression::constant(1);
  bool first = true;
  for (std::size_t i = 0; i < count; ++i) {
    const Raw& f = factors[i];
    if (f.type == Raw::Var)
      structural("variable x" + std::to_string(f.value) +
                 " must be followed by '+ constant' (a bare f*x is augmented, not low-defect)");
    Expression e = lower(f, used);
    result = first ? std::move(e) : Expression::product(result, e);
    first = false;
  }
  if (first) structural("empty product");
  return result;
}

Expression lower(const Raw& raw, std::set<unsigned>& used) {
  switch (raw.type) {
    case Raw::Int:
      if (raw.value < 1) structural("constants must be positive");
      return Expression::constant(raw.value);
    case Raw::Var:
      structural("a bare variable is not a low-defect expression");
    case Raw::Prod:
      return lower_product(raw.items, raw.items.size(), used);
    case Raw::Sum: {
      // Only inner*x + c is constructible.
      if (raw.items.size() != 2)
        structural("sums other than inner*x + constant are not low-defect");
      const Raw& lhs = raw.items[0];
      const Raw& rhs = raw.items[1];
      if (rhs.type != Raw::Int)
        structural("the addend of a step must be an integer constant");
      if (rhs.value < 1) structural("step addend must be positive");
      std::vector<Raw> storage;
      const std::vector<Raw>& factors = factors_of(lhs, storage);
      if (factors.empty() || factors.back().type != Raw::Var)
        structural("the left side of '+' must end in a variable (inner*x + c)");
      unsigned var = static_cast<unsigned>(factors.back().value);
      if (factors.back().value > 1000000) structural("variable index too large");
      if (!used.insert(var).second)
        structural("variable x" + std::to_string(var) + " used more than once");
      if (factors.size() == 1)
        structural("a step needs a base expression (write 1x" + std::to_string(var) +
                   "+c for base 1)");
      Expression inner = lower_product(factors, factors.size() - 1, used);
      return Expression::step(inner, var, rhs.value);
    }
  }
  structural("unreachable");
}

}  // namespace

Expression parse_expression(std::string_view text) {
  Raw raw = RawParser(text).parse();
  std::set<unsigned> used;
  return lower(raw, used);
}

}  // namespace lowdefect
