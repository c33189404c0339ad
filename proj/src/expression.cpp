#include "partrans/expression.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>

#include "partrans/errors.hpp"

namespace partrans {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const CurveModel& model) : text_(text), model_(model) {}

  ExprNode parse() {
    ExprNode node = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(pos_, message); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "' but found '" + std::string(1, text_[pos_]) + "'"
                               : "expected '" + std::string(1, c) + "' at end of input");
    }
  }

  std::string name() {
    skip();
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string token(text_.substr(start, pos_ - start));
    errno = 0;
    long value = std::strtol(token.c_str(), nullptr, 10);
    if (errno == ERANGE) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  bool at_digit() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }

  ExprNode expr() {
    ExprNode first = atom();
    if (peek() != '*') return first;
    ExprNode product;
    product.kind = ExprNode::Kind::Product;
    product.position = first.position;
    product.children.push_back(std::move(first));
    while (accept('*')) product.children.push_back(atom());
    return product;
  }

  ExprNode atom() {
    ExprNode base = primary();
    if (!accept('^')) return base;
    ExprNode node;
    node.kind = ExprNode::Kind::Power;
    node.position = base.position;
    node.exponent = integer();
    node.children.push_back(std::move(base));
    return node;
  }

  ExprNode primary() {
    skip();
    ExprNode node;
    node.position = pos_;
    if (accept('(')) {
      node = expr();
      expect(')');
      return node;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (!is_name_start(text_[pos_])) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    std::size_t start = pos_;
    std::string word = name();
    if (word == "id") {
      node.kind = ExprNode::Kind::Identity;
    } else if (word == "D" && (peek() == '-' || peek() == '+')) {
      node.kind = text_[pos_] == '-' ? ExprNode::Kind::Dual : ExprNode::Kind::Identity;
      ++pos_;
    } else if (word == "S" && peek() == '(') {
      expect('(');
      std::size_t at = pos_;
      std::string aut = name();
      try {
        node.automorphism = model_.automorphism_index(aut);
      } catch (const UnknownName&) {
        pos_ = at;
        throw;
      }
      node.kind = ExprNode::Kind::Pullback;
      expect(')');
    } else if (word == "T" && peek() == '(') {
      expect('(');
      node.kind = ExprNode::Kind::Tensor;
      node.line = line();
      expect(')');
    } else if (word == "H" && peek() == '(') {
      expect('(');
      node.kind = ExprNode::Kind::Hecke;
      node.divisor = divisor();
      expect(')');
    } else if (word == "A" && (peek() == '(' || peek() == '[')) {
      node.kind = ExprNode::Kind::Jacobian;
      if (accept('(')) {
        node.matrix = matrix();
        expect(')');
      } else {
        node.matrix = matrix();
      }
    } else {
      pos_ = start;
      fail("unknown generator '" + word + "'");
    }
    return node;
  }

  LineBundleClass line() {
    if (peek() == 'O') {
      ++pos_;
      expect('(');
      Divisor d = divisor();
      expect(')');
      return of_divisor(model_, d);
    }
    bool wrapped = accept('(');
    long degree = integer();
    expect(',');
    expect('[');
    std::vector<Rational> coords;
    if (!accept(']')) {
      do {
        coords.push_back(rational());
      } while (accept(','));
      expect(']');
    }
    if (wrapped) expect(')');
    if (coords.size() != model_.jac_dim()) {
      throw DimensionMismatch("line class has " + std::to_string(coords.size()) + " Jacobian coordinates, model needs " +
                              std::to_string(model_.jac_dim()));
    }
    return {degree, JacobianElement(std::move(coords))};
  }

  Rational rational() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != ')') ++pos_;
    std::string_view token = text_.substr(start, pos_ - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    try {
      return parse_rational(token);
    } catch (const ParseError& e) {
      throw ParseError("position " + std::to_string(start), e.what());
    }
  }

  Divisor divisor() {
    Divisor d(model_.num_points());
    long sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    term(d, sign);
    while (true) {
      if (accept('+')) {
        term(d, 1);
      } else if (accept('-')) {
        term(d, -1);
      } else {
        break;
      }
    }
    return d;
  }

  void term(Divisor& d, long sign) {
    long coefficient = 1;
    if (at_digit()) {
      coefficient = integer();
      if (!accept('*')) {
        if (coefficient == 0) return;  // the zero divisor "0"
        fail("expected '*' after a coefficient");
      }
    }
    std::size_t at = pos_;
    std::string point = name();
    std::size_t index;
    try {
      index = model_.point_index(point);
    } catch (const UnknownName&) {
      pos_ = at;
      throw;
    }
    d[index] += sign * coefficient;
  }

  IntMatrix matrix() {
    expect('[');
    std::vector<std::vector<Integer>> rows;
    do {
      expect('[');
      std::vector<Integer> row;
      if (!accept(']')) {
        do {
          row.emplace_back(integer());
        } while (accept(','));
        expect(']');
      }
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    const std::size_t n = model_.jac_dim();
    if (rows.size() != n) {
      throw DimensionMismatch("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
    }
    std::vector<Integer> entries;
    for (const auto& row : rows) {
      if (row.size() != n) throw DimensionMismatch("matrix row has " + std::to_string(row.size()) + " entries");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    IntMatrix m(n, n, std::move(entries));
    if (model_.subring() == EndomorphismSubring::Scalar && !m.is_scalar()) {
      throw Error("the model admits only scalar endomorphisms; A(...) needs a matrix k*I");
    }
    return m;
  }

  std::string_view text_;
  const CurveModel& model_;
  std::size_t pos_ = 0;
};

ExtendedTransformation ext_power(const CurveModel& model, const ExtendedTransformation& e, long n) {
  ExtendedTransformation base = n < 0 ? inverse_ext(model, e) : e;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  ExtendedTransformation acc = lift(model, identity_transformation(model), model.reference_det());
  while (k > 0) {
    if (k & 1UL) acc = compose_ext(model, acc, base);
    k >>= 1;
    if (k > 0) base = compose_ext(model, base, base);
  }
  return acc;
}

Element from_extended(ExtendedTransformation e) { return {std::move(e.basic), std::move(e.rho)}; }

}  // namespace

ExprNode parse_expression(std::string_view text, const CurveModel& model) { return Parser(text, model).parse(); }

ExtendedTransformation as_extended(const CurveModel& model, const Element& e) {
  if (e.rho) return make_extended(model, *e.rho, e.basic, model.reference_det());
  return lift(model, e.basic, model.reference_det());
}

Element evaluate(const ExprNode& node, const CurveModel& model) {
  using Kind = ExprNode::Kind;
  switch (node.kind) {
    case Kind::Identity:
      return {identity_transformation(model), std::nullopt};
    case Kind::Dual:
      return {dualization(model), std::nullopt};
    case Kind::Pullback:
      return {pullback_by(model, node.automorphism), std::nullopt};
    case Kind::Tensor:
      return {tensor_by(model, node.line), std::nullopt};
    case Kind::Hecke:
      return {hecke_by(model, node.divisor), std::nullopt};
    case Kind::Jacobian:
      return {identity_transformation(model), JacobianAutomorphism::make(node.matrix, model.rank())};
    case Kind::Power: {
      Element base = evaluate(node.children.front(), model);
      if (!base.extended()) return {power(model, base.basic, node.exponent), std::nullopt};
      return from_extended(ext_power(model, as_extended(model, base), node.exponent));
    }
    case Kind::Product: {
      // merge runs of basic factors before anything is lifted
      std::vector<Element> runs;
      for (const auto& child : node.children) {
        Element e = evaluate(child, model);
        if (!e.extended() && !runs.empty() && !runs.back().extended()) {
          runs.back().basic = compose(model, runs.back().basic, e.basic);
        } else {
          runs.push_back(std::move(e));
        }
      }
      if (runs.size() == 1) return runs.front();
      ExtendedTransformation acc = as_extended(model, runs.front());
      for (std::size_t i = 1; i < runs.size(); ++i) acc = compose_ext(model, acc, as_extended(model, runs[i]));
      return from_extended(std::move(acc));
    }
  }
  throw Error("unreachable expression node");
}

Element evaluate(std::string_view text, const CurveModel& model) { return evaluate(parse_expression(text, model), model); }

std::optional<Divisor> recognize_divisor_class(const CurveModel& model, const LineBundleClass& c) {
  const std::size_t n = model.num_points();
  if (c.is_trivial()) return Divisor(n);
  if (n == 0) return std::nullopt;
  const long degree = c.degree;
  const long base = degree < 0 ? -degree : degree;
  constexpr long kExtra = 4;
  constexpr long kBudget = 200'000;
  long visited = 0;

  Divisor current(n);
  std::optional<Divisor> found;
  // Assign multiplicities point by point, spending the remaining positive and negative mass.
  auto search = [&](auto&& self, std::size_t i, long pos, long neg, const JacobianElement& acc) -> bool {
    if (++visited > kBudget) return true;
    if (i + 1 == n) {
      if (pos > 0 && neg > 0) return false;
      long k = pos - neg;
      JacobianElement total = acc + k * model.point(i).jac_class;
      if (total == c.jac) {
        current[i] = k;
        found = current;
        return true;
      }
      return false;
    }
    for (long k = pos; k >= -neg; --k) {
      current[i] = k;
      long p = k > 0 ? pos - k : pos;
      long q = k < 0 ? neg + k : neg;
      if (self(self, i + 1, p, q, acc + k * model.point(i).jac_class)) return true;
    }
    current[i] = 0;
    return false;
  };
  for (long w = base; w <= base + kExtra && !found && visited <= kBudget; w += 2) {
    search(search, 0, (w + degree) / 2, (w - degree) / 2, JacobianElement::zero(model.jac_dim()));
  }
  return found;
}

std::string format_canonical(const CurveModel& model, const BasicTransformation& t) {
  std::vector<std::string> factors;
  if (t.sigma != model.identity_index()) factors.push_back("S(" + model.automorphism(t.sigma).name + ")");
  if (t.s == -1) factors.emplace_back("D-");
  if (!t.line.is_trivial()) {
    auto d = recognize_divisor_class(model, t.line);
    factors.push_back(d ? "T(O(" + format_divisor(model, *d) + "))" : "T(" + format_line(t.line) + ")");
  }
  if (!t.hecke.is_zero()) factors.push_back("H(" + format_divisor(model, t.hecke) + ")");
  if (factors.empty()) return "id";
  std::string out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out += " * " + factors[i];
  return out;
}

std::string format_canonical(const CurveModel& model, const Element& e) {
  if (!e.rho) return format_canonical(model, e.basic);
  return "A" + format_matrix(e.rho->tilde()) + " * " + format_canonical(model, e.basic);
}

}  // namespace partrans
