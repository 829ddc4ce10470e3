#include "ltc/field_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ltc/errors.hpp"

namespace ltc {

enum class Func { kSin, kCos, kExp, kTanh, kAbs };

struct Expression::Node {
  enum class Kind { kNumber, kVariable, kAdd, kSub, kMul, kDiv, kNeg, kPow, kCall };

  Kind kind = Kind::kNumber;
  double value = 0.0;        // kNumber
  std::size_t variable = 0;  // kVariable, 1-based
  unsigned exponent = 0;     // kPow
  Func func = Func::kSin;    // kCall
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

constexpr struct {
  std::string_view name;
  Func func;
} kFunctions[] = {
    {"sin", Func::kSin}, {"cos", Func::kCos}, {"exp", Func::kExp}, {"tanh", Func::kTanh}, {"abs", Func::kAbs},
};

std::string_view func_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Node> parse_all() {
    auto root = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

  std::size_t max_variable() const { return max_variable_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static std::unique_ptr<Node> binary(Kind kind, std::unique_ptr<Node> lhs, std::unique_ptr<Node> rhs) {
    auto node = std::make_unique<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  std::unique_ptr<Node> expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Kind::kAdd, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = binary(Kind::kSub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Kind::kMul, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = binary(Kind::kDiv, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> factor() {
    if (accept('-')) {
      auto node = std::make_unique<Node>();
      node->kind = Kind::kNeg;
      node->lhs = factor();
      return node;
    }
    if (accept('+')) return factor();

    auto b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected unsigned integer exponent after '^'");
      unsigned exponent = 0;
      const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
      if (res.ec != std::errc()) {
        pos_ = start;
        fail("exponent out of range");
      }
      auto node = std::make_unique<Node>();
      node->kind = Kind::kPow;
      node->exponent = exponent;
      node->lhs = std::move(b);
      return node;
    }
    return b;
  }

  std::unique_ptr<Node> base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::unique_ptr<Node> number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark;
        fail("malformed exponent in number");
      }
    }
    auto node = std::make_unique<Node>();
    node->kind = Kind::kNumber;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, node->value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return node;
  }

  std::unique_ptr<Node> identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);

    if (word.size() > 1 && word[0] == 'x') {
      const std::string_view idx = word.substr(1);
      bool all_digits = true;
      for (char d : idx) all_digits = all_digits && std::isdigit(static_cast<unsigned char>(d));
      if (all_digits) {
        std::size_t index = 0;
        const auto res = std::from_chars(idx.data(), idx.data() + idx.size(), index);
        if (res.ec != std::errc() || index == 0) {
          pos_ = start;
          fail("invalid variable '" + std::string(word) + "' (variables are x1, x2, ...)");
        }
        auto node = std::make_unique<Node>();
        node->kind = Kind::kVariable;
        node->variable = index;
        max_variable_ = std::max(max_variable_, index);
        return node;
      }
    }

    for (const auto& entry : kFunctions) {
      if (entry.name == word) {
        expect('(');
        auto node = std::make_unique<Node>();
        node->kind = Kind::kCall;
        node->func = entry.func;
        node->lhs = expr();
        expect(')');
        return node;
      }
    }
    pos_ = start;
    fail("unknown function or variable '" + std::string(word) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_variable_ = 0;
};

double eval(const Node& n, std::span<const double> vars) {
  switch (n.kind) {
    case Kind::kNumber: return n.value;
    case Kind::kVariable:
      if (n.variable > vars.size()) {
        throw std::out_of_range("variable x" + std::to_string(n.variable) + " has no value");
      }
      return vars[n.variable - 1];
    case Kind::kAdd: return eval(*n.lhs, vars) + eval(*n.rhs, vars);
    case Kind::kSub: return eval(*n.lhs, vars) - eval(*n.rhs, vars);
    case Kind::kMul: return eval(*n.lhs, vars) * eval(*n.rhs, vars);
    case Kind::kDiv: {
      const double num = eval(*n.lhs, vars);
      const double den = eval(*n.rhs, vars);
      if (den == 0.0) throw NumericError("division by zero");
      return num / den;
    }
    case Kind::kNeg: return -eval(*n.lhs, vars);
    case Kind::kPow: return std::pow(eval(*n.lhs, vars), static_cast<double>(n.exponent));
    case Kind::kCall: {
      const double a = eval(*n.lhs, vars);
      switch (n.func) {
        case Func::kSin: return std::sin(a);
        case Func::kCos: return std::cos(a);
        case Func::kExp: return std::exp(a);
        case Func::kTanh: return std::tanh(a);
        case Func::kAbs: return std::abs(a);
      }
    }
  }
  throw std::logic_error("corrupt expression tree");
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::kAdd:
    case Kind::kSub: return 1;
    case Kind::kMul:
    case Kind::kDiv: return 2;
    case Kind::kNeg: return 3;
    case Kind::kPow: return 4;
    default: return 5;
  }
}

void print(const Node& n, std::string& out);

void print_child(const Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  const int prec = precedence(n);
  switch (n.kind) {
    case Kind::kNumber: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Kind::kVariable:
      out += 'x';
      out += std::to_string(n.variable);
      return;
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv: {
      const char* op = n.kind == Kind::kAdd ? " + " : n.kind == Kind::kSub ? " - " : n.kind == Kind::kMul ? " * " : " / ";
      // Left-associative: an equal-precedence right operand needs parens.
      print_child(*n.lhs, precedence(*n.lhs) < prec, out);
      out += op;
      print_child(*n.rhs, precedence(*n.rhs) <= prec, out);
      return;
    }
    case Kind::kNeg:
      out += '-';
      print_child(*n.lhs, precedence(*n.lhs) < prec, out);
      return;
    case Kind::kPow:
      print_child(*n.lhs, precedence(*n.lhs) <= prec, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Kind::kCall:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  std::shared_ptr<const Node> root = parser.parse_all();
  return Expression(std::move(root), parser.max_variable());
}

double Expression::evaluate(std::span<const double> vars) const { return eval(*root_, vars); }

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

std::vector<std::string> split_field_list(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(';', start);
    parts.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

VectorField parse_field(const std::vector<std::string>& exprs, Box domain) {
  if (exprs.empty()) throw ParseError("vector field needs at least one coordinate expression");
  const std::size_t dim = exprs.size();
  std::vector<Expression> coords;
  coords.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    try {
      coords.push_back(Expression::parse(exprs[k]));
    } catch (const ParseError& e) {
      throw ParseError("coordinate " + std::to_string(k + 1) + ": " + e.what(), e.line(), e.column());
    }
    if (coords.back().max_variable() > dim) {
      throw ParseError("coordinate " + std::to_string(k + 1) + ": variable x" +
                       std::to_string(coords.back().max_variable()) + " out of range for a " +
                       std::to_string(dim) + "-dimensional field");
    }
  }
  if (domain.size() != dim) {
    throw ParseError("domain has " + std::to_string(domain.size()) + " axes, field has " + std::to_string(dim));
  }

  VectorField field;
  field.dim = dim;
  field.domain = std::move(domain);
  field.eval = [coords = std::move(coords)](const Eigen::VectorXd& x) {
    const std::span<const double> vars(x.data(), static_cast<std::size_t>(x.size()));
    Eigen::VectorXd out(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t k = 0; k < coords.size(); ++k) out[static_cast<Eigen::Index>(k)] = coords[k].evaluate(vars);
    return out;
  };
  return field;
}

bool box_contains(const Box& box, const Eigen::VectorXd& x) noexcept {
  if (static_cast<std::size_t>(x.size()) != box.size()) return false;
  for (std::size_t k = 0; k < box.size(); ++k) {
    const double v = x[static_cast<Eigen::Index>(k)];
    if (!(v >= box[k].lo && v <= box[k].hi)) return false;
  }
  return true;
}

Box parse_box(const std::string& text) {
  Box box;
  std::size_t start = 0;
  auto parse_number = [&](std::size_t from, std::size_t to) {
    while (from < to && text[from] == ' ') ++from;
    while (to > from && text[to - 1] == ' ') --to;
    double v = 0.0;
    const char* first = text.data() + from;
    const char* last = text.data() + to;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (from == to || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw ParseError("domain: malformed number '" + text.substr(from, to - from) + "' at column " +
                           std::to_string(from + 1),
                       1, from + 1);
    }
    return v;
  };
  for (;;) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos || colon >= end) {
      throw ParseError("domain: axis '" + text.substr(start, end - start) + "' is not lo:hi (column " +
                           std::to_string(start + 1) + ")",
                       1, start + 1);
    }
    Interval iv{parse_number(start, colon), parse_number(colon + 1, end)};
    if (iv.lo > iv.hi) {
      throw ParseError("domain: axis " + std::to_string(box.size() + 1) + " has lo > hi", 1, start + 1);
    }
    box.push_back(iv);
    if (end == text.size()) break;
    start = end + 1;
  }
  return box;
}

}  // namespace ltc
