#pragma once

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "diffelim/poly/sparse_poly.hpp"

namespace diffelim {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

inline std::string render_monomial(const VarSet& vars, const ExponentVector& e) {
  std::string out;
  for (std::size_t r = 0; r < e.size(); ++r) {
    std::size_t i = vars.index_at_rank(r);
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars.name(i);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

/// Renders in decreasing graded-lex order, e.g. `x1^2*x2 + 3*x1 - 1/2`.
template <class Ring>
std::string render(const SparsePoly<Ring>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    std::string coeff = f.ring().to_string(c);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = render_monomial(f.vars(), e);
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

namespace detail {

/// Recursive-descent parser for polynomial expressions over Q.
class ExprParser {
 public:
  ExprParser(std::string_view text, const VarSet& vars, int line, int column_offset)
      : text_(text), vars_(vars), line_(line), col0_(column_offset) {}

  PolyQ parse_all() {
    PolyQ p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1);
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

  PolyQ constant(const BigRational& q) const { return PolyQ::constant(Rationals{}, vars_, q); }

  PolyQ expr() {
    PolyQ acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  PolyQ term() {
    PolyQ acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        PolyQ d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        if (d.size() != 1 || total_degree(d.terms().front().first) != 0) {
          pos_ = at;
          fail("non-polynomial construct: division by a non-constant expression");
        }
        acc = acc.scaled(1 / d.terms().front().second);
      } else {
        return acc;
      }
    }
  }

  PolyQ unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Exponent exponent_literal() {
    skip_ws();
    std::size_t at = pos_;
    PolyQ e = primary();
    if (e.is_zero()) return 0;
    if (e.size() != 1 || total_degree(e.terms().front().first) != 0) {
      pos_ = at;
      fail("non-polynomial construct: exponent must be a nonnegative integer");
    }
    const BigRational& q = e.terms().front().second;
    if (q.get_den() != 1 || q < 0 || q > 100000) {
      pos_ = at;
      fail("non-polynomial construct: exponent must be a nonnegative integer");
    }
    return static_cast<Exponent>(q.get_num().get_ui());
  }

  PolyQ power() {
    PolyQ base = primary();
    if (accept('^')) return base.pow(exponent_literal());
    return base;
  }

  PolyQ primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PolyQ inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  PolyQ number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    try {
      return constant(parse_rational_literal(text_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  PolyQ variable() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    if (vars_.regime() == Regime::derivative) {
      if (name != vars_.base()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      int order = 0;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        while (pos_ < text_.size() && text_[pos_] == '\'') {
          ++order;
          ++pos_;
        }
      } else if (text_.substr(pos_, 2) == "^(") {
        std::size_t close = text_.find(')', pos_);
        std::string digits(text_.substr(pos_ + 2, close == std::string_view::npos ? 0 : close - pos_ - 2));
        if (close == std::string_view::npos || digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
          fail("malformed derivative order");
        }
        order = std::stoi(digits);
        pos_ = close + 1;
      }
      if (order > vars_.order()) {
        pos_ = start;
        fail("derivative order " + std::to_string(order) + " exceeds " + std::to_string(vars_.order()));
      }
      return PolyQ::variable(Rationals{}, vars_, static_cast<std::size_t>(order));
    }

    if (pos_ < text_.size() && text_[pos_] == '\'') fail("derivative on the right-hand side");
    if (name.size() < 2 || name[0] != 'x' || name.find_first_not_of("0123456789", 1) != std::string::npos) {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    int index = std::stoi(name.substr(1));
    if (index < 1 || index > vars_.n() || vars_.regime() != Regime::state) {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    return PolyQ::variable(Rationals{}, vars_, static_cast<std::size_t>(index - 1));
  }

  std::string_view text_;
  const VarSet& vars_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class Ring>
std::ostream& operator<<(std::ostream& os, const SparsePoly<Ring>& f) {
  return os << render(f);
}

/// Parses a polynomial over Q in the given (state or derivative) variable set.
inline PolyQ parse_poly(std::string_view text, const VarSet& vars, int line = 1, int column_offset = 0) {
  if (vars.regime() == Regime::mixed) throw std::invalid_argument("parse_poly: mixed regime is not parseable");
  return detail::ExprParser(text, vars, line, column_offset).parse_all();
}

}  // namespace diffelim
