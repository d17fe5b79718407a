#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diffelim/ode/system.hpp"
#include "diffelim/poly/io.hpp"

namespace diffelim {

/// Parses a model file: one `x<i>' = <expr>` line per state variable, in any
/// order, with `#` comments and blank lines ignored. Decimal literals are
/// read as exact rationals. Errors carry 1-based line and column.
inline OdeSystem parse_model(std::string_view text) {
  struct Equation {
    int line;
    int column;  // 1-based column where the right-hand side starts
    std::string rhs;
  };
  std::map<int, Equation> equations;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) { throw ParseError(msg, line_no, static_cast<int>(pos) + 1); };
    skip_ws();
    if (pos == line.size()) continue;

    if (line[pos] != 'x') fail("expected an equation of the form x<i>' = <expression>");
    ++pos;
    std::size_t digits = pos;
    while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
    if (digits == pos) fail("expected a variable index after 'x'");
    if (pos - digits > 6) fail("variable index too large");
    const int index = std::stoi(std::string(line.substr(digits, pos - digits)));
    if (index < 1) fail("variable indices start at 1");
    skip_ws();
    if (pos >= line.size() || line[pos] != '\'') fail("expected ' after the variable on the left-hand side");
    ++pos;
    skip_ws();
    if (pos >= line.size() || line[pos] != '=') fail("expected '='");
    ++pos;
    if (equations.count(index)) fail("duplicate equation for x" + std::to_string(index));
    equations[index] = Equation{line_no, static_cast<int>(pos) + 1, std::string(line.substr(pos))};
  }
  if (equations.empty()) throw ParseError("model contains no equations", line_no, 1);

  const int n = static_cast<int>(equations.size());
  for (const auto& [index, eq] : equations)
    if (index > n)
      throw ParseError("equations must cover exactly x1..x" + std::to_string(n) + "; found x" + std::to_string(index),
                       eq.line, 1);
  const VarSet vars = VarSet::state(n);
  std::vector<PolyQ> rhs;
  for (const auto& [index, eq] : equations) rhs.push_back(parse_poly(eq.rhs, vars, eq.line, eq.column - 1));
  return OdeSystem(std::move(rhs));
}

/// Inverse of parse_model: one equation per line.
inline std::string render_model(const OdeSystem& sys) {
  std::string out;
  for (int i = 0; i < sys.n(); ++i)
    out += "x" + std::to_string(i + 1) + "' = " + render(sys.rhs()[static_cast<std::size_t>(i)]) + "\n";
  return out;
}

}  // namespace diffelim
