#include "ivp/poly_io.hpp"

#include <cctype>
#include <sstream>

namespace ivp {

std::string poly_to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  const auto& ts = p.terms();
  // Canonical storage is ascending; print leading term first.
  for (std::size_t k = ts.size(); k-- > 0;) {
    const Term& t = ts[k];
    bool first = (k + 1 == ts.size());
    Rat c = t.c;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool coeff_printed = false;
    if (t.m.is_one() || !is_one(c)) {
      out << rat_to_string(c);
      coeff_printed = true;
    }
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      if (t.m[v] == 0) continue;
      if (coeff_printed) out << "*";
      out << p.ctx()->name(v);
      if (t.m[v] > 1) out << "^" << t.m[v];
      coeff_printed = true;
    }
  }
  return out.str();
}

namespace {

struct Parser {
  const std::string& s;
  const VarCtx& ctx;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * factor();
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        // Implicit multiplication: "3x", "x y", "2(x+1)".
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected non-negative integer exponent");
      unsigned long e = std::stoul(s.substr(start, pos - start));
      base = base.pow(e);
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      return -factor();
    }
    if (c == '+') {
      ++pos;
      return factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      // Rational literal "p/q": only when the slash is followed by a digit.
      if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
      return Polynomial::constant(ctx, parse_rat(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
        ++pos;
      std::string name = s.substr(start, pos - start);
      auto idx = ctx->index_of(name);
      if (!idx) {
        pos = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ctx, *idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Polynomial parse_poly(const std::string& text, const VarCtx& ctx) {
  Parser p{text, ctx};
  Polynomial result = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return result;
}

nlohmann::json poly_to_json(const Polynomial& p) {
  nlohmann::json j;
  j["variables"] = p.ctx()->names();
  nlohmann::json terms = nlohmann::json::array();
  const auto& ts = p.terms();
  for (std::size_t k = ts.size(); k-- > 0;) {
    nlohmann::json t;
    t["c"] = rat_to_string(ts[k].c);
    std::vector<unsigned> e(p.nvars());
    for (std::size_t v = 0; v < p.nvars(); ++v) e[v] = ts[k].m[v];
    t["e"] = e;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Polynomial poly_from_json(const nlohmann::json& j) {
  VarCtx ctx = VarContext::make(j.at("variables").get<std::vector<std::string>>());
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    Term term;
    term.c = parse_rat(t.at("c").get<std::string>());
    auto e = t.at("e").get<std::vector<unsigned>>();
    if (e.size() != ctx->size()) throw Error("poly_from_json: exponent arity mismatch");
    for (std::size_t v = 0; v < e.size(); ++v) term.m.set(v, e[v]);
    terms.push_back(std::move(term));
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

}  // namespace ivp
