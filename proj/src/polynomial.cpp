#include "homolocal/polynomial.hpp"

#include <cctype>

#include "homolocal/error.hpp"

namespace homolocal {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& vars,
         const linalg::PrimeField& f)
      : s_(s), vars_(vars), f_(f) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError,
         "polynomial '" + std::string(s_) + "', column " + std::to_string(pos_ + 1) +
             ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial constant(linalg::Elem c) const {
    Polynomial p;
    if (c) p[Exponents(vars_.size(), 0)] = c;
    return p;
  }

  void add_into(Polynomial& a, const Polynomial& b, bool negate) const {
    for (const auto& [m, c] : b) {
      linalg::Elem v = negate ? f_.neg(c) : c;
      auto it = a.find(m);
      if (it == a.end()) {
        a.emplace(m, v);
      } else {
        it->second = f_.add(it->second, v);
        if (!it->second) a.erase(it);
      }
    }
  }

  Polynomial mul(const Polynomial& a, const Polynomial& b) const {
    Polynomial out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Exponents m(ma);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        add_into(out, Polynomial{{m, f_.mul(ca, cb)}}, false);
      }
    return out;
  }

  Polynomial expr() {
    Polynomial acc;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    add_into(acc, term(), neg);
    while (true) {
      if (eat('+')) add_into(acc, term(), false);
      else if (eat('-')) add_into(acc, term(), true);
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (eat('*')) acc = mul(acc, factor());
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      std::uint64_t e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
        if (e > 1'000'000) error("exponent too large");
        ++pos_;
      }
      if (pos_ == start) error("expected exponent");
      Polynomial r = constant(1);
      for (std::uint64_t i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) error("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0')) % f_.p();
        ++pos_;
      }
      return constant(static_cast<linalg::Elem>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) {
          Exponents m(vars_.size(), 0);
          m[i] = 1;
          return Polynomial{{m, 1 % f_.p()}};
        }
      pos_ = start;
      fail(ErrorKind::UnknownReference, "polynomial '" + std::string(s_) + "', column " +
                                            std::to_string(start + 1) +
                                            ": unknown variable '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  const linalg::PrimeField& f_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            const linalg::PrimeField& field) {
  return Parser(text, vars, field).parse();
}

int weighted_degree(const Exponents& e, const std::vector<int>& weights) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weights[i];
  return d;
}

std::string format_monomial(const Exponents& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string out;
  // Largest monomial first.
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string m = format_monomial(it->first, vars);
    if (it->second == 1) out += m;
    else if (m == "1") out += std::to_string(it->second);
    else out += std::to_string(it->second) + '*' + m;
  }
  return out;
}

}  // namespace homolocal
