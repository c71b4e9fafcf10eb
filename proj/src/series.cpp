#include "homolocal/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "homolocal/error.hpp"

namespace homolocal {

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::Exact: return "exact";
    case Certainty::Guarded: return "guarded";
    case Certainty::Partial: return "partial";
  }
  return "partial";
}

bool certified(Certainty c) { return c != Certainty::Partial; }

TruncatedSeries::TruncatedSeries(int lo_, std::vector<std::int64_t> c, bool poly, Certainty cert)
    : lo(lo_), coeffs(std::move(c)), certainty(coeffs.size(), cert), polynomial(poly) {}

TruncatedSeries TruncatedSeries::monomial(int n, std::int64_t c) {
  return TruncatedSeries(n, {c}, true);
}

TruncatedSeries TruncatedSeries::one_plus_t_pow(int k, int hi) {
  if (k >= 0) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(k) + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= k; ++i)
      for (int j = i; j >= 1; --j) c[j] += c[j - 1];
    return TruncatedSeries(0, std::move(c), true);
  }
  std::vector<std::int64_t> num{1};
  std::vector<std::int64_t> den = one_plus_t_pow(-k, -k).coeffs;
  return rational(num, den, hi);
}

TruncatedSeries TruncatedSeries::rational(const std::vector<std::int64_t>& num,
                                          const std::vector<std::int64_t>& den, int hi) {
  if (den.empty() || (den[0] != 1 && den[0] != -1))
    fail(ErrorKind::ValidationError, "denominator must have constant term +-1");
  std::vector<std::int64_t> c(static_cast<std::size_t>(std::max(hi + 1, 0)), 0);
  for (int n = 0; n <= hi; ++n) {
    std::int64_t s = n < static_cast<int>(num.size()) ? num[n] : 0;
    for (int j = 1; j < static_cast<int>(den.size()) && j <= n; ++j) s -= den[j] * c[n - j];
    c[n] = s * den[0];
  }
  return TruncatedSeries(0, std::move(c));
}

std::optional<std::int64_t> TruncatedSeries::at(int n) const {
  if (n < lo) return 0;
  if (n > hi()) {
    if (polynomial) return 0;
    return std::nullopt;
  }
  return coeffs[n - lo];
}

std::int64_t TruncatedSeries::operator[](int n) const {
  auto v = at(n);
  if (!v) fail(ErrorKind::TruncationExceeded, "series coefficient " + std::to_string(n) +
                                                  " lies beyond the window", n);
  return *v;
}

Certainty TruncatedSeries::cert(int n) const {
  if (n < lo || (n > hi() && polynomial)) return Certainty::Exact;
  if (n > hi()) return Certainty::Partial;
  return certainty[n - lo];
}

std::optional<int> TruncatedSeries::order() const {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) return lo + static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> TruncatedSeries::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i]) return lo + static_cast<int>(i);
  return std::nullopt;
}

bool TruncatedSeries::all_certified() const {
  return std::all_of(certainty.begin(), certainty.end(), [](Certainty c) { return certified(c); });
}

TruncatedSeries TruncatedSeries::truncated(int h) const {
  TruncatedSeries out;
  out.lo = lo;
  for (int n = lo; n <= h; ++n) {
    auto v = at(n);
    if (!v) break;
    out.coeffs.push_back(*v);
    out.certainty.push_back(cert(n));
  }
  out.polynomial = false;
  return out;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  TruncatedSeries out = *this;
  out.lo += k;
  return out;
}

TruncatedSeries TruncatedSeries::reversed(int s) const {
  if (!polynomial) fail(ErrorKind::ValidationError, "reversal needs a polynomial");
  TruncatedSeries out;
  out.polynomial = true;
  out.lo = s - hi();
  out.coeffs.assign(coeffs.rbegin(), coeffs.rend());
  out.certainty.assign(certainty.rbegin(), certainty.rend());
  return out;
}

int common_hi(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.polynomial && b.polynomial) return std::max(a.hi(), b.hi());
  if (a.polynomial) return b.hi();
  if (b.polynomial) return a.hi();
  return std::min(a.hi(), b.hi());
}

namespace {

TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, int sign) {
  TruncatedSeries out;
  out.lo = std::min(a.lo, b.lo);
  out.polynomial = a.polynomial && b.polynomial;
  int h = common_hi(a, b);
  for (int n = out.lo; n <= h; ++n) {
    out.coeffs.push_back(*a.at(n) + sign * *b.at(n));
    out.certainty.push_back(weaker(a.cert(n), b.cert(n)));
  }
  return out;
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return combine(a, b, 1);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return combine(a, b, -1);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out;
  out.lo = a.lo + b.lo;
  out.polynomial = a.polynomial && b.polynomial;
  int h;
  if (out.polynomial) h = a.hi() + b.hi();
  else if (a.polynomial) h = b.hi() + a.lo;
  else if (b.polynomial) h = a.hi() + b.lo;
  else h = std::min(a.hi() + b.lo, b.hi() + a.lo);
  for (int n = out.lo; n <= h; ++n) {
    std::int64_t s = 0;
    Certainty c = Certainty::Exact;
    for (int i = a.lo; i <= n - b.lo; ++i) {
      auto x = a.at(i);
      auto y = b.at(n - i);
      s += *x * *y;
      if (*x && *y) c = weaker(c, weaker(a.cert(i), b.cert(n - i)));
    }
    out.coeffs.push_back(s);
    out.certainty.push_back(c);
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  int lo = std::min(a.lo, b.lo);
  int h = common_hi(a, b);
  for (int n = lo; n <= h; ++n)
    if (*a.at(n) != *b.at(n)) return false;
  return true;
}

std::optional<TruncatedSeries> TruncatedSeries::divide_one_plus_t() const {
  if (!polynomial) fail(ErrorKind::ValidationError, "division needs a polynomial");
  auto d = degree();
  if (!d) return *this;
  int o = *order();
  // q(t)(1+t) = f(t): q_n = f_n - q_{n-1}.
  std::vector<std::int64_t> q;
  std::int64_t prev = 0;
  for (int n = o; n < *d; ++n) {
    std::int64_t v = *at(n) - prev;
    q.push_back(v);
    prev = v;
  }
  if (*at(*d) != prev) return std::nullopt;
  TruncatedSeries out(o, std::move(q), true);
  return out;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  os << (polynomial ? "]" : ",...]");
  if (lo) os << "@" << lo;
  return os.str();
}

std::optional<int> first_violation(const TruncatedSeries& a, const TruncatedSeries& b) {
  int h = common_hi(a, b);
  for (int n = std::min(a.lo, b.lo); n <= h; ++n)
    if (*a.at(n) > *b.at(n)) return n;
  return std::nullopt;
}

}  // namespace homolocal
