#pragma once

// Truncated Laurent series with integer coefficients and an explicit
// validity window. Coefficients above the window are absent; below `lo`
// the series is zero. A series flagged `polynomial` is known to vanish
// above its window.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homolocal {

// How far a computed number can be trusted.
//   Exact   - every contribution lies inside a bounded window.
//   Guarded - the window is open above, but the guard band past the data
//             shows nothing (heuristic certification for non-Artinian rings).
//   Partial - contributions at the window edge; the value is a lower bound.
enum class Certainty { Exact = 0, Guarded = 1, Partial = 2 };

inline Certainty weaker(Certainty a, Certainty b) { return a > b ? a : b; }
std::string to_string(Certainty c);
bool certified(Certainty c);  // Exact or Guarded

struct TruncatedSeries {
  int lo = 0;
  std::vector<std::int64_t> coeffs;
  std::vector<Certainty> certainty;
  bool polynomial = false;

  TruncatedSeries() = default;
  TruncatedSeries(int lo, std::vector<std::int64_t> c, bool polynomial = false,
                  Certainty cert = Certainty::Exact);

  static TruncatedSeries monomial(int n, std::int64_t c = 1);
  // (1 + t)^k through degree hi; k may be negative.
  static TruncatedSeries one_plus_t_pow(int k, int hi);
  // num / den expanded through degree hi; den must have constant term +-1.
  static TruncatedSeries rational(const std::vector<std::int64_t>& num,
                                  const std::vector<std::int64_t>& den, int hi);

  int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
  bool known(int n) const { return n < lo || n <= hi() || polynomial; }
  // nullopt when n lies above the window of a non-polynomial series.
  std::optional<std::int64_t> at(int n) const;
  std::int64_t operator[](int n) const;  // throws TruncationExceeded if absent
  Certainty cert(int n) const;

  // Lowest / highest index with a nonzero coefficient inside the window.
  std::optional<int> order() const;
  std::optional<int> degree() const;
  bool all_certified() const;

  TruncatedSeries truncated(int hi) const;
  TruncatedSeries shifted(int k) const;  // multiply by t^k
  // t^s f(t^{-1}) for a polynomial f.
  TruncatedSeries reversed(int s) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  // Coefficient equality on the common window (and absence pattern).
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  // Exact division by (1 + t) for polynomials; nullopt if not divisible.
  std::optional<TruncatedSeries> divide_one_plus_t() const;

  std::string to_string() const;
};

// a <= b coefficientwise on the common window; returns the first index
// where it fails.
std::optional<int> first_violation(const TruncatedSeries& a, const TruncatedSeries& b);
// Common window top of two series (large when both are polynomials).
int common_hi(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace homolocal
