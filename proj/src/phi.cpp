#include "homolocal/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::RowReducer;
using linalg::SparseVec;

namespace {

// Coordinates of S_d that are variables: basis index -> variable.
std::vector<std::pair<std::uint32_t, std::size_t>> variable_coords(const GradedRing& s, int d) {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  for (std::size_t v = 0; v < s.nvars(); ++v) {
    if (s.var_degree(v) != d) continue;
    Exponents e(s.nvars(), 0);
    e[v] = 1;
    auto nf = s.monomial_nf(e);
    out.push_back({nf.at(0).first, v});
  }
  return out;
}

// The n / n^2 part of a homogeneous element.
SparseVec linear_part(const GradedRing& s, int d, const SparseVec& c) {
  auto vars = variable_coords(s, d);
  SparseVec out;
  for (auto [i, x] : c)
    for (auto [j, v] : vars)
      if (i == j) out.push_back({i, x});
  return out;
}

std::vector<int> variable_degrees(const GradedRing& s) {
  std::vector<int> out;
  for (std::size_t v = 0; v < s.nvars(); ++v) out.push_back(s.var_degree(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Reducer over S_d holding the linear parts of phi(m) in degree d.
RowReducer image_span(const LocalHom& phi, int d) {
  const GradedRing& s = *phi.target();
  RowReducer r(s.field(), static_cast<std::size_t>(s.dim(d)));
  for (const auto& im : phi.images())
    if (!im.is_zero() && im.degree() == d) r.insert(linear_part(s, d, im.coords()));
  return r;
}

void check_generators(const LocalHom& phi, const std::vector<RingElement>& y) {
  for (const auto& el : y)
    if (el.is_zero() || !el.is_homogeneous() || el.degree() <= 0)
      fail(ErrorKind::NonHomogeneousElement, "generators must be homogeneous of positive degree");
  if (!generates_mod(phi, y))
    fail(ErrorKind::ValidationError, "elements do not generate the maximal ideal modulo mS");
}

TruncatedSeries residue_poincare(const RingPtr& r, int nmax) {
  if (nmax < 0) return TruncatedSeries(0, {});
  return residue_resolution(r, nmax)->betti(nmax);
}

// Homology series of a complex whose totals must all be certified.
std::optional<TruncatedSeries> certified_homology(const EvaluatedComplex& k) {
  HomologyTable h = homology(k);
  for (auto c : h.certainty)
    if (!certified(c)) return std::nullopt;
  TruncatedSeries s = h.series(h.nlo, h.nhi());
  s.polynomial = true;
  return s;
}

TruncatedSeries clip(const TruncatedSeries& s, int lo, int hi) {
  TruncatedSeries out;
  out.lo = lo;
  for (int n = lo; n <= hi; ++n) {
    auto v = s.at(n);
    if (!v) break;
    out.coeffs.push_back(*v);
    out.certainty.push_back(s.cert(n));
  }
  return out;
}

bool use_kunneth(const LocalHom& phi, TorPath path) {
  if (path == TorPath::Kunneth && !kills_maximal_ideal(phi))
    fail(ErrorKind::ValidationError, "product formula needs phi(m) S = 0");
  return path == TorPath::Kunneth || (path == TorPath::Auto && kills_maximal_ideal(phi));
}

}  // namespace

std::vector<RingElement> minimal_gens_mod(const LocalHom& phi) {
  const GradedRing& s = *phi.target();
  std::vector<std::pair<std::size_t, RingElement>> picked;
  for (int d : variable_degrees(s)) {
    RowReducer r = image_span(phi, d);
    for (auto [i, v] : variable_coords(s, d))
      if (r.insert({{i, 1}})) picked.push_back({v, s.variable(v)});
  }
  std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<RingElement> out;
  for (auto& p : picked) out.push_back(std::move(p.second));
  return out;
}

int edim_phi(const LocalHom& phi) { return static_cast<int>(minimal_gens_mod(phi).size()); }

bool generates_mod(const LocalHom& phi, const std::vector<RingElement>& y) {
  const GradedRing& s = *phi.target();
  for (int d : variable_degrees(s)) {
    RowReducer r = image_span(phi, d);
    for (const auto& el : y)
      if (!el.is_zero() && el.is_homogeneous() && el.degree() == d)
        r.insert(linear_part(s, d, el.coords()));
    if (r.rank() < variable_coords(s, d).size()) return false;
  }
  return true;
}

bool kills_maximal_ideal(const LocalHom& phi) {
  for (const auto& im : phi.images())
    if (!im.is_zero()) return false;
  return true;
}

bool is_contracting(const HomPtr& phi) {
  if (!phi->is_endomorphism()) fail(ErrorKind::ValidationError, "contraction needs an endomorphism");
  const GradedRing& r = *phi->source();
  if (r.nvars() == 0) return true;
  auto pw = LocalHom::power(phi, r.edim());
  for (const auto& im : pw->images())
    if (!im.is_zero() && !linear_part(r, im.degree(), im.coords()).empty()) return false;
  return true;
}

TruncatedSeries koszul_tor_series(const LocalHom& phi, const EvaluatedComplex& x,
                                  const std::vector<RingElement>& y, int nmax, TorPath path) {
  check_generators(phi, y);
  EvaluatedComplex k = koszul_complex(x, y);
  int lo = x.nlo();
  if (use_kunneth(phi, path)) {
    if (auto h = certified_homology(k)) {
      TruncatedSeries p = residue_poincare(phi.source(), nmax - h->lo);
      return clip(p * *h, lo, nmax);
    }
    if (path == TorPath::Kunneth)
      fail(ErrorKind::TruncationExceeded, "Koszul homology is not certified", k.dhi() + 1);
  }
  int top = std::max(0, nmax + 1 - k.nlo());
  FreeComplex f = residue_resolution(phi.source(), top)->truncated(top);
  HomologyTable h = homology(base_change_tensor(f, phi, k));
  return h.series(lo, nmax);
}

TruncatedSeries koszul_ext_series(const LocalHom& phi, const EvaluatedComplex& x,
                                  const std::vector<RingElement>& y, int nmax, TorPath path) {
  check_generators(phi, y);
  EvaluatedComplex k = koszul_complex(x, y);
  int q = static_cast<int>(y.size());
  int lo = -x.nhi();
  if (use_kunneth(phi, path)) {
    if (auto h = certified_homology(k)) {
      TruncatedSeries rev = h->reversed(q);
      TruncatedSeries p = residue_poincare(phi.source(), nmax - rev.lo);
      return clip(p * rev, lo, nmax);
    }
    if (path == TorPath::Kunneth)
      fail(ErrorKind::TruncationExceeded, "Koszul homology is not certified", k.dhi() + 1);
  }
  int top = std::max(0, nmax + 1 + x.nhi());
  FreeComplex f = residue_resolution(phi.source(), top)->truncated(top);
  HomologyTable h = homology(base_change_hom(f, phi, k));
  // exponent m collects Ext^{m - q} = H_{q - m}.
  TruncatedSeries out;
  out.lo = lo;
  for (int m = lo; m <= nmax; ++m) {
    int idx = q - m;
    bool inside = idx >= h.nlo && idx <= h.nhi();
    if (inside ? !h.valid[idx - h.nlo] : (idx < h.valid_lo || idx > h.valid_hi)) break;
    out.coeffs.push_back(inside ? h.totals[idx - h.nlo] : 0);
    out.certainty.push_back(inside ? h.certainty[idx - h.nlo] : Certainty::Exact);
  }
  return out;
}

TruncatedSeries betti_over(const LocalHom& phi, const EvaluatedComplex& x, int nmax, TorPath path) {
  return koszul_tor_series(phi, x, minimal_gens_mod(phi), nmax, path);
}

TruncatedSeries betti_over(const LocalHom& phi, const DegreewiseModule& n, int nmax, TorPath path) {
  return betti_over(phi, EvaluatedComplex::from_module(n), nmax, path);
}

TruncatedSeries bass_over(const LocalHom& phi, const EvaluatedComplex& x, int nmax, TorPath path) {
  return koszul_ext_series(phi, x, minimal_gens_mod(phi), nmax, path);
}

TruncatedSeries bass_over(const LocalHom& phi, const DegreewiseModule& n, int nmax, TorPath path) {
  return bass_over(phi, EvaluatedComplex::from_module(n), nmax, path);
}

HomDimension shifted_dimension(const TruncatedSeries& s, int shift, int zeros) {
  HomDimension out;
  std::optional<int> last;
  for (int n = s.lo; n <= s.hi(); ++n) {
    out.certainty = weaker(out.certainty, s.cert(n));
    if (s.coeffs[n - s.lo]) last = n;
  }
  int tail = last ? s.hi() - *last : s.hi() - s.lo + 1;
  bool tail_certified = true;
  for (int n = s.hi() - tail + 1; n <= s.hi(); ++n)
    if (!certified(s.cert(n))) tail_certified = false;
  if (s.polynomial || (tail >= zeros && tail_certified)) {
    // A zero series has dimension -infinity; report that as the lowest int.
    out.value = last ? *last - shift : std::numeric_limits<int>::min();
    return out;
  }
  out.bound = (last ? *last : s.hi()) - shift;
  return out;
}

PhiDimensions pd_id_over(const LocalHom& phi, const DegreewiseModule& n, int nmax) {
  int e = edim_phi(phi);
  int zeros = std::max(2, phi.source()->edim());
  PhiDimensions out;
  out.pd = shifted_dimension(betti_over(phi, n, nmax), e, zeros);
  out.id = shifted_dimension(bass_over(phi, n, nmax), e, zeros);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(SeparationVerdict v) {
  switch (v) {
    case SeparationVerdict::Separated: return "separated";
    case SeparationVerdict::Violated: return "violated";
    case SeparationVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

SeparationResult compare_with_ceiling(TruncatedSeries lhs, TruncatedSeries ceiling,
                                      const char* what) {
  SeparationResult out;
  int lo = std::min(lhs.lo, ceiling.lo);
  int hi = common_hi(lhs, ceiling);
  for (int n = lo; n <= hi; ++n) {
    Certainty c = weaker(lhs.cert(n), ceiling.cert(n));
    std::int64_t a = *lhs.at(n), b = *ceiling.at(n);
    if (!certified(c)) {
      out.undetermined_at = n;
      break;
    }
    if (a > b)
      fail(ErrorKind::InvariantViolation, std::string(what) + " ceiling fails at n = " +
                                              std::to_string(n) + ": " + std::to_string(a) +
                                              " > " + std::to_string(b));
    if (a < b && !out.violated_at) out.violated_at = n;
    out.checked_hi = n;
  }
  if (out.violated_at) out.verdict = SeparationVerdict::Violated;
  else if (out.undetermined_at || out.checked_hi < 0) out.verdict = SeparationVerdict::Undetermined;
  else out.verdict = SeparationVerdict::Separated;
  out.lhs = std::move(lhs);
  out.ceiling = std::move(ceiling);
  return out;
}

int pad_exponent(const LocalHom& phi) {
  return static_cast<int>(phi.target()->nvars()) - edim_phi(phi);
}

}  // namespace

SeparationResult is_separated(const LocalHom& phi, const EvaluatedComplex& x, int nmax) {
  int pad = pad_exponent(phi);
  TruncatedSeries p = betti_over(phi, x, nmax);
  TruncatedSeries lhs = clip(TruncatedSeries::one_plus_t_pow(pad, pad) * p, p.lo, p.hi());
  TruncatedSeries k = koszul_polynomial(x);
  TruncatedSeries ceiling = clip(residue_poincare(phi.source(), nmax - k.lo) * k, k.lo, nmax);
  return compare_with_ceiling(std::move(lhs), std::move(ceiling), "Poincare");
}

SeparationResult is_separated(const LocalHom& phi, const DegreewiseModule& n, int nmax) {
  return is_separated(phi, EvaluatedComplex::from_module(n), nmax);
}

SeparationResult is_injectively_separated(const LocalHom& phi, const EvaluatedComplex& x,
                                          int nmax) {
  int pad = pad_exponent(phi);
  int s = static_cast<int>(phi.target()->nvars());
  TruncatedSeries i = bass_over(phi, x, nmax);
  TruncatedSeries lhs = clip(TruncatedSeries::one_plus_t_pow(pad, pad) * i, i.lo, i.hi());
  TruncatedSeries k = koszul_polynomial(x).reversed(s);
  TruncatedSeries ceiling = clip(residue_poincare(phi.source(), nmax - k.lo) * k, k.lo, nmax);
  return compare_with_ceiling(std::move(lhs), std::move(ceiling), "Bass");
}

SeparationResult is_injectively_separated(const LocalHom& phi, const DegreewiseModule& n,
                                          int nmax) {
  return is_injectively_separated(phi, EvaluatedComplex::from_module(n), nmax);
}

// ---------------------------------------------------------------------------

GrowthEstimate estimate_growth(const TruncatedSeries& s, int min_points) {
  int a = std::max(s.lo, 0);
  int b = s.hi();
  if (b < a) fail(ErrorKind::WindowTooSmall, "empty series");
  int from = std::max(1, b - (b - a) / 2);
  if (b - from + 1 < min_points)
    fail(ErrorKind::WindowTooSmall, "estimators need at least " + std::to_string(min_points) +
                                        " tail points, have " +
                                        std::to_string(std::max(0, b - from + 1)));
  GrowthEstimate out;
  out.from = from;
  out.to = b;
  bool all_zero = true, any_zero = false;
  for (int n = from; n <= b; ++n) {
    if (!certified(s.cert(n)))
      fail(ErrorKind::WindowTooSmall, "coefficient " + std::to_string(n) + " is not certified");
    if (s[n]) all_zero = false;
    else any_zero = true;
  }
  if (all_zero) {
    out.complexity = 0;
    out.curvature = 0;
    return out;
  }
  for (int d = 1; d <= kComplexityCap && !out.complexity; ++d) {
    bool ok = true;
    for (int n = from; n < b && ok; ++n) {
      long double next = static_cast<long double>(s[n + 1]) * std::pow(static_cast<long double>(n), d - 1);
      long double cur = static_cast<long double>(s[n]) * std::pow(static_cast<long double>(n + 1), d - 1);
      if (next > cur * (1 + 1e-12L)) ok = false;
    }
    if (ok) out.complexity = d;
  }
  // A polynomial bound on a live tail pins the exponential rate at 1.
  if (out.complexity) {
    out.curvature = 1;
  } else if (!any_zero) {
    out.curvature = std::pow(static_cast<double>(s[b]) / static_cast<double>(s[from]),
                             1.0 / (b - from));
  } else {
    for (int n = from; n <= b; ++n)
      out.curvature = std::max(out.curvature, std::pow(static_cast<double>(s[n]), 1.0 / n));
  }
  return out;
}

std::optional<int> complexity_estimate(const TruncatedSeries& s) { return estimate_growth(s).complexity; }
double curvature_estimate(const TruncatedSeries& s) { return estimate_growth(s).curvature; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

ExtremalityResult compare_growth(const TruncatedSeries& over, const RingPtr& r, int nmax) {
  ExtremalityResult out;
  out.over_phi = estimate_growth(over);
  out.residue = estimate_growth(residue_poincare(r, nmax));
  bool same_cx = out.over_phi.complexity == out.residue.complexity;
  bool same_curv = std::abs(out.over_phi.curvature - out.residue.curvature) <= kCurvatureTolerance;
  out.verdict = same_cx && same_curv ? Verdict::Pass : Verdict::Fail;
  return out;
}

}  // namespace

ExtremalityResult is_extremal(const LocalHom& phi, const DegreewiseModule& n, int nmax) {
  return compare_growth(betti_over(phi, n, nmax), phi.source(), nmax);
}

ExtremalityResult is_injectively_extremal(const LocalHom& phi, const DegreewiseModule& n,
                                          int nmax) {
  // Ext_R(k, k) and Tor^R(k, k) have the same ranks.
  auto out = compare_growth(bass_over(phi, n, nmax), phi.source(), nmax);
  out.injective = true;
  return out;
}

}  // namespace homolocal
