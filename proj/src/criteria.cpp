#include "homolocal/criteria.hpp"

#include <algorithm>
#include <functional>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Matrix;
using linalg::RowReducer;
using linalg::SparseVec;

std::optional<std::int64_t> CriterionVerdict::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return std::nullopt;
}

namespace {

CriterionVerdict start(std::string name, std::vector<std::pair<std::string, std::int64_t>> params) {
  CriterionVerdict out;
  out.name = std::move(name);
  out.parameters = std::move(params);
  return out;
}

CriterionVerdict& undetermined(CriterionVerdict& v, const std::string& limiting, std::string detail) {
  v.verdict = Verdict::Undetermined;
  v.limiting = limiting;
  v.detail = std::move(detail);
  return v;
}

CriterionVerdict& decide(CriterionVerdict& v, bool pass, std::string detail) {
  v.verdict = pass ? Verdict::Pass : Verdict::Fail;
  v.detail = std::move(detail);
  return v;
}

bool certified_at(const TruncatedSeries& s, int n) { return s.known(n) && certified(s.cert(n)); }

// (1 + t)^d / (1 - t)^c through degree hi.
TruncatedSeries ci_factor(int d, int c, int hi) {
  std::vector<std::int64_t> den{1};
  for (int j = 0; j < c; ++j) {
    std::vector<std::int64_t> next(den.size() + 1, 0);
    for (std::size_t i = 0; i < den.size(); ++i) {
      next[i] += den[i];
      next[i + 1] -= den[i];
    }
    den = std::move(next);
  }
  return TruncatedSeries::one_plus_t_pow(d, hi) * TruncatedSeries::rational({1}, den, hi);
}

std::optional<int> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b, int hi) {
  for (int n = 0; n <= hi; ++n)
    if (a[n] != b[n]) return n;
  return std::nullopt;
}

DegreewiseModule over_source(const LocalHom& phi, const DegreewiseModule& l) {
  return restrict_scalars(l, phi.source(), phi.images(), phi.scale());
}

std::string ring_text(const GradedRing& r) { return r.canonical(); }

}  // namespace

namespace {

// Growth rule on a Hilbert function known through degree hi.
std::optional<int> growth_dimension(const std::function<int(int)>& h, int hi) {
  int from = std::max(1, hi - std::max(3, hi / 3));
  if (hi - from < 3) return std::nullopt;
  bool zero = true, constant = true, linear = true;
  int step = h(from) - h(from - 1);
  for (int d = from; d <= hi; ++d) {
    if (h(d) != 0) zero = false;
    if (h(d) != h(from)) constant = false;
    if (h(d) - h(d - 1) != step) linear = false;
  }
  if (zero) return 0;
  if (constant) return 1;
  if (linear && step > 0) return 2;
  return std::nullopt;
}

}  // namespace

std::optional<int> krull_dimension(const GradedRing& r) {
  if (r.is_artinian()) return 0;
  return growth_dimension([&](int d) { return r.dim(d); }, r.truncation());
}

std::optional<bool> is_gorenstein(const RingPtr& r) {
  auto dim = krull_dimension(*r);
  if (!dim) return std::nullopt;
  auto dt = depth_and_type(DegreewiseModule::free_rank_one(r));
  return dt.depth == *dim && dt.type == 1;
}

bool koszul_concentrated(const DegreewiseModule& m, const std::vector<RingElement>& z) {
  if (z.empty()) return true;
  auto h = homology(koszul_complex(m, z));
  for (int n = std::max(1, h.nlo); n <= h.nhi(); ++n)
    for (int d = h.dlo; d <= h.dhi; ++d)
      if (h.rank(n, d) > 0) return false;
  return true;
}

bool regular_presentation(const GradedRing& r) {
  auto q = GradedRing::create(r.field().p(), r.variables(), {}, r.truncation());
  std::vector<RingElement> f;
  for (const auto& rel : r.relations()) f.push_back(q->normal_form(rel));
  return koszul_concentrated(DegreewiseModule::free_rank_one(q), f);
}

std::optional<int> fibre_dimension(const LocalHom& phi) {
  const RingPtr& s = phi.target();
  auto q = quotient_by_elements(DegreewiseModule::free_rank_one(s), phi.images());
  if (q.bounded()) return 0;
  // A cyclic module vanishing on max_var_degree consecutive degrees stays zero.
  int run = 0;
  for (int d = 1; d <= q.hi(); ++d) {
    run = q.dim(d) == 0 ? run + 1 : 0;
    if (run >= s->max_var_degree()) return 0;
  }
  return growth_dimension([&](int d) { return q.dim(d); }, q.hi());
}

CriterionVerdict kunz_regularity_test(const RingPtr& r, int i, int nmax) {
  auto out = start("kunz_regularity", {{"i", i}, {"nmax", nmax}, {"D", r->truncation()}});
  auto phi = LocalHom::frobenius(r, i);
  auto b = betti_over(*phi, DegreewiseModule::free_rank_one(r), nmax);
  out.series.emplace_back("betti_phi", b);
  int e = r->edim();
  out.values.emplace_back("edim", e);
  if (nmax <= e) return undetermined(out, "nmax", "no index past edim R inside nmax");
  bool unknown = false;
  for (int n = e + 1; n <= nmax; ++n) {
    if (!certified_at(b, n)) {
      unknown = true;
      continue;
    }
    if (b[n] != 0) {
      out.values.emplace_back("nonzero_at", n);
      return decide(out, false, "nonzero Betti number over phi past edim R");
    }
  }
  if (unknown) return undetermined(out, "D", "uncertified coefficients past edim R");
  decide(out, true, "Betti numbers over phi vanish past edim R");
  // Regular R also satisfies fd_R R = dim R / phi(m)R; a mismatch is only
  // flagged, the verdict stands.
  try {
    auto fd = flat_dimension(betti_numbers(over_source(*phi, DegreewiseModule::free_rank_one(r)), nmax));
    auto dim = fibre_dimension(*phi);
    if (fd.finite() && dim) {
      out.values.emplace_back("fd_over_phi", *fd.value);
      out.values.emplace_back("dim_fibre", *dim);
      out.values.emplace_back("dimension_formula", *fd.value == *dim ? 1 : 0);
      if (*fd.value != *dim) out.detail += "; dimension formula mismatch flagged";
    }
  } catch (const Error&) {
    out.detail += "; dimension formula not evaluated";
  }
  return out;
}

CriterionVerdict ci_curvature_test(const RingPtr& r, int i, int nmax) {
  auto out = start("ci_curvature", {{"i", i}, {"nmax", nmax}, {"D", r->truncation()}});
  auto b = betti_over(*LocalHom::frobenius(r, i), DegreewiseModule::free_rank_one(r), nmax);
  out.series.emplace_back("betti_phi", b);
  int e = r->edim();
  bool zero_tail = nmax > e;
  for (int n = e + 1; n <= nmax && zero_tail; ++n) zero_tail = certified_at(b, n) && b[n] == 0;
  if (zero_tail) return decide(out, true, "zero tail: R is regular");
  GrowthEstimate g;
  try {
    g = estimate_growth(b);
  } catch (const Error& err) {
    return undetermined(out, "nmax", err.what());
  }
  out.values.emplace_back("window_from", g.from);
  out.values.emplace_back("window_to", g.to);
  if (g.complexity) out.values.emplace_back("complexity", *g.complexity);
  out.values.emplace_back("curvature_milli", static_cast<std::int64_t>(g.curvature * 1000 + 0.5));
  if (g.complexity && g.curvature <= 1 + kCurvatureTolerance)
    return decide(out, true, "polynomial growth, curvature 1");
  if (!g.complexity && g.curvature > 1 + kCurvatureTolerance)
    return decide(out, false, "super-polynomial growth");
  return undetermined(out, "nmax", "growth pattern not settled");
}

CriterionVerdict frobenius_ci_closed_form(const RingPtr& r, const DegreewiseModule& n, int i,
                                          int nmax) {
  auto out = start("frobenius_ci_closed_form", {{"i", i}, {"nmax", nmax}, {"D", r->truncation()}});
  if (!regular_presentation(*r))
    fail(ErrorKind::NotCI, "relations of " + ring_text(*r) + " are not a regular sequence");
  auto d = krull_dimension(*r);
  if (!d) return undetermined(out, "D", "Krull dimension not readable from the window");
  int c = static_cast<int>(r->relations().size());
  int s = r->edim();
  out.values.emplace_back("d", *d);
  out.values.emplace_back("c", c);
  auto k = koszul_polynomial(n);
  auto factor = ci_factor(*d, c, nmax);
  auto closed = (k * factor).truncated(nmax);
  auto phi = LocalHom::frobenius(r, i);
  auto betti = betti_over(*phi, n, nmax);
  auto bass = bass_over(*phi, n, nmax);
  auto bass_closed = (k.reversed(s) * factor).truncated(nmax);
  auto bass_literal = (k.shifted(c) * factor).truncated(nmax);
  out.series = {{"betti_phi", betti}, {"closed_form", closed}, {"bass_phi", bass},
                {"bass_closed_form", bass_closed}, {"bass_literal_form", bass_literal}};
  for (int j = 0; j <= nmax; ++j)
    if (!certified_at(betti, j) || !certified_at(bass, j))
      return undetermined(out, "D", "uncertified coefficient at " + std::to_string(j));
  out.values.emplace_back("bass_literal_form_matches", first_mismatch(bass, bass_literal, nmax) ? 0 : 1);
  if (auto m = first_mismatch(betti, closed, nmax)) {
    out.values.emplace_back("betti_mismatch_at", *m);
    return decide(out, false, "Betti numbers differ from the closed form");
  }
  if (auto m = first_mismatch(bass, bass_closed, nmax)) {
    out.values.emplace_back("bass_mismatch_at", *m);
    return decide(out, false, "Bass numbers differ from the closed form");
  }
  return decide(out, true, "Betti and Bass numbers match the closed forms");
}

namespace {

struct SocleCheck {
  bool found = false;
  int degree = 0;
  bool complete = true;
};

// Looks for an element killed by `ideal` (homogeneous generators) that is not in
// phi(m) L.
SocleCheck socle_escapes(const DegreewiseModule& l, const std::vector<RingElement>& ideal,
                         const std::vector<RingElement>& images) {
  SocleCheck out;
  int maxdeg = 0;
  for (const auto& g : ideal)
    if (!g.is_zero()) maxdeg = std::max(maxdeg, g.degree());
  int last = l.bounded() ? l.hi() : l.hi() - maxdeg;
  out.complete = l.bounded();
  for (int d = l.lo(); d <= last; ++d) {
    int dim = l.dim(d);
    if (dim == 0) continue;
    std::vector<SparseVec> rows;
    for (const auto& g : ideal) {
      if (g.is_zero() || !l.known(d + g.degree())) continue;
      Matrix a = l.act_element(g, d);
      for (std::size_t j = 0; j < a.rows(); ++j) rows.push_back(a.row(j));
    }
    auto socle = linalg::kernel_vectors(
        Matrix::from_rows(l.field(), rows.size(), static_cast<std::size_t>(dim), rows));
    RowReducer image(l.field(), static_cast<std::size_t>(dim));
    for (const auto& g : images) {
      if (g.is_zero() || d - g.degree() < l.lo()) continue;
      for (const auto& col : l.act_element(g, d - g.degree()).columns()) image.insert(col);
    }
    for (const auto& v : socle)
      if (!image.in_span(v)) {
        out.found = true;
        out.degree = d;
        return out;
      }
  }
  return out;
}

}  // namespace

CriterionVerdict socle_extremality(const LocalHom& phi, const DegreewiseModule& l,
                                   const std::vector<RingElement>& v) {
  auto out = start("socle_extremality", {{"regular_set_size", static_cast<std::int64_t>(v.size())}});
  if (!koszul_concentrated(l, v)) fail(ErrorKind::NotRegularSet, "the given set is not L-regular");
  auto q = quotient_by_elements(l, v);
  std::int64_t length = 0;
  for (int d = q.lo(); d <= q.hi(); ++d) length += q.dim(d);
  out.values.emplace_back("quotient_length", length);
  const GradedRing& s = *phi.target();
  std::vector<RingElement> vars;
  for (std::size_t j = 0; j < s.nvars(); ++j) vars.push_back(s.variable(j));
  auto a = socle_escapes(q, vars, phi.images());
  if (a.found) {
    out.values.emplace_back("condition", 1);
    out.values.emplace_back("socle_degree", a.degree);
    return decide(out, true, "Soc_S(L/vL) is not inside m(L/vL)");
  }
  bool fibre_artinian = fibre_dimension(phi) == 0;
  out.values.emplace_back("fibre_artinian", fibre_artinian ? 1 : 0);
  auto b = socle_escapes(q, phi.images(), phi.images());
  if (fibre_artinian && b.found) {
    out.values.emplace_back("condition", 2);
    out.values.emplace_back("socle_degree", b.degree);
    return decide(out, true, "Soc_R(L/vL) is not inside m(L/vL) and S/mS is artinian");
  }
  if (!a.complete || !b.complete)
    return undetermined(out, "D", "socle of an unbounded quotient only checked on the window");
  return decide(out, false, "neither socle condition holds");
}

CriterionVerdict bass_equality_check(const LocalHom& phi, const DegreewiseModule& l, int nmax) {
  const RingPtr& r = phi.source();
  auto out = start("bass_equality", {{"nmax", nmax}, {"D", r->truncation()}});
  auto mu = bass_numbers(over_source(phi, l), nmax);
  out.series.emplace_back("bass_R", mu);
  auto id = injective_dimension(mu);
  if (!id.finite()) {
    out.values.emplace_back("id_at_least", id.bound);
    return undetermined(out, "nmax", "id_R L not certified finite");
  }
  auto dim = krull_dimension(*r);
  if (!dim) return undetermined(out, "D", "dim R not readable from the window");
  int depth = depth_and_type(DegreewiseModule::free_rank_one(r)).depth;
  out.values = {{"id_R", *id.value}, {"depth_R", depth}, {"dim_R", *dim}};
  return decide(out, *id.value == depth && depth == *dim,
                *id.value == depth && depth == *dim ? "id_R L = depth R = dim R"
                                                    : "finite id_R L with unequal invariants");
}

CriterionVerdict ab_depth_check(const LocalHom& phi, const DegreewiseModule& n, int nmax) {
  auto out = start("ab_depth", {{"nmax", nmax}, {"D", phi.target()->truncation()}});
  auto dims = pd_id_over(phi, n, nmax);
  if (!dims.pd.finite()) {
    out.values.emplace_back("pd_at_least", dims.pd.bound);
    return undetermined(out, "nmax", "pd over phi not certified finite");
  }
  int depth_n = depth_and_type(n).depth;
  int depth_r = depth_and_type(DegreewiseModule::free_rank_one(phi.source())).depth;
  out.values = {{"depth_S_N", depth_n}, {"depth_R", depth_r}, {"pd_phi", *dims.pd.value}};
  bool ok = depth_n == depth_r - *dims.pd.value;
  return decide(out, ok, ok ? "depth_S N = depth R - pd_phi N" : "depth equality fails");
}

CriterionVerdict peskine_szpiro_check(const LocalHom& phi, int nmax) {
  const RingPtr& r = phi.source();
  auto out = start("peskine_szpiro", {{"nmax", nmax}, {"D", r->truncation()}});
  auto s = over_source(phi, DegreewiseModule::free_rank_one(phi.target()));
  auto mu = bass_numbers(s, nmax);
  out.series.emplace_back("bass_R", mu);
  auto id = injective_dimension(mu);
  if (!id.finite()) {
    out.values.emplace_back("id_at_least", id.bound);
    return undetermined(out, "nmax", "id_R S not certified finite");
  }
  auto betti = betti_numbers(s, nmax);
  out.series.emplace_back("betti_R", betti);
  auto fd = flat_dimension(betti);
  auto gor = is_gorenstein(r);
  out.values.emplace_back("id_R", *id.value);
  if (fd.finite()) out.values.emplace_back("fd_R", *fd.value);
  if (!gor) return undetermined(out, "D", "Gorenstein property not readable from the window");
  out.values.emplace_back("gorenstein", *gor ? 1 : 0);
  if (!fd.finite() && *gor) return undetermined(out, "nmax", "fd_R S not certified finite");
  bool ok = fd.finite() && *gor;
  return decide(out, ok, ok ? "fd_R S finite and R Gorenstein" : "finite id_R S without the consequences");
}

}  // namespace homolocal
