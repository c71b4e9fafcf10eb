#include "homolocal/complex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "homolocal/error.hpp"
#include "homolocal/parallel.hpp"

namespace homolocal {

using linalg::Elem;
using linalg::Matrix;
using linalg::SparseVec;
using linalg::Triplet;

namespace {

DegreewiseModule zero_term(const linalg::PrimeField& f, const RingPtr& ring, int dlo, int dhi,
                           bool bounded) {
  std::vector<int> dims(static_cast<std::size_t>(std::max(0, dhi - dlo + 1)), 0);
  if (ring) return DegreewiseModule(ring, dlo, dims, bounded);
  return DegreewiseModule(f, dlo, dims, bounded);
}

[[noreturn]] void beyond(int d) {
  fail(ErrorKind::TruncationExceeded,
       "complex data needed in internal degree " + std::to_string(d) + " beyond the window", d);
}

void append_block(std::vector<Triplet>& out, const Matrix& m, std::size_t r0, std::size_t c0,
                  Elem scale, const linalg::PrimeField& f) {
  if (!scale) return;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto [c, x] : m.row(r)) out.push_back({r0 + r, c0 + c, f.mul(x, scale)});
}

}  // namespace

// ---------------------------------------------------------------------------

EvaluatedComplex::EvaluatedComplex(const linalg::PrimeField& f, RingPtr ring, int nlo,
                                   std::vector<DegreewiseModule> terms)
    : field_(f), ring_(std::move(ring)), nlo_(nlo) {
  bool all_bounded = true;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  int open_hi = std::numeric_limits<int>::max();
  bool any = false;
  for (const auto& t : terms) {
    if (!t.bounded()) {
      all_bounded = false;
      open_hi = std::min(open_hi, t.hi());
    }
    if (t.bounded() && t.hi() < t.lo()) continue;  // zero term
    lo = std::min(lo, t.lo());
    hi = std::max(hi, t.hi());
    any = true;
  }
  if (!any) {
    lo = 0;
    hi = -1;
  }
  if (!all_bounded) {
    hi = open_hi;
    if (!any || lo > hi + 1) lo = std::min(lo, hi + 1);
  }
  dlo_ = lo;
  dhi_ = hi;
  bounded_ = all_bounded;
  for (auto& t : terms) terms_.push_back(t.reframed(dlo_, dhi_, bounded_));
  diffs_.resize(terms_.size() + 1);
  for (int n = nlo_; n <= nhi() + 1; ++n)
    for (int d = dlo_; d <= dhi_; ++d)
      diffs_[n - nlo_].push_back(Matrix::zero(field_, dim(n - 1, d), dim(n, d)));
}

EvaluatedComplex EvaluatedComplex::from_module(const DegreewiseModule& m, int n) {
  return EvaluatedComplex(m.field(), m.ring(), n, {m});
}

EvaluatedComplex EvaluatedComplex::zero(const linalg::PrimeField& f) {
  return EvaluatedComplex(f, nullptr, 0, {});
}

const DegreewiseModule& EvaluatedComplex::term(int n) const {
  if (n < nlo_ || n > nhi()) fail(ErrorKind::ValidationError, "term index out of range");
  return terms_[n - nlo_];
}

int EvaluatedComplex::dim(int n, int d) const {
  if (n < nlo_ || n > nhi() || d < dlo_) return 0;
  if (d > dhi_) {
    if (bounded_) return 0;
    beyond(d);
  }
  return terms_[n - nlo_].dim(d);
}

const Matrix& EvaluatedComplex::diff(int n, int d) const {
  static const Matrix kEmpty;
  if (d > dhi_ && !bounded_) beyond(d);
  if (n < nlo_ || n > nhi() + 1 || d < dlo_ || d > dhi_) return kEmpty;
  return diffs_[n - nlo_][d - dlo_];
}

void EvaluatedComplex::set_diff(int n, int d, Matrix m) {
  if (n < nlo_ || n > nhi() + 1 || d < dlo_ || d > dhi_)
    fail(ErrorKind::ValidationError, "differential outside the complex");
  if (static_cast<int>(m.rows()) != dim(n - 1, d) || static_cast<int>(m.cols()) != dim(n, d))
    fail(ErrorKind::ValidationError, "differential has wrong shape");
  diffs_[n - nlo_][d - dlo_] = std::move(m);
}

EvaluatedComplex EvaluatedComplex::twisted(int s) const {
  EvaluatedComplex c = *this;
  for (auto& t : c.terms_) t = t.shifted(s);
  c.dlo_ += s;
  c.dhi_ += s;
  return c;
}

EvaluatedComplex EvaluatedComplex::suspended(int s) const {
  EvaluatedComplex c = *this;
  c.nlo_ += s;
  c.valid_nlo_ += s;
  c.valid_nhi_ += s;
  if (s % 2)
    for (auto& row : c.diffs_)
      for (auto& m : row) m = m.scaled(field_.neg(1));
  return c;
}

EvaluatedComplex EvaluatedComplex::reframed(int lo, int hi, bool bounded) const {
  std::vector<DegreewiseModule> ts;
  for (const auto& t : terms_) ts.push_back(t.reframed(lo, hi, bounded));
  EvaluatedComplex c(field_, ring_, nlo_, std::move(ts));
  for (int n = nlo_; n <= nhi() + 1; ++n)
    for (int d = std::max(lo, dlo_); d <= std::min(hi, dhi_); ++d) c.set_diff(n, d, diff(n, d));
  c.valid_nlo_ = valid_nlo_;
  c.valid_nhi_ = valid_nhi_;
  c.base_certainty_ = base_certainty_;
  c.guard_ = guard_;
  return c;
}

void EvaluatedComplex::verify() const {
  for (int n = nlo_ + 1; n <= nhi(); ++n)
    for (int d = dlo_; d <= dhi_; ++d) {
      const Matrix& a = diff(n, d);
      const Matrix& b = diff(n - 1, d);
      if (a.cols() == 0 || b.rows() == 0) continue;
      if (!(b * a).is_zero())
        fail(ErrorKind::NotAComplex, "d o d != 0 at n = " + std::to_string(n) +
                                         ", internal degree " + std::to_string(d));
    }
}

std::vector<EvaluatedComplex> on_common_window(const std::vector<EvaluatedComplex>& cs) {
  bool bounded = true;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  int open_hi = std::numeric_limits<int>::max();
  for (const auto& c : cs) {
    if (!c.bounded()) {
      bounded = false;
      open_hi = std::min(open_hi, c.dhi());
    }
    if (c.dhi() >= c.dlo()) {
      lo = std::min(lo, c.dlo());
      hi = std::max(hi, c.dhi());
    }
  }
  if (lo > hi) lo = 0, hi = -1;
  if (!bounded) hi = open_hi;
  std::vector<EvaluatedComplex> out;
  for (const auto& c : cs) out.push_back(c.reframed(lo, hi, bounded));
  return out;
}

// ---------------------------------------------------------------------------

int HomologyTable::rank(int n, int d) const {
  if (n < nlo || n > nhi() || d < dlo || d > dhi) return 0;
  return ranks[n - nlo][d - dlo];
}

std::int64_t HomologyTable::total(int n) const {
  if (n < nlo || n > nhi()) return 0;
  return totals[n - nlo];
}

TruncatedSeries HomologyTable::series(int from, int to) const {
  TruncatedSeries s;
  s.lo = from;
  for (int n = from; n <= to; ++n) {
    bool inside = n >= nlo && n <= nhi();
    if (inside ? !valid[n - nlo] : (n < valid_lo || n > valid_hi)) break;
    s.coeffs.push_back(inside ? totals[n - nlo] : 0);
    s.certainty.push_back(inside ? certainty[n - nlo] : Certainty::Exact);
  }
  return s;
}

std::optional<int> HomologyTable::sup() const {
  for (int n = nhi(); n >= nlo; --n)
    if (totals[n - nlo]) return n;
  return std::nullopt;
}

std::optional<int> HomologyTable::inf() const {
  for (int n = nlo; n <= nhi(); ++n)
    if (totals[n - nlo]) return n;
  return std::nullopt;
}

HomologyTable homology(const EvaluatedComplex& c) {
  HomologyTable h;
  h.nlo = c.nlo();
  h.dlo = c.dlo();
  h.dhi = c.dhi();
  h.valid_lo = c.valid_nlo();
  h.valid_hi = c.valid_nhi();
  if (c.empty()) return h;
  int nn = c.nhi() - c.nlo() + 1;
  int nd = std::max(0, c.dhi() - c.dlo() + 1);
  // ranks of d_n for n in [nlo, nhi + 1].
  std::vector<std::vector<int>> rk(static_cast<std::size_t>(nn + 1),
                                   std::vector<int>(static_cast<std::size_t>(nd), 0));
  std::vector<char> bad(static_cast<std::size_t>((nn + 1) * nd), 0);
  parallel_for(static_cast<std::size_t>((nn + 1) * nd), [&](std::size_t cell) {
    int k = static_cast<int>(cell) / nd;
    int d = c.dlo() + static_cast<int>(cell) % nd;
    int n = c.nlo() + k;
    const Matrix& m = c.diff(n, d);
    if (m.rows() && m.cols()) rk[k][d - c.dlo()] = static_cast<int>(linalg::rank(m));
    const Matrix& below = c.diff(n - 1, d);
    if (m.cols() && below.rows() && k > 0 && !(below * m).is_zero()) bad[cell] = 1;
  });
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (bad[i])
      fail(ErrorKind::NotAComplex,
           "d o d != 0 at n = " + std::to_string(c.nlo() + static_cast<int>(i) / nd) +
               ", internal degree " + std::to_string(c.dlo() + static_cast<int>(i) % nd));
  for (int k = 0; k < nn; ++k) {
    int n = c.nlo() + k;
    std::vector<int> row;
    std::int64_t tot = 0;
    for (int j = 0; j < nd; ++j) {
      int v = c.dim(n, c.dlo() + j) - rk[k][j] - rk[k + 1][j];
      row.push_back(v);
      tot += v;
    }
    Certainty cert = c.base_certainty();
    if (!c.bounded()) {
      bool edge = false;
      for (int j = std::max(0, nd - c.guard()); j < nd; ++j)
        if (row[j]) edge = true;
      cert = weaker(cert, edge ? Certainty::Partial : Certainty::Guarded);
    }
    h.ranks.push_back(std::move(row));
    h.totals.push_back(tot);
    h.certainty.push_back(cert);
    h.valid.push_back(n >= c.valid_nlo() && n <= c.valid_nhi());
  }
  return h;
}

std::vector<SparseVec> homology_representatives(const EvaluatedComplex& c, int n, int d) {
  const Matrix& in = c.diff(n + 1, d);
  const Matrix& out = c.diff(n, d);
  int dim = c.dim(n, d);
  Matrix i = in.rows() == static_cast<std::size_t>(dim) ? in : Matrix::zero(c.field(), dim, 0);
  Matrix o = out.cols() == static_cast<std::size_t>(dim) ? out : Matrix::zero(c.field(), 0, dim);
  return linalg::homology_basis(i, o);
}

// ---------------------------------------------------------------------------

const Matrix& ChainMap::at(int n, int d) const {
  static const Matrix kEmpty;
  int k = n - nlo;
  if (k < 0 || k >= static_cast<int>(maps.size()) || d < source.dlo() || d > source.dhi())
    return kEmpty;
  return maps[k][d - source.dlo()];
}

void ChainMap::verify() const {
  if (source.dlo() != target.dlo() || source.dhi() != target.dhi() ||
      source.bounded() != target.bounded())
    fail(ErrorKind::NotAChainMap, "source and target live on different windows");
  int lo = std::min(source.nlo(), target.nlo());
  int hi = std::max(source.nhi(), target.nhi());
  for (int n = lo; n <= hi; ++n)
    for (int d = source.dlo(); d <= source.dhi(); ++d) {
      if (source.dim(n, d) == 0 || target.dim(n - 1, d) == 0) continue;
      Matrix lhs = source.dim(n - 1, d) ? at(n - 1, d) * source.diff(n, d)
                                        : Matrix::zero(source.field(), target.dim(n - 1, d),
                                                       source.dim(n, d));
      Matrix rhs = target.dim(n, d) ? target.diff(n, d) * at(n, d)
                                    : Matrix::zero(source.field(), target.dim(n - 1, d),
                                                   source.dim(n, d));
      if (!(lhs == rhs))
        fail(ErrorKind::NotAChainMap, "map does not commute with differentials at n = " +
                                          std::to_string(n) + ", internal degree " +
                                          std::to_string(d));
    }
}

EvaluatedComplex mapping_cone(const ChainMap& theta) {
  theta.verify();
  const EvaluatedComplex& x = theta.source;
  const EvaluatedComplex& y = theta.target;
  const auto& f = x.field();
  if (x.empty() && y.empty()) return y;
  RingPtr ring = x.has_action() && y.has_action() ? y.ring() : nullptr;
  int lo = x.empty() ? y.nlo() : (y.empty() ? x.nlo() + 1 : std::min(x.nlo() + 1, y.nlo()));
  int hi = x.empty() ? y.nhi() : (y.empty() ? x.nhi() + 1 : std::max(x.nhi() + 1, y.nhi()));
  auto strip = [&](const DegreewiseModule& m) {
    if (ring) return m;
    std::vector<int> dims;
    for (int d = m.lo(); d <= m.hi(); ++d) dims.push_back(m.dim(d));
    return DegreewiseModule(f, m.lo(), dims, m.bounded());
  };
  auto part = [&](const EvaluatedComplex& c, int n) {
    if (n >= c.nlo() && n <= c.nhi() && !c.empty()) return strip(c.term(n));
    return zero_term(f, ring, x.dlo(), x.dhi(), x.bounded());
  };
  std::vector<DegreewiseModule> terms;
  for (int n = lo; n <= hi; ++n)
    terms.push_back(DegreewiseModule::direct_sum(part(x, n - 1), part(y, n)));
  EvaluatedComplex cone(f, ring, lo, std::move(terms));
  Elem minus = f.neg(1);
  for (int n = lo; n <= hi + 1; ++n)
    for (int d = cone.dlo(); d <= cone.dhi(); ++d) {
      std::size_t rows = static_cast<std::size_t>(cone.dim(n - 1, d));
      std::size_t cols = static_cast<std::size_t>(cone.dim(n, d));
      if (!rows || !cols) continue;
      std::size_t xr = static_cast<std::size_t>(x.dim(n - 2, d));
      std::size_t xc = static_cast<std::size_t>(x.dim(n - 1, d));
      std::vector<Triplet> t;
      if (xr && xc) append_block(t, x.diff(n - 1, d), 0, 0, minus, f);
      if (xc && y.dim(n - 1, d)) append_block(t, theta.at(n - 1, d), xr, 0, 1, f);
      if (y.dim(n, d) && y.dim(n - 1, d)) append_block(t, y.diff(n, d), xr, xc, 1, f);
      cone.set_diff(n, d, Matrix::from_triplets(f, rows, cols, t));
    }
  return cone;
}

ChainMap multiplication_map(const EvaluatedComplex& x, const RingElement& z) {
  if (!x.has_action()) fail(ErrorKind::ValidationError, "complex carries no ring action");
  if (z.is_zero()) {
    auto both = on_common_window({x, x});
    return make_chain_map(both[0], both[1], [&](int n, int d) {
      return Matrix::zero(x.field(), both[1].dim(n, d), both[0].dim(n, d));
    });
  }
  if (!z.is_homogeneous()) fail(ErrorKind::NonHomogeneousElement, "element is not homogeneous");
  int a = z.degree();
  if (a <= 0) fail(ErrorKind::NonHomogeneousElement, "element must have positive degree");
  auto both = on_common_window({x.twisted(a), x});
  const EvaluatedComplex& src = both[0];
  const EvaluatedComplex& dst = both[1];
  return make_chain_map(src, dst, [&](int n, int d) {
    return dst.term(n).act_element(z, d - a);
  });
}

// ---------------------------------------------------------------------------

std::size_t FreeComplex::rank(int n) const {
  if (n < nlo || n > nhi()) return 0;
  return gens[n - nlo].size();
}

int FreeComplex::max_degree() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& g : gens)
    for (int d : g) m = std::max(m, d);
  return m == std::numeric_limits<int>::min() ? 0 : m;
}

int FreeComplex::min_degree() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& g : gens)
    for (int d : g) m = std::min(m, d);
  return m == std::numeric_limits<int>::max() ? 0 : m;
}

bool FreeComplex::minimal() const {
  for (const auto& col : diffs)
    for (const auto& entries : col)
      for (const auto& e : entries)
        if (e.degree <= 0 && !e.coords.empty()) return false;
  return true;
}

void FreeComplex::verify() const {
  const auto& f = ring->field();
  for (int n = nlo + 2; n <= nhi(); ++n)
    for (std::size_t g = 0; g < gens[n - nlo].size(); ++g) {
      // (target in F_{n-2}, degree) -> accumulated coordinates
      std::map<std::pair<std::size_t, int>, SparseVec> acc;
      for (const auto& e1 : diffs[n - nlo][g])
        for (const auto& e2 : diffs[n - 1 - nlo][e1.target]) {
          int deg = e1.degree + e2.degree;
          SparseVec p = ring->multiply(e1.degree, e1.coords, e2.degree, e2.coords);
          auto& slot = acc[{e2.target, deg}];
          slot = linalg::axpy(f, slot, 1, p);
        }
      for (const auto& [k, v] : acc)
        if (!v.empty())
          fail(ErrorKind::NotAComplex,
               "free complex has d o d != 0 at n = " + std::to_string(n));
    }
}

EvaluatedComplex FreeComplex::evaluate() const {
  std::vector<DegreewiseModule> terms;
  for (const auto& g : gens) {
    if (g.empty()) {
      terms.push_back(DegreewiseModule::zero(ring));
      continue;
    }
    DegreewiseModule t = DegreewiseModule::free_rank_one(ring).shifted(g[0]);
    for (std::size_t j = 1; j < g.size(); ++j)
      t = DegreewiseModule::direct_sum(t, DegreewiseModule::free_rank_one(ring).shifted(g[j]));
    terms.push_back(std::move(t));
  }
  EvaluatedComplex c(ring->field(), ring, nlo, std::move(terms));
  if (!finite) c.set_valid_range(nlo, nhi() - 1);
  c.set_base_certainty(certainty);
  for (int n = nlo + 1; n <= nhi(); ++n)
    for (int d = c.dlo(); d <= c.dhi(); ++d) {
      std::size_t rows = static_cast<std::size_t>(c.dim(n - 1, d));
      std::size_t cols = static_cast<std::size_t>(c.dim(n, d));
      if (!rows || !cols) continue;
      std::vector<std::size_t> off_src, off_dst;
      std::size_t o = 0;
      for (int gd : gens[n - nlo]) off_src.push_back(o), o += ring->dim(d - gd);
      o = 0;
      for (int gd : gens[n - 1 - nlo]) off_dst.push_back(o), o += ring->dim(d - gd);
      std::vector<Triplet> t;
      for (std::size_t g = 0; g < gens[n - nlo].size(); ++g) {
        int src = d - gens[n - nlo][g];
        if (ring->dim(src) == 0) continue;
        for (const auto& e : diffs[n - nlo][g])
          append_block(t, ring->mult_matrix(e.degree, e.coords, src), off_dst[e.target],
                       off_src[g], 1, ring->field());
      }
      c.set_diff(n, d, Matrix::from_triplets(ring->field(), rows, cols, t));
    }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// Action of phi(r) on X_j, cached per call.
class ActionCache {
 public:
  ActionCache(const LocalHom& phi, const EvaluatedComplex& x) : phi_(phi), x_(x) {}

  // phi(r) : X_{j, d} -> X_{j, d + e k}; nullptr when phi(r) = 0.
  const Matrix* get(int j, int k, const SparseVec& r, int d) {
    auto key = std::make_tuple(j, k, d, r);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second ? &*it->second : nullptr;
    SparseVec img = phi_.apply(k, r);
    std::optional<Matrix> m;
    if (!img.empty()) {
      if (!x_.has_action())
        fail(ErrorKind::ValidationError, "base change needs a complex with ring action");
      m = x_.term(j).act_element(RingElement::homogeneous(phi_.scale() * k, img), d);
    }
    auto [pos, ok] = cache_.emplace(key, std::move(m));
    (void)ok;
    return pos->second ? &*pos->second : nullptr;
  }

 private:
  const LocalHom& phi_;
  const EvaluatedComplex& x_;
  std::map<std::tuple<int, int, int, SparseVec>, std::optional<Matrix>> cache_;
};

void check_base_change(const FreeComplex& f, const LocalHom& phi, const EvaluatedComplex& x) {
  if (!same_ring(f.ring, phi.source()))
    fail(ErrorKind::IncompatibleDegreeScale, "free complex is not over the source ring");
  if (x.has_action() && !same_ring(x.ring(), phi.target()))
    fail(ErrorKind::IncompatibleDegreeScale, "complex is not over the target ring");
}

// Layout of sum_{i + j = n} sum_{g in F_i} X_{j, deg(d, g)} for one (n, d).
struct Layout {
  std::vector<std::vector<std::int64_t>> offset;  // [i - nlo][g], -1 when absent
  std::size_t size = 0;
};

template <class Deg>
Layout layout(const FreeComplex& f, const EvaluatedComplex& x, int n, int d, Deg x_degree,
              bool tensor) {
  Layout l;
  l.offset.resize(f.gens.size());
  for (int i = f.nlo; i <= f.nhi(); ++i) {
    int j = tensor ? n - i : n + i;
    auto& off = l.offset[i - f.nlo];
    off.assign(f.gens[i - f.nlo].size(), -1);
    if (j < x.nlo() || j > x.nhi()) continue;
    for (std::size_t g = 0; g < off.size(); ++g) {
      int s = x.dim(j, x_degree(d, f.gens[i - f.nlo][g]));
      if (!s) continue;
      off[g] = static_cast<std::int64_t>(l.size);
      l.size += static_cast<std::size_t>(s);
    }
  }
  return l;
}

}  // namespace

EvaluatedComplex base_change_tensor(const FreeComplex& f, const LocalHom& phi,
                                    const EvaluatedComplex& x) {
  check_base_change(f, phi, x);
  const auto& fld = x.field();
  if (x.empty() || f.gens.empty()) return EvaluatedComplex::zero(fld);
  int e = phi.scale();
  int nlo = f.nlo + x.nlo(), nhi = f.nhi() + x.nhi();
  int dlo = x.dlo() + e * f.min_degree();
  int dhi = x.bounded() ? x.dhi() + e * f.max_degree() : x.dhi() + e * f.min_degree();
  bool bounded = x.bounded();
  auto xdeg = [e](int d, int g) { return d - e * g; };

  std::vector<DegreewiseModule> terms;
  std::vector<std::vector<Layout>> lay;  // [n - nlo][d - dlo]
  for (int n = nlo; n <= nhi; ++n) {
    std::vector<int> dims;
    std::vector<Layout> row;
    for (int d = dlo; d <= dhi; ++d) {
      row.push_back(layout(f, x, n, d, xdeg, true));
      dims.push_back(static_cast<int>(row.back().size));
    }
    terms.emplace_back(fld, dlo, dims, bounded);
    lay.push_back(std::move(row));
  }
  EvaluatedComplex t(fld, nullptr, nlo, std::move(terms));
  int cells = (nhi - nlo) * (dhi - dlo + 1);
  std::vector<Matrix> built(static_cast<std::size_t>(std::max(cells, 0)));
  parallel_for(built.size(), [&](std::size_t cell) {
    int n = nlo + 1 + static_cast<int>(cell) / (dhi - dlo + 1);
    int d = dlo + static_cast<int>(cell) % (dhi - dlo + 1);
    const Layout& src = lay[n - nlo][d - dlo];
    const Layout& dst = lay[n - 1 - nlo][d - dlo];
    if (!src.size || !dst.size) {
      built[cell] = Matrix::zero(fld, dst.size, src.size);
      return;
    }
    ActionCache cache(phi, x);
    std::vector<Triplet> trip;
    for (int i = f.nlo; i <= f.nhi(); ++i) {
      int j = n - i;
      const Elem sign = i % 2 ? fld.neg(1) : 1;
      for (std::size_t g = 0; g < f.gens[i - f.nlo].size(); ++g) {
        std::int64_t c0 = src.offset[i - f.nlo][g];
        if (c0 < 0) continue;
        int xd = d - e * f.gens[i - f.nlo][g];
        if (i > f.nlo)
          for (const auto& en : f.diffs[i - f.nlo][g]) {
            std::int64_t r0 = dst.offset[i - 1 - f.nlo][en.target];
            if (r0 < 0) continue;
            const Matrix* m = cache.get(j, en.degree, en.coords, xd);
            if (m)
              append_block(trip, *m, static_cast<std::size_t>(r0), static_cast<std::size_t>(c0), 1,
                           fld);
          }
        if (j > x.nlo()) {
          std::int64_t r0 = dst.offset[i - f.nlo][g];
          if (r0 >= 0)
            append_block(trip, x.diff(j, xd), static_cast<std::size_t>(r0),
                         static_cast<std::size_t>(c0), sign, fld);
        }
      }
    }
    built[cell] = Matrix::from_triplets(fld, dst.size, src.size, trip);
  });
  for (std::size_t cell = 0; cell < built.size(); ++cell) {
    int n = nlo + 1 + static_cast<int>(cell) / (dhi - dlo + 1);
    int d = dlo + static_cast<int>(cell) % (dhi - dlo + 1);
    t.set_diff(n, d, std::move(built[cell]));
  }
  int vhi = f.finite ? std::numeric_limits<int>::max() / 2 : f.nhi() + x.nlo() - 1;
  t.set_valid_range(x.valid_nlo() + f.nlo, std::min(vhi, x.valid_nhi() + f.nhi()));
  t.set_base_certainty(weaker(f.certainty, x.base_certainty()));
  t.set_guard(std::max({2, e + 1, x.guard()}));
  return t;
}

EvaluatedComplex base_change_hom(const FreeComplex& f, const LocalHom& phi,
                                 const EvaluatedComplex& x) {
  check_base_change(f, phi, x);
  const auto& fld = x.field();
  if (x.empty() || f.gens.empty()) return EvaluatedComplex::zero(fld);
  int e = phi.scale();
  int nlo = x.nlo() - f.nhi(), nhi = x.nhi() - f.nlo;
  int dlo = x.dlo() - e * f.max_degree();
  int dhi = x.bounded() ? x.dhi() - e * f.min_degree() : x.dhi() - e * f.max_degree();
  bool bounded = x.bounded();
  auto xdeg = [e](int d, int g) { return d + e * g; };

  // For each generator g of F_i, the generators h of F_{i+1} whose
  // differential involves g.
  std::vector<std::vector<std::vector<std::pair<std::size_t, const FreeComplex::Entry*>>>> up(
      f.gens.size());
  for (int i = f.nlo; i <= f.nhi(); ++i) up[i - f.nlo].resize(f.gens[i - f.nlo].size());
  for (int i = f.nlo + 1; i <= f.nhi(); ++i)
    for (std::size_t h = 0; h < f.gens[i - f.nlo].size(); ++h)
      for (const auto& en : f.diffs[i - f.nlo][h]) up[i - 1 - f.nlo][en.target].push_back({h, &en});

  std::vector<DegreewiseModule> terms;
  std::vector<std::vector<Layout>> lay;
  for (int n = nlo; n <= nhi; ++n) {
    std::vector<int> dims;
    std::vector<Layout> row;
    for (int d = dlo; d <= dhi; ++d) {
      row.push_back(layout(f, x, n, d, xdeg, false));
      dims.push_back(static_cast<int>(row.back().size));
    }
    terms.emplace_back(fld, dlo, dims, bounded);
    lay.push_back(std::move(row));
  }
  EvaluatedComplex t(fld, nullptr, nlo, std::move(terms));
  int width = dhi - dlo + 1;
  int cells = (nhi - nlo) * width;
  std::vector<Matrix> built(static_cast<std::size_t>(std::max(cells, 0)));
  parallel_for(built.size(), [&](std::size_t cell) {
    int n = nlo + 1 + static_cast<int>(cell) / width;
    int d = dlo + static_cast<int>(cell) % width;
    const Layout& src = lay[n - nlo][d - dlo];
    const Layout& dst = lay[n - 1 - nlo][d - dlo];
    if (!src.size || !dst.size) {
      built[cell] = Matrix::zero(fld, dst.size, src.size);
      return;
    }
    ActionCache cache(phi, x);
    std::vector<Triplet> trip;
    // -(-1)^n
    const Elem sign = n % 2 ? 1 : fld.neg(1);
    for (int i = f.nlo; i <= f.nhi(); ++i) {
      int j = n + i;
      for (std::size_t g = 0; g < f.gens[i - f.nlo].size(); ++g) {
        std::int64_t c0 = src.offset[i - f.nlo][g];
        if (c0 < 0) continue;
        int xd = d + e * f.gens[i - f.nlo][g];
        if (j > x.nlo()) {
          std::int64_t r0 = dst.offset[i - f.nlo][g];
          if (r0 >= 0)
            append_block(trip, x.diff(j, xd), static_cast<std::size_t>(r0),
                         static_cast<std::size_t>(c0), 1, fld);
        }
        if (i < f.nhi())
          for (const auto& [h, en] : up[i - f.nlo][g]) {
            std::int64_t r0 = dst.offset[i + 1 - f.nlo][h];
            if (r0 < 0) continue;
            const Matrix* m = cache.get(j, en->degree, en->coords, xd);
            if (m)
              append_block(trip, *m, static_cast<std::size_t>(r0), static_cast<std::size_t>(c0),
                           sign, fld);
          }
      }
    }
    built[cell] = Matrix::from_triplets(fld, dst.size, src.size, trip);
  });
  for (std::size_t cell = 0; cell < built.size(); ++cell) {
    int n = nlo + 1 + static_cast<int>(cell) / width;
    int d = dlo + static_cast<int>(cell) % width;
    t.set_diff(n, d, std::move(built[cell]));
  }
  int vlo = f.finite ? std::numeric_limits<int>::min() / 2 : x.nhi() - f.nhi() + 1;
  t.set_valid_range(vlo, std::numeric_limits<int>::max() / 2);
  t.set_base_certainty(weaker(f.certainty, x.base_certainty()));
  t.set_guard(std::max({2, e + 1, x.guard()}));
  return t;
}

}  // namespace homolocal
