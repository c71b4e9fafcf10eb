#include "homolocal/module.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Elem;
using linalg::Matrix;
using linalg::RowReducer;
using linalg::SparseVec;

namespace {

[[noreturn]] void beyond_window(int d) {
  fail(ErrorKind::TruncationExceeded,
       "module data needed in degree " + std::to_string(d) + " beyond the window", d);
}

}  // namespace

DegreewiseModule::DegreewiseModule(RingPtr ring, int lo, std::vector<int> dims, bool bounded)
    : ring_(std::move(ring)), field_(ring_->field()), lo_(lo),
      hi_(lo + static_cast<int>(dims.size()) - 1), bounded_(bounded), dims_(std::move(dims)) {
  actions_.resize(ring_->nvars());
  for (std::size_t v = 0; v < ring_->nvars(); ++v) {
    int dv = ring_->var_degree(v);
    for (int d = lo_; d <= hi_ && d + dv <= hi_; ++d)
      actions_[v].push_back(Matrix::zero(field_, dims_[d + dv - lo_], dims_[d - lo_]));
  }
}

DegreewiseModule::DegreewiseModule(const linalg::PrimeField& f, int lo, std::vector<int> dims,
                                   bool bounded)
    : field_(f), lo_(lo), hi_(lo + static_cast<int>(dims.size()) - 1), bounded_(bounded),
      dims_(std::move(dims)) {}

DegreewiseModule DegreewiseModule::zero(RingPtr ring) {
  return DegreewiseModule(std::move(ring), 0, {}, true);
}

DegreewiseModule DegreewiseModule::free_rank_one(RingPtr ring) {
  int hi = ring->top_degree() ? *ring->top_degree() : ring->truncation();
  std::vector<int> dims;
  for (int d = 0; d <= hi; ++d) dims.push_back(ring->hilbert(d));
  DegreewiseModule m(ring, 0, dims, ring->is_artinian());
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    for (int d = 0; d + ring->var_degree(v) <= hi; ++d) m.set_action(v, d, ring->var_action(v, d));
  return m;
}

DegreewiseModule DegreewiseModule::residue_field(RingPtr ring) {
  return DegreewiseModule(std::move(ring), 0, {1}, true);
}

int DegreewiseModule::dim(int d) const {
  if (d < lo_) return 0;
  if (d > hi_) {
    if (bounded_) return 0;
    beyond_window(d);
  }
  return dims_[d - lo_];
}

int DegreewiseModule::total_dim() const {
  if (!bounded_) beyond_window(hi_ + 1);
  int s = 0;
  for (int x : dims_) s += x;
  return s;
}

bool DegreewiseModule::is_zero() const {
  if (!bounded_) return false;
  for (int x : dims_)
    if (x) return false;
  return true;
}

Matrix DegreewiseModule::act(std::size_t v, int d) const {
  if (!ring_) fail(ErrorKind::ValidationError, "module carries no ring action");
  int t = d + ring_->var_degree(v);
  int src = dim(d);
  int dst = dim(t);
  if (d < lo_ || t > hi_ || src == 0 || dst == 0) return Matrix::zero(field_, dst, src);
  return actions_[v][d - lo_];
}

void DegreewiseModule::set_action(std::size_t v, int d, Matrix m) {
  int t = d + ring_->var_degree(v);
  if (d < lo_ || t > hi_) fail(ErrorKind::ValidationError, "action outside the window");
  if (static_cast<int>(m.rows()) != dims_[t - lo_] || static_cast<int>(m.cols()) != dims_[d - lo_])
    fail(ErrorKind::ValidationError, "action matrix has wrong shape");
  actions_[v][d - lo_] = std::move(m);
}

Matrix DegreewiseModule::act_monomial(const Exponents& e, int d) const {
  Matrix acc = Matrix::identity(field_, dim(d));
  int cur = d;
  for (std::size_t v = 0; v < e.size(); ++v)
    for (int k = 0; k < e[v]; ++k) {
      acc = act(v, cur) * acc;
      cur += ring_->var_degree(v);
    }
  return acc;
}

Matrix DegreewiseModule::act_element(const RingElement& r, int d) const {
  if (r.is_zero()) fail(ErrorKind::ValidationError, "act_element needs a nonzero element");
  if (!r.is_homogeneous())
    fail(ErrorKind::NonHomogeneousElement, "acting element is not homogeneous");
  int deg = r.degree();
  Matrix acc = Matrix::zero(field_, dim(d + deg), dim(d));
  if (acc.rows() == 0 || acc.cols() == 0) return acc;
  for (auto [i, c] : r.coords())
    acc = acc + act_monomial(ring_->basis_monomial(deg, static_cast<int>(i)), d).scaled(c);
  return acc;
}

DegreewiseModule DegreewiseModule::shifted(int s) const {
  DegreewiseModule m = *this;
  m.lo_ += s;
  m.hi_ += s;
  return m;
}

DegreewiseModule DegreewiseModule::reframed(int lo, int hi, bool bounded) const {
  if (bounded) {
    bool drops = !bounded_;
    for (int d = lo_; d <= hi_ && !drops; ++d)
      if ((d < lo || d > hi) && dims_[d - lo_] != 0) drops = true;
    if (drops) fail(ErrorKind::ValidationError, "reframing would drop module data");
  }
  std::vector<int> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(dim(d));
  if (!ring_) return DegreewiseModule(field_, lo, dims, bounded);
  DegreewiseModule m(ring_, lo, dims, bounded);
  for (std::size_t v = 0; v < ring_->nvars(); ++v)
    for (int d = lo; d + ring_->var_degree(v) <= hi; ++d) m.set_action(v, d, act(v, d));
  return m;
}

DegreewiseModule DegreewiseModule::trimmed() const {
  if (!bounded_) return *this;
  int a = lo_, b = hi_;
  while (a <= b && dim(a) == 0) ++a;
  while (b >= a && dim(b) == 0) --b;
  if (a > b) return ring_ ? zero(ring_) : DegreewiseModule(field_, 0, {}, true);
  return reframed(a, b, true);
}

DegreewiseModule DegreewiseModule::direct_sum(const DegreewiseModule& a,
                                              const DegreewiseModule& b) {
  if (static_cast<bool>(a.ring_) != static_cast<bool>(b.ring_) ||
      (a.ring_ && a.ring_ != b.ring_))
    fail(ErrorKind::ValidationError, "direct sum of modules over different rings");
  int lo = std::min(a.lo_, b.lo_);
  bool bounded = a.bounded_ && b.bounded_;
  int hi;
  if (bounded) {
    hi = std::max(a.hi_, b.hi_);
  } else {
    hi = std::numeric_limits<int>::max();
    if (!a.bounded_) hi = std::min(hi, a.hi_);
    if (!b.bounded_) hi = std::min(hi, b.hi_);
  }
  if (hi < lo) hi = lo - 1;
  std::vector<int> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(a.dim(d) + b.dim(d));
  if (!a.ring_) return DegreewiseModule(a.field_, lo, dims, bounded);
  DegreewiseModule m(a.ring_, lo, dims, bounded);
  const auto& f = a.field_;
  for (std::size_t v = 0; v < a.ring_->nvars(); ++v)
    for (int d = lo; d + a.ring_->var_degree(v) <= hi; ++d) {
      int t = d + a.ring_->var_degree(v);
      Matrix ma = a.act(v, d), mb = b.act(v, d);
      m.set_action(v, d,
                   Matrix::block(f, a.dim(t) + b.dim(t), a.dim(d) + b.dim(d),
                                 {{{0, 0}, &ma},
                                  {{static_cast<std::size_t>(a.dim(t)),
                                    static_cast<std::size_t>(a.dim(d))},
                                   &mb}}));
    }
  return m;
}

void DegreewiseModule::verify() const {
  if (!ring_) return;
  std::size_t n = ring_->nvars();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v + 1; w < n; ++w) {
      int dv = ring_->var_degree(v), dw = ring_->var_degree(w);
      for (int d = lo_; d + dv + dw <= hi_; ++d)
        if (!(act(w, d + dv) * act(v, d) == act(v, d + dw) * act(w, d)))
          fail(ErrorKind::InvariantViolation,
               "variable actions do not commute in degree " + std::to_string(d));
    }
}

std::string DegreewiseModule::digest() const {
  std::ostringstream os;
  os << (ring_ ? ring_->canonical() : std::string("none")) << '|' << lo_ << ':' << hi_ << ':'
     << bounded_ << '|';
  for (int x : dims_) os << x << ',';
  for (std::size_t v = 0; v < actions_.size(); ++v)
    for (const auto& m : actions_[v]) {
      os << '[';
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto [c, x] : m.row(i)) os << i << ' ' << c << ' ' << x << ';';
      os << ']';
    }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// M / U where U_d is spanned by spans[d - lo] (U must be a submodule).
DegreewiseModule quotient_by_subspaces(const DegreewiseModule& m,
                                       const std::vector<std::vector<SparseVec>>& spans) {
  const RingPtr& ring = m.ring();
  int lo = m.lo(), hi = m.hi();
  std::vector<RowReducer> red;
  std::vector<std::vector<int>> pos;
  std::vector<int> dims;
  for (int d = lo; d <= hi; ++d) {
    RowReducer r(m.field(), static_cast<std::size_t>(m.dim(d)));
    for (const auto& v : spans[d - lo]) r.insert(v);
    std::vector<int> p(static_cast<std::size_t>(m.dim(d)), -1);
    int k = 0;
    for (int c = 0; c < m.dim(d); ++c)
      if (!r.is_pivot(c)) p[c] = k++;
    dims.push_back(k);
    red.push_back(std::move(r));
    pos.push_back(std::move(p));
  }
  DegreewiseModule q(ring, lo, dims, m.bounded());
  for (std::size_t v = 0; v < ring->nvars(); ++v) {
    int dv = ring->var_degree(v);
    for (int d = lo; d + dv <= hi; ++d) {
      auto cols = m.act(v, d).columns();
      std::vector<SparseVec> out;
      for (int c = 0; c < m.dim(d); ++c) {
        if (pos[d - lo][c] < 0) continue;
        SparseVec w;
        for (auto [i, x] : red[d + dv - lo].reduce(cols[c]))
          w.push_back({static_cast<std::uint32_t>(pos[d + dv - lo][i]), x});
        out.push_back(std::move(w));
      }
      q.set_action(v, d, Matrix::from_columns(m.field(), dims[d + dv - lo], dims[d - lo], out));
    }
  }
  return q;
}

// Applies the zero-run argument: if M vanishes on max_var_degree consecutive
// degrees above every generator, it vanishes above them too.
DegreewiseModule certify_bound(const DegreewiseModule& m, int max_gen_degree) {
  if (m.bounded()) return m.trimmed();
  int run = 0;
  int k = m.ring()->max_var_degree();
  for (int d = std::max(m.lo(), max_gen_degree + 1); d <= m.hi(); ++d) {
    run = m.dim(d) == 0 ? run + 1 : 0;
    if (run == k) {
      DegreewiseModule cut = m.reframed(m.lo(), d, false);
      // Rebuild as bounded with the same data.
      std::vector<int> dims;
      for (int e = m.lo(); e <= d; ++e) dims.push_back(m.dim(e));
      DegreewiseModule b(m.ring(), m.lo(), dims, true);
      for (std::size_t v = 0; v < m.ring()->nvars(); ++v)
        for (int e = m.lo(); e + m.ring()->var_degree(v) <= d; ++e) b.set_action(v, e, cut.act(v, e));
      return b.trimmed();
    }
  }
  return m;
}

}  // namespace

GradedModule GradedModule::free(RingPtr ring, std::vector<int> degrees) {
  return {std::move(ring), std::move(degrees), {}};
}

GradedModule GradedModule::residue_field(RingPtr ring) {
  GradedModule m{ring, {0}, {}};
  for (std::size_t v = 0; v < ring->nvars(); ++v) m.relations.push_back({ring->variable(v)});
  return m;
}

GradedModule GradedModule::cyclic(RingPtr ring, const std::vector<std::string>& ideal) {
  GradedModule m{ring, {0}, {}};
  for (const auto& f : ideal) m.relations.push_back({ring->parse(f)});
  m.validate();
  return m;
}

GradedModule GradedModule::from_strings(RingPtr ring, std::vector<int> degrees,
                                        const std::vector<std::vector<std::string>>& rels) {
  GradedModule m{ring, std::move(degrees), {}};
  for (const auto& rel : rels) {
    if (rel.size() != m.gen_degrees.size())
      fail(ErrorKind::ValidationError, "relation has " + std::to_string(rel.size()) +
                                           " entries but the module has " +
                                           std::to_string(m.gen_degrees.size()) + " generators");
    std::vector<RingElement> row;
    for (const auto& s : rel) row.push_back(ring->parse(s));
    m.relations.push_back(std::move(row));
  }
  m.validate();
  return m;
}

namespace {

// Degree of a relation, or nullopt for the zero relation.
std::optional<int> relation_degree(const GradedModule& m, const std::vector<RingElement>& rel) {
  std::optional<int> deg;
  for (std::size_t j = 0; j < rel.size(); ++j) {
    if (rel[j].is_zero()) continue;
    if (!rel[j].is_homogeneous())
      fail(ErrorKind::NonHomogeneousRelation, "presentation entry is not homogeneous");
    int e = rel[j].degree() + m.gen_degrees[j];
    if (deg && *deg != e)
      fail(ErrorKind::NonHomogeneousRelation, "presentation relation is not homogeneous");
    deg = e;
  }
  return deg;
}

}  // namespace

void GradedModule::validate() const {
  for (const auto& rel : relations) {
    if (rel.size() != gen_degrees.size())
      fail(ErrorKind::ValidationError, "relation length does not match the generator count");
    relation_degree(*this, rel);
  }
}

DegreewiseModule GradedModule::degreewise() const {
  validate();
  if (gen_degrees.empty()) return DegreewiseModule::zero(ring);
  // F_0 = sum of shifted copies of R.
  DegreewiseModule f0 = DegreewiseModule::free_rank_one(ring).shifted(gen_degrees[0]);
  for (std::size_t j = 1; j < gen_degrees.size(); ++j)
    f0 = DegreewiseModule::direct_sum(f0, DegreewiseModule::free_rank_one(ring).shifted(gen_degrees[j]));
  int lo = f0.lo(), hi = f0.hi();
  // Offsets of the summand j inside (F_0)_d.
  auto offset = [&](int d, std::size_t j) {
    int o = 0;
    for (std::size_t k = 0; k < j; ++k) o += ring->dim(d - gen_degrees[k]);
    return o;
  };
  std::vector<std::vector<SparseVec>> spans(static_cast<std::size_t>(std::max(0, hi - lo + 1)));
  std::vector<RowReducer> sub;
  for (int d = lo; d <= hi; ++d) {
    RowReducer r(ring->field(), static_cast<std::size_t>(f0.dim(d)));
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      int dp = d - ring->var_degree(v);
      if (dp < lo) continue;
      Matrix a = f0.act(v, dp);
      for (const auto& row : sub[dp - lo].reduced_rows()) r.insert(linalg::apply(a, row));
    }
    for (const auto& rel : relations) {
      auto e = relation_degree(*this, rel);
      if (!e || *e != d) continue;
      SparseVec vec;
      for (std::size_t j = 0; j < rel.size(); ++j) {
        if (rel[j].is_zero()) continue;
        int o = offset(d, j);
        for (auto [i, x] : rel[j].coords()) vec.push_back({static_cast<std::uint32_t>(o + i), x});
      }
      std::sort(vec.begin(), vec.end());
      r.insert(vec);
    }
    spans[d - lo] = r.reduced_rows();
    sub.push_back(std::move(r));
  }
  int max_gen = *std::max_element(gen_degrees.begin(), gen_degrees.end());
  return certify_bound(quotient_by_subspaces(f0, spans), max_gen);
}

// ---------------------------------------------------------------------------

std::size_t SocleBasis::total() const {
  std::size_t s = 0;
  for (const auto& v : per_degree) s += v.size();
  return s;
}

SocleBasis socle_basis(const DegreewiseModule& m) {
  SocleBasis out;
  out.lo = m.lo();
  const RingPtr& ring = m.ring();
  out.computed_hi = m.bounded() ? m.hi() : m.hi() - ring->max_var_degree();
  out.certified = m.bounded();
  for (int d = m.lo(); d <= out.computed_hi; ++d) {
    std::vector<SparseVec> rows;
    std::size_t total = 0;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      Matrix a = m.act(v, d);
      for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
      total += a.rows();
    }
    Matrix stacked = Matrix::from_rows(m.field(), total, static_cast<std::size_t>(m.dim(d)), rows);
    out.per_degree.push_back(linalg::kernel_vectors(stacked));
  }
  return out;
}

RowReducer maximal_ideal_image(const DegreewiseModule& m, int d) {
  RowReducer r(m.field(), static_cast<std::size_t>(m.dim(d)));
  const RingPtr& ring = m.ring();
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    for (const auto& c : m.act(v, d - ring->var_degree(v)).columns()) r.insert(c);
  return r;
}

DegreewiseModule matlis_dual(const DegreewiseModule& m) {
  if (!m.bounded()) beyond_window(m.hi() + 1);
  DegreewiseModule t = m.trimmed();
  if (t.is_zero()) return t;
  int lo = t.lo(), hi = t.hi();
  std::vector<int> dims;
  for (int d = 0; d <= hi - lo; ++d) dims.push_back(t.dim(hi - d));
  DegreewiseModule out(t.ring(), 0, dims, true);
  for (std::size_t v = 0; v < t.ring()->nvars(); ++v) {
    int dv = t.ring()->var_degree(v);
    for (int d = 0; d + dv <= hi - lo; ++d) out.set_action(v, d, t.act(v, hi - d - dv).transpose());
  }
  return out;
}

DegreewiseModule restrict_scalars(const DegreewiseModule& m, RingPtr source,
                                  const std::vector<RingElement>& images, int scale) {
  if (scale < 1) fail(ErrorKind::IncompatibleDegreeScale, "degree scale must be positive");
  if (images.size() != source->nvars())
    fail(ErrorKind::ValidationError, "one image per source variable is required");
  auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  int jlo = floor_div(m.lo(), scale);
  int jhi = m.bounded() ? floor_div(m.hi(), scale) : floor_div(m.hi() + 1, scale) - 1;
  std::vector<int> dims;
  for (int j = jlo; j <= jhi; ++j) {
    int s = 0;
    for (int r = 0; r < scale; ++r) s += m.dim(j * scale + r);
    dims.push_back(s);
  }
  if (jhi < jlo) dims.clear();
  DegreewiseModule out(source, jlo, dims, m.bounded());
  const auto& f = m.field();
  for (std::size_t v = 0; v < source->nvars(); ++v) {
    int dv = source->var_degree(v);
    for (int j = jlo; j + dv <= jhi; ++j) {
      std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Matrix*>> blocks;
      std::vector<Matrix> store;
      store.reserve(static_cast<std::size_t>(scale));
      std::size_t ro = 0, co = 0;
      for (int r = 0; r < scale; ++r) {
        int d = j * scale + r;
        if (!images[v].is_zero()) {
          if (images[v].degree() != scale * dv)
            fail(ErrorKind::WrongImageDegree, "image degree does not match the scale");
          store.push_back(m.act_element(images[v], d));
          blocks.push_back({{ro, co}, &store.back()});
        }
        ro += static_cast<std::size_t>(m.dim(d + scale * dv));
        co += static_cast<std::size_t>(m.dim(d));
      }
      out.set_action(v, j, Matrix::block(f, ro, co, blocks));
    }
  }
  return out;
}

DegreewiseModule quotient_by_elements(const DegreewiseModule& m,
                                      const std::vector<RingElement>& z) {
  std::vector<std::vector<SparseVec>> spans(static_cast<std::size_t>(std::max(0, m.hi() - m.lo() + 1)));
  for (int d = m.lo(); d <= m.hi(); ++d)
    for (const auto& e : z) {
      if (e.is_zero()) continue;
      if (!e.is_homogeneous())
        fail(ErrorKind::NonHomogeneousElement, "quotient element is not homogeneous");
      for (const auto& c : m.act_element(e, d - e.degree()).columns())
        spans[d - m.lo()].push_back(c);
    }
  return m.bounded() ? quotient_by_subspaces(m, spans).trimmed() : quotient_by_subspaces(m, spans);
}

}  // namespace homolocal
