#include "homolocal/koszul.hpp"

#include <algorithm>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Matrix;
using linalg::RowReducer;
using linalg::SparseVec;

EvaluatedComplex koszul_complex(const EvaluatedComplex& x, const std::vector<RingElement>& z) {
  EvaluatedComplex k = x;
  for (const auto& zi : z) {
    if (zi.is_zero() || !zi.is_homogeneous() || zi.degree() <= 0)
      fail(ErrorKind::NonHomogeneousElement,
           "Koszul elements must be homogeneous of positive degree");
    k = mapping_cone(multiplication_map(k, zi));
  }
  return k;
}

EvaluatedComplex koszul_complex(const DegreewiseModule& n, const std::vector<RingElement>& z) {
  return koszul_complex(EvaluatedComplex::from_module(n), z);
}

std::vector<RingElement> variable_elements(const GradedRing& s) {
  std::vector<RingElement> out;
  for (std::size_t v = 0; v < s.nvars(); ++v) out.push_back(s.variable(v));
  return out;
}

TruncatedSeries koszul_polynomial(const EvaluatedComplex& x) {
  if (!x.has_action()) fail(ErrorKind::ValidationError, "Koszul polynomial needs a ring action");
  EvaluatedComplex k = koszul_complex(x, variable_elements(*x.ring()));
  HomologyTable h = homology(k);
  for (std::size_t i = 0; i < h.certainty.size(); ++i)
    if (!certified(h.certainty[i]))
      fail(ErrorKind::TruncationExceeded,
           "Koszul homology reaches the top of the window at n = " +
               std::to_string(h.nlo + static_cast<int>(i)),
           k.dhi() + 1);
  TruncatedSeries s = h.series(std::min(0, h.nlo), h.nhi());
  s.polynomial = true;
  return s;
}

TruncatedSeries koszul_polynomial(const DegreewiseModule& n) {
  return koszul_polynomial(EvaluatedComplex::from_module(n));
}

DepthType depth_and_type(const DegreewiseModule& n) {
  TruncatedSeries k = koszul_polynomial(n);
  auto top = k.degree();
  if (!top) fail(ErrorKind::ValidationError, "depth of the zero module is infinite");
  DepthType out;
  out.depth = n.ring()->edim() - *top;
  out.type = k[*top];
  for (auto c : k.certainty) out.certainty = weaker(out.certainty, c);
  return out;
}

namespace {

// Inverse of a square invertible matrix via rref of [P | I].
Matrix inverse(const Matrix& p) {
  std::size_t n = p.rows();
  std::vector<SparseVec> rows = p.sparse_rows();
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back({static_cast<std::uint32_t>(n + i), 1});
  auto r = linalg::rref(Matrix::from_rows(p.field(), n, 2 * n, rows));
  if (r.pivots.size() != n || (n && r.pivots.back() != n - 1))
    fail(ErrorKind::InvariantViolation, "filtration basis is not invertible");
  std::vector<SparseVec> inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto [c, x] : r.reduced.row(i))
      if (c >= n) inv[i].push_back({static_cast<std::uint32_t>(c - n), x});
  return Matrix::from_rows(p.field(), n, n, inv);
}

}  // namespace

DegreewiseModule associated_graded(const DegreewiseModule& l) {
  const RingPtr& ring = l.ring();
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (ring->var_degree(v) != 1)
      fail(ErrorKind::ValidationError, "associated graded needs a standard-graded ring");
  if (!l.bounded()) fail(ErrorKind::TruncationExceeded, "associated graded needs a bounded module",
                         l.hi() + 1);
  int lo = l.lo(), hi = l.hi();
  int width = std::max(0, hi - lo + 1);
  // level[i][d - lo]: basis of (n^i L)_d after reduction.
  std::vector<std::vector<std::vector<SparseVec>>> level;
  {
    std::vector<std::vector<SparseVec>> all(static_cast<std::size_t>(width));
    for (int d = lo; d <= hi; ++d)
      for (int c = 0; c < l.dim(d); ++c) all[d - lo].push_back({{static_cast<std::uint32_t>(c), 1}});
    level.push_back(std::move(all));
  }
  while (true) {
    const auto& prev = level.back();
    std::vector<std::vector<SparseVec>> next(static_cast<std::size_t>(width));
    bool nonzero = false;
    for (int d = lo + 1; d <= hi; ++d) {
      RowReducer r(l.field(), static_cast<std::size_t>(l.dim(d)));
      for (std::size_t v = 0; v < ring->nvars(); ++v) {
        Matrix a = l.act(v, d - 1);
        for (const auto& u : prev[d - 1 - lo]) r.insert(linalg::apply(a, u));
      }
      next[d - lo] = r.reduced_rows();
      nonzero = nonzero || !next[d - lo].empty();
    }
    level.push_back(std::move(next));
    if (!nonzero) break;
  }
  int levels = static_cast<int>(level.size()) - 1;  // n^levels L = 0
  // Filtration-adapted basis per degree: complement blocks B^i_d.
  std::vector<std::vector<std::vector<SparseVec>>> block(
      static_cast<std::size_t>(levels), std::vector<std::vector<SparseVec>>(width));
  std::vector<Matrix> inv(static_cast<std::size_t>(width));
  std::vector<std::vector<int>> owner(static_cast<std::size_t>(width));  // adapted index -> level
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(width));    // index inside its block
  for (int d = lo; d <= hi; ++d) {
    std::vector<SparseVec> cols;
    for (int i = levels - 1; i >= 0; --i) {
      RowReducer r(l.field(), static_cast<std::size_t>(l.dim(d)));
      for (const auto& u : level[i + 1][d - lo]) r.insert(u);
      for (const auto& u : level[i][d - lo])
        if (r.insert(u)) block[i][d - lo].push_back(u);
    }
    for (int i = 0; i < levels; ++i)
      for (std::size_t k = 0; k < block[i][d - lo].size(); ++k) {
        cols.push_back(block[i][d - lo][k]);
        owner[d - lo].push_back(i);
        pos[d - lo].push_back(static_cast<int>(k));
      }
    inv[d - lo] = inverse(Matrix::from_columns(l.field(), static_cast<std::size_t>(l.dim(d)),
                                               cols.size(), cols));
  }
  // gr_i = sum_d B^i_d, ordered by internal degree.
  std::vector<int> dims(static_cast<std::size_t>(levels), 0);
  std::vector<std::vector<int>> offset(static_cast<std::size_t>(levels),
                                       std::vector<int>(static_cast<std::size_t>(width), 0));
  for (int i = 0; i < levels; ++i)
    for (int d = lo; d <= hi; ++d) {
      offset[i][d - lo] = dims[i];
      dims[i] += static_cast<int>(block[i][d - lo].size());
    }
  DegreewiseModule gr(ring, 0, dims, true);
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    for (int i = 0; i + 1 < levels; ++i) {
      std::vector<SparseVec> cols(static_cast<std::size_t>(dims[i]));
      for (int d = lo; d < hi; ++d) {
        Matrix a = l.act(v, d);
        for (std::size_t k = 0; k < block[i][d - lo].size(); ++k) {
          SparseVec img = linalg::apply(inv[d + 1 - lo], linalg::apply(a, block[i][d - lo][k]));
          SparseVec out;
          for (auto [c, x] : img)
            if (owner[d + 1 - lo][c] == i + 1)
              out.push_back({static_cast<std::uint32_t>(offset[i + 1][d + 1 - lo] +
                                                        pos[d + 1 - lo][c]),
                             x});
          std::sort(out.begin(), out.end());
          cols[offset[i][d - lo] + k] = std::move(out);
        }
      }
      gr.set_action(v, i, Matrix::from_columns(l.field(), dims[i + 1], dims[i], cols));
    }
  return gr.trimmed();
}

int spread(const DegreewiseModule& l) {
  DegreewiseModule gr = associated_graded(l);
  if (gr.is_zero()) fail(ErrorKind::ValidationError, "spread of the zero module");
  EvaluatedComplex k = koszul_complex(gr, variable_elements(*gr.ring()));
  HomologyTable h = homology(k);
  int top = std::numeric_limits<int>::min();
  for (int n = h.nlo; n <= h.nhi(); ++n)
    for (int d = h.dlo; d <= h.dhi; ++d)
      if (h.rank(n, d)) top = std::max(top, d);
  return top + 1;
}

}  // namespace homolocal
