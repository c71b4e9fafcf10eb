#include "homolocal/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "homolocal/error.hpp"

namespace homolocal::linalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(0) {
  if (p >= (1ULL << 31) || !is_prime(p))
    fail(ErrorKind::InvalidPrime, std::to_string(p) + " is not a prime below 2^31");
  p_ = static_cast<std::uint32_t>(p);
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1 % p_;
  Elem b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem PrimeField::inv(Elem a) const { return pow(a, p_ - 2); }

// ---------------------------------------------------------------------------
// Matrix

namespace {

Matrix::Storage default_storage(std::size_t cols) {
  return cols < kDenseColumnThreshold ? Matrix::Storage::Dense
                                      : Matrix::Storage::Sparse;
}

}  // namespace

Matrix Matrix::zero(const PrimeField& f, std::size_t rows, std::size_t cols) {
  return from_rows(f, rows, cols, std::vector<SparseVec>(rows));
}

Matrix Matrix::identity(const PrimeField& f, std::size_t n) {
  std::vector<SparseVec> r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i].push_back({static_cast<std::uint32_t>(i), 1});
  return from_rows(f, n, n, std::move(r));
}

Matrix Matrix::from_dense(const PrimeField& f, std::size_t rows,
                          std::size_t cols,
                          std::span<const std::int64_t> data) {
  if (data.size() != rows * cols)
    fail(ErrorKind::ValidationError, "dense matrix data has wrong size");
  std::vector<SparseVec> r(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Elem v = f.reduce(data[i * cols + j]);
      if (v) r[i].push_back({static_cast<std::uint32_t>(j), v});
    }
  return from_rows(f, rows, cols, std::move(r));
}

Matrix Matrix::from_rows(const PrimeField& f, std::size_t rows,
                         std::size_t cols, std::vector<SparseVec> row_data) {
  if (row_data.size() != rows)
    fail(ErrorKind::ValidationError, "row count mismatch");
  Matrix m;
  m.field_ = f;
  m.rows_ = rows;
  m.cols_ = cols;
  m.storage_ = Storage::Sparse;
  for (auto& r : row_data)
    for (auto& [c, v] : r)
      if (c >= cols || v >= f.p())
        fail(ErrorKind::ValidationError, "matrix entry out of range");
  m.sparse_ = std::move(row_data);
  if (default_storage(cols) == Storage::Dense) return m.with_storage(Storage::Dense);
  return m;
}

Matrix Matrix::from_columns(const PrimeField& f, std::size_t rows,
                            std::size_t cols,
                            const std::vector<SparseVec>& col_data) {
  if (col_data.size() != cols)
    fail(ErrorKind::ValidationError, "column count mismatch");
  std::vector<SparseVec> r(rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (auto [i, v] : col_data[j]) {
      if (i >= rows) fail(ErrorKind::ValidationError, "matrix entry out of range");
      r[i].push_back({static_cast<std::uint32_t>(j), v});
    }
  return from_rows(f, rows, cols, std::move(r));
}

Matrix Matrix::from_triplets(const PrimeField& f, std::size_t rows,
                             std::size_t cols, std::span<const Triplet> t) {
  std::vector<SparseVec> r(rows);
  std::vector<Triplet> sorted(t.begin(), t.end());
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& tr : sorted) {
    if (tr.row >= rows || tr.col >= cols)
      fail(ErrorKind::ValidationError, "matrix entry out of range");
    auto& row = r[tr.row];
    Elem v = tr.value % f.p();
    if (!row.empty() && row.back().first == tr.col) {
      row.back().second = f.add(row.back().second, v);
      if (row.back().second == 0) row.pop_back();
    } else if (v) {
      row.push_back({static_cast<std::uint32_t>(tr.col), v});
    }
  }
  return from_rows(f, rows, cols, std::move(r));
}

Matrix Matrix::with_storage(Storage s) const {
  Matrix m;
  m.field_ = field_;
  m.rows_ = rows_;
  m.cols_ = cols_;
  m.storage_ = s;
  if (s == Storage::Sparse) {
    m.sparse_ = sparse_rows();
  } else {
    m.dense_.assign(rows_ * cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (auto [c, v] : row(i)) m.dense_[i * cols_ + c] = v;
  }
  return m;
}

Elem Matrix::at(std::size_t r, std::size_t c) const {
  if (storage_ == Storage::Dense) return dense_[r * cols_ + c];
  const auto& row = sparse_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  return it != row.end() && it->first == c ? it->second : 0;
}

SparseVec Matrix::row(std::size_t r) const {
  if (storage_ == Storage::Sparse) return sparse_[r];
  SparseVec out;
  const Elem* base = dense_.data() + r * cols_;
  for (std::size_t j = 0; j < cols_; ++j)
    if (base[j]) out.push_back({static_cast<std::uint32_t>(j), base[j]});
  return out;
}

std::vector<SparseVec> Matrix::sparse_rows() const {
  if (storage_ == Storage::Sparse) return sparse_;
  std::vector<SparseVec> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = row(i);
  return out;
}

std::vector<SparseVec> Matrix::columns() const {
  std::vector<SparseVec> out(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (auto [c, v] : row(i)) out[c].push_back({static_cast<std::uint32_t>(i), v});
  return out;
}

Matrix Matrix::transpose() const {
  return from_rows(field_, cols_, rows_, columns());
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    fail(ErrorKind::ValidationError, "matrix product dimension mismatch");
  const PrimeField& f = field_;
  auto brows = rhs.sparse_rows();
  std::vector<SparseVec> out(rows_);
  std::vector<Elem> acc(rhs.cols_, 0);
  std::vector<char> touched(rhs.cols_, 0);
  std::vector<std::uint32_t> idx;
  for (std::size_t i = 0; i < rows_; ++i) {
    idx.clear();
    for (auto [k, a] : row(i))
      for (auto [j, b] : brows[k]) {
        if (!touched[j]) {
          touched[j] = 1;
          idx.push_back(j);
        }
        acc[j] = f.add(acc[j], f.mul(a, b));
      }
    std::sort(idx.begin(), idx.end());
    for (auto j : idx) {
      if (acc[j]) out[i].push_back({j, acc[j]});
      acc[j] = 0;
      touched[j] = 0;
    }
  }
  return from_rows(f, rows_, rhs.cols_, std::move(out));
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorKind::ValidationError, "matrix sum dimension mismatch");
  std::vector<SparseVec> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = axpy(field_, row(i), 1, rhs.row(i));
  return from_rows(field_, rows_, cols_, std::move(out));
}

Matrix Matrix::scaled(Elem c) const {
  c %= field_.p();
  std::vector<SparseVec> out(rows_);
  if (c)
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i] = row(i);
      for (auto& e : out[i]) e.second = field_.mul(e.second, c);
    }
  return from_rows(field_, rows_, cols_, std::move(out));
}

bool Matrix::is_zero() const { return nonzeros() == 0; }

std::size_t Matrix::nonzeros() const {
  if (storage_ == Storage::Dense)
    return static_cast<std::size_t>(
        std::count_if(dense_.begin(), dense_.end(), [](Elem v) { return v != 0; }));
  std::size_t n = 0;
  for (const auto& r : sparse_) n += r.size();
  return n;
}

Matrix Matrix::block(
    const PrimeField& f, std::size_t rows, std::size_t cols,
    const std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Matrix*>>&
        blocks) {
  std::vector<SparseVec> out(rows);
  for (const auto& [pos, m] : blocks) {
    auto [r0, c0] = pos;
    if (r0 + m->rows() > rows || c0 + m->cols() > cols)
      fail(ErrorKind::ValidationError, "block does not fit");
    for (std::size_t i = 0; i < m->rows(); ++i) {
      SparseVec shifted;
      for (auto [c, v] : m->row(i))
        shifted.push_back({static_cast<std::uint32_t>(c + c0), v});
      out[r0 + i] = axpy(f, out[r0 + i], 1, shifted);
    }
  }
  return from_rows(f, rows, cols, std::move(out));
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
  for (std::size_t i = 0; i < a.rows_; ++i)
    if (a.row(i) != b.row(i)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sparse vectors

SparseVec axpy(const PrimeField& f, const SparseVec& x, Elem a, const SparseVec& y) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      Elem v = f.mul(a, y[j].second);
      if (v) out.push_back({y[j].first, v});
      ++j;
    } else {
      Elem v = f.add(x[i].second, f.mul(a, y[j].second));
      if (v) out.push_back({x[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec apply(const Matrix& m, const SparseVec& v) {
  const PrimeField& f = m.field();
  std::vector<Elem> acc(m.rows(), 0);
  // Column access is not cached; go through rows.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Elem s = 0;
    if (m.storage() == Matrix::Storage::Dense) {
      for (auto [c, x] : v) s = f.add(s, f.mul(m.at(i, c), x));
    } else {
      auto r = m.row(i);
      std::size_t a = 0, b = 0;
      while (a < r.size() && b < v.size()) {
        if (r[a].first < v[b].first) ++a;
        else if (v[b].first < r[a].first) ++b;
        else s = f.add(s, f.mul(r[a++].second, v[b++].second));
      }
    }
    acc[i] = s;
  }
  SparseVec out;
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (acc[i]) out.push_back({static_cast<std::uint32_t>(i), acc[i]});
  return out;
}

// ---------------------------------------------------------------------------
// RowReducer

RowReducer::RowReducer(const PrimeField& f, std::size_t ncols)
    : field_(f),
      ncols_(ncols),
      pivot_row_(ncols, -1),
      scratch_(ncols, 0),
      queued_(ncols, 0) {}

// Full reduction of v against the stored rows. Active columns are visited in
// increasing order through a min-heap, so the cost depends on the fill-in and
// not on the column count.
SparseVec RowReducer::reduce_impl(const SparseVec& v) const {
  const PrimeField& f = field_;
  std::vector<Elem>& acc = scratch_;
  std::vector<char>& queued = queued_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  for (auto [c, x] : v) {
    acc[c] = x;
    queued[c] = 1;
    heap.push(c);
  }
  SparseVec out;
  while (!heap.empty()) {
    std::uint32_t c = heap.top();
    heap.pop();
    queued[c] = 0;
    Elem a = acc[c];
    if (!a) continue;
    std::int64_t pr = pivot_row_[c];
    if (pr < 0) {
      out.push_back({c, a});
      acc[c] = 0;
      continue;
    }
    // Rows are normalized with leading entry 1 at column c.
    Elem m = f.neg(a);
    for (auto [j, x] : rows_[static_cast<std::size_t>(pr)]) {
      acc[j] = f.add(acc[j], f.mul(m, x));
      if (!queued[j] && j != c) {
        queued[j] = 1;
        heap.push(j);
      }
    }
    acc[c] = 0;
  }
  return out;
}

SparseVec RowReducer::reduce(const SparseVec& v) const {
  if (v.empty()) return {};
  return reduce_impl(v);
}

bool RowReducer::insert(const SparseVec& v) {
  if (v.empty()) return false;
  SparseVec r = reduce_impl(v);
  if (r.empty()) return false;
  Elem inv = field_.inv(r.front().second);
  for (auto& e : r) e.second = field_.mul(e.second, inv);
  pivot_row_[r.front().first] = static_cast<std::int64_t>(rows_.size());
  order_.push_back(r.front().first);
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> RowReducer::reduced_rows() const {
  std::vector<std::uint32_t> piv(order_);
  std::sort(piv.begin(), piv.end());
  // A row inserted early may still carry pivot columns of later rows.
  // Re-reducing its tail against the whole basis clears them; the leading
  // entry is kept aside so the row does not cancel itself.
  std::vector<SparseVec> out;
  out.reserve(piv.size());
  for (auto c : piv) {
    const SparseVec& src = rows_[static_cast<std::size_t>(pivot_row_[c])];
    bool needs = false;
    for (std::size_t k = 1; k < src.size() && !needs; ++k)
      needs = pivot_row_[src[k].first] >= 0;
    if (!needs) {
      out.push_back(src);
      continue;
    }
    SparseVec tail(src.begin() + 1, src.end());
    SparseVec r = reduce_impl(tail);
    r.insert(r.begin(), src.front());
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// Gauss-Jordan on a dense copy; leftmost-nonzero pivoting.
RrefResult rref_dense(const Matrix& m) {
  const PrimeField& f = m.field();
  std::size_t R = m.rows(), C = m.cols();
  std::vector<Elem> a(R * C, 0);
  for (std::size_t i = 0; i < R; ++i)
    for (auto [c, v] : m.row(i)) a[i * C + c] = v;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (a[i * C + c]) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = c; j < C; ++j) std::swap(a[piv * C + j], a[r * C + j]);
    Elem inv = f.inv(a[r * C + c]);
    for (std::size_t j = c; j < C; ++j) a[r * C + j] = f.mul(a[r * C + j], inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      Elem factor = a[i * C + c];
      if (!factor) continue;
      Elem neg = f.neg(factor);
      for (std::size_t j = c; j < C; ++j)
        if (a[r * C + j]) a[i * C + j] = f.add(a[i * C + j], f.mul(neg, a[r * C + j]));
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<SparseVec> rows(R);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (a[i * C + j]) rows[i].push_back({static_cast<std::uint32_t>(j), a[i * C + j]});
  Matrix out = Matrix::from_rows(f, R, C, std::move(rows));
  return {out.with_storage(Matrix::Storage::Dense), std::move(pivots)};
}

RrefResult rref_sparse(const Matrix& m) {
  RowReducer red(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) red.insert(m.row(i));
  auto rows = red.reduced_rows();
  std::vector<std::size_t> pivots;
  for (const auto& r : rows) pivots.push_back(r.front().first);
  rows.resize(m.rows());
  Matrix out = Matrix::from_rows(m.field(), m.rows(), m.cols(), std::move(rows));
  return {out.with_storage(Matrix::Storage::Sparse), std::move(pivots)};
}

}  // namespace

RrefResult rref(const Matrix& m) {
  return m.storage() == Matrix::Storage::Dense ? rref_dense(m) : rref_sparse(m);
}

std::size_t rank(const Matrix& m) {
  if (m.storage() == Matrix::Storage::Dense) return rref_dense(m).pivots.size();
  // Eliminating along the shorter side is cheaper; rank is symmetric.
  const bool use_t = m.rows() > 2 * m.cols() ? false : m.cols() > 2 * m.rows();
  if (use_t) {
    auto cols = m.columns();
    RowReducer red(m.field(), m.rows());
    for (const auto& c : cols) red.insert(c);
    return red.rank();
  }
  RowReducer red(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) red.insert(m.row(i));
  return red.rank();
}

std::vector<SparseVec> kernel_vectors(const Matrix& m) {
  const PrimeField& f = m.field();
  std::vector<SparseVec> reduced;
  std::vector<std::size_t> pivots;
  if (m.storage() == Matrix::Storage::Dense) {
    auto r = rref_dense(m);
    pivots = r.pivots;
    for (std::size_t i = 0; i < pivots.size(); ++i) reduced.push_back(r.reduced.row(i));
  } else {
    RowReducer red(f, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) red.insert(m.row(i));
    reduced = red.reduced_rows();
    for (const auto& r : reduced) pivots.push_back(r.front().first);
  }
  std::vector<char> is_piv(m.cols(), 0);
  for (auto p : pivots) is_piv[p] = 1;
  std::vector<std::int64_t> free_index(m.cols(), -1);
  std::vector<std::size_t> frees;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) {
      free_index[c] = static_cast<std::int64_t>(frees.size());
      frees.push_back(c);
    }
  std::vector<SparseVec> out(frees.size());
  for (std::size_t k = 0; k < frees.size(); ++k)
    out[k].push_back({static_cast<std::uint32_t>(frees[k]), 1});
  // Row i reads x_{p_i} + sum_f a_{i,f} x_f = 0.
  for (std::size_t i = 0; i < reduced.size(); ++i)
    for (auto [c, v] : reduced[i])
      if (free_index[c] >= 0)
        out[static_cast<std::size_t>(free_index[c])].push_back(
            {static_cast<std::uint32_t>(pivots[i]), f.neg(v)});
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

Matrix kernel_basis(const Matrix& m) {
  auto vecs = kernel_vectors(m);
  return Matrix::from_columns(m.field(), m.cols(), vecs.size(), vecs);
}

namespace {

void check_composable(const Matrix& d_in, const Matrix& d_out) {
  if (d_in.rows() != d_out.cols())
    fail(ErrorKind::NotAComplex, "differentials are not composable");
  if (d_in.rows() == 0 || d_in.cols() == 0 || d_out.rows() == 0) return;
  if (!(d_out * d_in).is_zero())
    fail(ErrorKind::NotAComplex, "composite of differentials is nonzero");
}

}  // namespace

std::size_t homology_rank(const Matrix& d_in, const Matrix& d_out) {
  check_composable(d_in, d_out);
  std::size_t n = d_out.cols();
  return n - rank(d_out) - rank(d_in);
}

std::vector<SparseVec> homology_basis(const Matrix& d_in, const Matrix& d_out) {
  check_composable(d_in, d_out);
  RowReducer red(d_in.field(), d_out.cols());
  for (const auto& c : d_in.columns()) red.insert(c);
  std::vector<SparseVec> out;
  for (const auto& z : kernel_vectors(d_out))
    if (red.insert(z)) out.push_back(z);
  return out;
}

}  // namespace homolocal::linalg
