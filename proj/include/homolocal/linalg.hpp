#pragma once

// Exact linear algebra over prime fields F_p.
//
// Matrices act on column vectors. A map V -> W is stored as a
// dim(W) x dim(V) matrix. Storage is dense row-major when the column count
// is below kDenseColumnThreshold and sparse rows otherwise; every algorithm
// produces identical results on either storage (rref is canonical and the
// pivot choice is always the leftmost nonzero column).

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace homolocal::linalg {

using Elem = std::uint32_t;

class PrimeField {
 public:
  // Throws InvalidPrime unless 2 <= p < 2^31 and p is prime.
  explicit PrimeField(std::uint64_t p);

  std::uint32_t p() const { return p_; }

  Elem reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem inv(Elem a) const;  // a != 0

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Elem>>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Elem value;
};

inline constexpr std::size_t kDenseColumnThreshold = 256;

class Matrix {
 public:
  enum class Storage { Dense, Sparse };

  Matrix() : field_(2) {}

  static Matrix zero(const PrimeField& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const PrimeField& f, std::size_t n);
  static Matrix from_dense(const PrimeField& f, std::size_t rows,
                           std::size_t cols, std::span<const std::int64_t> data);
  static Matrix from_rows(const PrimeField& f, std::size_t rows,
                          std::size_t cols, std::vector<SparseVec> row_data);
  static Matrix from_columns(const PrimeField& f, std::size_t rows,
                             std::size_t cols,
                             const std::vector<SparseVec>& col_data);
  static Matrix from_triplets(const PrimeField& f, std::size_t rows,
                              std::size_t cols, std::span<const Triplet> t);

  // Forces a storage layout; used by tests to compare both elimination paths.
  Matrix with_storage(Storage s) const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Storage storage() const { return storage_; }
  const PrimeField& field() const { return field_; }

  Elem at(std::size_t r, std::size_t c) const;
  SparseVec row(std::size_t r) const;
  std::vector<SparseVec> sparse_rows() const;
  std::vector<SparseVec> columns() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix scaled(Elem c) const;
  bool is_zero() const;
  std::size_t nonzeros() const;

  // Block placement helpers used when assembling total complexes.
  static Matrix block(const PrimeField& f, std::size_t rows, std::size_t cols,
                      const std::vector<std::pair<std::pair<std::size_t, std::size_t>,
                                                  const Matrix*>>& blocks);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  PrimeField field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Storage storage_ = Storage::Dense;
  std::vector<Elem> dense_;
  std::vector<SparseVec> sparse_;
};

// Incremental row echelon basis. Rows are kept with distinct leading
// columns; `reduce` returns the remainder of a vector modulo the span, with
// every pivot column cleared.
class RowReducer {
 public:
  RowReducer(const PrimeField& f, std::size_t ncols);

  // Returns true when v was independent of the current rows (and is now
  // part of the basis).
  bool insert(const SparseVec& v);
  SparseVec reduce(const SparseVec& v) const;
  bool in_span(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return order_.size(); }
  std::size_t cols() const { return ncols_; }
  // Pivot columns in insertion order.
  const std::vector<std::uint32_t>& pivot_order() const { return order_; }
  bool is_pivot(std::size_t c) const { return pivot_row_[c] >= 0; }

  // Fully reduced rows sorted by pivot column (the canonical rref rows).
  std::vector<SparseVec> reduced_rows() const;

 private:
  SparseVec reduce_impl(const SparseVec& v) const;

  PrimeField field_;
  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<std::uint32_t> order_;
  // Scratch space; a RowReducer must not be shared between threads.
  mutable std::vector<Elem> scratch_;
  mutable std::vector<char> queued_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Columns form a basis of {v : m v = 0}; one column per free column of the
// rref, in increasing order.
Matrix kernel_basis(const Matrix& m);
std::vector<SparseVec> kernel_vectors(const Matrix& m);

// dim ker(d_out) - rank(d_in) for C_{n+1} --d_in--> C_n --d_out--> C_{n-1}.
// Throws NotAComplex when d_out * d_in != 0.
std::size_t homology_rank(const Matrix& d_in, const Matrix& d_out);

// Representatives in C_n of a basis of ker(d_out)/im(d_in).
std::vector<SparseVec> homology_basis(const Matrix& d_in, const Matrix& d_out);

// Sparse vector helpers.
SparseVec axpy(const PrimeField& f, const SparseVec& x, Elem a,
               const SparseVec& y);  // x + a*y
SparseVec apply(const Matrix& m, const SparseVec& v);

}  // namespace homolocal::linalg
