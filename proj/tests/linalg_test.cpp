#include <gtest/gtest.h>

#include <random>

#include "homolocal/error.hpp"
#include "homolocal/linalg.hpp"

using namespace homolocal;
using namespace homolocal::linalg;

namespace {

Matrix dense(std::uint32_t p, std::size_t r, std::size_t c,
             std::vector<std::int64_t> data) {
  return Matrix::from_dense(PrimeField(p), r, c, data);
}

Matrix random_matrix(std::mt19937& rng, const PrimeField& f, std::size_t r,
                     std::size_t c, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::uint32_t> v(1, f.p() - 1);
  std::vector<SparseVec> rows(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density) rows[i].push_back({static_cast<std::uint32_t>(j), v(rng)});
  return Matrix::from_rows(f, r, c, rows);
}

// Random invertible matrix: product of a unit lower and a unit upper
// triangular matrix.
Matrix random_invertible(std::mt19937& rng, const PrimeField& f, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> v(0, f.p() - 1);
  std::vector<SparseVec> lo(n), up(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (Elem x = v(rng)) lo[i].push_back({static_cast<std::uint32_t>(j), x});
    lo[i].push_back({static_cast<std::uint32_t>(i), 1});
    up[i].push_back({static_cast<std::uint32_t>(i), 1});
    for (std::size_t j = i + 1; j < n; ++j)
      if (Elem x = v(rng)) up[i].push_back({static_cast<std::uint32_t>(j), x});
  }
  return Matrix::from_rows(f, n, n, lo) * Matrix::from_rows(f, n, n, up);
}

// The kernel of [P | -I] is spanned by the columns (P^{-1} e_j, e_j).
Matrix inverse(const Matrix& p) {
  const PrimeField& f = p.field();
  std::size_t n = p.rows();
  auto minus_id = Matrix::identity(f, n).scaled(f.neg(1));
  auto vecs = kernel_vectors(Matrix::block(f, n, 2 * n, {{{0, 0}, &p}, {{0, n}, &minus_id}}));
  std::vector<SparseVec> upper;
  for (const auto& v : vecs) {
    SparseVec a;
    for (auto [i, x] : v)
      if (i < n) a.push_back({i, x});
    upper.push_back(a);
  }
  return Matrix::from_columns(f, n, n, upper);
}

}  // namespace

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField(91), Error);
  EXPECT_THROW(PrimeField(1ULL << 31), Error);
  try {
    PrimeField f(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidPrime);
  }
  EXPECT_EQ(PrimeField(2147483647).p(), 2147483647u);
}

TEST(PrimeField, Arithmetic) {
  PrimeField f(101);
  for (Elem a = 1; a < 101; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.reduce(-1), 100u);
  EXPECT_EQ(f.sub(3, 5), 99u);
  PrimeField big(2147483647);
  EXPECT_EQ(big.mul(big.inv(123456789), 123456789), 1u);
}

TEST(Rref, IdentityOverF2) {
  auto r = rref(Matrix::identity(PrimeField(2), 2));
  EXPECT_EQ(r.reduced, Matrix::identity(PrimeField(2), 2));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, ZeroMatrix) {
  auto z = Matrix::zero(PrimeField(3), 3, 3);
  auto r = rref(z);
  EXPECT_TRUE(r.reduced.is_zero());
  EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, RankOneOverF101) {
  auto r = rref(dense(101, 2, 2, {1, 2, 2, 4}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.reduced.at(0, 0), 1u);
  EXPECT_EQ(r.reduced.at(0, 1), 2u);
  EXPECT_TRUE(r.reduced.row(1).empty());
}

TEST(Rref, Idempotent) {
  std::mt19937 rng(7);
  PrimeField f(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(rng, f, 6 + trial % 5, 9, 0.4);
    auto once = rref(m).reduced;
    EXPECT_EQ(rref(once).reduced, once);
  }
}

TEST(Rref, DenseAndSparsePathsAgree) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u, 101u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 15; ++trial) {
      auto m = random_matrix(rng, f, 12, 17, trial % 3 == 0 ? 0.1 : 0.5);
      auto a = rref(m.with_storage(Matrix::Storage::Dense));
      auto b = rref(m.with_storage(Matrix::Storage::Sparse));
      EXPECT_EQ(a.pivots, b.pivots);
      EXPECT_EQ(a.reduced, b.reduced);
      EXPECT_EQ(kernel_basis(m.with_storage(Matrix::Storage::Dense)),
                kernel_basis(m.with_storage(Matrix::Storage::Sparse)));
    }
  }
}

TEST(Storage, ThresholdSelectsLayout) {
  PrimeField f(2);
  EXPECT_EQ(Matrix::zero(f, 3, kDenseColumnThreshold - 1).storage(),
            Matrix::Storage::Dense);
  EXPECT_EQ(Matrix::zero(f, 3, kDenseColumnThreshold).storage(),
            Matrix::Storage::Sparse);
}

TEST(Kernel, Identity) {
  EXPECT_EQ(kernel_basis(Matrix::identity(PrimeField(7), 4)).cols(), 0u);
}

TEST(Kernel, ZeroMap) {
  auto k = kernel_basis(Matrix::zero(PrimeField(2), 1, 3));
  EXPECT_EQ(k.rows(), 3u);
  EXPECT_EQ(k.cols(), 3u);
}

TEST(Kernel, SumFunctional) {
  auto k = kernel_basis(dense(2, 1, 2, {1, 1}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k.at(0, 0), 1u);
  EXPECT_EQ(k.at(1, 0), 1u);
}

TEST(Kernel, RankNullity) {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 7u, 65521u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t rows = 1 + trial % 9, cols = 1 + (trial * 7) % 13;
      auto m = random_matrix(rng, f, rows, cols, 0.35);
      auto k = kernel_basis(m);
      EXPECT_EQ(rank(m) + k.cols(), cols);
      EXPECT_TRUE((m * k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(Kernel, LargeSparseMatrix) {
  // A cyclic difference operator on 600 coordinates: rank 599 over F_3.
  PrimeField f(3);
  std::size_t n = 600;
  std::vector<SparseVec> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(i), b = static_cast<std::uint32_t>((i + 1) % n);
    if (a < b) rows[i] = {{a, 1}, {b, 2}};
    else rows[i] = {{b, 2}, {a, 1}};
  }
  auto m = Matrix::from_rows(f, n, n, rows);
  EXPECT_EQ(m.storage(), Matrix::Storage::Sparse);
  EXPECT_EQ(rank(m), n - 1);
  auto k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((m * k).is_zero());
}

TEST(Homology, ZeroDifferentials) {
  PrimeField f(2);
  EXPECT_EQ(homology_rank(Matrix::zero(f, 4, 2), Matrix::zero(f, 3, 4)), 4u);
}

TEST(Homology, ExactPair) {
  PrimeField f(5);
  // 0 -> F -> F^2 -> F -> 0 in the middle: inclusion then projection.
  auto in = dense(5, 2, 1, {1, 0});
  auto out = dense(5, 1, 2, {0, 1});
  EXPECT_EQ(homology_rank(in, out), 0u);
}

TEST(Homology, KoszulOnXOverDualNumbers) {
  // K[x; F_2[x]/(x^2)] is R(-1) --x--> R. The class of x*e lives where the
  // coefficient x sits in degree 1: K_1 there is <x e>, K_0 is R_2 = 0 and
  // K_2 = 0, so the x-multiplication kernel gives rank 1 at homological
  // degree 1.
  PrimeField f(2);
  EXPECT_EQ(homology_rank(Matrix::zero(f, 1, 0), Matrix::zero(f, 0, 1)), 1u);
  // One step lower the generator e maps isomorphically onto <x>.
  auto d = dense(2, 1, 1, {1});
  EXPECT_EQ(homology_rank(Matrix::zero(f, 1, 0), d), 0u);
  EXPECT_EQ(homology_rank(d, Matrix::zero(f, 0, 1)), 0u);
}

TEST(Homology, RejectsNonComplex) {
  auto a = dense(2, 1, 1, {1});
  try {
    homology_rank(a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAComplex);
  }
}

TEST(Homology, InvariantUnderBasisChange) {
  std::mt19937 rng(5);
  PrimeField f(7);
  for (int trial = 0; trial < 10; ++trial) {
    // C_2 -> C_1 -> C_0 with d1 * d2 = 0 built from a kernel.
    auto d1 = random_matrix(rng, f, 4, 7, 0.5);
    auto mix = random_matrix(rng, f, kernel_basis(d1).cols(), 3, 0.6);
    auto d2 = kernel_basis(d1) * mix;
    std::size_t h = homology_rank(d2, d1);
    auto p0 = random_invertible(rng, f, 4);
    auto p1 = random_invertible(rng, f, 7);
    auto p2 = random_invertible(rng, f, 3);
    auto p1inv = inverse(p1);
    EXPECT_EQ(p1 * p1inv, Matrix::identity(f, 7));
    EXPECT_EQ(homology_rank(p1inv * d2 * p2, p0 * d1 * p1), h);
  }
}

TEST(RowReducer, SpanAndRemainder) {
  PrimeField f(3);
  RowReducer red(f, 5);
  EXPECT_TRUE(red.insert({{1, 1}, {3, 2}}));
  EXPECT_TRUE(red.insert({{1, 2}, {4, 1}}));
  EXPECT_FALSE(red.insert({{3, 2}, {4, 1}}));  // second - 2 * first
  EXPECT_EQ(red.rank(), 2u);
  EXPECT_TRUE(red.in_span({{1, 1}, {3, 2}}));
  EXPECT_FALSE(red.in_span({{0, 1}}));
  auto rows = red.reduced_rows();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].front().first, 1u);
  EXPECT_EQ(rows[1].front().first, 3u);
}
