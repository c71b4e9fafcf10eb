#include <gtest/gtest.h>

#include "homolocal/error.hpp"
#include "homolocal/module.hpp"
#include "homolocal/ring.hpp"

using namespace homolocal;

namespace {

RingPtr make(std::uint64_t p, std::vector<Variable> vars, std::vector<std::string> rels, int D) {
  return GradedRing::create(p, std::move(vars), rels, D);
}

std::vector<int> hilbert_prefix(const GradedRing& r, int n) {
  std::vector<int> h;
  for (int d = 0; d < n; ++d) h.push_back(r.hilbert(d));
  return h;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ValidationError;
}

}  // namespace

TEST(Ring, TrivialExtensionHilbert) {
  auto r = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^2"}, 8);
  EXPECT_EQ(hilbert_prefix(*r, 9), (std::vector<int>{1, 2, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(r->is_artinian());
  EXPECT_EQ(r->length(), 3);
}

TEST(Ring, FibonacciHilbert) {
  auto r = make(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, 12);
  std::vector<int> want{1, 2};
  for (int d = 2; d <= 12; ++d) want.push_back(1);
  EXPECT_EQ(hilbert_prefix(*r, 13), want);
  EXPECT_FALSE(r->is_artinian());
  EXPECT_EQ(r->basis_label(5, 0), "y^5");
}

TEST(Ring, PolynomialRingHilbert) {
  auto r = make(2, {{"x", 1}}, {}, 10);
  for (int d = 0; d <= 10; ++d) EXPECT_EQ(r->hilbert(d), 1);
  EXPECT_EQ(r->hilbert(7), 1);
}

TEST(Ring, HilbertBeyondTruncationThrows) {
  auto r = make(2, {{"x", 1}}, {}, 4);
  EXPECT_EQ(kind_of([&] { r->hilbert(5); }), ErrorKind::TruncationExceeded);
  // Strict even for an Artinian ring.
  auto a = make(2, {{"x", 1}}, {"x^2"}, 4);
  EXPECT_EQ(kind_of([&] { a->hilbert(5); }), ErrorKind::TruncationExceeded);
  EXPECT_EQ(a->dim(5), 0);
}

TEST(Ring, CompleteIntersectionMiddleDegree) {
  auto r = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  EXPECT_EQ(r->hilbert(2), 1);
  EXPECT_EQ(r->hilbert(0), 1);
  EXPECT_EQ(r->basis_label(2, 0), "x*y");
}

TEST(Ring, ValidationErrors) {
  EXPECT_EQ(kind_of([] { make(4, {{"x", 1}}, {}, 3); }), ErrorKind::InvalidPrime);
  EXPECT_EQ(kind_of([] { make(2, {{"x", 1}, {"y", 1}}, {"x^2 + y^3"}, 3); }),
            ErrorKind::NonHomogeneousRelation);
  EXPECT_EQ(kind_of([] { make(2, {{"x", 1}, {"y", 1}}, {"x + y"}, 3); }),
            ErrorKind::RelationDegreeTooLow);
  EXPECT_EQ(kind_of([] { make(2, {{"x", 1}}, {"z^2"}, 3); }), ErrorKind::UnknownReference);
  EXPECT_EQ(kind_of([] { make(2, {{"x", 1}}, {"x^"}, 3); }), ErrorKind::ParseError);
}

TEST(Ring, Multiply) {
  auto a = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, 6);
  EXPECT_TRUE(a->multiply(a->parse("x"), a->parse("y")).is_zero());
  auto b = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  EXPECT_TRUE(b->multiply(b->parse("x"), b->parse("x")).is_zero());
  EXPECT_EQ(b->format(b->multiply(b->parse("x"), b->parse("y"))), "x*y");
  auto e = b->parse("x + y");
  EXPECT_EQ(b->multiply(b->one(), e), e);
}

TEST(Ring, MultiplyBeyondTruncationThrows) {
  auto r = make(2, {{"x", 1}}, {}, 3);
  EXPECT_EQ(kind_of([&] { r->multiply(r->parse("x^2"), r->parse("x^2")); }),
            ErrorKind::TruncationExceeded);
}

TEST(Ring, LoewyLength) {
  auto a = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^2"}, 8);
  EXPECT_EQ(a->loewy_length().value, 2);
  EXPECT_TRUE(a->loewy_length().certified);
  auto b = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 8);
  EXPECT_EQ(b->loewy_length().value, 3);
  auto c = make(2, {{"x", 1}}, {}, 8);
  EXPECT_FALSE(c->loewy_length().certified);
  EXPECT_EQ(c->loewy_length().value, 9);
}

TEST(Ring, NormalFormIsProjection) {
  auto r = make(7, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x^2 - y*z", "y^2 + 3*x*z"}, 6);
  for (const char* s : {"x^3", "x^2*y + z^3", "y^4 - 2*x*y*z^2", "x*y*z"}) {
    RingElement once = r->parse(s);
    RingElement twice = r->parse(r->format(once));
    EXPECT_EQ(once, twice) << s;
  }
}

TEST(Ring, CommutativeAndAssociative) {
  auto r = make(5, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x^2 - y*z", "y^2 + 2*x*z", "z^3"}, 7);
  for (int da = 1; da <= 2; ++da)
    for (int db = 1; db <= 2; ++db)
      for (int dc = 1; dc <= 2; ++dc)
        for (int i = 0; i < r->hilbert(da); ++i)
          for (int j = 0; j < r->hilbert(db); ++j)
            for (int k = 0; k < r->hilbert(dc); ++k) {
              auto a = RingElement::homogeneous(da, {{static_cast<std::uint32_t>(i), 1}});
              auto b = RingElement::homogeneous(db, {{static_cast<std::uint32_t>(j), 1}});
              auto c = RingElement::homogeneous(dc, {{static_cast<std::uint32_t>(k), 1}});
              EXPECT_EQ(r->multiply(a, b), r->multiply(b, a));
              EXPECT_EQ(r->multiply(r->multiply(a, b), c), r->multiply(a, r->multiply(b, c)));
            }
}

TEST(Ring, HilbertBoundedByFreeAlgebra) {
  auto r = make(3, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x*y - z^2", "x^3"}, 8);
  for (int d = 0; d <= 8; ++d) EXPECT_LE(r->hilbert(d), (d + 1) * (d + 2) / 2);
}

TEST(Ring, WeightedVariables) {
  auto r = make(2, {{"x", 1}, {"w", 2}}, {"x^2*w", "w^2"}, 10);
  // Degree 2: x^2, w.  Degree 3: x^3, x*w.  Degree 4: x^4 (x^2 w = 0, w^2 = 0).
  EXPECT_EQ(r->hilbert(2), 2);
  EXPECT_EQ(r->hilbert(3), 2);
  EXPECT_EQ(r->hilbert(4), 1);
  EXPECT_EQ(kind_of([] { make(2, {{"x", 1}, {"w", 2}}, {"x^2 + x*w"}, 4); }),
            ErrorKind::NonHomogeneousRelation);
}

TEST(Ring, CanonicalIsStable) {
  auto a = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  auto b = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  EXPECT_EQ(a->canonical(), b->canonical());
}

// Socle

TEST(Socle, CompleteIntersection) {
  auto r = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  auto s = socle_basis(DegreewiseModule::free_rank_one(r));
  EXPECT_TRUE(s.certified);
  EXPECT_EQ(s.total(), 1u);
  ASSERT_EQ(s.per_degree.size(), 3u);
  EXPECT_EQ(s.per_degree[2].size(), 1u);
}

TEST(Socle, ResidueField) {
  auto r = make(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6);
  auto s = socle_basis(DegreewiseModule::residue_field(r));
  EXPECT_EQ(s.total(), 1u);
  EXPECT_TRUE(s.certified);
}

TEST(Socle, FibonacciIsPartial) {
  auto r = make(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, 12);
  auto s = socle_basis(DegreewiseModule::free_rank_one(r));
  EXPECT_FALSE(s.certified);
  EXPECT_EQ(s.total(), 1u);
  ASSERT_EQ(s.per_degree[1].size(), 1u);
  // The socle vector is x, the first basis element of degree 1.
  EXPECT_EQ(r->basis_label(1, static_cast<int>(s.per_degree[1][0][0].first)), "x");
}
