#include <gtest/gtest.h>

#include "homolocal/error.hpp"
#include "homolocal/localhom.hpp"

using namespace homolocal;

namespace {

RingPtr ci3() {
  return GradedRing::create(2, {{"x1", 1}, {"x2", 1}, {"x3", 1}}, {"x1^2", "x2^2", "x3^2"}, 6);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ValidationError;
}

}  // namespace

TEST(LocalHom, IdentityIsIdentity) {
  auto r = ci3();
  auto id = LocalHom::identity(r);
  EXPECT_TRUE(id->is_endomorphism());
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(id->matrix(d), linalg::Matrix::identity(r->field(), r->dim(d)));
}

TEST(LocalHom, FrobeniusKillsSquares) {
  auto r = ci3();
  auto f = LocalHom::frobenius(r, 1);
  EXPECT_EQ(f->scale(), 2);
  for (int d = 1; d <= 3; ++d) EXPECT_TRUE(f->matrix(d).is_zero());
  auto t = GradedRing::create(2, {{"x", 1}}, {"x^3"}, 6);
  auto ft = LocalHom::frobenius(t, 1);
  EXPECT_EQ(ft->apply(t->parse("x")), t->parse("x^2"));
}

TEST(LocalHom, ShiftEndomorphismIsNilpotentOnMaximalIdeal) {
  auto r = ci3();
  auto s = LocalHom::create(r, r, std::vector<std::string>{"0", "x1", "x2"}, 1);
  auto s3 = LocalHom::power(s, 3);
  for (int d = 1; d <= 3; ++d) EXPECT_TRUE(s3->matrix(d).is_zero());
  auto s2 = LocalHom::power(s, 2);
  EXPECT_EQ(s2->apply(r->parse("x3")), r->parse("x1"));
}

TEST(LocalHom, ValidationErrors) {
  auto r = ci3();
  auto poly = GradedRing::create(2, {{"x", 1}}, {}, 6);
  EXPECT_EQ(kind_of([&] { LocalHom::create(r, r, std::vector<std::string>{"x1", "x2", "x1*x2"}, 1); }),
            ErrorKind::WrongImageDegree);
  // x1^2 = 0 must map to zero; x1 -> x of F_2[x] does not kill it.
  EXPECT_EQ(kind_of([&] { LocalHom::create(r, poly, std::vector<std::string>{"x", "0", "0"}, 1); }),
            ErrorKind::RelationNotKilled);
  EXPECT_EQ(kind_of([&] { LocalHom::create(r, r, std::vector<std::string>{"x1", "x2", "x3"}, 0); }),
            ErrorKind::IncompatibleDegreeScale);
}

TEST(LocalHom, ComposeMultipliesScales) {
  auto r = ci3();
  auto f = LocalHom::frobenius(r, 1);
  auto s = LocalHom::create(r, r, std::vector<std::string>{"0", "x1", "x2"}, 1);
  auto c = LocalHom::compose(f, s);
  EXPECT_EQ(c->scale(), 2);
  EXPECT_NE(c->canonical(), s->canonical());
}

TEST(LocalHom, SurjectionOntoQuotient) {
  auto q = GradedRing::create(3, {{"x", 1}, {"y", 1}}, {}, 6);
  auto r = GradedRing::create(3, {{"x", 1}, {"y", 1}}, {"x*y"}, 6);
  auto pi = LocalHom::create(q, r, std::vector<std::string>{"x", "y"}, 1);
  EXPECT_TRUE(pi->apply(q->parse("x*y")).is_zero());
  EXPECT_EQ(pi->matrix(2).rows(), 2u);
}
