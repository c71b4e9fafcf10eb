#include <gtest/gtest.h>

#include "homolocal/error.hpp"
#include "homolocal/koszul.hpp"

using namespace homolocal;

namespace {

RingPtr ci2() { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6); }
RingPtr fib(int D = 12) { return GradedRing::create(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, D); }
RingPtr triv() { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^2"}, 4); }
RingPtr node(int D = 10) { return GradedRing::create(101, {{"x", 1}, {"y", 1}}, {"x*y"}, D); }

DegreewiseModule ring_module(RingPtr r) { return DegreewiseModule::free_rank_one(r); }

std::vector<std::int64_t> coeffs(const TruncatedSeries& s) { return s.coeffs; }

std::vector<int> degree_profile(const HomologyTable& h, int n, int upto) {
  std::vector<int> out;
  for (int d = 0; d <= upto; ++d) out.push_back(h.rank(n, d));
  return out;
}

}  // namespace

TEST(Koszul, EmptySequenceIsModule) {
  auto r = ci2();
  auto k = koszul_complex(ring_module(r), {});
  EXPECT_EQ(k.nlo(), 0);
  EXPECT_EQ(k.nhi(), 0);
  EXPECT_EQ(homology(k).total(0), 4);
}

TEST(Koszul, RegularSequenceResolvesResidueField) {
  auto r = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {}, 8);
  auto h = homology(koszul_complex(ring_module(r), variable_elements(*r)));
  EXPECT_EQ(h.total(0), 1);
  EXPECT_EQ(h.rank(0, 0), 1);
  EXPECT_EQ(h.total(1), 0);
  EXPECT_EQ(h.total(2), 0);
}

TEST(Koszul, SingleVariableOnNode) {
  auto r = node();
  auto h = homology(koszul_complex(ring_module(r), {r->parse("x")}));
  // H_0 = S/(x) = k[y], H_1 = ann(x) = yS, a copy of S/(x) shifted by one.
  EXPECT_EQ(degree_profile(h, 0, 6), (std::vector<int>{1, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(degree_profile(h, 1, 6), (std::vector<int>{0, 0, 1, 1, 1, 1, 1}));
}

TEST(Koszul, SumOfVariablesOnNodeIsRegular) {
  auto r = node();
  auto h = homology(koszul_complex(ring_module(r), {r->parse("x + y")}));
  EXPECT_EQ(degree_profile(h, 0, 6), (std::vector<int>{1, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(degree_profile(h, 1, 6), (std::vector<int>{0, 0, 0, 0, 0, 0, 0}));
}

TEST(Koszul, RejectsBadElements) {
  auto r = ci2();
  for (const char* z : {"0", "x + x*y"}) {
    try {
      koszul_complex(ring_module(r), {r->parse(z)});
      FAIL() << z;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NonHomogeneousElement);
    }
  }
}

TEST(Koszul, RanksAreBinomial) {
  auto r = GradedRing::create(2, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x^2", "y^2", "z^2"}, 6);
  auto k = koszul_complex(ring_module(r), variable_elements(*r));
  std::vector<int> binom{1, 3, 3, 1};
  for (int n = 0; n <= 3; ++n) {
    int total = 0;
    for (int d = k.dlo(); d <= k.dhi(); ++d) total += k.dim(n, d);
    EXPECT_EQ(total, binom[n] * 8) << n;
  }
}

TEST(Koszul, GeneratorOrderDoesNotMatter) {
  auto r = fib();
  auto m = GradedModule::cyclic(r, {"x"}).degreewise();
  auto a = homology(koszul_complex(m, {r->parse("x"), r->parse("y")}));
  auto b = homology(koszul_complex(m, {r->parse("y"), r->parse("x")}));
  EXPECT_EQ(a.ranks, b.ranks);
}

TEST(Koszul, ElementsAnnihilateHomology) {
  auto r = ci2();
  auto m = ring_module(r);
  std::vector<RingElement> z{r->parse("x"), r->parse("x + y")};
  auto k = koszul_complex(m, z);
  for (int n = k.nlo(); n <= k.nhi(); ++n)
    for (int d = k.dlo(); d <= k.dhi(); ++d)
      for (const auto& v : homology_representatives(k, n, d))
        for (const auto& zi : z) {
          if (d + zi.degree() > k.dhi()) continue;
          auto image = linalg::apply(k.term(n).act_element(zi, d), v);
          // z v must be a boundary.
          linalg::RowReducer bnd(k.field(), static_cast<std::size_t>(k.dim(n, d + zi.degree())));
          for (const auto& c : k.diff(n + 1, d + zi.degree()).columns()) bnd.insert(c);
          EXPECT_TRUE(bnd.in_span(image)) << n << " " << d;
        }
}

TEST(Koszul, PolynomialOfFibonacciQuotient) {
  auto r = fib();
  auto p = koszul_polynomial(GradedModule::cyclic(r, {"x"}).degreewise());
  EXPECT_EQ(coeffs(p), (std::vector<std::int64_t>{1, 1, 0}));
  EXPECT_TRUE(p.polynomial);
}

TEST(Koszul, PolynomialOfRegularRing) {
  auto r = GradedRing::create(3, {{"x", 1}, {"y", 1}}, {}, 8);
  auto p = koszul_polynomial(ring_module(r));
  EXPECT_EQ(*p.degree(), 0);
  EXPECT_EQ(p[0], 1);
}

TEST(Koszul, PolynomialOfCompleteIntersection) {
  auto p = koszul_polynomial(ring_module(ci2()));
  EXPECT_EQ(coeffs(p), (std::vector<std::int64_t>{1, 2, 1}));
}

TEST(Koszul, DepthAndType) {
  auto a = depth_and_type(ring_module(ci2()));
  EXPECT_EQ(a.depth, 0);
  EXPECT_EQ(a.type, 1);
  auto b = depth_and_type(ring_module(GradedRing::create(2, {{"x", 1}}, {}, 8)));
  EXPECT_EQ(b.depth, 1);
  EXPECT_EQ(b.type, 1);
  auto c = depth_and_type(ring_module(triv()));
  EXPECT_EQ(c.depth, 0);
  EXPECT_EQ(c.type, 2);
}

TEST(Koszul, OrderAndLeadingCoefficient) {
  // ord K(t) = inf H(N) = 0, leading coefficient = number of generators.
  auto r = ci2();
  auto m = GradedModule::from_strings(r, {0, 0}, {{"x", "y"}}).degreewise();
  auto p = koszul_polynomial(m);
  EXPECT_EQ(*p.order(), 0);
  EXPECT_EQ(p[0], 2);
}

TEST(Koszul, OnePlusTDividesOverSingularRings) {
  for (auto r : {ci2(), triv(), fib()}) {
    auto p = koszul_polynomial(DegreewiseModule::residue_field(r));
    auto q = p.divide_one_plus_t();
    ASSERT_TRUE(q.has_value());
    for (auto c : q->coeffs) EXPECT_GE(c, 0);
    EXPECT_EQ((*q)[0], 1);
  }
}

TEST(Koszul, MatlisDualReversesPolynomial) {
  auto r = triv();
  for (auto m : {ring_module(r), GradedModule::cyclic(r, {"x"}).degreewise()}) {
    auto p = koszul_polynomial(m);
    auto q = koszul_polynomial(matlis_dual(m));
    EXPECT_EQ(coeffs(q), coeffs(p.reversed(r->edim()))) << p.to_string();
  }
}

TEST(Koszul, HomKoszulMatchesShiftedKoszul) {
  // Hom_S(K[z; S], N) has the homology of K[z; N] moved down by card z.
  auto r = ci2();
  auto z = variable_elements(*r);
  auto m = GradedModule::cyclic(r, {"x"}).degreewise();
  auto k = homology(koszul_complex(m, z));
  auto kz = koszul_complex(ring_module(r), z);
  FreeComplex f;
  f.ring = r;
  // K[z; S] as a free complex: F_0 = S, F_1 = S(-1)^2, F_2 = S(-2).
  f.gens = {{0}, {1, 1}, {2}};
  auto e = [&](std::size_t t, const char* s) {
    auto el = r->parse(s);
    return FreeComplex::Entry{t, el.degree(), el.coords()};
  };
  f.diffs = {{{}}, {{e(0, "x")}, {e(0, "y")}}, {{e(0, "y"), e(1, "x")}}};
  f.finite = true;
  f.verify();
  auto h = homology(base_change_hom(f, *LocalHom::identity(r), EvaluatedComplex::from_module(m)));
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(h.total(n - 2), k.total(n)) << n;
  EXPECT_EQ(homology(kz).total(0), 1);
}

TEST(Koszul, AssociatedGradedOfStandardModule) {
  auto r = ci2();
  auto gr = associated_graded(ring_module(r));
  EXPECT_EQ(gr.lo(), 0);
  std::vector<int> dims;
  for (int d = gr.lo(); d <= gr.hi(); ++d) dims.push_back(gr.dim(d));
  EXPECT_EQ(dims, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(koszul_polynomial(gr).coeffs, koszul_polynomial(ring_module(r)).coeffs);
}

TEST(Koszul, AssociatedGradedOfResidueField) {
  auto gr = associated_graded(DegreewiseModule::residue_field(ci2()));
  EXPECT_EQ(gr.total_dim(), 1);
}

TEST(Koszul, AssociatedGradedPreservesLength) {
  // Generators in degrees 0 and 1 over F_2[x]: S/(x^3) + S(-1)/(x^2).
  auto r = GradedRing::create(2, {{"x", 1}}, {}, 8);
  auto m = GradedModule::from_strings(r, {0, 1}, {{"x^3", "0"}, {"0", "x^2"}}).degreewise();
  ASSERT_TRUE(m.bounded());
  auto gr = associated_graded(m);
  EXPECT_EQ(gr.total_dim(), m.total_dim());
  std::vector<int> dims;
  for (int d = gr.lo(); d <= gr.hi(); ++d) dims.push_back(gr.dim(d));
  // n^0/n^1 is both generators, then x e1, x e2, then x^2 e1.
  EXPECT_EQ(dims, (std::vector<int>{2, 2, 1}));
  gr.verify();
}

TEST(Koszul, SpreadOfCompleteIntersection) { EXPECT_EQ(spread(ring_module(ci2())), 5); }

TEST(Koszul, SpreadOfResidueField) {
  for (auto r : {ci2(), triv()}) EXPECT_EQ(spread(DegreewiseModule::residue_field(r)), r->edim() + 1);
  auto r3 = GradedRing::create(2, {{"x", 1}, {"y", 1}, {"z", 1}}, {"x^2", "y^2", "z^2"}, 6);
  EXPECT_EQ(spread(DegreewiseModule::residue_field(r3)), 4);
}

TEST(Koszul, SpreadFollowsLoewyLength) {
  // n^v L = 0 != n^{v-1} L gives edim + v.
  auto r = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^3", "y^3"}, 8);
  EXPECT_EQ(spread(ring_module(r)), 2 + 5);
  EXPECT_EQ(spread(GradedModule::cyclic(r, {"x^2", "x*y", "y^2"}).degreewise()), 2 + 2);
}

TEST(Koszul, PolynomialOfNode) {
  // S = k[x,y]/(xy) has depth 1; the Koszul syzygy xy gives H_1 = k(-2).
  auto p = koszul_polynomial(ring_module(node()));
  EXPECT_EQ(coeffs(p), (std::vector<std::int64_t>{1, 1, 0}));
  auto dt = depth_and_type(ring_module(node()));
  EXPECT_EQ(dt.depth, 1);
  EXPECT_EQ(dt.type, 1);
}

TEST(Koszul, UncertifiedPolynomialThrows) {
  // With D = 2 the H_1 class of degree 2 sits inside the guard band.
  try {
    koszul_polynomial(ring_module(node(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationExceeded);
  }
}
