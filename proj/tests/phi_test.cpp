#include <gtest/gtest.h>

#include "homolocal/error.hpp"
#include "homolocal/phi.hpp"

using namespace homolocal;

namespace {

using Strings = std::vector<std::string>;

RingPtr ci2(int D = 6) { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, D); }
RingPtr ci3() {
  return GradedRing::create(2, {{"x1", 1}, {"x2", 1}, {"x3", 1}}, {"x1^2", "x2^2", "x3^2"}, 6);
}
RingPtr fib(int D = 20) { return GradedRing::create(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, D); }
RingPtr triv() { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^2"}, 4); }
RingPtr dual_numbers(const char* v = "u") {
  return GradedRing::create(2, {{v, 1}}, {std::string(v) + "^2"}, 6);
}

DegreewiseModule ring_module(RingPtr r) { return DegreewiseModule::free_rank_one(r); }
DegreewiseModule k(RingPtr r) { return DegreewiseModule::residue_field(r); }

std::vector<std::int64_t> head(const TruncatedSeries& s, int n) {
  std::vector<std::int64_t> out;
  for (int i = 0; i <= n; ++i) out.push_back(s[i]);
  return out;
}

// 1, 4, 8, 12, ... from (1 + t)^2 / (1 - t)^2.
std::vector<std::int64_t> frobenius_ci2(int n) {
  std::vector<std::int64_t> out{1};
  for (int i = 1; i <= n; ++i) out.push_back(4 * i);
  return out;
}

}  // namespace

TEST(Phi, EdimOfSurjection) {
  auto r = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2"}, 6);
  auto s = dual_numbers("x");
  auto pi = LocalHom::create(r, s, Strings{"x", "x"}, 1);
  EXPECT_EQ(edim_phi(*pi), 0);
  EXPECT_TRUE(minimal_gens_mod(*pi).empty());
}

TEST(Phi, EdimOfPolynomialExtension) {
  auto r = dual_numbers();
  auto s = GradedRing::create(2, {{"u", 1}, {"y", 1}}, {"u^2"}, 8);
  auto inc = LocalHom::create(r, s, Strings{"u"}, 1);
  auto gens = minimal_gens_mod(*inc);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], s->parse("y"));
}

TEST(Phi, EdimOfFrobenius) {
  auto r = ci2();
  auto f = LocalHom::frobenius(r, 1);
  EXPECT_TRUE(kills_maximal_ideal(*f));
  EXPECT_EQ(edim_phi(*f), 2);
  auto f2 = LocalHom::compose(f, f);
  auto direct = LocalHom::frobenius(GradedRing::create(2, {{"x", 1}}, {}, 8), 2);
  EXPECT_EQ(direct->scale(), 4);
  EXPECT_EQ(f2->scale(), 4);
  auto line = GradedRing::create(2, {{"x", 1}}, {}, 8);
  auto g = LocalHom::frobenius(line, 1);
  EXPECT_EQ(LocalHom::compose(g, g)->images(), LocalHom::frobenius(line, 2)->images());
}

TEST(Phi, Contraction) {
  auto r = ci3();
  EXPECT_TRUE(is_contracting(LocalHom::frobenius(r, 1)));
  EXPECT_FALSE(is_contracting(LocalHom::identity(r)));
  EXPECT_TRUE(is_contracting(LocalHom::create(r, r, Strings{"0", "x1", "x2"}, 1)));
  // x1 <-> x2 keeps x3 linear after any number of steps.
  EXPECT_FALSE(is_contracting(LocalHom::create(r, r, Strings{"x2", "x1", "0"}, 1)));
}

TEST(Phi, SurjectionMatchesRingBetti) {
  auto r = fib(14);
  auto s = GradedRing::create(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^3"}, 14);
  auto pi = LocalHom::create(r, s, Strings{"x", "y"}, 1);
  auto n = ring_module(s);
  auto restricted = restrict_scalars(n, r, pi->images(), 1);
  auto over_r = betti_numbers(restricted, 6);
  auto over_phi = betti_over(*pi, n, 6);
  EXPECT_EQ(head(over_phi, 6), head(over_r, 6));
  auto bass_r = bass_numbers(GradedModule::cyclic(r, {"y^3"}).degreewise(), 4);
  auto bass_phi = bass_over(*pi, n, 4);
  EXPECT_EQ(head(bass_phi, 4), head(bass_r, 4));
}

TEST(Phi, PolynomialExtensionBumpsFirstBetti) {
  auto r = dual_numbers();
  auto s = GradedRing::create(2, {{"u", 1}, {"y", 1}}, {"u^2"}, 8);
  auto inc = LocalHom::create(r, s, Strings{"u"}, 1);
  auto n = GradedModule::cyclic(s, {"y"}).degreewise();
  auto b = betti_over(*inc, n, 5);
  EXPECT_EQ(head(b, 5), (std::vector<std::int64_t>{1, 1, 0, 0, 0, 0}));
  auto mu = bass_over(*inc, n, 5);
  // mu_R^{n-1}(R) + mu_R^n(R) with mu_R(R) = 1, 0, 0, ...
  EXPECT_EQ(head(mu, 5), (std::vector<std::int64_t>{1, 1, 0, 0, 0, 0}));
}

TEST(Phi, FrobeniusOnCompleteIntersection) {
  auto r = ci2();
  auto f = LocalHom::frobenius(r, 1);
  auto fast = betti_over(*f, ring_module(r), 8, TorPath::Kunneth);
  auto slow = betti_over(*f, ring_module(r), 8, TorPath::Generic);
  EXPECT_EQ(head(fast, 8), frobenius_ci2(8));
  EXPECT_EQ(head(slow, 8), frobenius_ci2(8));
  auto ifast = bass_over(*f, ring_module(r), 6, TorPath::Kunneth);
  auto islow = bass_over(*f, ring_module(r), 6, TorPath::Generic);
  EXPECT_EQ(head(ifast, 6), head(islow, 6));
}

TEST(Phi, KunnethAgreesWithGenericOnOtherModules) {
  auto r = triv();
  auto f = LocalHom::frobenius(r, 1);
  for (auto n : {k(r), GradedModule::cyclic(r, {"x"}).degreewise()}) {
    EXPECT_EQ(head(betti_over(*f, n, 5, TorPath::Kunneth), 5),
              head(betti_over(*f, n, 5, TorPath::Generic), 5));
    EXPECT_EQ(head(bass_over(*f, n, 4, TorPath::Kunneth), 4),
              head(bass_over(*f, n, 4, TorPath::Generic), 4));
  }
}

TEST(Phi, KunnethRejectedWhenImagesSurvive) {
  auto r = fib(10);
  EXPECT_THROW(betti_over(*LocalHom::identity(r), k(r), 3, TorPath::Kunneth), Error);
}

TEST(Phi, PaddingLaw) {
  auto r = ci2();
  auto f = LocalHom::frobenius(r, 1);
  auto base = betti_over(*f, ring_module(r), 6);
  std::vector<RingElement> y{r->parse("x"), r->parse("y"), r->parse("x + y")};
  for (auto path : {TorPath::Kunneth, TorPath::Generic}) {
    auto padded = koszul_tor_series(*f, EvaluatedComplex::from_module(ring_module(r)), y, 6, path);
    auto expect = TruncatedSeries::one_plus_t_pow(1, 1) * base;
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(padded[n], expect[n]) << n;
  }
  auto ibase = bass_over(*f, ring_module(r), 5);
  auto ipadded = koszul_ext_series(*f, EvaluatedComplex::from_module(ring_module(r)), y, 5);
  auto iexpect = TruncatedSeries::one_plus_t_pow(1, 1) * ibase;
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(ipadded[n], iexpect[n]) << n;
}

TEST(Phi, NonGeneratingSetRejected) {
  auto r = ci2();
  auto f = LocalHom::frobenius(r, 1);
  EXPECT_THROW(koszul_tor_series(*f, EvaluatedComplex::from_module(ring_module(r)), {r->parse("x")}, 3),
               Error);
}

TEST(Phi, ProjectiveDimensionOfFreeExtension) {
  auto r = GradedRing::create(2, {{"x", 1}}, {}, 8);
  auto s = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {}, 8);
  auto inc = LocalHom::create(r, s, Strings{"x"}, 1);
  auto dims = pd_id_over(*inc, ring_module(s), 4);
  ASSERT_TRUE(dims.pd.finite());
  EXPECT_EQ(*dims.pd.value, -1);
}

TEST(Phi, ProjectiveDimensionOverSurjection) {
  auto r = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {}, 8);
  auto s = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2"}, 8);
  auto pi = LocalHom::create(r, s, Strings{"x", "y"}, 1);
  auto dims = pd_id_over(*pi, ring_module(s), 4);
  ASSERT_TRUE(dims.pd.finite());
  EXPECT_EQ(*dims.pd.value, 1);
}

TEST(Phi, FrobeniusOnSingularRingHasInfinitePd) {
  auto r = GradedRing::create(2, {{"x", 1}}, {"x^3"}, 6);
  auto dims = pd_id_over(*LocalHom::frobenius(r, 1), ring_module(r), 8);
  EXPECT_FALSE(dims.pd.finite());
  EXPECT_GE(dims.pd.bound, 6);
}

TEST(Phi, InjectiveDimensionEqualsRingValue) {
  // id over phi agrees with id over R for a finite-length module over F_2[x].
  auto r = GradedRing::create(2, {{"x", 1}}, {}, 8);
  auto s = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {}, 8);
  auto inc = LocalHom::create(r, s, Strings{"x"}, 1);
  auto n = GradedModule::cyclic(s, {"x^2", "y"}).degreewise();
  auto dims = pd_id_over(*inc, n, 5);
  auto over_r = injective_dimension(bass_numbers(GradedModule::cyclic(r, {"x^2"}).degreewise(), 5));
  ASSERT_TRUE(dims.id.finite());
  ASSERT_TRUE(over_r.finite());
  EXPECT_EQ(*dims.id.value, *over_r.value);
}

TEST(Phi, SeparatedOverRegularTarget) {
  auto r = GradedRing::create(2, {{"u", 1}, {"v", 1}}, {"u*v"}, 10);
  auto s = GradedRing::create(2, {{"x", 1}}, {}, 10);
  auto phi = LocalHom::create(r, s, Strings{"x", "0"}, 1);
  auto res = is_separated(*phi, GradedModule::cyclic(s, {"x^3"}).degreewise(), 6);
  EXPECT_EQ(res.verdict, SeparationVerdict::Separated);
}

TEST(Phi, ResidueFieldIsSeparated) {
  auto r = fib(14);
  auto res = is_separated(*LocalHom::identity(r), k(r), 8);
  EXPECT_EQ(res.verdict, SeparationVerdict::Separated);
  EXPECT_EQ(res.checked_hi, 8);
  auto inj = is_injectively_separated(*LocalHom::identity(r), k(r), 6);
  EXPECT_EQ(inj.verdict, SeparationVerdict::Separated);
}

TEST(Phi, FibonacciQuotientIsSeparated) {
  auto r = fib();
  auto res = is_separated(*LocalHom::identity(r), GradedModule::cyclic(r, {"x"}).degreewise(), 10);
  EXPECT_EQ(res.verdict, SeparationVerdict::Separated);
  EXPECT_EQ(res.lhs[0], res.ceiling[0]);
}

TEST(Phi, FreeModuleIsNotSeparatedOverSingularRing) {
  auto r = fib(12);
  auto res = is_separated(*LocalHom::identity(r), ring_module(r), 6);
  EXPECT_EQ(res.verdict, SeparationVerdict::Violated);
  EXPECT_EQ(res.violated_at, 1);
}

TEST(Phi, CeilingInitialTerms) {
  // Both sides start with (number of generators of H_0) t^0.
  auto r = triv();
  auto m = GradedModule::from_strings(r, {0, 0}, {{"x", "y"}}).degreewise();
  auto res = is_separated(*LocalHom::frobenius(r, 1), m, 5);
  EXPECT_EQ(res.lhs[0], 2);
  EXPECT_EQ(res.ceiling[0], 2);
}

TEST(Phi, EstimatorsOnClosedForms) {
  TruncatedSeries zeros(0, std::vector<std::int64_t>(13, 0));
  zeros.coeffs[0] = 3;
  auto z = estimate_growth(zeros);
  EXPECT_EQ(z.complexity, 0);
  EXPECT_EQ(z.curvature, 0);
  TruncatedSeries lin(0, frobenius_ci2(12));
  EXPECT_EQ(complexity_estimate(lin), 2);
  EXPECT_EQ(curvature_estimate(lin), 1.0);
  std::vector<std::int64_t> pw;
  for (int n = 0; n <= 12; ++n) pw.push_back(std::int64_t{1} << n);
  TruncatedSeries two(0, pw);
  EXPECT_FALSE(complexity_estimate(two).has_value());
  EXPECT_GE(curvature_estimate(two), 1.9);
  EXPECT_LE(curvature_estimate(two), 2.0);
  try {
    estimate_growth(TruncatedSeries(0, {1, 2, 3, 4, 5, 6, 7, 8}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
  }
}

TEST(Phi, ShiftEndomorphismComplexities) {
  auto r = ci3();
  auto s = LocalHom::create(r, r, Strings{"0", "x1", "x2"}, 1);
  for (int j = 1; j <= 3; ++j) {
    auto b = betti_over(*LocalHom::power(s, j), ring_module(r), 12);
    EXPECT_EQ(complexity_estimate(b), j) << b.to_string();
  }
}

TEST(Phi, ExtremalityVerdicts) {
  auto r = fib(16);
  auto id = LocalHom::identity(r);
  EXPECT_EQ(is_extremal(*id, k(r), 12).verdict, Verdict::Pass);
  EXPECT_EQ(is_extremal(*id, ring_module(r), 12).verdict, Verdict::Fail);
  auto c = ci2();
  EXPECT_EQ(is_extremal(*LocalHom::frobenius(c, 1), ring_module(c), 12).verdict, Verdict::Pass);
}
