#include <gtest/gtest.h>

#include "homolocal/criteria.hpp"
#include "homolocal/error.hpp"

using namespace homolocal;

namespace {

using Strings = std::vector<std::string>;

RingPtr poly(const Strings& vars, int D = 8) {
  std::vector<Variable> v;
  for (const auto& name : vars) v.push_back({name, 1});
  return GradedRing::create(2, v, {}, D);
}
RingPtr ci2() { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "y^2"}, 6); }
RingPtr triv() { return GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2", "x*y", "y^2"}, 4); }
RingPtr cubic() { return GradedRing::create(2, {{"x", 1}}, {"x^3"}, 6); }
RingPtr dual() { return GradedRing::create(2, {{"x", 1}}, {"x^2"}, 6); }
RingPtr fib() { return GradedRing::create(101, {{"x", 1}, {"y", 1}}, {"x^2", "x*y"}, 16); }

DegreewiseModule free(RingPtr r) { return DegreewiseModule::free_rank_one(r); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ValidationError;
}

}  // namespace

TEST(Criteria, KrullDimensionFromHilbertGrowth) {
  EXPECT_EQ(krull_dimension(*ci2()), 0);
  EXPECT_EQ(krull_dimension(*poly({"x"})), 1);
  EXPECT_EQ(krull_dimension(*poly({"x", "y"})), 2);
  EXPECT_EQ(krull_dimension(*fib()), 1);
  EXPECT_FALSE(krull_dimension(*poly({"x", "y", "z"})).has_value());
}

TEST(Criteria, Gorenstein) {
  EXPECT_EQ(is_gorenstein(ci2()), true);
  EXPECT_EQ(is_gorenstein(triv()), false);
  EXPECT_EQ(is_gorenstein(poly({"x"})), true);
  EXPECT_EQ(is_gorenstein(fib()), false);
}

TEST(Criteria, RegularPresentation) {
  EXPECT_TRUE(regular_presentation(*ci2()));
  EXPECT_TRUE(regular_presentation(*poly({"x", "y"})));
  EXPECT_FALSE(regular_presentation(*triv()));
  EXPECT_FALSE(regular_presentation(*fib()));
}

TEST(Criteria, KunzRegularity) {
  auto a = kunz_regularity_test(poly({"x"}), 1, 6);
  EXPECT_EQ(a.verdict, Verdict::Pass) << a.detail;
  EXPECT_EQ(a.value("dimension_formula"), 1);
  auto b = kunz_regularity_test(poly({"x", "y"}), 1, 6);
  EXPECT_EQ(b.verdict, Verdict::Pass) << b.detail;
  auto c = kunz_regularity_test(cubic(), 1, 10);
  EXPECT_EQ(c.verdict, Verdict::Fail);
  for (int n = 0; n <= 10; ++n) EXPECT_GT(c.series[0].second[n], 0) << n;
  auto d = kunz_regularity_test(poly({"x"}), 1, 1);
  EXPECT_EQ(d.verdict, Verdict::Undetermined);
  EXPECT_EQ(d.limiting, "nmax");
}

TEST(Criteria, CiCurvature) {
  auto a = ci_curvature_test(ci2(), 1, 12);
  EXPECT_EQ(a.verdict, Verdict::Pass) << a.detail;
  EXPECT_EQ(a.value("complexity"), 2);
  auto b = ci_curvature_test(triv(), 1, 12);
  EXPECT_EQ(b.verdict, Verdict::Fail) << b.detail;
  EXPECT_NEAR(*b.value("curvature_milli") / 1000.0, 2.0, 0.1);
  EXPECT_EQ(ci_curvature_test(poly({"x", "y"}), 1, 6).verdict, Verdict::Pass);
  auto d = ci_curvature_test(ci2(), 1, 8);
  EXPECT_EQ(d.verdict, Verdict::Undetermined);
  EXPECT_EQ(d.limiting, "nmax");
}

TEST(Criteria, FrobeniusClosedFormOnCi2) {
  auto r = ci2();
  auto v = frobenius_ci_closed_form(r, free(r), 1, 12);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  const auto& betti = v.series[0].second;
  EXPECT_EQ(betti[0], 1);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(betti[n], 4 * n);
  EXPECT_EQ(v.value("c"), 2);
  EXPECT_EQ(v.value("d"), 0);
}

TEST(Criteria, FrobeniusClosedFormOnResidueField) {
  auto r = dual();
  auto v = frobenius_ci_closed_form(r, DegreewiseModule::residue_field(r), 1, 8);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  const auto& betti = v.series[0].second;
  EXPECT_EQ(betti[0], 1);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(betti[n], 2);
}

TEST(Criteria, FrobeniusClosedFormOnFreeModule) {
  auto r = ci2();
  auto two = DegreewiseModule::direct_sum(free(r), free(r));
  auto v = frobenius_ci_closed_form(r, two, 1, 8);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  auto one = frobenius_ci_closed_form(r, free(r), 1, 8);
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(v.series[0].second[n], 2 * one.series[0].second[n]);
}

TEST(Criteria, FrobeniusClosedFormOnRegularRing) {
  auto r = poly({"x"});
  auto v = frobenius_ci_closed_form(r, free(r), 1, 5);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  // The Bass series is t(1 + t) here, away from the shape t^c K(t)(1+t)^d.
  EXPECT_EQ(v.value("bass_literal_form_matches"), 0);
}

TEST(Criteria, FrobeniusClosedFormRejectsNonCi) {
  auto r = triv();
  EXPECT_EQ(kind_of([&] { frobenius_ci_closed_form(r, free(r), 1, 6); }), ErrorKind::NotCI);
}

TEST(Criteria, SocleConditionB) {
  auto r = cubic();
  auto v = socle_extremality(*LocalHom::frobenius(r, 1), free(r), {});
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  EXPECT_EQ(v.value("condition"), 2);
  EXPECT_EQ(v.value("socle_degree"), 1);
}

TEST(Criteria, SocleConditionAOnResidueField) {
  auto r = fib();
  auto v = socle_extremality(*LocalHom::identity(r), DegreewiseModule::residue_field(r), {});
  EXPECT_EQ(v.verdict, Verdict::Pass);
  EXPECT_EQ(v.value("condition"), 1);
}

TEST(Criteria, SocleConditionAfterRegularSet) {
  auto s = poly({"x", "y"});
  std::vector<RingElement> v{s->parse("x"), s->parse("y")};
  auto res = socle_extremality(*LocalHom::identity(s), free(s), v);
  EXPECT_EQ(res.verdict, Verdict::Pass);
  EXPECT_EQ(res.value("condition"), 1);
  EXPECT_EQ(res.value("quotient_length"), 1);
}

TEST(Criteria, SocleConditionsFail) {
  // Over the identity, Soc(R) = (xy) sits inside mR.
  auto r = ci2();
  auto v = socle_extremality(*LocalHom::identity(r), free(r), {});
  EXPECT_EQ(v.verdict, Verdict::Fail);
}

TEST(Criteria, SocleRejectsNonRegularSet) {
  auto r = ci2();
  EXPECT_EQ(kind_of([&] { socle_extremality(*LocalHom::identity(r), free(r), {r->parse("x")}); }),
            ErrorKind::NotRegularSet);
}

TEST(Criteria, BassEquality) {
  auto a = bass_equality_check(*LocalHom::identity(dual()), free(dual()), 6);
  EXPECT_EQ(a.verdict, Verdict::Pass) << a.detail;
  EXPECT_EQ(a.value("id_R"), 0);
  auto r = poly({"x"});
  auto l = GradedModule::cyclic(r, {"x^2"}).degreewise();
  auto b = bass_equality_check(*LocalHom::identity(r), l, 6);
  EXPECT_EQ(b.verdict, Verdict::Pass) << b.detail;
  EXPECT_EQ(b.value("id_R"), 1);
  EXPECT_EQ(b.value("dim_R"), 1);
  auto c = bass_equality_check(*LocalHom::identity(fib()), free(fib()), 8);
  EXPECT_EQ(c.verdict, Verdict::Undetermined);
  EXPECT_EQ(c.limiting, "nmax");
}

TEST(Criteria, AuslanderBuchsbaumOverFreeExtension) {
  auto r = poly({"x"});
  auto s = poly({"x", "y"});
  auto v = ab_depth_check(*LocalHom::create(r, s, Strings{"x"}, 1), free(s), 5);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  EXPECT_EQ(v.value("depth_S_N"), 2);
  EXPECT_EQ(v.value("pd_phi"), -1);
}

TEST(Criteria, AuslanderBuchsbaumClassical) {
  auto r = poly({"x", "y"});
  auto n = GradedModule::cyclic(r, {"x"}).degreewise();
  auto v = ab_depth_check(*LocalHom::identity(r), n, 5);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  EXPECT_EQ(v.value("pd_phi"), 1);
}

TEST(Criteria, AuslanderBuchsbaumOverSurjection) {
  auto r = poly({"x", "y"});
  auto s = GradedRing::create(2, {{"x", 1}, {"y", 1}}, {"x^2"}, 8);
  auto v = ab_depth_check(*LocalHom::create(r, s, Strings{"x", "y"}, 1), free(s), 5);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.detail;
  EXPECT_EQ(v.value("depth_S_N"), 1);
  EXPECT_EQ(v.value("pd_phi"), 1);
}

TEST(Criteria, AuslanderBuchsbaumUndeterminedForInfinitePd) {
  auto r = dual();
  auto v = ab_depth_check(*LocalHom::identity(r), DegreewiseModule::residue_field(r), 6);
  EXPECT_EQ(v.verdict, Verdict::Undetermined);
}

TEST(Criteria, PeskineSzpiro) {
  auto a = peskine_szpiro_check(*LocalHom::identity(ci2()), 6);
  EXPECT_EQ(a.verdict, Verdict::Pass) << a.detail;
  EXPECT_EQ(a.value("id_R"), 0);
  EXPECT_EQ(a.value("fd_R"), 0);
  auto r = poly({"x"});
  auto b = peskine_szpiro_check(*LocalHom::create(r, dual(), Strings{"x"}, 1), 6);
  EXPECT_EQ(b.verdict, Verdict::Pass) << b.detail;
  EXPECT_EQ(b.value("id_R"), 1);
  EXPECT_EQ(b.value("fd_R"), 1);
  auto c = peskine_szpiro_check(*LocalHom::identity(triv()), 8);
  EXPECT_EQ(c.verdict, Verdict::Undetermined);
  EXPECT_EQ(c.limiting, "nmax");
}
