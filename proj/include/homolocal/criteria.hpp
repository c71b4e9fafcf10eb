#pragma once

// Ring-property tests and theorem checks built on the invariants over phi.
// Verdicts never extrapolate: a tail that is still alive at nmax, or a
// coefficient the window cannot certify, gives Undetermined together with
// the parameter that ran out.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homolocal/phi.hpp"

namespace homolocal {

struct CriterionVerdict {
  std::string name;
  Verdict verdict = Verdict::Undetermined;
  std::string detail;
  std::vector<std::pair<std::string, TruncatedSeries>> series;
  std::vector<std::pair<std::string, std::int64_t>> values;
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  std::string limiting;  // "nmax" or "D" for undetermined verdicts

  std::optional<std::int64_t> value(const std::string& key) const;
};

// Krull dimension from Hilbert-function growth: eventually zero, constant or
// linear gives 0, 1 or 2. nullopt when the window shows none of these.
std::optional<int> krull_dimension(const GradedRing& r);
// depth R = dim R and type 1. nullopt when the dimension is not readable.
std::optional<bool> is_gorenstein(const RingPtr& r);

// True when H_{>0}(K[z; M]) vanishes on the window.
bool koszul_concentrated(const DegreewiseModule& m, const std::vector<RingElement>& z);
// The defining relations form a regular sequence in the polynomial ring.
bool regular_presentation(const GradedRing& r);

// Krull dimension of S / phi(m)S, read from its Hilbert function.
std::optional<int> fibre_dimension(const LocalHom& phi);

// Frobenius betti_over(phi^i, R) vanishes past edim R.
CriterionVerdict kunz_regularity_test(const RingPtr& r, int i, int nmax);
// Curvature of betti_over(phi^i, R) at most 1 with polynomial growth.
CriterionVerdict ci_curvature_test(const RingPtr& r, int i, int nmax);
// Compares betti_over / bass_over of the i-th Frobenius with the closed
// forms of a complete intersection. Throws NotCI when the presentation is
// not a regular sequence on the window.
CriterionVerdict frobenius_ci_closed_form(const RingPtr& r, const DegreewiseModule& n, int i,
                                          int nmax);
// Socle conditions on L / vL. Throws NotRegularSet when v is not L-regular.
CriterionVerdict socle_extremality(const LocalHom& phi, const DegreewiseModule& l,
                                   const std::vector<RingElement>& v);
// id_R L finite forces id_R L = depth R = dim R.
CriterionVerdict bass_equality_check(const LocalHom& phi, const DegreewiseModule& l, int nmax);
// depth_S N = depth R - pd_phi N when pd_phi N is finite.
CriterionVerdict ab_depth_check(const LocalHom& phi, const DegreewiseModule& n, int nmax);
// id_R S finite forces fd_R S finite and R Gorenstein.
CriterionVerdict peskine_szpiro_check(const LocalHom& phi, int nmax);

}  // namespace homolocal
