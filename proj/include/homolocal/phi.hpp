#pragma once

// Invariants of S-modules and S-complexes over a local homomorphism
// phi : R -> S. Betti numbers over phi are ranks of Tor^R(k, K[x; N]) and
// Bass numbers ranks of Ext^{n - e}_R(k, K[x; N]), where x minimally
// generates n modulo mS and e = card x = edim phi.

#include <optional>
#include <string>
#include <vector>

#include "homolocal/complex.hpp"
#include "homolocal/koszul.hpp"
#include "homolocal/localhom.hpp"
#include "homolocal/resolution.hpp"
#include "homolocal/series.hpp"

namespace homolocal {

// Elements of n minimally generating it modulo mS + n^2, chosen among the
// variables of S in order.
std::vector<RingElement> minimal_gens_mod(const LocalHom& phi);
int edim_phi(const LocalHom& phi);
// True when the classes of y span n / (mS + n^2).
bool generates_mod(const LocalHom& phi, const std::vector<RingElement>& y);

// phi^{edim R}(m) in m^2, for endomorphisms.
bool is_contracting(const HomPtr& phi);
// phi(m) S = 0: every variable image vanishes.
bool kills_maximal_ideal(const LocalHom& phi);

enum class TorPath { Auto, Generic, Kunneth };

// sum_n rank Tor_n^R(k, K[y; X]) t^n for n <= nmax.
TruncatedSeries koszul_tor_series(const LocalHom& phi, const EvaluatedComplex& x,
                                  const std::vector<RingElement>& y, int nmax,
                                  TorPath path = TorPath::Auto);
// sum_n rank Ext^n_R(k, K[y; X]) t^{card y + n}, for exponents <= nmax.
TruncatedSeries koszul_ext_series(const LocalHom& phi, const EvaluatedComplex& x,
                                  const std::vector<RingElement>& y, int nmax,
                                  TorPath path = TorPath::Auto);

TruncatedSeries betti_over(const LocalHom& phi, const EvaluatedComplex& x, int nmax,
                           TorPath path = TorPath::Auto);
TruncatedSeries betti_over(const LocalHom& phi, const DegreewiseModule& n, int nmax,
                           TorPath path = TorPath::Auto);
TruncatedSeries bass_over(const LocalHom& phi, const EvaluatedComplex& x, int nmax,
                          TorPath path = TorPath::Auto);
TruncatedSeries bass_over(const LocalHom& phi, const DegreewiseModule& n, int nmax,
                          TorPath path = TorPath::Auto);

// sup of the nonzero indices, shifted by edim phi. A value is reported once
// the series is polynomial or shows `zeros` certified zeros past its last
// nonzero coefficient; otherwise `bound` is a lower bound.
HomDimension shifted_dimension(const TruncatedSeries& s, int shift, int zeros = 2);
struct PhiDimensions {
  HomDimension pd;
  HomDimension id;
};
PhiDimensions pd_id_over(const LocalHom& phi, const DegreewiseModule& n, int nmax);

// ---------------------------------------------------------------------------
// Separation

enum class SeparationVerdict { Separated, Violated, Undetermined };
std::string to_string(SeparationVerdict v);

struct SeparationResult {
  SeparationVerdict verdict = SeparationVerdict::Undetermined;
  int checked_hi = -1;             // last index compared
  std::optional<int> violated_at;  // first index with strict inequality
  std::optional<int> undetermined_at;
  TruncatedSeries lhs;             // (1+t)^{s-e} times the series over phi
  TruncatedSeries ceiling;         // P^R_k times the Koszul factor
};

// Compares (1+t)^{s-e} P^phi_X with P^R_k K^S_X(t). Throws
// InvariantViolation when the ceiling inequality fails.
SeparationResult is_separated(const LocalHom& phi, const EvaluatedComplex& x, int nmax);
SeparationResult is_separated(const LocalHom& phi, const DegreewiseModule& n, int nmax);
// Same for the Bass series against P^R_k t^s K^S_X(1/t).
SeparationResult is_injectively_separated(const LocalHom& phi, const EvaluatedComplex& x,
                                          int nmax);
SeparationResult is_injectively_separated(const LocalHom& phi, const DegreewiseModule& n,
                                          int nmax);

// ---------------------------------------------------------------------------
// Growth estimators (heuristic; limits are never certified)

constexpr int kComplexityCap = 5;

struct GrowthEstimate {
  std::optional<int> complexity;  // nullopt: no d <= kComplexityCap fits
  double curvature = 0;
  int from = 0;  // trailing window used
  int to = 0;
};

constexpr int kMinTailPoints = 6;

// The tail is the upper half of the series. Throws WindowTooSmall with
// fewer than min_points tail points or uncertified coefficients in it.
GrowthEstimate estimate_growth(const TruncatedSeries& s, int min_points = kMinTailPoints);
std::optional<int> complexity_estimate(const TruncatedSeries& s);
double curvature_estimate(const TruncatedSeries& s);

enum class Verdict { Pass, Fail, Undetermined };
std::string to_string(Verdict v);

struct ExtremalityResult {
  Verdict verdict = Verdict::Undetermined;
  GrowthEstimate over_phi;
  GrowthEstimate residue;  // k over R
  bool injective = false;
};

constexpr double kCurvatureTolerance = 0.1;

// cx and curv of X over phi against those of k over R.
ExtremalityResult is_extremal(const LocalHom& phi, const DegreewiseModule& n, int nmax);
ExtremalityResult is_injectively_extremal(const LocalHom& phi, const DegreewiseModule& n,
                                          int nmax);

}  // namespace homolocal
