#pragma once

// Minimal graded free resolutions by degreewise syzygy computation.

#include <memory>
#include <optional>

#include "homolocal/complex.hpp"

namespace homolocal {

struct Resolution {
  FreeComplex complex;  // F_0 .. F_top
  // Generator images of F_0 in M, as coordinates of M_{deg g}.
  std::vector<linalg::SparseVec> augmentation;
  int top = 0;
  // Per step: highest internal degree searched for syzygy generators.
  std::vector<int> windows;

  std::size_t rank(int n) const { return complex.rank(n); }
  TruncatedSeries betti(int nmax) const;
  // First nmax + 1 terms with the finiteness flag adjusted.
  FreeComplex truncated(int nmax) const;
};
using ResolutionPtr = std::shared_ptr<const Resolution>;

// Resolves M through F_top. For Artinian rings every step is exact; for
// other rings each step searches up to the truncation and is Guarded.
// Throws TruncationExceeded when a generator appears in the guard band at
// the top of a step's window.
ResolutionPtr minimal_resolution(const DegreewiseModule& m, int top);

// Resolution of the residue field of R, cached.
ResolutionPtr residue_resolution(const RingPtr& r, int top);

TruncatedSeries betti_numbers(const DegreewiseModule& m, int nmax);
// rank Ext^n_R(k, M) for n <= nmax.
TruncatedSeries bass_numbers(const DegreewiseModule& m, int nmax);

struct HomDimension {
  std::optional<int> value;  // known finite value
  int bound = 0;             // otherwise "at least bound"
  Certainty certainty = Certainty::Exact;
  bool finite() const { return value.has_value(); }
};
// sup of the nonzero Betti indices; finite once some Betti number vanishes.
HomDimension flat_dimension(const TruncatedSeries& betti);
// sup of the nonzero Bass indices; finite when the tail past the last
// nonzero coefficient has at least two certified zeros.
HomDimension injective_dimension(const TruncatedSeries& bass);

struct ResolutionCacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
};
ResolutionCacheStats resolution_cache_stats();
void clear_resolution_cache();

}  // namespace homolocal
