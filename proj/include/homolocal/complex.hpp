#pragma once

// Chain complexes.
//
// EvaluatedComplex is a bounded-in-n complex of graded vector spaces, each
// term a DegreewiseModule (with or without ring action) on one shared
// internal-degree window. diff(n, d) : C_{n,d} -> C_{n-1,d}.
//
// FreeComplex is a complex of graded free modules over a ring with
// symbolic (homogeneous ring element) entries; it is evaluated only through
// base change (tensor or Hom through a LocalHom) or directly over its ring.
//
// Sign conventions, fixed once:
//   cone:   Cone_n = X_{n-1} + Y_n,  d(x, y) = (-d x, theta x + d y)
//   tensor: d(g (x) x) = sum_{g'} g' (x) phi(r_{g'g}) x + (-1)^i g (x) d x,  g in F_i
//   Hom:    (delta f) = d_X f - (-1)^n f d_F for f of degree n; Ext^m = H_{-m}

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "homolocal/linalg.hpp"
#include "homolocal/localhom.hpp"
#include "homolocal/module.hpp"
#include "homolocal/series.hpp"

namespace homolocal {

class EvaluatedComplex {
 public:
  EvaluatedComplex() : field_(2) {}
  // Terms are reframed onto a common window. diffs[n - nlo][d - dlo] for
  // the resulting window; an empty diffs list means zero differentials.
  EvaluatedComplex(const linalg::PrimeField& f, RingPtr ring, int nlo,
                   std::vector<DegreewiseModule> terms);

  static EvaluatedComplex from_module(const DegreewiseModule& m, int n = 0);
  static EvaluatedComplex zero(const linalg::PrimeField& f);

  const linalg::PrimeField& field() const { return field_; }
  const RingPtr& ring() const { return ring_; }
  bool has_action() const { return static_cast<bool>(ring_); }
  int nlo() const { return nlo_; }
  int nhi() const { return nlo_ + static_cast<int>(terms_.size()) - 1; }
  int dlo() const { return dlo_; }
  int dhi() const { return dhi_; }
  bool bounded() const { return bounded_; }
  bool empty() const { return terms_.empty(); }

  const DegreewiseModule& term(int n) const;  // n inside [nlo, nhi]
  int dim(int n, int d) const;
  const linalg::Matrix& diff(int n, int d) const;  // zero outside the range
  void set_diff(int n, int d, linalg::Matrix m);

  // Homological indices whose homology is fully determined by the stored
  // terms (truncated base changes know only part of the range).
  int valid_nlo() const { return valid_nlo_; }
  int valid_nhi() const { return valid_nhi_; }
  void set_valid_range(int lo, int hi) { valid_nlo_ = lo; valid_nhi_ = hi; }
  // Certainty inherited from inputs, e.g. a resolution certified by guard.
  Certainty base_certainty() const { return base_certainty_; }
  void set_base_certainty(Certainty c) { base_certainty_ = c; }
  // Guard band used to certify homology of unbounded complexes.
  int guard() const { return guard_; }
  void set_guard(int g) { guard_ = g; }

  // Internal degree shift: result_{n,d} = C_{n, d - s}.
  EvaluatedComplex twisted(int s) const;
  // Homological shift: result_n = C_{n - s}, with differential (-1)^s d.
  EvaluatedComplex suspended(int s) const;
  EvaluatedComplex reframed(int dlo, int dhi, bool bounded) const;

  // Throws NotAComplex when some d_{n-1} d_n is nonzero.
  void verify() const;

 private:
  linalg::PrimeField field_;
  RingPtr ring_;
  int nlo_ = 0;
  std::vector<DegreewiseModule> terms_;
  int dlo_ = 0;
  int dhi_ = -1;
  bool bounded_ = true;
  std::vector<std::vector<linalg::Matrix>> diffs_;
  int valid_nlo_ = std::numeric_limits<int>::min() / 2;
  int valid_nhi_ = std::numeric_limits<int>::max() / 2;
  Certainty base_certainty_ = Certainty::Exact;
  int guard_ = 2;
};

// Common window for several complexes (terms reframed accordingly).
std::vector<EvaluatedComplex> on_common_window(const std::vector<EvaluatedComplex>& cs);

struct HomologyTable {
  int nlo = 0;
  int dlo = 0;
  int dhi = -1;
  std::vector<std::vector<int>> ranks;  // [n - nlo][d - dlo]
  std::vector<std::int64_t> totals;     // [n - nlo]
  std::vector<Certainty> certainty;     // [n - nlo]
  std::vector<bool> valid;              // [n - nlo]
  // Indices outside [nlo, nhi] are zero exactly when inside this range.
  int valid_lo = std::numeric_limits<int>::min() / 2;
  int valid_hi = std::numeric_limits<int>::max() / 2;

  int nhi() const { return nlo + static_cast<int>(totals.size()) - 1; }
  int rank(int n, int d) const;
  std::int64_t total(int n) const;
  // Totals of valid indices as a series starting at `from` (missing
  // indices inside the stored range are zero, beyond are absent).
  TruncatedSeries series(int from, int to) const;
  // sup / inf of indices with nonzero homology.
  std::optional<int> sup() const;
  std::optional<int> inf() const;
};

HomologyTable homology(const EvaluatedComplex& c);
// Representatives of H_{n,d}.
std::vector<linalg::SparseVec> homology_representatives(const EvaluatedComplex& c, int n, int d);

// Degree-preserving chain map theta : X -> Y; maps[n - nlo][d - X.dlo].
struct ChainMap {
  EvaluatedComplex source;
  EvaluatedComplex target;
  std::vector<std::vector<linalg::Matrix>> maps;
  int nlo = 0;

  const linalg::Matrix& at(int n, int d) const;
  // Throws NotAChainMap.
  void verify() const;
};

// Builds theta from a callback (n, d) -> matrix X_{n,d} -> Y_{n,d}.
// Source and target must already share a window.
template <class F>
ChainMap make_chain_map(const EvaluatedComplex& x, const EvaluatedComplex& y, F&& f);

EvaluatedComplex mapping_cone(const ChainMap& theta);

// Multiplication by a homogeneous element: X(-deg z) -> X, on a common window.
ChainMap multiplication_map(const EvaluatedComplex& x, const RingElement& z);

// ---------------------------------------------------------------------------

struct FreeComplex {
  struct Entry {
    std::size_t target;  // generator index in F_{n-1}
    int degree;          // degree of the ring element
    linalg::SparseVec coords;
  };
  RingPtr ring;
  int nlo = 0;
  std::vector<std::vector<int>> gens;  // gens[n - nlo]: generator degrees of F_n
  // diffs[n - nlo][g]: column of d_n for generator g of F_n (empty for n = nlo).
  std::vector<std::vector<std::vector<Entry>>> diffs;
  Certainty certainty = Certainty::Exact;
  // True when F_n = 0 is known for all n above the stored range.
  bool finite = false;

  int nhi() const { return nlo + static_cast<int>(gens.size()) - 1; }
  std::size_t rank(int n) const;
  int max_degree() const;
  int min_degree() const;
  // Every entry has positive degree.
  bool minimal() const;
  // d o d = 0 symbolically, within the ring's window.
  void verify() const;
  // Evaluation over its own ring (terms sums of shifted copies of R).
  EvaluatedComplex evaluate() const;
};

// F (x)_R X with R acting on X through phi.
EvaluatedComplex base_change_tensor(const FreeComplex& f, const LocalHom& phi,
                                    const EvaluatedComplex& x);
// Hom_R(F, X) with R acting on X through phi.
EvaluatedComplex base_change_hom(const FreeComplex& f, const LocalHom& phi,
                                 const EvaluatedComplex& x);

// ---------------------------------------------------------------------------

template <class F>
ChainMap make_chain_map(const EvaluatedComplex& x, const EvaluatedComplex& y, F&& f) {
  ChainMap t{x, y, {}, std::min(x.nlo(), y.nlo())};
  int nhi = std::max(x.nhi(), y.nhi());
  for (int n = t.nlo; n <= nhi; ++n) {
    std::vector<linalg::Matrix> row;
    for (int d = x.dlo(); d <= x.dhi(); ++d) {
      if (x.dim(n, d) == 0 || y.dim(n, d) == 0)
        row.push_back(linalg::Matrix::zero(x.field(), y.dim(n, d), x.dim(n, d)));
      else
        row.push_back(f(n, d));
    }
    t.maps.push_back(std::move(row));
  }
  return t;
}

}  // namespace homolocal
