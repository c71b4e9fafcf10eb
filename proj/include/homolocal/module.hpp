#pragma once

// Graded modules over a GradedRing.
//
// DegreewiseModule is the concrete form every computation consumes: a
// vector space per degree in [lo, hi] and the action of each variable.
// Below lo the module is zero. Above hi it is zero when `bounded` is set and
// unknown otherwise, in which case access raises TruncationExceeded.
// GradedModule is a finite presentation that evaluates to that form.

#include <optional>
#include <string>
#include <vector>

#include "homolocal/linalg.hpp"
#include "homolocal/ring.hpp"

namespace homolocal {

class DegreewiseModule {
 public:
  DegreewiseModule() : field_(2) {}
  // A module over `ring` with the given dimensions; actions start as zero
  // maps and are filled in with set_action.
  DegreewiseModule(RingPtr ring, int lo, std::vector<int> dims, bool bounded);
  // A graded vector space without ring action.
  DegreewiseModule(const linalg::PrimeField& f, int lo, std::vector<int> dims, bool bounded);

  static DegreewiseModule zero(RingPtr ring);
  static DegreewiseModule free_rank_one(RingPtr ring);  // R itself
  static DegreewiseModule residue_field(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const linalg::PrimeField& field() const { return field_; }
  bool has_action() const { return static_cast<bool>(ring_); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool bounded() const { return bounded_; }

  int dim(int d) const;
  bool known(int d) const { return bounded_ || d <= hi_; }
  // Total dimension; requires a bounded module.
  int total_dim() const;
  bool is_zero() const;

  // x_v : M_d -> M_{d + deg x_v}.
  linalg::Matrix act(std::size_t v, int d) const;
  void set_action(std::size_t v, int d, linalg::Matrix m);
  // Action of a homogeneous ring element, M_d -> M_{d + deg}.
  linalg::Matrix act_element(const RingElement& r, int d) const;
  linalg::Matrix act_monomial(const Exponents& e, int d) const;

  // result_d = M_{d - s}; generators move up by s.
  DegreewiseModule shifted(int s) const;
  // Same module viewed on [lo, hi] (padding with zeros where the module is
  // known to vanish). Raises TruncationExceeded when hi is not known.
  DegreewiseModule reframed(int lo, int hi, bool bounded) const;
  // Removes zero degrees at both ends of a bounded module.
  DegreewiseModule trimmed() const;

  static DegreewiseModule direct_sum(const DegreewiseModule& a, const DegreewiseModule& b);

  // Checks that the actions commute on the window; throws InvariantViolation.
  void verify() const;

  // Stable content digest for caching.
  std::string digest() const;

 private:
  RingPtr ring_;
  linalg::PrimeField field_;
  int lo_ = 0;
  int hi_ = -1;
  bool bounded_ = true;
  std::vector<int> dims_;
  // actions_[v][d - lo_] : M_d -> M_{d + deg v}, present when the target is
  // inside the window.
  std::vector<std::vector<linalg::Matrix>> actions_;
};

// coker(F_1 -> F_0) for free modules F_0 = sum R(-gen_degrees[j]); each
// relation lists one entry per generator.
struct GradedModule {
  RingPtr ring;
  std::vector<int> gen_degrees;
  std::vector<std::vector<RingElement>> relations;

  static GradedModule free(RingPtr ring, std::vector<int> degrees);
  static GradedModule residue_field(RingPtr ring);
  // R / (f_1, ..., f_k) for homogeneous f_i.
  static GradedModule cyclic(RingPtr ring, const std::vector<std::string>& ideal);
  static GradedModule from_strings(RingPtr ring, std::vector<int> degrees,
                                   const std::vector<std::vector<std::string>>& rels);

  // Throws NonHomogeneousRelation for inhomogeneous presentation entries.
  void validate() const;
  DegreewiseModule degreewise() const;
};

struct SocleBasis {
  int lo = 0;
  std::vector<std::vector<linalg::SparseVec>> per_degree;  // index d - lo
  int computed_hi = -1;  // highest degree with a complete answer
  bool certified = false;
  std::size_t total() const;
};

// Simultaneous kernel of all variable actions.
SocleBasis socle_basis(const DegreewiseModule& m);
// n * M in degree d, as a reducer over M_d.
linalg::RowReducer maximal_ideal_image(const DegreewiseModule& m, int d);

// Degreewise dual with transposed actions, regraded to start in degree 0:
// dual_d = (M_{hi - d})^*.
DegreewiseModule matlis_dual(const DegreewiseModule& m);

// View an S-module over R through a graded map with scale e, given the
// images of R's variables. Degree j of the result collects M_{je}..M_{je+e-1}.
DegreewiseModule restrict_scalars(const DegreewiseModule& m, RingPtr source,
                                  const std::vector<RingElement>& images, int scale);

// M / (z_1 M + ... + z_k M).
DegreewiseModule quotient_by_elements(const DegreewiseModule& m,
                                      const std::vector<RingElement>& z);

}  // namespace homolocal
