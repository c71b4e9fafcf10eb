#pragma once

// Koszul complexes K[z; X], Koszul polynomials, depth and type, associated
// graded modules and spread.

#include <vector>

#include "homolocal/complex.hpp"

namespace homolocal {

// Iterated mapping cones of multiplication by each z_i. Elements must be
// homogeneous of positive degree (NonHomogeneousElement otherwise).
EvaluatedComplex koszul_complex(const EvaluatedComplex& x, const std::vector<RingElement>& z);
EvaluatedComplex koszul_complex(const DegreewiseModule& n, const std::vector<RingElement>& z);

// The variables of S: a minimal generating set of its maximal ideal.
std::vector<RingElement> variable_elements(const GradedRing& s);

// K^S_N(t) from the Koszul complex on the variables. Throws
// TruncationExceeded when some homology total is not certified.
TruncatedSeries koszul_polynomial(const DegreewiseModule& n);
TruncatedSeries koszul_polynomial(const EvaluatedComplex& x);

struct DepthType {
  int depth = 0;
  std::int64_t type = 0;
  Certainty certainty = Certainty::Exact;
};
DepthType depth_and_type(const DegreewiseModule& n);

// gr L = sum_i n^i L / n^{i+1} L graded by i, for standard-graded rings.
DegreewiseModule associated_graded(const DegreewiseModule& l);

// 1 + the top internal degree of Koszul homology of gr L.
int spread(const DegreewiseModule& l);

}  // namespace homolocal
