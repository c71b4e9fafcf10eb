#pragma once

// Graded local homomorphisms phi : R -> S with a uniform degree scale e:
// a variable of degree d maps to a homogeneous element of degree e*d (or 0).

#include <memory>
#include <string>
#include <vector>

#include "homolocal/linalg.hpp"
#include "homolocal/ring.hpp"

namespace homolocal {

class LocalHom;
using HomPtr = std::shared_ptr<const LocalHom>;

class LocalHom {
 public:
  // Throws WrongImageDegree, RelationNotKilled, IncompatibleDegreeScale, and
  // TruncationExceeded when a relation image cannot be evaluated.
  static HomPtr create(RingPtr source, RingPtr target, std::vector<RingElement> images,
                       int scale);
  static HomPtr create(RingPtr source, RingPtr target, const std::vector<std::string>& images,
                       int scale);
  static HomPtr identity(RingPtr r);
  // x_j -> x_j^(p^i). Well defined for every relation with F_p coefficients,
  // so the relation check is skipped.
  static HomPtr frobenius(RingPtr r, int i);
  // first then second; scales multiply.
  static HomPtr compose(const HomPtr& second, const HomPtr& first);
  static HomPtr power(const HomPtr& endo, int j);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<RingElement>& images() const { return images_; }
  int scale() const { return scale_; }
  bool is_endomorphism() const { return same_ring(source_, target_); }

  // phi : R_d -> S_{e d}; TruncationExceeded beyond the target window.
  const linalg::Matrix& matrix(int d) const;
  linalg::SparseVec apply(int d, const linalg::SparseVec& coords) const;
  RingElement apply(const RingElement& r) const;

  std::string canonical() const;

 private:
  LocalHom() = default;
  void tabulate();

  RingPtr source_;
  RingPtr target_;
  std::vector<RingElement> images_;
  int scale_ = 1;
  // matrices_[d] for d = 0 .. known_hi_.
  std::vector<linalg::Matrix> matrices_;
  int known_hi_ = -1;
  bool vanishes_above_ = false;  // target Artinian: phi(R_d) = 0 beyond the table
};

}  // namespace homolocal
