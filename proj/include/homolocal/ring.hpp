#pragma once

// Truncated graded quotients R = F_p[x_1..x_n]/I, known degreewise up to a
// truncation degree D. The maximal ideal is the positive-degree part.
//
// Within each degree the monomials are ordered by descending lex order and
// I_d is kept in reduced row echelon form over that basis: the standard
// monomials are the non-pivot columns, and the normal form of a monomial is
// read off its rref row.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "homolocal/linalg.hpp"
#include "homolocal/polynomial.hpp"

namespace homolocal {

struct Variable {
  std::string name;
  int degree = 1;
};

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

// Homogeneous components, keyed by degree, over the standard-monomial basis.
struct RingElement {
  std::map<int, linalg::SparseVec> parts;

  bool is_zero() const { return parts.empty(); }
  bool is_homogeneous() const { return parts.size() <= 1; }
  // Degree of a homogeneous nonzero element.
  int degree() const { return parts.begin()->first; }
  const linalg::SparseVec& coords() const { return parts.begin()->second; }
  static RingElement homogeneous(int degree, linalg::SparseVec coords);
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

struct LoewyLength {
  int value = 0;           // exact value, or the lower bound D + 1
  bool certified = false;  // false: exceeds truncation
};

class GradedRing {
 public:
  // relations are polynomial strings in the shared syntax.
  static RingPtr create(std::uint64_t p, std::vector<Variable> vars,
                        const std::vector<std::string>& relations, int truncation);
  static RingPtr from_polynomials(std::uint64_t p, std::vector<Variable> vars,
                        std::vector<Polynomial> relations, int truncation);

  const linalg::PrimeField& field() const { return field_; }
  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  int var_degree(std::size_t v) const { return vars_[v].degree; }
  int max_var_degree() const { return max_var_degree_; }
  const std::vector<std::string>& var_names() const { return names_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  int truncation() const { return D_; }
  // Number of variables; minimal because relations lie in m^2.
  int edim() const { return static_cast<int>(vars_.size()); }

  // dim_k R_d for 0 <= d <= D; throws TruncationExceeded above D.
  int hilbert(int d) const;
  // Like hilbert, but returns 0 above D when R is certified Artinian.
  int dim(int d) const;
  // Largest degree with R_d != 0 when R_d = 0 is certified for all larger d.
  std::optional<int> top_degree() const { return top_; }
  bool is_artinian() const { return top_.has_value(); }
  // Sum of dim R_d; requires a certified top degree.
  int length() const;
  LoewyLength loewy_length() const;

  const Exponents& basis_monomial(int d, int i) const;
  std::string basis_label(int d, int i) const;

  // Normal form of a monomial (any exponent vector) as coordinates in
  // R_deg. Above D: zero for Artinian rings, TruncationExceeded otherwise.
  linalg::SparseVec monomial_nf(const Exponents& e) const;
  RingElement normal_form(const Polynomial& p) const;
  RingElement parse(const std::string& text) const;

  // Product of homogeneous elements given by coordinates.
  linalg::SparseVec multiply(int da, const linalg::SparseVec& a, int db,
                             const linalg::SparseVec& b) const;
  RingElement multiply(const RingElement& a, const RingElement& b) const;
  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement scale(const RingElement& a, linalg::Elem c) const;
  RingElement variable(std::size_t v) const;
  RingElement one() const;

  // Multiplication by x_v : R_d -> R_{d + deg x_v}.
  linalg::Matrix var_action(std::size_t v, int d) const;
  // Multiplication by a homogeneous element of degree dr : R_d -> R_{d+dr}.
  linalg::Matrix mult_matrix(int dr, const linalg::SparseVec& r, int d) const;

  std::string format(const RingElement& a) const;
  // Stable description used for hashing and canonical output.
  std::string canonical() const;

 private:
  GradedRing(const linalg::PrimeField& f) : field_(f) {}
  void build();
  std::uint64_t key(const Exponents& e) const;
  // Index of the monomial in the degree-d monomial list, or -1.
  int monomial_index(int d, std::uint64_t key) const;
  const linalg::SparseVec& nf_of_index(int d, int idx) const;

  linalg::PrimeField field_;
  std::vector<Variable> vars_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<Polynomial> relations_;
  int D_ = 0;
  int max_var_degree_ = 1;
  std::vector<std::uint64_t> radix_;

  struct Degree {
    std::vector<Exponents> monomials;
    std::unordered_map<std::uint64_t, int> index;
    std::vector<int> basis;        // monomial indices of standard monomials
    std::vector<linalg::SparseVec> nf;  // per monomial, over the basis
  };
  std::vector<Degree> deg_;
  std::optional<int> top_;
};

// Same presentation and truncation (pointer-equal rings compare fast).
bool same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace homolocal
