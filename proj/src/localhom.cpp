#include "homolocal/localhom.hpp"

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Matrix;
using linalg::SparseVec;

namespace {

bool ring_known(const GradedRing& r, int d) { return d <= r.truncation() || r.is_artinian(); }

// Image of a relation polynomial under x_v -> images[v].
RingElement evaluate(const GradedRing& s, const Polynomial& p,
                     const std::vector<RingElement>& images) {
  RingElement acc;
  for (const auto& [m, c] : p) {
    RingElement term = s.scale(s.one(), c);
    for (std::size_t v = 0; v < m.size(); ++v)
      for (int k = 0; k < m[v]; ++k) {
        term = s.multiply(term, images[v]);
        if (term.is_zero()) break;
      }
    acc = s.add(acc, term);
  }
  return acc;
}

}  // namespace

HomPtr LocalHom::create(RingPtr source, RingPtr target, std::vector<RingElement> images,
                        int scale) {
  if (scale < 1) fail(ErrorKind::IncompatibleDegreeScale, "degree scale must be at least 1");
  if (source->field() != target->field())
    fail(ErrorKind::ValidationError, "source and target have different characteristic");
  if (images.size() != source->nvars())
    fail(ErrorKind::ValidationError, "expected " + std::to_string(source->nvars()) +
                                         " images, got " + std::to_string(images.size()));
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (images[v].is_zero()) continue;
    int want = scale * source->var_degree(v);
    if (!images[v].is_homogeneous() || images[v].degree() != want)
      fail(ErrorKind::WrongImageDegree, "image of " + source->variables()[v].name +
                                            " must be homogeneous of degree " +
                                            std::to_string(want));
  }
  for (const auto& rel : source->relations()) {
    RingElement img = evaluate(*target, rel, images);
    if (!img.is_zero())
      fail(ErrorKind::RelationNotKilled,
           "relation " + format_polynomial(rel, source->var_names()) + " maps to " +
               target->format(img));
  }
  std::shared_ptr<LocalHom> h(new LocalHom());
  h->source_ = std::move(source);
  h->target_ = std::move(target);
  h->images_ = std::move(images);
  h->scale_ = scale;
  h->tabulate();
  return h;
}

HomPtr LocalHom::create(RingPtr source, RingPtr target, const std::vector<std::string>& images,
                        int scale) {
  std::vector<RingElement> imgs;
  for (const auto& s : images) imgs.push_back(target->parse(s));
  return create(std::move(source), std::move(target), std::move(imgs), scale);
}

HomPtr LocalHom::identity(RingPtr r) {
  std::vector<RingElement> imgs;
  for (std::size_t v = 0; v < r->nvars(); ++v) imgs.push_back(r->variable(v));
  std::shared_ptr<LocalHom> h(new LocalHom());
  h->source_ = r;
  h->target_ = r;
  h->images_ = std::move(imgs);
  h->tabulate();
  return h;
}

HomPtr LocalHom::frobenius(RingPtr r, int i) {
  if (i < 1) fail(ErrorKind::ValidationError, "Frobenius power must be at least 1");
  std::int64_t q = 1;
  for (int k = 0; k < i; ++k) {
    q *= r->field().p();
    if (q > (1 << 20)) fail(ErrorKind::ValidationError, "Frobenius power too large");
  }
  std::vector<RingElement> imgs;
  for (std::size_t v = 0; v < r->nvars(); ++v) {
    Exponents e(r->nvars(), 0);
    e[v] = static_cast<int>(q);
    int d = static_cast<int>(q) * r->var_degree(v);
    if (!ring_known(*r, d))
      fail(ErrorKind::TruncationExceeded,
           "Frobenius image of " + r->variables()[v].name + " lies beyond the truncation", d);
    imgs.push_back(d > r->truncation() ? RingElement{}
                                       : RingElement::homogeneous(d, r->monomial_nf(e)));
  }
  std::shared_ptr<LocalHom> h(new LocalHom());
  h->source_ = r;
  h->target_ = r;
  h->images_ = std::move(imgs);
  h->scale_ = static_cast<int>(q);
  h->tabulate();
  return h;
}

HomPtr LocalHom::compose(const HomPtr& second, const HomPtr& first) {
  if (!same_ring(first->target_, second->source_))
    fail(ErrorKind::ValidationError, "homomorphisms are not composable");
  std::vector<RingElement> imgs;
  for (const auto& im : first->images_) imgs.push_back(second->apply(im));
  std::shared_ptr<LocalHom> h(new LocalHom());
  h->source_ = first->source_;
  h->target_ = second->target_;
  h->images_ = std::move(imgs);
  h->scale_ = first->scale_ * second->scale_;
  h->tabulate();
  return h;
}

HomPtr LocalHom::power(const HomPtr& endo, int j) {
  if (!endo->is_endomorphism()) fail(ErrorKind::ValidationError, "power of a non-endomorphism");
  if (j < 0) fail(ErrorKind::ValidationError, "negative power");
  HomPtr out = identity(endo->source_);
  for (int k = 0; k < j; ++k) out = compose(endo, out);
  return out;
}

void LocalHom::tabulate() {
  const GradedRing& r = *source_;
  const GradedRing& s = *target_;
  int rhi = r.top_degree() ? *r.top_degree() : r.truncation();
  std::vector<std::vector<SparseVec>> cols;
  for (int d = 0; d <= rhi && ring_known(s, scale_ * d); ++d) {
    std::vector<SparseVec> c(static_cast<std::size_t>(r.hilbert(d)));
    for (int i = 0; i < r.hilbert(d); ++i) {
      if (d == 0) {
        c[i] = {{0, 1 % s.field().p()}};
        continue;
      }
      // b = x_v * b' with b' standard in lower degree.
      const Exponents& b = r.basis_monomial(d, i);
      std::size_t v = 0;
      while (b[v] == 0) ++v;
      Exponents bp = b;
      bp[v] -= 1;
      int dp = d - r.var_degree(v);
      SparseVec prev = r.monomial_nf(bp);
      // prev is a single standard monomial since standard monomials are an order ideal.
      const SparseVec& prev_img = cols[dp][prev.at(0).first];
      c[i] = images_[v].is_zero()
                 ? SparseVec{}
                 : s.multiply(scale_ * r.var_degree(v), images_[v].coords(), scale_ * dp, prev_img);
    }
    cols.push_back(std::move(c));
    known_hi_ = d;
  }
  for (int d = 0; d <= known_hi_; ++d)
    matrices_.push_back(Matrix::from_columns(s.field(), static_cast<std::size_t>(s.dim(scale_ * d)),
                                             cols[d].size(), cols[d]));
  vanishes_above_ = known_hi_ == rhi && r.is_artinian();
}

const Matrix& LocalHom::matrix(int d) const {
  if (d >= 0 && d <= known_hi_) return matrices_[d];
  if (vanishes_above_ || d < 0) {
    static const Matrix empty;
    return empty;
  }
  fail(ErrorKind::TruncationExceeded,
       "homomorphism image in degree " + std::to_string(scale_ * d) + " is beyond the window",
       scale_ * d);
}

SparseVec LocalHom::apply(int d, const SparseVec& coords) const {
  if (coords.empty()) return {};
  if (d > known_hi_ && target_->is_artinian() && scale_ * d > target_->truncation()) return {};
  return linalg::apply(matrix(d), coords);
}

RingElement LocalHom::apply(const RingElement& a) const {
  RingElement out;
  for (const auto& [d, v] : a.parts)
    out = target_->add(out, RingElement::homogeneous(scale_ * d, apply(d, v)));
  return out;
}

std::string LocalHom::canonical() const {
  std::string s = "src{" + source_->canonical() + "}tgt{" + target_->canonical() + "}img{";
  for (std::size_t v = 0; v < images_.size(); ++v)
    s += (v ? "," : "") + target_->format(images_[v]);
  return s + "}e=" + std::to_string(scale_);
}

}  // namespace homolocal
