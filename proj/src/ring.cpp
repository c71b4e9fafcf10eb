#include "homolocal/ring.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Elem;
using linalg::Matrix;
using linalg::SparseVec;

RingElement RingElement::homogeneous(int degree, SparseVec coords) {
  RingElement r;
  if (!coords.empty()) r.parts.emplace(degree, std::move(coords));
  return r;
}

RingPtr GradedRing::create(std::uint64_t p, std::vector<Variable> vars,
                           const std::vector<std::string>& relations, int truncation) {
  linalg::PrimeField f(p);
  std::vector<std::string> names;
  for (const auto& v : vars) names.push_back(v.name);
  std::vector<Polynomial> polys;
  for (const auto& r : relations) polys.push_back(parse_polynomial(r, names, f));
  return from_polynomials(p, std::move(vars), std::move(polys), truncation);
}

RingPtr GradedRing::from_polynomials(std::uint64_t p, std::vector<Variable> vars,
                           std::vector<Polynomial> relations, int truncation) {
  linalg::PrimeField f(p);
  std::shared_ptr<GradedRing> r(new GradedRing(f));
  r->vars_ = std::move(vars);
  r->relations_ = std::move(relations);
  r->D_ = truncation;
  r->build();
  return r;
}

void GradedRing::build() {
  if (D_ < 0) fail(ErrorKind::ValidationError, "truncation degree must be >= 0");
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.name.empty()) fail(ErrorKind::ValidationError, "empty variable name");
    if (!seen.insert(v.name).second)
      fail(ErrorKind::ValidationError, "duplicate variable '" + v.name + "'");
    if (v.degree < 1)
      fail(ErrorKind::ValidationError, "variable '" + v.name + "' must have positive degree");
    names_.push_back(v.name);
    weights_.push_back(v.degree);
    max_var_degree_ = std::max(max_var_degree_, v.degree);
  }

  // Mixed-radix monomial keys: exponent of x_v is at most D / deg x_v inside
  // the window, so adding keys multiplies monomials without carries.
  radix_.resize(vars_.size());
  unsigned __int128 acc = 1;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    radix_[v] = static_cast<std::uint64_t>(acc);
    acc *= static_cast<unsigned __int128>(D_ / vars_[v].degree + 1);
    if (acc >> 63) fail(ErrorKind::ValidationError, "too many variables for this truncation");
  }

  std::vector<Polynomial> kept;
  for (auto& rel : relations_) {
    if (rel.empty()) continue;
    if (rel.begin()->first.size() != vars_.size())
      fail(ErrorKind::ValidationError, "relation has wrong number of variables");
    int d = weighted_degree(rel.begin()->first, weights_);
    for (const auto& [m, c] : rel) {
      if (weighted_degree(m, weights_) != d)
        fail(ErrorKind::NonHomogeneousRelation,
             "relation '" + format_polynomial(rel, names_) + "' is not homogeneous");
      int total = 0;
      for (int e : m) total += e;
      if (total < 2)
        fail(ErrorKind::RelationDegreeTooLow,
             "relation '" + format_polynomial(rel, names_) +
                 "' has a term outside m^2, which would change the embedding dimension");
    }
    kept.push_back(rel);
  }
  relations_ = std::move(kept);

  deg_.assign(static_cast<std::size_t>(D_) + 1, Degree{});
  // Reduced rows of I_d over the monomial indices of degree d.
  std::vector<std::vector<SparseVec>> ideal(static_cast<std::size_t>(D_) + 1);

  for (int d = 0; d <= D_; ++d) {
    Degree& g = deg_[d];
    Exponents cur(vars_.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
      if (v == vars_.size()) {
        if (left == 0) g.monomials.push_back(cur);
        return;
      }
      for (int e = left / vars_[v].degree; e >= 0; --e) {
        cur[v] = e;
        rec(v + 1, left - e * vars_[v].degree);
      }
      cur[v] = 0;
    };
    rec(0, d);
    // The recursion already emits descending lex order; sort for safety.
    std::sort(g.monomials.begin(), g.monomials.end(), std::greater<>());
    for (std::size_t i = 0; i < g.monomials.size(); ++i)
      g.index.emplace(key(g.monomials[i]), static_cast<int>(i));

    linalg::RowReducer red(field_, g.monomials.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      int dp = d - vars_[v].degree;
      if (dp < 0) continue;
      const Degree& lower = deg_[dp];
      for (const auto& row : ideal[dp]) {
        SparseVec shifted;
        for (auto [c, x] : row) {
          int idx = monomial_index(d, key(lower.monomials[c]) + radix_[v]);
          shifted.push_back({static_cast<std::uint32_t>(idx), x});
        }
        std::sort(shifted.begin(), shifted.end());
        red.insert(shifted);
      }
    }
    for (const auto& rel : relations_) {
      if (weighted_degree(rel.begin()->first, weights_) != d) continue;
      SparseVec row;
      for (const auto& [m, c] : rel)
        row.push_back({static_cast<std::uint32_t>(monomial_index(d, key(m))), c});
      std::sort(row.begin(), row.end());
      red.insert(row);
    }
    ideal[d] = red.reduced_rows();

    std::vector<int> basis_pos(g.monomials.size(), -1);
    for (std::size_t i = 0; i < g.monomials.size(); ++i)
      if (!red.is_pivot(i)) {
        basis_pos[i] = static_cast<int>(g.basis.size());
        g.basis.push_back(static_cast<int>(i));
      }
    g.nf.assign(g.monomials.size(), {});
    for (int b : g.basis)
      g.nf[b] = {{static_cast<std::uint32_t>(basis_pos[b]), 1 % field_.p()}};
    for (const auto& row : ideal[d]) {
      SparseVec nf;
      for (std::size_t k = 1; k < row.size(); ++k)
        nf.push_back({static_cast<std::uint32_t>(basis_pos[row[k].first]),
                      field_.neg(row[k].second)});
      std::sort(nf.begin(), nf.end());
      g.nf[row.front().first] = std::move(nf);
    }
  }

  // A run of max_var_degree consecutive zero degrees forces R_d = 0 above it.
  int run = 0;
  for (int d = 1; d <= D_; ++d) {
    run = deg_[d].basis.empty() ? run + 1 : 0;
    if (run == max_var_degree_) {
      int t = d - run;
      while (t > 0 && deg_[t].basis.empty()) --t;
      top_ = t;
      break;
    }
  }
  if (vars_.empty()) top_ = 0;
}

std::uint64_t GradedRing::key(const Exponents& e) const {
  std::uint64_t k = 0;
  for (std::size_t v = 0; v < e.size(); ++v) k += static_cast<std::uint64_t>(e[v]) * radix_[v];
  return k;
}

int GradedRing::monomial_index(int d, std::uint64_t k) const {
  const auto& idx = deg_[d].index;
  auto it = idx.find(k);
  return it == idx.end() ? -1 : it->second;
}

const SparseVec& GradedRing::nf_of_index(int d, int idx) const { return deg_[d].nf[idx]; }

int GradedRing::hilbert(int d) const {
  if (d < 0) return 0;
  if (d > D_)
    fail(ErrorKind::TruncationExceeded,
         "degree " + std::to_string(d) + " exceeds truncation " + std::to_string(D_), d);
  return static_cast<int>(deg_[d].basis.size());
}

int GradedRing::dim(int d) const {
  if (d > D_ && top_) return 0;
  return hilbert(d);
}

int GradedRing::length() const {
  if (!top_) fail(ErrorKind::TruncationExceeded, "ring is not certified Artinian", D_ + 1);
  int s = 0;
  for (int d = 0; d <= *top_; ++d) s += hilbert(d);
  return s;
}

LoewyLength GradedRing::loewy_length() const {
  if (!top_) return {D_ + 1, false};
  // m^i = 0 exactly when every monomial with at least i factors reduces to 0.
  int worst = 0;
  for (int d = 0; d <= *top_; ++d)
    for (std::size_t i = 0; i < deg_[d].monomials.size(); ++i)
      if (!deg_[d].nf[i].empty()) {
        int total = 0;
        for (int e : deg_[d].monomials[i]) total += e;
        worst = std::max(worst, total);
      }
  return {worst + 1, true};
}

const Exponents& GradedRing::basis_monomial(int d, int i) const {
  hilbert(d);
  return deg_[d].monomials[deg_[d].basis[i]];
}

std::string GradedRing::basis_label(int d, int i) const {
  return format_monomial(basis_monomial(d, i), names_);
}

SparseVec GradedRing::monomial_nf(const Exponents& e) const {
  int d = weighted_degree(e, weights_);
  if (d > D_) {
    if (top_) return {};
    fail(ErrorKind::TruncationExceeded,
         "degree " + std::to_string(d) + " exceeds truncation " + std::to_string(D_), d);
  }
  return deg_[d].nf[monomial_index(d, key(e))];
}

RingElement GradedRing::normal_form(const Polynomial& p) const {
  std::map<int, std::vector<Elem>> acc;
  for (const auto& [m, c] : p) {
    int d = weighted_degree(m, weights_);
    SparseVec nf = monomial_nf(m);
    if (nf.empty()) continue;
    auto& a = acc[d];
    a.resize(deg_[d].basis.size(), 0);
    for (auto [i, x] : nf) a[i] = field_.add(a[i], field_.mul(c, x));
  }
  RingElement r;
  for (auto& [d, a] : acc) {
    SparseVec v;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) v.push_back({static_cast<std::uint32_t>(i), a[i]});
    if (!v.empty()) r.parts.emplace(d, std::move(v));
  }
  return r;
}

RingElement GradedRing::parse(const std::string& text) const {
  return normal_form(parse_polynomial(text, names_, field_));
}

SparseVec GradedRing::multiply(int da, const SparseVec& a, int db, const SparseVec& b) const {
  int d = da + db;
  if (a.empty() || b.empty()) return {};
  if (d > D_) {
    if (top_) return {};
    fail(ErrorKind::TruncationExceeded,
         "product of degree " + std::to_string(d) + " exceeds truncation " + std::to_string(D_),
         d);
  }
  const Degree& ga = deg_[da];
  const Degree& gb = deg_[db];
  std::vector<Elem> acc(deg_[d].basis.size(), 0);
  for (auto [i, x] : a) {
    std::uint64_t ka = key(ga.monomials[ga.basis[i]]);
    for (auto [j, y] : b) {
      int idx = monomial_index(d, ka + key(gb.monomials[gb.basis[j]]));
      Elem c = field_.mul(x, y);
      for (auto [k, z] : deg_[d].nf[idx]) acc[k] = field_.add(acc[k], field_.mul(c, z));
    }
  }
  SparseVec out;
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (acc[k]) out.push_back({static_cast<std::uint32_t>(k), acc[k]});
  return out;
}

RingElement GradedRing::multiply(const RingElement& a, const RingElement& b) const {
  RingElement out;
  for (const auto& [da, va] : a.parts)
    for (const auto& [db, vb] : b.parts)
      out = add(out, RingElement::homogeneous(da + db, multiply(da, va, db, vb)));
  return out;
}

RingElement GradedRing::add(const RingElement& a, const RingElement& b) const {
  RingElement out = a;
  for (const auto& [d, v] : b.parts) {
    auto it = out.parts.find(d);
    if (it == out.parts.end()) {
      out.parts.emplace(d, v);
    } else {
      it->second = linalg::axpy(field_, it->second, 1, v);
      if (it->second.empty()) out.parts.erase(it);
    }
  }
  return out;
}

RingElement GradedRing::scale(const RingElement& a, Elem c) const {
  RingElement out;
  c %= field_.p();
  if (!c) return out;
  for (const auto& [d, v] : a.parts) {
    SparseVec w = v;
    for (auto& e : w) e.second = field_.mul(e.second, c);
    out.parts.emplace(d, std::move(w));
  }
  return out;
}

RingElement GradedRing::variable(std::size_t v) const {
  Exponents e(vars_.size(), 0);
  e[v] = 1;
  return RingElement::homogeneous(vars_[v].degree, monomial_nf(e));
}

RingElement GradedRing::one() const { return RingElement::homogeneous(0, {{0, 1 % field_.p()}}); }

Matrix GradedRing::var_action(std::size_t v, int d) const {
  int t = d + vars_[v].degree;
  int cols = dim(d);
  int rows = dim(t);
  std::vector<SparseVec> out(static_cast<std::size_t>(cols));
  if (rows > 0)
    for (int i = 0; i < cols; ++i) {
      Exponents e = basis_monomial(d, i);
      e[v] += 1;
      out[i] = deg_[t].nf[monomial_index(t, key(e))];
    }
  return Matrix::from_columns(field_, rows, cols, out);
}

Matrix GradedRing::mult_matrix(int dr, const SparseVec& r, int d) const {
  int cols = dim(d);
  int rows = dim(d + dr);
  std::vector<SparseVec> out(static_cast<std::size_t>(cols));
  if (rows > 0)
    for (int i = 0; i < cols; ++i)
      out[i] = multiply(dr, r, d, {{static_cast<std::uint32_t>(i), 1}});
  return Matrix::from_columns(field_, rows, cols, out);
}

std::string GradedRing::format(const RingElement& a) const {
  if (a.is_zero()) return "0";
  std::string out;
  for (auto it = a.parts.rbegin(); it != a.parts.rend(); ++it)
    for (auto [i, c] : it->second) {
      if (!out.empty()) out += " + ";
      std::string m = basis_label(it->first, static_cast<int>(i));
      if (c == 1) out += m;
      else if (m == "1") out += std::to_string(c);
      else out += std::to_string(c) + "*" + m;
    }
  return out;
}

std::string GradedRing::canonical() const {
  std::string s = "p=" + std::to_string(field_.p()) + ";vars=";
  for (std::size_t v = 0; v < vars_.size(); ++v)
    s += (v ? "," : "") + vars_[v].name + ":" + std::to_string(vars_[v].degree);
  s += ";rels=";
  for (std::size_t i = 0; i < relations_.size(); ++i)
    s += (i ? "," : "") + format_polynomial(relations_[i], names_);
  s += ";D=" + std::to_string(D_);
  return s;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  return a && b && a->canonical() == b->canonical();
}

}  // namespace homolocal
