#include "homolocal/resolution.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "homolocal/error.hpp"

namespace homolocal {

using linalg::Elem;
using linalg::Matrix;
using linalg::RowReducer;
using linalg::SparseVec;

namespace {

constexpr int kGuard = 2;

// Coordinates of a graded free module sum_g R(-deg g) in one degree.
struct FreeDegree {
  std::vector<std::uint32_t> offset;  // per generator
  std::uint32_t size = 0;
};

class FreeLayout {
 public:
  FreeLayout(const GradedRing& r, const std::vector<int>& gens) : r_(r), gens_(gens) {}

  const FreeDegree& at(int d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    FreeDegree fd;
    for (int g : gens_) {
      fd.offset.push_back(fd.size);
      fd.size += static_cast<std::uint32_t>(r_.dim(d - g));
    }
    return cache_.emplace(d, std::move(fd)).first->second;
  }

  // Generator owning coordinate c of degree d.
  std::size_t owner(int d, std::uint32_t c) {
    const auto& off = at(d).offset;
    return static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), c) - off.begin()) - 1;
  }

 private:
  const GradedRing& r_;
  const std::vector<int>& gens_;
  std::unordered_map<int, FreeDegree> cache_;
};

class VarActions {
 public:
  explicit VarActions(const GradedRing& r) : r_(r) {}
  const Matrix& get(std::size_t v, int d) {
    auto key = std::make_pair(v, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, r_.var_action(v, d)).first->second;
  }

 private:
  const GradedRing& r_;
  std::map<std::pair<std::size_t, int>, Matrix> cache_;
};

// x_v * u for u in (F)_d.
SparseVec free_times_var(const GradedRing& r, FreeLayout& lay, VarActions& va,
                         const std::vector<int>& gens, std::size_t v, int d, const SparseVec& u) {
  int t = d + r.var_degree(v);
  const FreeDegree& src = lay.at(d);
  const FreeDegree& dst = lay.at(t);
  SparseVec out;
  std::size_t i = 0;
  while (i < u.size()) {
    std::size_t g = lay.owner(d, u[i].first);
    std::uint32_t end = g + 1 < gens.size() ? src.offset[g + 1] : src.size;
    SparseVec block;
    while (i < u.size() && u[i].first < end) {
      block.push_back({u[i].first - src.offset[g], u[i].second});
      ++i;
    }
    int rd = d - gens[g];
    if (r.dim(t - gens[g]) == 0) continue;
    for (auto [c, x] : linalg::apply(va.get(v, rd), block)) out.push_back({dst.offset[g] + c, x});
  }
  return out;
}

// One syzygy step: kernel of (F_n)_d -> T_d for d in [dlo, dhi], generators
// of that kernel modulo m * kernel.
struct StepResult {
  std::vector<int> degrees;
  std::vector<SparseVec> images;  // in (F_n)_{deg}
};

template <class Columns>
StepResult syzygy_step(const GradedRing& r, const std::vector<int>& gens, int dlo, int dhi,
                       int target_dim_fn(void*, int), void* target, Columns columns) {
  StepResult out;
  const auto& f = r.field();
  FreeLayout lay(r, gens);
  VarActions va(r);
  std::map<int, std::vector<SparseVec>> kernel;
  for (int d = dlo; d <= dhi; ++d) {
    std::uint32_t n = lay.at(d).size;
    if (n == 0) {
      kernel[d] = {};
      continue;
    }
    std::vector<SparseVec> cols = columns(d, lay);
    Matrix a = Matrix::from_columns(f, static_cast<std::size_t>(target_dim_fn(target, d)), n, cols);
    std::vector<SparseVec> k = linalg::kernel_vectors(a);
    if (!k.empty()) {
      RowReducer mk(f, n);
      for (std::size_t v = 0; v < r.nvars(); ++v) {
        int dp = d - r.var_degree(v);
        auto it = kernel.find(dp);
        if (it == kernel.end()) continue;
        for (const auto& u : it->second) mk.insert(free_times_var(r, lay, va, gens, v, dp, u));
      }
      if (mk.rank() < k.size())
        for (const auto& u : k)
          if (mk.insert(u)) {
            out.degrees.push_back(d);
            out.images.push_back(u);
          }
    }
    kernel[d] = std::move(k);
  }
  return out;
}

int module_dim(void* m, int d) { return static_cast<const DegreewiseModule*>(m)->dim(d); }

struct FreeTarget {
  const GradedRing* r;
  FreeLayout* lay;
};
int free_dim(void* t, int d) { return static_cast<int>(static_cast<FreeTarget*>(t)->lay->at(d).size); }

// Entries of the differential from a kernel vector in (F_{n-1})_d.
std::vector<FreeComplex::Entry> split_entries(const GradedRing& r, const std::vector<int>& gens,
                                              FreeLayout& lay, int d, const SparseVec& u) {
  std::vector<FreeComplex::Entry> out;
  (void)r;
  const FreeDegree& fd = lay.at(d);
  std::size_t i = 0;
  while (i < u.size()) {
    std::size_t g = lay.owner(d, u[i].first);
    std::uint32_t end = g + 1 < gens.size() ? fd.offset[g + 1] : fd.size;
    FreeComplex::Entry e{g, d - gens[g], {}};
    while (i < u.size() && u[i].first < end) {
      e.coords.push_back({u[i].first - fd.offset[g], u[i].second});
      ++i;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::mutex g_cache_mutex;
std::unordered_map<std::string, ResolutionPtr> g_cache;
ResolutionCacheStats g_stats;

ResolutionPtr compute_resolution(const DegreewiseModule& m, int top) {
  const RingPtr& ring = m.ring();
  const GradedRing& r = *ring;
  auto res = std::make_shared<Resolution>();
  res->top = top;
  FreeComplex& fc = res->complex;
  fc.ring = ring;
  fc.nlo = 0;
  fc.certainty = r.is_artinian() ? Certainty::Exact : Certainty::Guarded;
  bool artinian = r.is_artinian();
  int rtop = artinian ? *r.top_degree() : 0;

  // F_0: minimal generators of M.
  std::vector<int> g0;
  {
    int hi = m.hi();
    for (int d = m.lo(); d <= hi; ++d) {
      if (m.dim(d) == 0) continue;
      RowReducer mm = maximal_ideal_image(m, d);
      for (int c = 0; c < m.dim(d); ++c) {
        SparseVec e{{static_cast<std::uint32_t>(c), 1}};
        if (mm.insert(e)) {
          if (!m.bounded() && d > hi - kGuard)
            fail(ErrorKind::TruncationExceeded,
                 "module generator found at the top of the window (degree " + std::to_string(d) +
                     ")",
                 hi + 1);
          g0.push_back(d);
          res->augmentation.push_back(e);
        }
      }
    }
  }
  fc.gens.push_back(g0);
  fc.diffs.push_back(std::vector<std::vector<FreeComplex::Entry>>(g0.size()));
  if (g0.empty()) {
    fc.finite = true;
    return res;
  }

  for (int n = 0; n < top; ++n) {
    const std::vector<int>& gens = fc.gens[n];
    if (gens.empty()) {
      fc.finite = true;
      break;
    }
    int mind = *std::min_element(gens.begin(), gens.end());
    int maxd = *std::max_element(gens.begin(), gens.end());
    int dhi;
    if (artinian) {
      dhi = maxd + rtop;
    } else {
      dhi = r.truncation() + mind;
      if (n == 0) {
        if (!m.bounded()) dhi = std::min(dhi, m.hi());
      } else {
        const auto& prev = fc.gens[n - 1];
        dhi = std::min(dhi, r.truncation() + *std::min_element(prev.begin(), prev.end()));
      }
    }
    res->windows.push_back(dhi);
    StepResult step;
    if (n == 0) {
      // columns (g, b) -> M, built recursively b = x_v b'.
      std::map<int, std::vector<SparseVec>> cols_by_degree;
      auto columns = [&](int d, FreeLayout& lay) {
        std::vector<SparseVec> cols(lay.at(d).size);
        for (std::size_t g = 0; g < gens.size(); ++g) {
          int rd = d - gens[g];
          for (int i = 0; i < r.dim(rd); ++i) {
            SparseVec c;
            if (rd == 0) {
              c = res->augmentation[g];
            } else {
              const Exponents& b = r.basis_monomial(rd, i);
              std::size_t v = 0;
              while (b[v] == 0) ++v;
              Exponents bp = b;
              bp[v] -= 1;
              int dp = d - r.var_degree(v);
              std::uint32_t idx = r.monomial_nf(bp).at(0).first;
              const SparseVec& prev = cols_by_degree[dp][lay.at(dp).offset[g] + idx];
              c = linalg::apply(m.act(v, dp), prev);
            }
            cols[lay.at(d).offset[g] + i] = std::move(c);
          }
        }
        cols_by_degree[d] = cols;
        return cols;
      };
      step = syzygy_step(r, gens, mind, dhi, module_dim, const_cast<DegreewiseModule*>(&m),
                         columns);
    } else {
      const std::vector<int>& prev = fc.gens[n - 1];
      FreeLayout prev_lay(r, prev);
      FreeTarget target{&r, &prev_lay};
      const auto& entries = fc.diffs[n];
      auto columns = [&](int d, FreeLayout& lay) {
        std::vector<SparseVec> cols(lay.at(d).size);
        const FreeDegree& dst = prev_lay.at(d);
        for (std::size_t g = 0; g < gens.size(); ++g) {
          int rd = d - gens[g];
          for (int i = 0; i < r.dim(rd); ++i) {
            SparseVec unit{{static_cast<std::uint32_t>(i), 1}};
            SparseVec c;
            for (const auto& e : entries[g]) {
              SparseVec p = r.multiply(rd, unit, e.degree, e.coords);
              for (auto [k, x] : p) c.push_back({dst.offset[e.target] + k, x});
            }
            std::sort(c.begin(), c.end());
            cols[lay.at(d).offset[g] + i] = std::move(c);
          }
        }
        return cols;
      };
      step = syzygy_step(r, gens, mind, dhi, free_dim, &target, columns);
    }
    if (!artinian)
      for (int d : step.degrees)
        if (d > dhi - kGuard)
          fail(ErrorKind::TruncationExceeded,
               "syzygy generator of F_" + std::to_string(n + 1) + " found at the top of the window (degree " +
                   std::to_string(d) + ")",
               dhi + 1);
    FreeLayout lay(r, gens);
    std::vector<std::vector<FreeComplex::Entry>> col;
    for (std::size_t k = 0; k < step.degrees.size(); ++k)
      col.push_back(split_entries(r, gens, lay, step.degrees[k], step.images[k]));
    fc.gens.push_back(step.degrees);
    fc.diffs.push_back(std::move(col));
  }
  if (!fc.gens.empty() && fc.gens.back().empty()) fc.finite = true;
  return res;
}

std::string cache_key(const DegreewiseModule& m) { return m.ring()->canonical() + "|" + m.digest(); }

}  // namespace

TruncatedSeries Resolution::betti(int nmax) const {
  if (nmax > top && !complex.finite)
    fail(ErrorKind::ValidationError, "resolution was computed only through " + std::to_string(top));
  TruncatedSeries s;
  s.lo = 0;
  for (int n = 0; n <= nmax; ++n) {
    s.coeffs.push_back(static_cast<std::int64_t>(complex.rank(n)));
    s.certainty.push_back(complex.certainty);
  }
  return s;
}

FreeComplex Resolution::truncated(int nmax) const {
  FreeComplex f = complex;
  if (f.nhi() > nmax) {
    f.gens.resize(static_cast<std::size_t>(nmax + 1));
    f.diffs.resize(static_cast<std::size_t>(nmax + 1));
    f.finite = false;
    for (const auto& g : f.gens)
      if (g.empty()) f.finite = true;
  }
  return f;
}

ResolutionPtr minimal_resolution(const DegreewiseModule& m, int top) {
  if (!m.has_action()) fail(ErrorKind::ValidationError, "resolution needs a module over a ring");
  if (top < 0) fail(ErrorKind::ValidationError, "resolution length must be >= 0");
  std::string key = cache_key(m);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end() && (it->second->top >= top || it->second->complex.finite)) {
      ++g_stats.hits;
      return it->second;
    }
    ++g_stats.misses;
  }
  ResolutionPtr res = compute_resolution(m, top);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto& slot = g_cache[key];
  if (!slot || slot->top < res->top) slot = res;
  return res;
}

ResolutionPtr residue_resolution(const RingPtr& r, int top) {
  return minimal_resolution(DegreewiseModule::residue_field(r), top);
}

TruncatedSeries betti_numbers(const DegreewiseModule& m, int nmax) {
  return minimal_resolution(m, nmax)->betti(nmax);
}

TruncatedSeries bass_numbers(const DegreewiseModule& m, int nmax) {
  const RingPtr& r = m.ring();
  int need = nmax + 1;
  ResolutionPtr res = residue_resolution(r, need);
  FreeComplex f = res->truncated(need);
  HomPtr id = LocalHom::identity(r);
  EvaluatedComplex hom = base_change_hom(f, *id, EvaluatedComplex::from_module(m));
  HomologyTable h = homology(hom);
  TruncatedSeries s;
  s.lo = 0;
  for (int n = 0; n <= nmax; ++n) {
    int idx = -n;
    bool inside = idx >= h.nlo && idx <= h.nhi();
    if (inside && !h.valid[idx - h.nlo]) break;
    s.coeffs.push_back(inside ? h.totals[idx - h.nlo] : 0);
    s.certainty.push_back(inside ? h.certainty[idx - h.nlo] : hom.base_certainty());
  }
  return s;
}

HomDimension flat_dimension(const TruncatedSeries& betti) {
  // In a minimal resolution the first vanishing Betti number ends it.
  HomDimension out;
  for (int n = betti.lo; n <= betti.hi(); ++n) {
    out.certainty = weaker(out.certainty, betti.cert(n));
    if (betti[n] == 0) {
      out.value = n - 1;
      return out;
    }
  }
  if (betti.polynomial) {
    out.value = betti.hi();
    return out;
  }
  out.bound = betti.hi();
  return out;
}

HomDimension injective_dimension(const TruncatedSeries& bass) {
  HomDimension out;
  std::optional<int> last;
  for (int n = bass.lo; n <= bass.hi(); ++n) {
    out.certainty = weaker(out.certainty, bass.cert(n));
    if (bass[n]) last = n;
  }
  if (last && bass.hi() - *last >= 2) {
    out.value = *last;
    return out;
  }
  out.bound = last ? *last : bass.hi() + 1;
  return out;
}

ResolutionCacheStats resolution_cache_stats() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_stats;
}

void clear_resolution_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
  g_stats = {};
}

}  // namespace homolocal
