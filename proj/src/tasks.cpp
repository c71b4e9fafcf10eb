#include <functional>
#include <map>

#include "homolocal/error.hpp"
#include "homolocal/koszul.hpp"
#include "homolocal/report.hpp"

namespace homolocal {

namespace {

class Args {
 public:
  Args(const Environment& env, const TaskDef& t) : env_(env), t_(t) {}

  int integer(const std::string& key, int fallback) const {
    const Value* v = t_.param(key);
    if (!v) return fallback;
    if (v->type != Value::Type::Int) invalid(key + " must be an integer");
    return static_cast<int>(v->i);
  }
  int nmax() const { return integer("nmax", env_.defaults.nmax); }
  int window() const { return integer("window", env_.defaults.window); }

  std::string ident(const std::string& key, const std::string& fallback) const {
    const Value* v = t_.param(key);
    if (!v) return fallback;
    if (v->type != Value::Type::Ident) invalid(key + " must be a name");
    return v->s;
  }
  bool has(const std::string& key) const { return t_.param(key) != nullptr; }

  const RingPtr& ring() const {
    if (has("ring")) return env_.rings.at(ident("ring", ""));
    if (has("module")) return module().ring();
    if (has("hom")) return hom()->source();
    invalid("task needs ring=");
  }
  const DegreewiseModule& module() const {
    if (!has("module")) invalid("task needs module=");
    return env_.modules.at(ident("module", ""));
  }
  const HomPtr& hom() const {
    if (!has("hom")) invalid("task needs hom=");
    return env_.homs.at(ident("hom", ""));
  }
  // complex=C, or the module as a complex in degree 0.
  EvaluatedComplex complex() const {
    if (has("complex")) return env_.complexes.at(ident("complex", ""));
    return EvaluatedComplex::from_module(module());
  }
  bool uses_complex() const { return has("complex"); }

  std::vector<RingElement> elements(const std::string& key, const GradedRing& r) const {
    std::vector<RingElement> out;
    const Value* v = t_.param(key);
    if (!v) return out;
    if (v->type != Value::Type::List) invalid(key + " must be a list of strings");
    for (const auto& e : v->list) {
      if (e.type != Value::Type::String) invalid(key + " must be a list of strings");
      out.push_back(r.parse(e.s));
    }
    return out;
  }

  TorPath path() const {
    std::string p = ident("path", "auto");
    if (p == "auto") return TorPath::Auto;
    if (p == "generic") return TorPath::Generic;
    if (p == "kunneth") return TorPath::Kunneth;
    invalid("path must be auto, generic or kunneth");
  }

  [[noreturn]] void invalid(const std::string& msg) const {
    fail(ErrorKind::ValidationError, "task " + t_.name + ": " + msg);
  }

 private:
  const Environment& env_;
  const TaskDef& t_;
};

void put(TaskResult& r, const std::string& k, Scalar v) { r.values.emplace_back(k, std::move(v)); }

void put_dimension(TaskResult& r, const std::string& k, const HomDimension& d) {
  if (d.finite()) put(r, k, std::int64_t{*d.value});
  else put(r, k + "_at_least", std::int64_t{d.bound});
}

void put_growth(TaskResult& r, const std::string& prefix, const GrowthEstimate& g) {
  if (g.complexity) put(r, prefix + "complexity", std::int64_t{*g.complexity});
  else put(r, prefix + "complexity", std::string("above cap"));
  put(r, prefix + "curvature", g.curvature);
  put(r, prefix + "window_from", std::int64_t{g.from});
  put(r, prefix + "window_to", std::int64_t{g.to});
}

void put_separation(TaskResult& r, const SeparationResult& s) {
  put(r, "verdict", to_string(s.verdict));
  put(r, "checked_hi", std::int64_t{s.checked_hi});
  if (s.violated_at) put(r, "violated_at", std::int64_t{*s.violated_at});
  if (s.undetermined_at) put(r, "undetermined_at", std::int64_t{*s.undetermined_at});
  r.series.emplace_back("lhs", s.lhs);
  r.series.emplace_back("ceiling", s.ceiling);
}

void put_extremality(TaskResult& r, const ExtremalityResult& e) {
  put(r, "verdict", to_string(e.verdict));
  put_growth(r, "phi_", e.over_phi);
  put_growth(r, "residue_", e.residue);
}

// Verdict for a criterion that could not run to completion.
CriterionVerdict from_error(const std::string& name, const Error& e) {
  CriterionVerdict v;
  v.name = name;
  v.verdict = Verdict::Undetermined;
  v.limiting = e.kind() == ErrorKind::WindowTooSmall ? "nmax" : "D";
  v.detail = std::string(to_string(e.kind())) + ": " + e.what();
  return v;
}

CriterionVerdict guarded(const std::string& name, const std::function<CriterionVerdict()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotCI) {
      CriterionVerdict v;
      v.name = name;
      v.verdict = Verdict::Fail;
      v.detail = std::string("NotCI: ") + e.what();
      return v;
    }
    return from_error(name, e);
  }
}

std::vector<CriterionVerdict> check_suite(const RingPtr& r, int i, int nmax) {
  auto phi = LocalHom::frobenius(r, i);
  auto ring_module = DegreewiseModule::free_rank_one(r);
  return {
      guarded("kunz_regularity", [&] { return kunz_regularity_test(r, i, nmax); }),
      guarded("ci_curvature", [&] { return ci_curvature_test(r, i, nmax); }),
      guarded("frobenius_ci_closed_form", [&] { return frobenius_ci_closed_form(r, ring_module, i, nmax); }),
      guarded("socle_extremality", [&] { return socle_extremality(*phi, ring_module, {}); }),
      guarded("bass_equality", [&] { return bass_equality_check(*phi, ring_module, nmax); }),
      guarded("ab_depth", [&] { return ab_depth_check(*phi, ring_module, nmax); }),
      guarded("peskine_szpiro", [&] { return peskine_szpiro_check(*phi, nmax); }),
  };
}

struct Kind {
  std::string explanation;
  bool criterion = false;
  std::function<void(const Args&, TaskResult&)> run;
};

const std::vector<std::pair<std::string, Kind>>& registry() {
  static const std::vector<std::pair<std::string, Kind>> kinds = {
      {"hilbert",
       {"h_R(d) = dim_k R_d for d up to the truncation (ring=).", false,
        [](const Args& a, TaskResult& r) {
          const auto& ring = a.ring();
          int hi = a.integer("upto", ring->truncation());
          std::vector<std::int64_t> h;
          for (int d = 0; d <= hi; ++d) h.push_back(ring->hilbert(d));
          r.series.emplace_back("hilbert", TruncatedSeries(0, h, ring->is_artinian() && hi >= *ring->top_degree()));
        }}},
      {"loewy",
       {"Loewy length: least l with m^l = 0, or a lower bound past the truncation (ring=).", false,
        [](const Args& a, TaskResult& r) {
          auto l = a.ring()->loewy_length();
          put(r, l.certified ? "loewy_length" : "loewy_length_at_least", std::int64_t{l.value});
        }}},
      {"socle",
       {"Soc M = {a in M : m a = 0}, dimension per degree (module=).", false,
        [](const Args& a, TaskResult& r) {
          auto s = socle_basis(a.module());
          std::vector<std::int64_t> dims;
          for (const auto& b : s.per_degree) dims.push_back(static_cast<std::int64_t>(b.size()));
          r.series.emplace_back("socle", TruncatedSeries(s.lo, dims, s.certified,
                                                         s.certified ? Certainty::Exact : Certainty::Partial));
          put(r, "certified", std::int64_t{s.certified});
        }}},
      {"betti",
       {"beta_n = rank_k Tor_n^R(k, M) from a minimal graded free resolution (module=, nmax=).", false,
        [](const Args& a, TaskResult& r) { r.series.emplace_back("betti", betti_numbers(a.module(), a.nmax())); }}},
      {"bass",
       {"mu^n = rank_k Ext^n_R(k, M) from Hom of the resolution of k into M (module=, nmax=).", false,
        [](const Args& a, TaskResult& r) { r.series.emplace_back("bass", bass_numbers(a.module(), a.nmax())); }}},
      {"fd_id",
       {"fd and id over R: last nonzero Betti and Bass indices when certified (module=, nmax=).", false,
        [](const Args& a, TaskResult& r) {
          auto b = betti_numbers(a.module(), a.nmax());
          auto m = bass_numbers(a.module(), a.nmax());
          r.series.emplace_back("betti", b);
          r.series.emplace_back("bass", m);
          put_dimension(r, "fd", flat_dimension(b));
          put_dimension(r, "id", injective_dimension(m));
        }}},
      {"koszul_polynomial",
       {"K_N(t) = sum_i rank_k H_i(K[n; N]) t^i on the variables of the ring (module= or complex=).", false,
        [](const Args& a, TaskResult& r) {
          r.series.emplace_back("koszul", a.uses_complex() ? koszul_polynomial(a.complex())
                                                           : koszul_polynomial(a.module()));
        }}},
      {"depth_type",
       {"depth = edim - deg K_N(t) and type = leading coefficient of K_N(t) (module=).", false,
        [](const Args& a, TaskResult& r) {
          auto dt = depth_and_type(a.module());
          put(r, "depth", std::int64_t{dt.depth});
          put(r, "type", dt.type);
          put(r, "certainty", to_string(dt.certainty));
        }}},
      {"spread",
       {"spread = 1 + top internal degree of Koszul homology of the associated graded module (module=).",
        false, [](const Args& a, TaskResult& r) { put(r, "spread", std::int64_t{spread(a.module())}); }}},
      {"homology",
       {"Total homology ranks per homological degree (complex=).", false,
        [](const Args& a, TaskResult& r) {
          auto h = homology(a.complex());
          r.series.emplace_back("homology", h.series(h.nlo, h.nhi()));
        }}},
      {"edim_phi",
       {"edim phi = minimal number of generators of n modulo mS + n^2 (hom=).", false,
        [](const Args& a, TaskResult& r) {
          const auto& h = a.hom();
          auto gens = minimal_gens_mod(*h);
          put(r, "edim_phi", static_cast<std::int64_t>(gens.size()));
          std::string names;
          for (const auto& g : gens) names += (names.empty() ? "" : ",") + h->target()->format(g);
          put(r, "generators", names);
        }}},
      {"contracting",
       {"phi^{edim R}(m) contained in m^2, for endomorphisms (hom=).", false,
        [](const Args& a, TaskResult& r) { put(r, "contracting", std::int64_t{is_contracting(a.hom())}); }}},
      {"betti_over",
       {"beta^phi_n = rank_k Tor_n^R(k, K[x; N]) with x minimal generators of n modulo mS "
        "(hom=, module= or complex=, nmax=, path=auto|generic|kunneth).",
        false,
        [](const Args& a, TaskResult& r) {
          r.series.emplace_back("betti_phi", betti_over(*a.hom(), a.complex(), a.nmax(), a.path()));
        }}},
      {"bass_over",
       {"mu_phi^n = rank_k Ext^{n - edim phi}_R(k, K[x; N]) (hom=, module= or complex=, nmax=).", false,
        [](const Args& a, TaskResult& r) {
          r.series.emplace_back("bass_phi", bass_over(*a.hom(), a.complex(), a.nmax(), a.path()));
        }}},
      {"pd_id_over",
       {"pd_phi and id_phi: last nonzero index of the series over phi minus edim phi (hom=, module=, nmax=).",
        false,
        [](const Args& a, TaskResult& r) {
          auto d = pd_id_over(*a.hom(), a.module(), a.nmax());
          put_dimension(r, "pd_phi", d.pd);
          put_dimension(r, "id_phi", d.id);
        }}},
      {"separated",
       {"Compares (1+t)^{edim S - edim phi} P^phi_N(t) with the ceiling P^R_k(t) K^S_N(t) "
        "(hom=, module= or complex=, nmax=).",
        false, [](const Args& a, TaskResult& r) { put_separation(r, is_separated(*a.hom(), a.complex(), a.nmax())); }}},
      {"injectively_separated",
       {"Compares (1+t)^{edim S - edim phi} I_phi^N(t) with P^R_k(t) t^{edim S} K^S_N(1/t) "
        "(hom=, module= or complex=, nmax=).",
        false,
        [](const Args& a, TaskResult& r) {
          put_separation(r, is_injectively_separated(*a.hom(), a.complex(), a.nmax()));
        }}},
      {"growth",
       {"Heuristic complexity (least d with beta_{n+1} n^{d-1} <= beta_n (n+1)^{d-1} on the tail) and "
        "curvature (1 under polynomial growth, else the geometric tail ratio) of the Betti or Bass "
        "series over phi (hom=, module=, nmax=, series=betti|bass, window=).",
        false,
        [](const Args& a, TaskResult& r) {
          bool bass = a.ident("series", "betti") == "bass";
          auto s = bass ? bass_over(*a.hom(), a.complex(), a.nmax()) : betti_over(*a.hom(), a.complex(), a.nmax());
          r.series.emplace_back(bass ? "bass_phi" : "betti_phi", s);
          put_growth(r, "", estimate_growth(s, a.window()));
        }}},
      {"extremal",
       {"Complexity and curvature of N over phi against those of k over R (hom=, module=, nmax=).", false,
        [](const Args& a, TaskResult& r) { put_extremality(r, is_extremal(*a.hom(), a.module(), a.nmax())); }}},
      {"injectively_extremal",
       {"Injective complexity and curvature of N over phi against those of k over R (hom=, module=, nmax=).",
        false,
        [](const Args& a, TaskResult& r) {
          put_extremality(r, is_injectively_extremal(*a.hom(), a.module(), a.nmax()));
        }}},
      {"kunz",
       {"Regularity test: Betti numbers of R over the i-th Frobenius vanish past edim R (ring=, i=, nmax=).",
        true,
        [](const Args& a, TaskResult& r) {
          r.verdicts.push_back(kunz_regularity_test(a.ring(), a.integer("i", 1), a.nmax()));
        }}},
      {"ci_curvature",
       {"Complete intersection test: curvature of R over the i-th Frobenius at most 1 (ring=, i=, nmax=).",
        true,
        [](const Args& a, TaskResult& r) {
          r.verdicts.push_back(ci_curvature_test(a.ring(), a.integer("i", 1), a.nmax()));
        }}},
      {"frobenius_ci",
       {"For R = Q/(f_1..f_c) with f regular: P^phi_N = K_N(t)(1+t)^d/(1-t)^c and "
        "I_phi^N = t^{edim R} K_N(1/t)(1+t)^d/(1-t)^c (ring=, module=, i=, nmax=).",
        true,
        [](const Args& a, TaskResult& r) {
          const auto& ring = a.ring();
          auto n = a.has("module") ? a.module() : DegreewiseModule::free_rank_one(ring);
          r.verdicts.push_back(frobenius_ci_closed_form(ring, n, a.integer("i", 1), a.nmax()));
        }}},
      {"socle_extremality",
       {"Extremality from socles of L/vL for an L-regular set v: Soc_S not in mL, or Soc_R not in mL "
        "with S/mS artinian (hom=, module=, elements=).",
        true,
        [](const Args& a, TaskResult& r) {
          const auto& h = a.hom();
          r.verdicts.push_back(socle_extremality(*h, a.module(), a.elements("elements", *h->target())));
        }}},
      {"bass_equality",
       {"Finite id_R L forces id_R L = depth R = dim R (hom=, module=, nmax=).", true,
        [](const Args& a, TaskResult& r) {
          r.verdicts.push_back(bass_equality_check(*a.hom(), a.module(), a.nmax()));
        }}},
      {"ab_depth",
       {"Finite pd_phi N forces depth_S N = depth R - pd_phi N (hom=, module=, nmax=).", true,
        [](const Args& a, TaskResult& r) { r.verdicts.push_back(ab_depth_check(*a.hom(), a.module(), a.nmax())); }}},
      {"peskine_szpiro",
       {"Finite id_R S forces finite fd_R S and R Gorenstein (hom=, nmax=).", true,
        [](const Args& a, TaskResult& r) { r.verdicts.push_back(peskine_szpiro_check(*a.hom(), a.nmax())); }}},
      {"check-suite",
       {"Every ring criterion for the i-th Frobenius of R, one verdict each (ring=, i=, nmax=).", true,
        [](const Args& a, TaskResult& r) { r.verdicts = check_suite(a.ring(), a.integer("i", 1), a.nmax()); }}},
  };
  return kinds;
}

const Kind* find_kind(const std::string& name) {
  for (const auto& [k, v] : registry())
    if (k == name) return &v;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

bool is_criterion_kind(const std::string& kind) {
  const Kind* k = find_kind(kind);
  return k && k->criterion;
}

std::optional<std::string> explain_task(const std::string& kind) {
  const Kind* k = find_kind(kind);
  if (!k) return std::nullopt;
  return k->explanation;
}

TaskResult run_task(const Environment& env, const TaskDef& task) {
  TaskResult r;
  r.name = task.name;
  r.kind = task.kind;
  try {
    const Kind* k = find_kind(task.kind);
    if (!k) fail(ErrorKind::ValidationError, "unknown task kind '" + task.kind + "'");
    k->run(Args(env, task), r);
  } catch (const Error& e) {
    r.series.clear();
    r.values.clear();
    r.verdicts.clear();
    r.error = TaskError{std::string(to_string(e.kind())), e.what(), e.degree()};
  } catch (const std::exception& e) {
    r.series.clear();
    r.values.clear();
    r.verdicts.clear();
    r.error = TaskError{"InternalError", e.what(), std::nullopt};
  }
  return r;
}

}  // namespace homolocal
