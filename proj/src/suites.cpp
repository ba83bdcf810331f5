#include "tamestrata/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "tamestrata/fixtures.hpp"

namespace ts {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Generous precision for corpus elements (ord units); they are exact
// Laurent polynomials, so any precision is honest.
constexpr int kCorpusPrecOrd = 16;

struct CorpusTower {
  std::string name;
  TowerPtr tower;
  int m0;
  long long nmax;  // largest n admitted
  int per_pattern;
};

std::vector<CorpusTower> corpus_towers() {
  return {
      {"desk", desk_tower(), 1, 6, 3},
      {"desk-m2", desk_tower(), 2, 4, 1},
      {"p3e4f2", deep_tower(), 1, 6, 2},
      {"p3e2f2", standard_tower(3, 2, 2, ChainShape::UnramifiedMiddle), 1, 5, 2},
      {"p5e2f2-ram", standard_tower(5, 2, 2, ChainShape::RamifiedMiddle), 1, 5, 2},
      {"p5e4f1", tower_from_generators(5, 1, 4, {{}, {{0, 2}}}), 1, 6, 2},
      {"p3e2f1", standard_tower(3, 2, 1, ChainShape::Direct), 1, 5, 2},
  };
}

// Monomials a*s^k in E_lv, minimal over E_next (or any constant multiple of
// t^-j when lv is F), with nu_A in [-nmax, bound).
std::vector<TameSeries> candidates(const OrderDesc& A, int lv, int next, long long bound, long long nmax) {
  const Tower& T = *A.tower;
  const TowerPtr& TP = A.tower;
  const int prec = kCorpusPrecOrd * T.e_L();
  const int step = T.e_L() / A.e_A;  // s-power of one nu_A unit
  std::vector<TameSeries> out;
  for (long long nu = bound - 1; nu >= -nmax; --nu)
    for (std::uint32_t c = 1; c < T.k().order(); ++c) {
      const int k = static_cast<int>(nu * step);
      if (!T.term_fixed(T.level_group(lv), c, k)) continue;
      TameSeries x{TP, lv, {{k, c}}, prec};
      if (lv == T.depth()) {
        if (c < static_cast<std::uint32_t>(T.p())) out.push_back(x);  // prime-field constants suffice
        continue;
      }
      if (is_minimal(x, lv, next).minimal()) out.push_back(x);
    }
  return out;
}

void enumerate_patterns(int depth, std::vector<std::vector<int>>& out) {
  for (int mask = 1; mask < (1 << (depth + 1)); ++mask) {
    std::vector<int> p;
    for (int i = 0; i <= depth; ++i)
      if (mask & (1 << i)) p.push_back(i);
    out.push_back(p);
  }
}

}  // namespace

std::vector<CorpusDatum> build_corpus() {
  std::vector<CorpusDatum> out;
  for (const auto& ct : corpus_towers()) {
    const OrderDesc A = make_order(ct.tower, ct.m0);
    const int depth = ct.tower->depth();
    out.push_back({ct.name + "/level-zero", A, true, {}});
    std::vector<std::vector<int>> patterns;
    enumerate_patterns(depth, patterns);
    for (const auto& pat : patterns) {
      int found = 0;
      CList cur;
      std::function<void(size_t, long long)> dfs = [&](size_t i, long long bound) {
        if (found >= ct.per_pattern) return;
        if (i == pat.size()) {
          try {
            build_defining_sequence(A, cur);
          } catch (const Error&) {
            return;
          }
          std::string name = ct.name + "/";
          for (size_t j = 0; j < pat.size(); ++j) name += (j ? "-" : "") + std::to_string(pat[j]);
          name += "#" + std::to_string(found);
          out.push_back({name, A, false, cur});
          ++found;
          return;
        }
        const int next = i + 1 < pat.size() ? pat[i + 1] : depth;
        int tried = 0;
        for (const auto& c : candidates(A, pat[i], next, bound, ct.nmax)) {
          if (found >= ct.per_pattern || tried >= 3) break;
          ++tried;
          cur.push_back({pat[i], c});
          dfs(i + 1, nu_A(A, c));
          cur.pop_back();
        }
      };
      dfs(0, 0);
    }
  }
  return out;
}

BKDatumSkeleton datum_bk(const CorpusDatum& d) {
  if (d.level_zero) return make_bk_level_zero(d.order);
  return make_bk(build_defining_sequence(d.order, d.cs));
}

namespace {

struct Enumeration {
  TowerPtr tower;
  int upper, lower;
  TameSeries c;
};

// Every C-monomial a*s^k (a in k_L^x, k in [-6, -1]) lying in E_upper, over
// every pair upper < lower of each tower's chain.
std::vector<Enumeration> c_monomials() {
  std::vector<Enumeration> out;
  for (const auto& nt : minimality_towers()) {
    const Tower& T = *nt.tower;
    for (int up = 0; up <= T.depth(); ++up)
      for (int lo = up + 1; lo <= T.depth(); ++lo)
        for (int k = -6; k <= -1; ++k)
          for (std::uint32_t c = 1; c < T.k().order(); ++c) {
            if (!T.term_fixed(T.level_group(up), c, k)) continue;
            out.push_back({nt.tower, up, lo, TameSeries{nt.tower, up, {{k, c}}, 24 * T.e_L()}});
          }
  }
  return out;
}

std::vector<CorpusDatum> sequences_only(const std::vector<CorpusDatum>& corpus, int max_n) {
  std::vector<CorpusDatum> out;
  for (const auto& d : corpus)
    if (!d.level_zero && d.order.N <= max_n) out.push_back(d);
  return out;
}

MatrixModel model_for(const DefiningSeq& seq) {
  return model_build(seq.order, oracle_prec_for(seq.order, seq.n));
}

CriterionResult start(int id, const std::string& name) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  return r;
}

void note_failure(CriterionResult& r, const std::string& what) {
  ++r.failures;
  if (r.detail.size() < 400) r.detail += (r.detail.empty() ? "" : "; ") + what;
}

}  // namespace

CriterionResult criterion_minimality() {
  CriterionResult r = start(1, "minimality equivalence");
  const auto t0 = Clock::now();
  std::set<std::string> towers;
  for (const auto& e : c_monomials()) {
    ++r.cases;
    towers.insert(std::to_string(e.tower->p()) + "/" + std::to_string(e.tower->e_L()) + "/" +
                  std::to_string(e.tower->f_L()));
    const auto rep = is_minimal(e.c, e.upper, e.lower);
    if (!rep.consistent())
      note_failure(r, "k=" + std::to_string(e.c.terms[0].k) + " c=" + std::to_string(e.c.terms[0].c));
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0 && towers.size() >= 3 && r.seconds < kMinimalityTimeLimit;
  if (r.seconds >= kMinimalityTimeLimit) r.detail += " over time limit";
  return r;
}

CriterionResult criterion_generic() {
  CriterionResult r = start(2, "generic iff minimal");
  const auto t0 = Clock::now();
  for (const auto& e : c_monomials()) {
    ++r.cases;
    if (ge1_check(e.c, e.upper, e.lower).passed != is_minimal(e.c, e.upper, e.lower).minimal())
      note_failure(r, "k=" + std::to_string(e.c.terms[0].k) + " c=" + std::to_string(e.c.terms[0].c));
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0;
  return r;
}

CriterionResult criterion_valuation(OracleMode mode) {
  CriterionResult r = start(3, "valuation lemma");
  const auto t0 = Clock::now();
  std::mt19937 rng(20240611);
  struct Setting {
    OrderDesc A;
    std::optional<MatrixModel> model;
  };
  std::vector<Setting> settings;
  for (const auto& ct : corpus_towers()) {
    Setting s{make_order(ct.tower, ct.m0), std::nullopt};
    if (mode != OracleMode::Off && s.A.N <= 4) s.model = model_build(s.A, 12);
    settings.push_back(std::move(s));
  }
  for (int n = 0; n < kValuationSamples; ++n) {
    Setting& st = settings[rng() % settings.size()];
    const Tower& T = *st.A.tower;
    const int lv = static_cast<int>(rng() % (T.depth() + 1));
    // x = pi^k (a0 + a1 pi + a2 pi^2) with a_j in k_E, a0 != 0.
    std::vector<std::uint32_t> kE;
    for (std::uint32_t c = 1; c < T.k().order(); ++c)
      if (T.term_fixed(T.level_group(lv), c, 0)) kE.push_back(c);
    const int k = static_cast<int>(rng() % 9) - 4;
    const int prec = 40 * T.e_L();
    const TameSeries pi = monomial(st.A.tower, lv, T.unif_coeff(lv), T.unif_power(lv), prec);
    std::vector<Term> unit{{0, kE[rng() % kE.size()]}};
    for (int j = 1; j <= 2; ++j) {
      const std::uint32_t a = rng() % 3 ? kE[rng() % kE.size()] : 0;
      if (a) {
        const TameSeries pj = series_pow(pi, j);
        for (const auto& t : pj.terms) unit.push_back({t.k, T.k().mul(a, t.c)});
      }
    }
    const TameSeries u = make_series(st.A.tower, lv, unit, prec);
    const TameSeries x = mul(series_pow(pi, k), u);
    ++r.cases;
    const long long nuE = ord_and_nu(x, lv).nu;
    long long nuA = nu_A(st.A, x);
    if (st.model) {
      const long long via_matrix = st.model->valuation(st.model->matrix_of(x));
      if (via_matrix != nuA) note_failure(r, "matrix valuation differs");
      nuA = via_matrix;
    }
    if (nuA * T.level_e(lv) != static_cast<long long>(st.A.e_A) * nuE) note_failure(r, "lemma fails");
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0 && r.cases >= kValuationSamples;
  return r;
}

CriterionResult criterion_critical_exponent(const std::vector<CorpusDatum>& corpus, OracleMode mode) {
  CriterionResult r = start(4, "critical exponent");
  if (mode == OracleMode::Off) {
    r.skipped = true;
    r.detail = "oracle off";
    return r;
  }
  const auto t0 = Clock::now();
  for (const auto& d : sequences_only(corpus, 4)) {
    const DefiningSeq seq = build_defining_sequence(d.order, d.cs);
    const MatrixModel model = model_for(seq);
    for (int i = 0; i <= seq.s; ++i) {
      ++r.cases;
      const K0 a = k0_closed(d.order, seq.entries[i].beta);
      const K0 b = oracle_k0(model, seq.entries[i].beta);
      if (a != b) note_failure(r, d.name + " beta_" + std::to_string(i));
    }
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0 && r.seconds < kCriticalExponentTimeLimit;
  if (r.seconds >= kCriticalExponentTimeLimit) r.detail += " over time limit";
  return r;
}

CriterionResult criterion_filtrations(const std::vector<CorpusDatum>& corpus, OracleMode mode) {
  CriterionResult r = start(5, "filtration equalities");
  const auto t0 = Clock::now();
  for (const auto& d : sequences_only(corpus, 8)) {
    ++r.cases;
    const BKDatumSkeleton bk = datum_bk(d);
    const YuDatumSkeleton yu = bk_to_yu(bk);
    const FiltrationTable H = h_group_table(bk.seq);
    const FiltrationTable Y = yu_group_table(yu);
    if (!table_compare(H, "H1", Y, "K+") || !table_compare(H, "J0", Y, "K0"))
      note_failure(r, d.name + " closed form");
    if (mode == OracleMode::Off) continue;
    const MatrixModel model = model_for(bk.seq);
    if (!table_compare_oracle(model, bk.seq, H, "H1", Y, "K+") ||
        !table_compare_oracle(model, bk.seq, H, "J0", Y, "K0"))
      note_failure(r, d.name + " oracle");
    // The recursion itself must land on the tables.
    const HJLattices hj = oracle_hj(model, bk.seq);
    long long T = 1;
    for (const auto& f : H.get("J0")) T = std::max(T, f.m);
    for (const auto& f : H.get("H1")) T = std::max(T, f.m);
    const Lattice PT = model.radical_power(static_cast<int>(T));
    const Lattice h1 = model.sum(model.intersect(hj.h, model.radical_power(1)), PT);
    const Lattice j0 = model.sum(hj.j, PT);
    if (!model.same(h1, table_lattice(model, bk.seq, H.get("H1"), static_cast<int>(T))) ||
        !model.same(j0, table_lattice(model, bk.seq, H.get("J0"), static_cast<int>(T))) ||
        !model.contains(hj.j, hj.h))
      note_failure(r, d.name + " recursion");
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0;
  return r;
}

CriterionResult criterion_index(const std::vector<CorpusDatum>& corpus, OracleMode mode) {
  CriterionResult r = start(6, "index identity");
  if (mode == OracleMode::Off) {
    r.skipped = true;
    r.detail = "oracle off";
    return r;
  }
  const auto t0 = Clock::now();
  for (const auto& d : sequences_only(corpus, 4)) {
    ++r.cases;
    const BKDatumSkeleton bk = datum_bk(d);
    const YuDatumSkeleton yu = bk_to_yu(bk);
    const MatrixModel model = model_for(bk.seq);
    const Ledger led = ledger_indices(bk, yu, &model);
    if (!led.product_identity) note_failure(r, d.name + " product");
    if (!led.even_exponents) note_failure(r, d.name + " parity");
    if (!led.closed_matches_oracle) note_failure(r, d.name + " unit index");
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0;
  return r;
}

CriterionResult criterion_character_depth(const std::vector<CorpusDatum>& corpus, OracleMode mode) {
  CriterionResult r = start(7, "character depth");
  const auto t0 = Clock::now();
  for (const auto& d : sequences_only(corpus, 8)) {
    const DefiningSeq seq = build_defining_sequence(d.order, d.cs);
    std::optional<MatrixModel> model;
    if (mode != OracleMode::Off) model = model_for(seq);
    for (int i = 0; i <= seq.s; ++i) {
      ++r.cases;
      const TameSeries& c = seq.entries[i].c;
      const long long v = -nu_A(d.order, c);
      const long long above = char_module_valuation(d.order, c, v + 1);
      const long long at = char_module_valuation(d.order, c, v);
      if (above < 1 || at >= 1) note_failure(r, d.name + " c_" + std::to_string(i) + " closed form");
      if (!model) continue;
      const long long o_above = oracle_char_module_valuation(*model, seq, i, c, v + 1);
      const long long o_at = oracle_char_module_valuation(*model, seq, i, c, v);
      if (o_above != above || o_at != at) note_failure(r, d.name + " c_" + std::to_string(i) + " oracle");
    }
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0;
  return r;
}

CriterionResult criterion_round_trip(const std::vector<CorpusDatum>& corpus) {
  CriterionResult r = start(8, "translation round trips");
  const auto t0 = Clock::now();
  std::set<int> ds;
  std::set<std::string> cases;
  for (const auto& d : corpus) {
    ++r.cases;
    try {
      const BKDatumSkeleton bk = datum_bk(d);
      const YuDatumSkeleton yu = bk_to_yu(bk);
      const BKDatumSkeleton bk2 = yu_to_bk(yu);
      const YuDatumSkeleton yu2 = bk_to_yu(bk2);
      if (!same_skeleton(bk, bk2) || !same_skeleton(yu, yu2)) note_failure(r, d.name);
      ds.insert(yu.d());
      if (!bk.level_zero) cases.insert(to_string(bk.seq.kase));
    } catch (const Error& e) {
      note_failure(r, d.name + " " + e.what());
    }
  }
  const bool spans = cases.size() == 2 && ds.count(0) && ds.count(1) && ds.count(2) && ds.count(3);
  if (!spans) r.detail += " corpus does not span Cases A/B and d = 0..3";
  if (r.cases < kCorpusMinimum) r.detail += " corpus too small";
  r.seconds = since(t0);
  r.passed = r.failures == 0 && spans && r.cases >= kCorpusMinimum;
  return r;
}

CriterionResult criterion_ce() {
  CriterionResult r = start(9, "C_E well-definedness and sr morphism");
  const auto t0 = Clock::now();
  std::vector<TowerPtr> towers{desk_tower(), deep_tower()};
  for (const auto& nt : minimality_towers()) towers.push_back(nt.tower);
  for (const auto& TP : towers) {
    const Tower& T = *TP;
    const FqField& K = T.k();
    const int prec = 30 * T.e_L();
    for (int lv = 0; lv <= T.depth(); ++lv) {
      const Subgroup& H = T.level_group(lv);
      std::vector<std::uint32_t> kE;
      for (std::uint32_t c = 1; c < K.order(); ++c)
        if (T.term_fixed(H, c, 0)) kE.push_back(c);
      const int step = T.unif_power(lv);
      // Admissible uniformizers: a * s^step lying in E.
      std::vector<std::uint32_t> unifs;
      for (std::uint32_t a = 1; a < K.order(); ++a)
        if (T.term_fixed(H, a, step)) unifs.push_back(a);
      using Mono = std::pair<int, std::uint32_t>;
      auto generate = [&](std::uint32_t a) {
        std::set<Mono> out;
        for (int m = -6; m <= 6; ++m)
          for (std::uint32_t z : kE) out.insert({m * step, K.mul(z, K.pow(a, m))});
        return out;
      };
      const std::set<Mono> ref = generate(T.unif_coeff(lv));
      for (std::uint32_t a : unifs) {
        ++r.cases;
        const std::set<Mono> C = generate(a);
        if (C != ref) note_failure(r, "C_E depends on the uniformizer");
        const TameSeries piA{TP, lv, {{step, a}}, prec};
        const TameSeries tail{TP, lv, {{0, 1}, {step, a}}, prec};  // 1 + pi'
        for (const auto& [k, c] : C) {
          if (!T.term_fixed(H, c, k)) note_failure(r, "C_E not inside E");
          const TameSeries x{TP, lv, {{k, c}}, prec};
          const TameSeries xt = mul(x, tail);  // x (1 + pi'), same sr
          const CMonomial sx = sr_standard_rep(xt);
          if (!(sx == CMonomial{c, k})) note_failure(r, "sr(x(1+pi)) != x");
          const CMonomial sxy = sr_standard_rep(mul(xt, piA));
          const CMonomial spi = sr_standard_rep(piA);
          if (!(sxy == CMonomial{K.mul(sx.coeff, spi.coeff), sx.k + spi.k})) note_failure(r, "sr not multiplicative");
          const TameSeries inv_x = inv(xt);
          const CMonomial si = sr_standard_rep(inv_x);
          if (!(si == CMonomial{K.inv(c), -k})) note_failure(r, "sr(x^-1) != sr(x)^-1");
        }
      }
    }
  }
  r.seconds = since(t0);
  r.passed = r.failures == 0;
  return r;
}

std::vector<CriterionResult> run_suites(const std::string& which, OracleMode mode,
                                        const std::vector<CorpusDatum>& corpus) {
  std::vector<CriterionResult> out;
  auto want = [&](int id) { return which == "all" || which == std::to_string(id); };
  if (want(1)) out.push_back(criterion_minimality());
  if (want(2)) out.push_back(criterion_generic());
  if (want(3)) out.push_back(criterion_valuation(mode));
  if (want(4)) out.push_back(criterion_critical_exponent(corpus, mode));
  if (want(5)) out.push_back(criterion_filtrations(corpus, mode));
  if (want(6)) out.push_back(criterion_index(corpus, mode));
  if (want(7)) out.push_back(criterion_character_depth(corpus, mode));
  if (want(8)) out.push_back(criterion_round_trip(corpus));
  if (want(9)) out.push_back(criterion_ce());
  if (out.empty()) fail("BadInput", "unknown suite '" + which + "'");
  return out;
}

}  // namespace ts
