#include "tamestrata/tame.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace ts {

TowerPtr Tower::make(const TowerSpec& spec) {
  if (!spec.kL) fail("BadDegree", "tower without residue field");
  const FqField& K = *spec.kL;
  if (spec.base_degree < 1 || K.f() % spec.base_degree != 0)
    fail("BadDegree", "base residue degree must divide [k_L:F_p]");
  if (spec.e_L < 1) fail("NotTame", "e_L must be positive");
  if (spec.e_L % K.p() == 0) fail("NotTame", "p divides e_L");
  const long long Q = K.order();
  if ((Q - 1) % spec.e_L != 0)
    fail("RootOfUnityMissing", "e_L does not divide |k_L^x|");
  if (spec.zeta == 0 || spec.zeta >= Q) fail("RootOfUnityMissing", "zeta must be a nonzero element of k_L");

  std::shared_ptr<Tower> T(new Tower());
  T->spec_ = spec;
  T->f_L_ = K.f() / spec.base_degree;
  T->q_ = 1;
  for (int i = 0; i < spec.base_degree; ++i) T->q_ *= K.p();

  const int e = spec.e_L, fL = T->f_L_;
  const std::uint32_t xi = K.exp((Q - 1) / e);

  std::vector<std::uint32_t> uj(fL);
  for (int j = 0; j < fL; ++j) {
    const std::uint32_t target = K.mul(spec.zeta, K.inv(K.frob(spec.zeta, spec.base_degree, j)));
    std::uint32_t found = 0;
    for (std::uint32_t c = 1; c < Q; ++c)
      if (K.pow(c, e) == target) {
        found = c;
        break;
      }
    if (!found) fail("RootOfUnityMissing", "no uniformizer twist for a Frobenius power");
    uj[j] = found;
  }

  const int n = e * fL;
  T->elems_.resize(n);
  T->units_.resize(n);
  for (int j = 0; j < fL; ++j)
    for (int m = 0; m < e; ++m) {
      T->elems_[j * e + m] = {j, m};
      T->units_[j * e + m] = K.mul(uj[j], K.pow(xi, m));
    }

  const long long step = (Q - 1) / e;
  auto index_of_unit = [&](int j, std::uint32_t u) {
    const std::uint32_t ratio = K.mul(u, K.inv(uj[j]));
    const long long l = K.log(ratio);
    return j * e + static_cast<int>((l / step) % e);
  };
  T->comp_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ja = T->elems_[a].frob_power, jb = T->elems_[b].frob_power;
      const std::uint32_t u = K.mul(K.frob(T->units_[b], spec.base_degree, ja), T->units_[a]);
      T->comp_[a * n + b] = index_of_unit((ja + jb) % fL, u);
    }
  T->inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (T->comp_[a * n + b] == 0) T->inv_[a] = b;

  if (spec.levels.empty()) fail("BadChain", "tower needs at least the full group as a level");
  for (const auto& lvl : spec.levels) {
    Subgroup H;
    for (const auto& g : lvl) H.push_back(T->index_of(g));
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    if (!T->is_subgroup(H)) fail("NotASubgroup", "level is not closed under composition");
    T->levels_.push_back(H);
  }
  for (size_t i = 0; i + 1 < T->levels_.size(); ++i) {
    const auto& A = T->levels_[i];
    const auto& B = T->levels_[i + 1];
    if (!std::includes(B.begin(), B.end(), A.begin(), A.end()) || A.size() == B.size())
      fail("BadChain", "levels must increase strictly");
  }
  if (static_cast<int>(T->levels_.back().size()) != n)
    fail("BadChain", "last level must be the full Galois group");

  for (const auto& H : T->levels_) {
    T->lev_e_.push_back(T->subgroup_e(H));
    T->lev_f_.push_back(T->subgroup_f(H));
    const int k = e / T->lev_e_.back();
    std::uint32_t pi = 0;
    for (std::uint32_t c = 1; c < Q && !pi; ++c)
      if (T->term_fixed(H, c, k)) pi = c;
    if (!pi) fail("RootOfUnityMissing", "level has no monomial uniformizer");
    T->lev_pi_.push_back(pi);
  }
  return T;
}

TowerPtr tower_make(const TowerSpec& spec) { return Tower::make(spec); }

bool same_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!a->k().same_as(b->k()) || a->base_degree() != b->base_degree() || a->e_L() != b->e_L() ||
      a->spec().zeta != b->spec().zeta || a->depth() != b->depth())
    return false;
  for (int i = 0; i <= a->depth(); ++i)
    if (a->level_group(i) != b->level_group(i)) return false;
  return true;
}

int Tower::index_of(const GaloisElement& g) const {
  const int j = ((g.frob_power % f_L_) + f_L_) % f_L_;
  const int m = ((g.unif_twist % e_L()) + e_L()) % e_L();
  return j * e_L() + m;
}


std::uint32_t Tower::act(int g, std::uint32_t c, int k) const {
  const FqField& K = *spec_.kL;
  return K.mul(K.frob(c, spec_.base_degree, elems_[g].frob_power), K.pow(units_[g], k));
}

int Tower::subgroup_e(const Subgroup& H) const {
  int inert = 0;
  for (int g : H)
    if (in_inertia(g)) ++inert;
  return e_L() / inert;
}

int Tower::subgroup_f(const Subgroup& H) const {
  std::set<int> image;
  for (int g : H) image.insert(elems_[g].frob_power);
  return f_L_ / static_cast<int>(image.size());
}

bool Tower::is_subgroup(const Subgroup& H) const {
  if (H.empty() || !std::binary_search(H.begin(), H.end(), 0)) return false;
  for (int a : H)
    for (int b : H)
      if (!std::binary_search(H.begin(), H.end(), compose(a, b))) return false;
  return true;
}

bool Tower::term_fixed(const Subgroup& H, std::uint32_t c, int k) const {
  for (int g : H)
    if (act(g, c, k) != c) return false;
  return true;
}

std::vector<int> Tower::coset_reps(const Subgroup& H, const Subgroup& G) const {
  std::vector<char> seen(group_size(), 0);
  std::vector<int> reps;
  for (int g : G) {
    if (seen[g]) continue;
    reps.push_back(g);
    for (int h : H) seen[compose(g, h)] = 1;
  }
  return reps;
}

Subgroup Tower::generate(const std::vector<int>& gens) const {
  std::vector<char> in(group_size(), 0);
  std::vector<int> todo = {0};
  in[0] = 1;
  while (!todo.empty()) {
    const int a = todo.back();
    todo.pop_back();
    for (int g : gens) {
      const int b = compose(g, a);
      if (!in[b]) {
        in[b] = 1;
        todo.push_back(b);
      }
    }
  }
  Subgroup H;
  for (int g = 0; g < group_size(); ++g)
    if (in[g]) H.push_back(g);
  return H;
}

bool Tower::in_base_residue(std::uint32_t c) const {
  return spec_.kL->frob(c, spec_.base_degree, 1) == c;
}

// ---- series ----

int TameSeries::lead_k() const {
  if (terms.empty()) fail("ZeroToPrecision", "series is zero to its precision");
  return terms.front().k;
}

Rational TameSeries::ord() const { return Rational(lead_k(), tower->e_L()); }

std::uint32_t TameSeries::coeff(int k) const {
  for (const auto& t : terms)
    if (t.k == k) return t.c;
  return 0;
}

int default_precision(const Tower& T, const Rational& most_negative_ord) {
  if (const char* env = std::getenv("TAMESTRATA_PREC")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v) * T.e_L();
  }
  const long long neg = most_negative_ord < 0 ? ceil(-most_negative_ord) : 0;
  const long long p = std::max<long long>(8, 4LL * T.e_L() + 2 * neg);
  return static_cast<int>(p * T.e_L());
}

namespace {

void normalize(const Tower& T, std::vector<Term>& terms, int prec) {
  std::map<int, std::uint32_t> acc;
  for (const auto& t : terms) {
    if (t.k >= prec) continue;
    auto it = acc.find(t.k);
    if (it == acc.end())
      acc.emplace(t.k, t.c);
    else
      it->second = T.k().add(it->second, t.c);
  }
  terms.clear();
  for (const auto& [k, c] : acc)
    if (c != 0) terms.push_back({k, c});
}

bool fixed_by(const Tower& T, const Subgroup& H, const std::vector<Term>& terms) {
  for (const auto& t : terms)
    if (!T.term_fixed(H, t.c, t.k)) return false;
  return true;
}

void same_tower(const TameSeries& a, const TameSeries& b) {
  if (!same_tower(a.tower, b.tower)) fail("TowerMismatch", "operands belong to different towers");
}

int lead_or_prec(const TameSeries& a) { return a.terms.empty() ? a.prec : a.terms.front().k; }

}  // namespace

TameSeries make_series(const TowerPtr& T, int level, std::vector<Term> terms, int prec) {
  if (level < -1 || level > T->depth()) fail("NotInLevel", "level index out of range");
  normalize(*T, terms, prec);
  if (level >= 0 && !fixed_by(*T, T->level_group(level), terms))
    fail("NotInLevel", "series is not fixed by the level's group");
  return TameSeries{T, level, std::move(terms), prec};
}

TameSeries monomial(const TowerPtr& T, int level, std::uint32_t c, int k, int prec) {
  return make_series(T, level, {{k, c}}, prec);
}

TameSeries zero_series(const TowerPtr& T, int level, int prec) {
  return TameSeries{T, level, {}, prec};
}

int coarsest_level(const TameSeries& a) {
  const Tower& T = *a.tower;
  for (int i = T.depth(); i >= 0; --i)
    if (fixed_by(T, T.level_group(i), a.terms)) return i;
  return -1;
}

TameSeries add(const TameSeries& a, const TameSeries& b) {
  same_tower(a, b);
  std::vector<Term> t = a.terms;
  t.insert(t.end(), b.terms.begin(), b.terms.end());
  const int prec = std::min(a.prec, b.prec);
  normalize(*a.tower, t, prec);
  return TameSeries{a.tower, std::min(a.level, b.level), std::move(t), prec};
}

TameSeries neg(const TameSeries& a) {
  TameSeries r = a;
  for (auto& t : r.terms) t.c = a.tower->k().neg(t.c);
  return r;
}

TameSeries sub(const TameSeries& a, const TameSeries& b) { return add(a, neg(b)); }

TameSeries mul(const TameSeries& a, const TameSeries& b) {
  same_tower(a, b);
  const FqField& K = a.tower->k();
  const int prec = std::min(a.prec + lead_or_prec(b), b.prec + lead_or_prec(a));
  std::map<int, std::uint32_t> acc;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      const int k = x.k + y.k;
      if (k >= prec) break;
      auto& slot = acc[k];
      slot = K.add(slot, K.mul(x.c, y.c));
    }
  std::vector<Term> t;
  for (const auto& [k, c] : acc)
    if (c != 0) t.push_back({k, c});
  return TameSeries{a.tower, std::min(a.level, b.level), std::move(t), prec};
}

TameSeries inv(const TameSeries& a) {
  if (a.terms.empty()) fail("PrecisionExhausted", "cannot invert a series that is zero to precision");
  const FqField& K = a.tower->k();
  const int v = a.terms.front().k;
  const std::uint32_t cinv = K.inv(a.terms.front().c);
  const int rel = a.prec - v;
  // a = c s^v (1 + u); w = 1/(1+u) mod s^rel
  std::vector<std::uint32_t> u(rel, 0), w(rel, 0);
  for (const auto& t : a.terms)
    if (t.k - v < rel) u[t.k - v] = K.mul(t.c, cinv);
  if (rel > 0) w[0] = 1;
  for (int n = 1; n < rel; ++n) {
    std::uint32_t s = 0;
    for (int i = 1; i <= n; ++i)
      if (u[i] && w[n - i]) s = K.add(s, K.mul(u[i], w[n - i]));
    w[n] = K.neg(s);
  }
  std::vector<Term> t;
  for (int n = 0; n < rel; ++n)
    if (w[n]) t.push_back({n - v, K.mul(w[n], cinv)});
  return TameSeries{a.tower, a.level, std::move(t), a.prec - 2 * v};
}

TameSeries series_arith(SeriesOp op, const TameSeries& a, const TameSeries& b) {
  switch (op) {
    case SeriesOp::Add: return add(a, b);
    case SeriesOp::Sub: return sub(a, b);
    case SeriesOp::Mul: return mul(a, b);
    case SeriesOp::Neg: return neg(a);
    case SeriesOp::Inv: return inv(a);
  }
  return a;
}

TameSeries truncate(const TameSeries& a, int prec) {
  TameSeries r = a;
  r.prec = std::min(a.prec, prec);
  normalize(*a.tower, r.terms, r.prec);
  return r;
}

bool equal_to_precision(const TameSeries& a, const TameSeries& b) { return sub(a, b).is_zero(); }

OrdNu ord_and_nu(const TameSeries& a, int level) {
  const Tower& T = *a.tower;
  if (level < -1 || level > T.depth()) fail("NotInLevel", "level index out of range");
  if (level >= 0 && !fixed_by(T, T.level_group(level), a.terms)) fail("NotInLevel", "element is not in E_level");
  const Rational o = a.ord();
  const Rational nu = o * static_cast<long long>(level < 0 ? T.e_L() : T.level_e(level));
  if (nu.denominator() != 1) fail("NotInLevel", "valuation not integral at this level");
  return {o, nu.numerator()};
}

std::vector<int> galois_elements(const Tower& T, int fix_level) {
  if (fix_level < 0 || fix_level > T.depth()) fail("NotInLevel", "level index out of range");
  return T.level_group(fix_level);
}

TameSeries galois_apply(int g, const TameSeries& a) {
  const Tower& T = *a.tower;
  TameSeries r = a;
  for (auto& t : r.terms) t.c = T.act(g, t.c, t.k);
  r.level = coarsest_level(r);
  return r;
}

Subgroup stabilizer(const TameSeries& a) {
  const Tower& T = *a.tower;
  Subgroup S;
  for (int g = 0; g < T.group_size(); ++g) {
    bool fixed = true;
    for (const auto& t : a.terms)
      if (T.act(g, t.c, t.k) != t.c) {
        fixed = false;
        break;
      }
    if (fixed) S.push_back(g);
  }
  return S;
}

StabilizerInfo stabilizer_field(const TameSeries& a) {
  const Tower& T = *a.tower;
  StabilizerInfo info;
  info.subgroup = stabilizer(a);
  info.degree = T.group_size() / static_cast<int>(info.subgroup.size());
  info.e = T.subgroup_e(info.subgroup);
  info.f = info.degree / info.e;
  return info;
}

CMonomial sr_standard_rep(const TameSeries& a) {
  if (a.terms.empty()) fail("ZeroToPrecision", "series is zero to its precision");
  return {a.terms.front().c, a.terms.front().k};
}

TameSeries to_series(const TowerPtr& T, const CMonomial& m, int prec) {
  TameSeries r{T, 0, {{m.k, m.coeff}}, prec};
  r.level = coarsest_level(r);
  return r;
}

TameSeries trace_norm(TraceOrNorm which, const TameSeries& a, int from_level, int to_level) {
  const Tower& T = *a.tower;
  if (from_level < 0 || to_level > T.depth() || from_level > to_level)
    fail("NotInLevel", "need 0 <= from <= to <= d");
  if (!fixed_by(T, T.level_group(from_level), a.terms)) fail("NotInLevel", "element is not in E_from");
  const auto reps = T.coset_reps(T.level_group(from_level), T.level_group(to_level));
  TameSeries acc;
  bool first = true;
  for (int g : reps) {
    TameSeries c = galois_apply(g, a);
    if (first) {
      acc = c;
      first = false;
    } else {
      acc = which == TraceOrNorm::Trace ? add(acc, c) : mul(acc, c);
    }
  }
  if (!fixed_by(T, T.level_group(to_level), acc.terms))
    fail("NotInLevel", "trace/norm escaped the target level");
  acc.level = to_level;
  return acc;
}

}  // namespace ts
