#include "tamestrata/minimal.hpp"

#include <algorithm>

namespace ts {

namespace {

void check_levels(const TameSeries& c, int upper, int lower) {
  const Tower& T = *c.tower;
  if (upper < 0 || lower > T.depth() || upper > lower)
    fail("NotInLevel", "need 0 <= upper <= lower <= d");
  if (c.is_zero()) fail("ZeroToPrecision", "element is zero to its precision");
  for (const auto& t : c.terms)
    if (!T.term_fixed(T.level_group(upper), t.c, t.k))
      fail("NotInLevel", "element is not in E_upper");
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

}  // namespace

TameSeries series_pow(const TameSeries& a, long long k) {
  if (k < 0) return series_pow(inv(a), -k);
  TameSeries r{a.tower, a.level, {{0, 1}}, a.prec - (a.terms.empty() ? 0 : a.terms.front().k) + 1};
  if (k == 0) return r;
  r = a;
  for (long long i = 1; i < k; ++i) r = mul(r, a);
  return r;
}

MinimalityReport is_minimal(const TameSeries& c, int upper, int lower) {
  check_levels(c, upper, lower);
  const Tower& T = *c.tower;
  const Subgroup& Hu = T.level_group(upper);
  const Subgroup& Hl = T.level_group(lower);
  MinimalityReport rep;
  rep.depth = -c.ord();

  // E = E_lower[c] = fixed field of Stab(c) inside H_lower.
  const Subgroup S = intersect(stabilizer(c), Hl);
  rep.cond_generates = (S == Hu);

  const int eE = T.subgroup_e(S);
  const int fE = T.subgroup_f(S);
  const int e_rel = eE / T.level_e(lower);
  const int f_rel = fE / T.level_f(lower);
  const Rational nu_r = c.ord() * static_cast<long long>(eE);
  const long long nu = nu_r.numerator();
  rep.cond_gcd = gcd_ll(nu, e_rel) == 1;

  // x = pi_lower^{-nu} c^{e_rel} is a unit of E; test its residue.
  const TameSeries pi = monomial(c.tower, lower, T.unif_coeff(lower), T.unif_power(lower), c.prec);
  const TameSeries x = mul(series_pow(pi, -nu), series_pow(c, e_rel));
  if (x.is_zero() || x.lead_k() != 0) {
    rep.cond_residue = false;
  } else {
    const std::uint32_t rho = x.terms.front().c;
    rep.cond_residue = T.k().orbit_size(rho, T.level_residue_degree(lower)) == f_rel;
  }

  const CMonomial m = sr_standard_rep(c);
  const TameSeries ms{c.tower, -1, {{m.k, m.coeff}}, c.prec};
  rep.via_sr = intersect(stabilizer(ms), Hl) == Hu;

  // Embeddings of E_upper over E_lower are the cosets of H_upper in H_lower.
  const auto reps = T.coset_reps(Hu, Hl);
  std::vector<TameSeries> conj;
  for (int g : reps) conj.push_back(galois_apply(g, c));
  rep.via_galois = true;
  for (size_t i = 0; i < conj.size() && rep.via_galois; ++i)
    for (size_t j = i + 1; j < conj.size(); ++j) {
      const TameSeries d = sub(conj[i], conj[j]);
      if (d.is_zero() || d.ord() != c.ord()) {
        rep.via_galois = false;
        break;
      }
    }
  return rep;
}

bool minimal_equiv_check(const TameSeries& c, int upper, int lower) {
  return is_minimal(c, upper, lower).consistent();
}

Ge1Report ge1_check(const TameSeries& c, int upper, int lower) {
  check_levels(c, upper, lower);
  const Tower& T = *c.tower;
  const Subgroup& Hu = T.level_group(upper);
  const Subgroup& Hl = T.level_group(lower);
  Ge1Report rep;
  rep.depth = -c.ord();
  const auto reps = T.coset_reps(Hu, T.full_group());
  std::vector<TameSeries> conj;
  for (int g : reps) conj.push_back(galois_apply(g, c));
  rep.passed = true;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      const int rel = T.compose(T.inverse(reps[i]), reps[j]);
      if (!std::binary_search(Hl.begin(), Hl.end(), rel)) continue;  // differ on E_lower
      Ge1Pair pr{reps[i], reps[j], std::nullopt};
      const TameSeries d = sub(conj[i], conj[j]);
      if (!d.is_zero()) pr.ord = d.ord();
      if (!pr.ord || *pr.ord != -rep.depth) rep.passed = false;
      rep.pairs.push_back(pr);
    }
  return rep;
}

}  // namespace ts
