#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tamestrata/ffq.hpp"
#include "tamestrata/rational.hpp"

namespace ts {

// sigma(s) = u * s, sigma|k_L = x -> x^(q^frob_power), where
// u = u_{frob_power} * xi^{unif_twist}, xi the canonical primitive e_L-th root
// of unity and u_j the smallest-code solution of u^e_L = zeta / phi^j(zeta).
struct GaloisElement {
  int frob_power = 0;
  int unif_twist = 0;
  bool operator==(const GaloisElement& o) const {
    return frob_power == o.frob_power && unif_twist == o.unif_twist;
  }
};

struct TowerSpec {
  FieldPtr kL;           // residue field of L
  int base_degree = 1;   // [k_F : F_p]; f_L = kL->f() / base_degree
  int e_L = 1;
  std::uint32_t zeta = 1;  // s^e_L * zeta = t
  std::vector<std::vector<GaloisElement>> levels;  // H_0 <= ... <= H_d = Gal(L/F)
};

using Subgroup = std::vector<int>;  // sorted element indices

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Tower {
public:
  // Throws NotTame, RootOfUnityMissing, NotASubgroup, BadChain, BadDegree.
  static TowerPtr make(const TowerSpec& spec);

  const TowerSpec& spec() const { return spec_; }
  const FqField& k() const { return *spec_.kL; }
  const FieldPtr& field() const { return spec_.kL; }
  int p() const { return spec_.kL->p(); }
  int e_L() const { return spec_.e_L; }
  int f_L() const { return f_L_; }
  int base_degree() const { return spec_.base_degree; }
  long long q() const { return q_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }  // d
  int group_size() const { return static_cast<int>(elems_.size()); }

  const GaloisElement& element(int g) const { return elems_[g]; }
  int index_of(const GaloisElement& g) const;
  int identity() const { return 0; }
  int compose(int a, int b) const { return comp_[a * group_size() + b]; }  // a after b
  int inverse(int a) const { return inv_[a]; }
  std::uint32_t unit(int g) const { return units_[g]; }
  bool in_inertia(int g) const { return elems_[g].frob_power == 0; }
  // Image of the term c*s^k under g, as the new coefficient of s^k.
  std::uint32_t act(int g, std::uint32_t c, int k) const;

  const Subgroup& level_group(int i) const { return levels_[i]; }
  const Subgroup& full_group() const { return levels_.back(); }
  int level_e(int i) const { return lev_e_[i]; }
  int level_f(int i) const { return lev_f_[i]; }
  int level_degree(int i) const { return lev_e_[i] * lev_f_[i]; }
  // Residue field k_{E_i} has degree level_f(i)*base_degree over F_p.
  int level_residue_degree(int i) const { return lev_f_[i] * spec_.base_degree; }
  // Canonical uniformizer of E_i: unif_coeff(i) * s^unif_power(i).
  int unif_power(int i) const { return e_L() / lev_e_[i]; }
  std::uint32_t unif_coeff(int i) const { return lev_pi_[i]; }

  // Invariants of the fixed field of an arbitrary subgroup.
  int subgroup_e(const Subgroup& H) const;
  int subgroup_f(const Subgroup& H) const;
  bool is_subgroup(const Subgroup& H) const;
  bool term_fixed(const Subgroup& H, std::uint32_t c, int k) const;
  // One representative per left coset g*H inside G (H <= G).
  std::vector<int> coset_reps(const Subgroup& H, const Subgroup& G) const;
  // The subgroup generated by a list of elements.
  Subgroup generate(const std::vector<int>& gens) const;
  // Coefficient phi^j-twisted Teichmueller element in k_F check.
  bool in_base_residue(std::uint32_t c) const;

private:
  Tower() = default;
  TowerSpec spec_;
  int f_L_ = 1;
  long long q_ = 1;
  std::vector<GaloisElement> elems_;
  std::vector<std::uint32_t> units_;
  std::vector<int> comp_;
  std::vector<int> inv_;
  std::vector<Subgroup> levels_;
  std::vector<int> lev_e_, lev_f_;
  std::vector<std::uint32_t> lev_pi_;
};

TowerPtr tower_make(const TowerSpec& spec);
// Same pointer, or towers built from equivalent specs (e.g. after a JSON trip).
bool same_tower(const TowerPtr& a, const TowerPtr& b);

struct Term {
  int k = 0;               // power of s; exponent k / e_L in ord units
  std::uint32_t c = 0;     // nonzero code in k_L
  bool operator==(const Term& o) const { return k == o.k && c == o.c; }
};

// Truncated Laurent series in s with coefficients in k_L, known modulo s^prec.
// level = i asserts membership in E_i; -1 means only "in L".
struct TameSeries {
  TowerPtr tower;
  int level = 0;
  std::vector<Term> terms;  // strictly increasing k, all k < prec
  int prec = 0;             // in s-units

  bool is_zero() const { return terms.empty(); }
  int lead_k() const;       // ZeroToPrecision when zero
  Rational ord() const;     // ZeroToPrecision when zero
  Rational precision() const { return Rational(prec, tower->e_L()); }
  std::uint32_t coeff(int k) const;
};

// Precision in s-units: TAMESTRATA_PREC (ord units) if set, else
// max(8, 4 e_L + 2 |most negative ord|) converted to s-units.
int default_precision(const Tower& T, const Rational& most_negative_ord);

// Normalizes terms (drops zeros and terms beyond prec); checks membership in
// E_level termwise and throws NotInLevel otherwise.
TameSeries make_series(const TowerPtr& T, int level, std::vector<Term> terms, int prec);
TameSeries monomial(const TowerPtr& T, int level, std::uint32_t c, int k, int prec);
TameSeries zero_series(const TowerPtr& T, int level, int prec);
// The coarsest chain level whose group fixes every term, or -1.
int coarsest_level(const TameSeries& a);

enum class SeriesOp { Add, Sub, Mul, Neg, Inv };
TameSeries series_arith(SeriesOp op, const TameSeries& a, const TameSeries& b);
TameSeries add(const TameSeries& a, const TameSeries& b);
TameSeries sub(const TameSeries& a, const TameSeries& b);
TameSeries mul(const TameSeries& a, const TameSeries& b);
TameSeries neg(const TameSeries& a);
TameSeries inv(const TameSeries& a);
TameSeries truncate(const TameSeries& a, int prec);
bool equal_to_precision(const TameSeries& a, const TameSeries& b);

struct OrdNu {
  Rational ord;
  long long nu;
};
OrdNu ord_and_nu(const TameSeries& a, int level);

std::vector<int> galois_elements(const Tower& T, int fix_level);
TameSeries galois_apply(int g, const TameSeries& a);

struct StabilizerInfo {
  int degree = 1;
  int e = 1;
  int f = 1;
  Subgroup subgroup;
};
StabilizerInfo stabilizer_field(const TameSeries& a);
// Subgroup of elements fixing a termwise, without degree bookkeeping.
Subgroup stabilizer(const TameSeries& a);

struct CMonomial {
  std::uint32_t coeff = 1;
  int k = 0;  // power of s
  Rational exponent(const Tower& T) const { return Rational(k, T.e_L()); }
  bool operator==(const CMonomial& o) const { return coeff == o.coeff && k == o.k; }
};
CMonomial sr_standard_rep(const TameSeries& a);
TameSeries to_series(const TowerPtr& T, const CMonomial& m, int prec);

enum class TraceOrNorm { Trace, Norm };
TameSeries trace_norm(TraceOrNorm which, const TameSeries& a, int from_level, int to_level);

}  // namespace ts
