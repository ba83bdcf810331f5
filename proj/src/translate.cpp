#include "tamestrata/translate.hpp"

#include <algorithm>

namespace ts {

namespace {

// Chain level of sequence position i; positions past s are F.
int chain_level(const DefiningSeq& seq, int i) {
  return i <= seq.s ? seq.entries[i].level : seq.order.tower->depth();
}

long long mp_exponent(const OrderDesc& A, const Rational& x, bool plus) {
  const Rational v = x * static_cast<long long>(A.e_A);
  return plus ? floor(v) + 1 : ceil(v);
}

std::string mp_label(const Rational& x, bool plus) { return to_string(x) + (plus ? "+" : ""); }

Rational depth_of(const OrderDesc& A, const TameSeries& c) {
  return Rational(-nu_A(A, c), A.e_A);
}

std::vector<Factor> prefix(const std::vector<Factor>& fs, int i, bool upto) {
  std::vector<Factor> out;
  for (const auto& f : fs)
    if ((f.level <= i) == upto) out.push_back(f);
  return out;
}

CharFactor char_factor_of(const DefiningSeq& seq, const FiltrationTable& H, int i) {
  if (i < 0 || i > seq.s) fail("BadLevel", "no character factor at position " + std::to_string(i));
  CharFactor cf;
  cf.level = i;
  cf.c = seq.entries[i].c;
  cf.depth = depth_of(seq.order, cf.c);
  const auto& h1 = H.get("H1");
  cf.det_domain = prefix(h1, i, true);
  cf.psi_domain = prefix(h1, i, false);
  return cf;
}

bool same_series(const TameSeries& a, const TameSeries& b) {
  return same_tower(a.tower, b.tower) && equal_to_precision(a, b);
}

bool same_order(const OrderDesc& a, const OrderDesc& b) {
  return same_tower(a.tower, b.tower) && a.N == b.N && a.m == b.m;
}

}  // namespace

const std::vector<Factor>& FiltrationTable::get(const std::string& name) const {
  const auto it = groups.find(name);
  if (it == groups.end()) fail("BadLevel", "no group named " + name);
  return it->second;
}

BKDatumSkeleton make_bk(const DefiningSeq& seq) {
  BKDatumSkeleton bk;
  bk.order = seq.order;
  bk.seq = seq;
  const FiltrationTable H = h_group_table(seq);
  for (int i = 0; i <= seq.s; ++i) bk.theta_factors.push_back(char_factor_of(seq, H, i));
  return bk;
}

BKDatumSkeleton make_bk_level_zero(const OrderDesc& A) {
  BKDatumSkeleton bk;
  bk.order = A;
  bk.level_zero = true;
  bk.seq.order = A;
  bk.seq.s = -1;
  return bk;
}

YuDatumSkeleton bk_to_yu(const BKDatumSkeleton& bk) {
  const OrderDesc& A = bk.order;
  const Tower& T = *A.tower;
  YuDatumSkeleton yu;
  yu.tower = A.tower;
  yu.point = A;
  if (bk.level_zero) {
    yu.dims = {A.N};
    yu.depths = {Rational(0)};
    yu.characters = {{T.depth(), std::nullopt, Rational(0)}};
    yu.kase = Case::A;
    return yu;
  }
  const DefiningSeq& seq = bk.seq;
  if (!verify_defining_sequence(seq).passed()) fail("VerificationFailed", "sequence does not verify");
  if (static_cast<int>(bk.theta_factors.size()) != seq.s + 1)
    fail("VerificationFailed", "one character factor per summand expected");
  for (int i = 0; i <= seq.s; ++i) {
    const auto& cf = bk.theta_factors[i];
    if (cf.level != i || !same_series(cf.c, seq.entries[i].c))
      fail("VerificationFailed", "factor " + std::to_string(i) + " does not match the sequence");
  }
  yu.kase = seq.kase;
  for (int i = 0; i <= seq.s; ++i) {
    const int lv = seq.entries[i].level;
    const Rational r = depth_of(A, seq.entries[i].c);
    yu.dims.push_back(A.m[lv]);
    yu.depths.push_back(r);
    yu.characters.push_back({lv, seq.entries[i].c, r});
  }
  if (seq.kase == Case::B) {
    yu.dims.push_back(A.N);
    yu.depths.push_back(yu.depths.back());
    yu.characters.push_back({T.depth(), std::nullopt, yu.depths.back()});
  }
  return yu;
}

BKDatumSkeleton yu_to_bk(const YuDatumSkeleton& yu) {
  const OrderDesc& A = yu.point;
  const Tower& T = *A.tower;
  const int d = yu.d();
  if (d < 0 || static_cast<int>(yu.depths.size()) != d + 1 || static_cast<int>(yu.characters.size()) != d + 1)
    fail("VerificationFailed", "dims, depths and characters must have equal length");
  if (!same_tower(yu.tower, A.tower)) fail("VerificationFailed", "point is over a different tower");
  for (int i = 0; i < d; ++i) {
    if (yu.depths[i] <= (i == 0 ? Rational(0) : yu.depths[i - 1]))
      fail("DepthMismatch", "depths must satisfy 0 < r_0 < ... < r_{d-1}");
  }
  if (d > 0 && yu.depths[d] < yu.depths[d - 1]) fail("DepthMismatch", "r_d < r_{d-1}");
  if (yu.depths[d] < 0) fail("DepthMismatch", "negative depth");
  for (int i = 0; i <= d; ++i) {
    const int lv = yu.characters[i].level;
    if (lv < 0 || lv > T.depth() || (i > 0 && lv <= yu.characters[i - 1].level))
      fail("VerificationFailed", "character levels must strictly increase along the chain");
    if (yu.dims[i] != A.m[lv]) fail("VerificationFailed", "dim m_" + std::to_string(i) + " != N/[E_i:F]");
  }
  if (yu.characters[d].level != T.depth()) fail("VerificationFailed", "G^d must be GL_N over F");

  const bool phi_d = yu.characters[d].c.has_value();
  if (d == 0 && !phi_d) {
    if (yu.depths[0] != Rational(0)) fail("DepthMismatch", "trivial Phi_0 needs depth 0");
    return make_bk_level_zero(A);
  }
  if (!phi_d && yu.depths[d] != yu.depths[d - 1]) fail("DepthMismatch", "trivial Phi_d needs r_d = r_{d-1}");

  CList cs;
  const int last = phi_d ? d : d - 1;
  for (int i = 0; i <= last; ++i) {
    const auto& ch = yu.characters[i];
    if (!ch.c) fail("VerificationFailed", "Phi_" + std::to_string(i) + " needs a realizing element");
    const TameSeries& c = *ch.c;
    if (c.is_zero() || c.ord() != -yu.depths[i] || ch.depth != yu.depths[i])
      fail("DepthMismatch", "ord(c_" + std::to_string(i) + ") != -r_" + std::to_string(i));
    if (i < d && !is_minimal(c, ch.level, yu.characters[i + 1].level).minimal())
      fail("NotMinimalSummand", "c_" + std::to_string(i) + " is not minimal over E_" + std::to_string(i + 1));
    cs.push_back({ch.level, c});
  }
  return make_bk(build_defining_sequence(A, cs));
}

bool same_skeleton(const YuDatumSkeleton& a, const YuDatumSkeleton& b) {
  if (!same_order(a.point, b.point) || a.dims != b.dims || a.depths != b.depths || a.kase != b.kase ||
      a.characters.size() != b.characters.size())
    return false;
  for (size_t i = 0; i < a.characters.size(); ++i) {
    const auto& x = a.characters[i];
    const auto& y = b.characters[i];
    if (x.level != y.level || x.depth != y.depth || x.c.has_value() != y.c.has_value()) return false;
    if (x.c && !same_series(*x.c, *y.c)) return false;
  }
  return true;
}

bool same_skeleton(const BKDatumSkeleton& a, const BKDatumSkeleton& b) {
  if (!same_order(a.order, b.order) || a.level_zero != b.level_zero) return false;
  if (a.level_zero) return true;
  const auto& x = a.seq;
  const auto& y = b.seq;
  if (x.s != y.s || x.n != y.n || x.kase != y.kase) return false;
  for (int i = 0; i <= x.s; ++i) {
    const auto& u = x.entries[i];
    const auto& v = y.entries[i];
    if (u.r != v.r || u.level != v.level || !same_series(u.c, v.c) || !same_series(u.beta, v.beta))
      return false;
  }
  return a.theta_factors.size() == b.theta_factors.size();
}

FiltrationTable h_group_table(const DefiningSeq& seq) {
  FiltrationTable t;
  t.order = seq.order;
  std::vector<Factor> h1{{0, 1, ""}}, j1{{0, 1, ""}}, j0{{0, 0, ""}};
  auto push = [&](int i, long long r) {
    h1.push_back({i, r / 2 + 1, ""});
    j1.push_back({i, (r + 1) / 2, ""});
    j0.push_back({i, (r + 1) / 2, ""});
  };
  for (int i = 1; i <= seq.s; ++i) push(i, seq.entries[i].r);
  if (seq.kase == Case::B) push(seq.s + 1, seq.n);
  t.groups["H1"] = h1;
  t.groups["J1"] = j1;
  t.groups["J0"] = j0;
  return t;
}

FiltrationTable yu_group_table(const YuDatumSkeleton& yu) {
  const OrderDesc& A = yu.point;
  FiltrationTable t;
  t.order = A;
  std::vector<Factor> kp{{0, 1, "0+"}}, k0{{0, 0, "0"}};
  for (int i = 1; i <= yu.d(); ++i) {
    const Rational r = yu.depths[i - 1];
    const Rational s = r / 2;
    kp.push_back({i, mp_exponent(A, s, true), mp_label(s, true)});
    k0.push_back({i, mp_exponent(A, s, false), mp_label(s, false)});
    t.groups["J^" + std::to_string(i)] = {{i - 1, mp_exponent(A, r, false), mp_label(r, false)},
                                          {i, mp_exponent(A, s, false), mp_label(s, false)}};
    t.groups["J^" + std::to_string(i) + "+"] = {{i - 1, mp_exponent(A, r, false), mp_label(r, false)},
                                                {i, mp_exponent(A, s, true), mp_label(s, true)}};
  }
  t.groups["K+"] = kp;
  t.groups["K0"] = k0;
  return t;
}

std::vector<Factor> normalize_factors(std::vector<Factor> fs) {
  // U^m(B_i) lies in U^m'(B_j) when B_i is inside B_j (j >= i) and m' <= m.
  std::vector<Factor> out;
  for (size_t a = 0; a < fs.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < fs.size() && !redundant; ++b) {
      if (a == b) continue;
      const bool dominates = fs[b].level >= fs[a].level && fs[b].m <= fs[a].m;
      const bool identical = fs[b] == fs[a];
      redundant = dominates && (!identical || b < a);
    }
    if (!redundant) out.push_back({fs[a].level, fs[a].m, ""});
  }
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
    return x.level != y.level ? x.level < y.level : x.m < y.m;
  });
  return out;
}

bool table_compare(const FiltrationTable& a, const std::string& na, const FiltrationTable& b,
                   const std::string& nb) {
  if (!same_order(a.order, b.order)) fail("OrderMismatch", "tables are over different orders");
  return normalize_factors(a.get(na)) == normalize_factors(b.get(nb));
}

Lattice table_lattice(const MatrixModel& model, const DefiningSeq& seq, const std::vector<Factor>& fs,
                      int T) {
  Lattice L = model.radical_power(T);
  for (const auto& f : fs) {
    if (f.m >= T) continue;
    const Lattice B = oracle_level_lattice(model, seq, f.level, T);
    L = model.sum(L, model.intersect(B, model.radical_power(static_cast<int>(f.m))));
  }
  return L;
}

bool table_compare_oracle(const MatrixModel& model, const DefiningSeq& seq, const FiltrationTable& a,
                          const std::string& na, const FiltrationTable& b, const std::string& nb) {
  if (!same_order(a.order, b.order)) fail("OrderMismatch", "tables are over different orders");
  long long T = 1;
  for (const auto& f : a.get(na)) T = std::max(T, f.m);
  for (const auto& f : b.get(nb)) T = std::max(T, f.m);
  const int Ti = static_cast<int>(T);
  return model.same(table_lattice(model, seq, a.get(na), Ti), table_lattice(model, seq, b.get(nb), Ti));
}

CharFactor char_factor(const BKDatumSkeleton& bk, int i) {
  if (bk.level_zero) fail("BadLevel", "level-zero datum has no character factors");
  return char_factor_of(bk.seq, h_group_table(bk.seq), i);
}

long long char_module_valuation(const OrderDesc& A, const TameSeries& c, long long m) {
  if (c.is_zero()) fail("ZeroToPrecision", "realizing element is zero to its precision");
  return ceil_div(nu_A(A, c) + m, A.e_A);
}

long long oracle_char_module_valuation(const MatrixModel& model, const DefiningSeq& seq, int level,
                                       const TameSeries& c, long long m) {
  if (c.is_zero()) fail("ZeroToPrecision", "realizing element is zero to its precision");
  const int top = static_cast<int>(m) + model.e0;
  const Lattice L = model.intersect(oracle_level_lattice(model, seq, level, top),
                                    model.radical_power(static_cast<int>(m)));
  return model.min_trace_ord(model.matrix_of(c), L);
}

LogIndex closed_unit_index(const DefiningSeq& seq, int level, long long a, long long b) {
  const OrderDesc& A = seq.order;
  const Tower& T = *A.tower;
  const int lv = chain_level(seq, level);
  const long long deg = T.level_residue_degree(lv);
  const long long m = A.m[lv];
  const long long num = deg * (b - a) * m * m;
  if (num % A.e_B(lv) != 0) fail("VerificationFailed", "non-integral unit index");
  return {num / A.e_B(lv), "closed-form"};
}

namespace {

LogIndex oracle_unit_index(const MatrixModel& model, const DefiningSeq& seq, int level, long long a,
                           long long b) {
  const Lattice B = oracle_level_lattice(model, seq, level, static_cast<int>(b));
  const Lattice Qa = model.intersect(B, model.radical_power(static_cast<int>(a)));
  return oracle_index(model, Qa, model.radical_power(static_cast<int>(b)));
}

}  // namespace

Ledger ledger_indices(const BKDatumSkeleton& bk, const YuDatumSkeleton& yu, const MatrixModel* model) {
  Ledger led;
  if (bk.level_zero) {
    led.product_identity = led.even_exponents = led.closed_matches_oracle = true;
    return led;
  }
  const DefiningSeq& seq = bk.seq;
  const int d = yu.d();
  bool match = true;
  for (int i = 0; i <= d; ++i) {
    LedgerEntry e{"U1/U2(B_" + std::to_string(i) + ")", closed_unit_index(seq, i, 1, 2), std::nullopt};
    if (model) {
      e.oracle = oracle_unit_index(*model, seq, i, 1, 2);
      match = match && e.oracle->value == e.closed.value;
    }
    led.entries.push_back(e);
  }
  if (!model) fail("OracleRequired", "composite indices need the matrix model");

  const HJLattices hj = oracle_hj(*model, seq);
  const Lattice P1 = model->radical_power(1);
  const LogIndex jh = oracle_index(*model, model->intersect(hj.j, P1), model->intersect(hj.h, P1));
  led.entries.push_back({"J1/H1", {-1, "closed-form"}, jh});

  const FiltrationTable Y = yu_group_table(yu);
  long long total = 0;
  bool even = jh.value % 2 == 0;
  for (int i = 1; i <= d; ++i) {
    const auto& J = Y.get("J^" + std::to_string(i));
    const auto& Jp = Y.get("J^" + std::to_string(i) + "+");
    const int b = static_cast<int>(J[1].m);
    const int b2 = static_cast<int>(Jp[1].m);
    // The J-quotient is the complement of B_{i-1} in B_i between exponents b and b2.
    const Lattice Pb2 = model->radical_power(b2);
    const Lattice hi = model->intersect(oracle_level_lattice(*model, seq, i, b2), model->radical_power(b));
    const Lattice lo = model->intersect(oracle_level_lattice(*model, seq, i - 1, b2), model->radical_power(b));
    const long long v = (hi.dim() - Pb2.dim()) - (lo.dim() - Pb2.dim());
    led.entries.push_back({"J^" + std::to_string(i) + "/J^" + std::to_string(i) + "+", {-1, "closed-form"},
                           LogIndex{v, "oracle"}});
    total += v;
    even = even && v % 2 == 0;
  }
  led.product_identity = total == jh.value;
  led.even_exponents = even;
  led.closed_matches_oracle = match;
  return led;
}

}  // namespace ts
