#include "tamestrata/oracle.hpp"

#include <algorithm>

// Deliberately naive: everything below is rank counting over F_p on
// truncated coefficient vectors. Nothing here calls the closed-form paths in
// minimal/strata/translate.

namespace ts {

namespace {

using Vec = std::vector<std::uint8_t>;

int inv_p(int a, int p) {
  int r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int first_nonzero(const Vec& v, int from = 0) {
  for (int i = from; i < static_cast<int>(v.size()); ++i)
    if (v[i]) return i;
  return -1;
}

// Reduce v against echelon rows (pivots ascending, pivot entries 1).
void reduce(const Lattice& L, Vec& v, int p) {
  for (size_t r = 0; r < L.rows.size(); ++r) {
    const int c = L.pivots[r];
    const int f = v[c];
    if (!f) continue;
    const Vec& row = L.rows[r];
    for (size_t i = c; i < v.size(); ++i)
      if (row[i]) v[i] = static_cast<std::uint8_t>((v[i] + (p - f) * row[i]) % p);
  }
}

bool insert(Lattice& L, Vec v, int p) {
  reduce(L, v, p);
  const int c = first_nonzero(v);
  if (c < 0) return false;
  const int iv = inv_p(v[c], p);
  for (size_t i = c; i < v.size(); ++i) v[i] = static_cast<std::uint8_t>(v[i] * iv % p);
  const auto pos = std::lower_bound(L.pivots.begin(), L.pivots.end(), c) - L.pivots.begin();
  L.pivots.insert(L.pivots.begin() + pos, c);
  L.rows.insert(L.rows.begin() + pos, std::move(v));
  return true;
}

struct SlotMap {
  int lo = 0, hi = 0, N = 0;
  std::vector<int> start, lmin, count;
  int total = 0;

  int index(int w, int v, int l) const {
    const int k = w * N + v;
    const int off = l - lmin[k];
    if (off < 0 || off >= count[k]) return -1;
    return start[k] + off;
  }
};

SlotMap make_slots(const MatrixModel& m, int lo, int hi) {
  SlotMap S;
  S.lo = lo;
  S.hi = hi;
  S.N = m.N;
  S.start.resize(m.N * m.N);
  S.lmin.resize(m.N * m.N);
  S.count.resize(m.N * m.N);
  for (int w = 0; w < m.N; ++w)
    for (int v = 0; v < m.N; ++v) {
      const int k = w * m.N + v;
      const int base = m.level_[w] - m.level_[v];
      const int l0 = static_cast<int>(ceil_div(lo - base, m.e0));
      int c = 0;
      while (m.e0 * (l0 + c) + base < hi) ++c;
      S.start[k] = S.total;
      S.lmin[k] = l0;
      S.count[k] = c;
      S.total += c;
    }
  return S;
}

}  // namespace

int oracle_prec_for(const OrderDesc& A, long long n) {
  const long long M = 3 * std::max<long long>(n, 1) + 3 * A.e_A + 2;
  return static_cast<int>(ceil_div(M, A.e_A));
}

MatrixModel model_build(const OrderDesc& A, int prec) {
  const Tower& T = *A.tower;
  if (A.N > 8) fail("TooLarge", "oracle supports N <= 8");
  if (prec < 1 || prec > 24) fail("TooLarge", "oracle precision must be in [1, 24] t-steps");
  if (T.p() > 251) fail("TooLarge", "oracle needs p < 256");
  MatrixModel m;
  m.order = A;
  m.N = A.N;
  m.e0 = T.level_e(0);
  m.f0 = T.level_f(0);
  m.m0 = A.m0();
  m.bF = T.base_degree();
  m.p = T.p();
  m.M = prec * m.e0;

  m.level_.resize(m.N);
  for (int c = 0; c < m.m0; ++c)
    for (int a = 0; a < m.e0; ++a)
      for (int b = 0; b < m.f0; ++b) m.level_[(c * m.e0 + a) * m.f0 + b] = a;

  const FqField& K = T.k();
  // k_F and an F_p-basis of it
  std::vector<std::uint32_t> kF;
  for (std::uint32_t c = 0; c < K.order(); ++c)
    if (T.in_base_residue(c)) kF.push_back(c);
  std::uint32_t h = 1;
  for (std::uint32_t c : kF)
    if (c && K.orbit_size(c, 1) == m.bF) {
      h = c;
      break;
    }
  for (int j = 0; j < m.bF; ++j) m.gammaF_.push_back(K.pow(h, j));
  {
    std::vector<int> mu(m.bF, 0);
    long long combos = 1;
    for (int j = 0; j < m.bF; ++j) combos *= m.p;
    for (long long idx = 0; idx < combos; ++idx) {
      long long r = idx;
      std::uint32_t code = 0;
      for (int j = 0; j < m.bF; ++j) {
        mu[j] = static_cast<int>(r % m.p);
        r /= m.p;
        code = K.add(code, K.mul(K.from_int(mu[j]), m.gammaF_[j]));
      }
      m.kF_coords_[code] = mu;
    }
  }
  // k_{E_0} and its basis theta_b over k_F
  std::vector<int> J0;
  for (int g : T.level_group(0)) J0.push_back(T.element(g).frob_power);
  std::vector<std::uint32_t> kE0;
  for (std::uint32_t c = 0; c < K.order(); ++c) {
    bool fixed = true;
    for (int j : J0)
      if (K.frob(c, T.base_degree(), j) != c) fixed = false;
    if (fixed) kE0.push_back(c);
  }
  std::uint32_t g0 = 1;
  for (std::uint32_t c : kE0)
    if (c && K.orbit_size(c, T.base_degree()) == m.f0) {
      g0 = c;
      break;
    }
  for (int b = 0; b < m.f0; ++b) m.theta_.push_back(K.pow(g0, b));
  {
    long long combos = 1;
    for (int b = 0; b < m.f0; ++b) combos *= static_cast<long long>(kF.size());
    std::vector<std::uint32_t> lam(m.f0);
    for (long long idx = 0; idx < combos; ++idx) {
      long long r = idx;
      std::uint32_t code = 0;
      for (int b = 0; b < m.f0; ++b) {
        lam[b] = kF[r % kF.size()];
        r /= static_cast<long long>(kF.size());
        code = K.add(code, K.mul(lam[b], m.theta_[b]));
      }
      m.kE0_coords_[code] = lam;
    }
  }
  if (m.kE0_coords_.size() != kE0.size()) fail("PrecisionExhausted", "residue basis construction failed");

  const SlotMap S = make_slots(m, 0, m.M);
  for (int w = 0; w < m.N; ++w)
    for (int v = 0; v < m.N; ++v) {
      const int k = w * m.N + v;
      for (int c = 0; c < S.count[k]; ++c) m.slots_.push_back({w, v, S.lmin[k] + c});
    }
  return m;
}

ElemMatrix MatrixModel::matrix_of(const TameSeries& x) const {
  const Tower& T = *order.tower;
  const FqField& K = T.k();
  for (const auto& t : x.terms)
    if (!T.term_fixed(T.level_group(0), t.c, t.k)) fail("NotInLevel", "element is not in E_0");
  const int k0 = T.unif_power(0);
  const std::uint32_t u0 = T.unif_coeff(0);
  const std::uint32_t zinv = K.inv(T.spec().zeta);
  ElemMatrix R;
  R.N = N;
  R.e.assign(N * N, {});
  R.prec = static_cast<int>(ceil_div(x.prec, k0));
  for (const auto& t : x.terms) {
    const int J = t.k / k0;
    for (int c = 0; c < m0; ++c)
      for (int a = 0; a < e0; ++a)
        for (int b = 0; b < f0; ++b) {
          const int v = (c * e0 + a) * f0 + b;
          const int JJ = J + a;
          const int l = static_cast<int>(floor_div(JJ, e0));
          const int a2 = JJ - l * e0;
          std::uint32_t d = K.mul(t.c, theta_[b]);
          d = K.mul(d, K.pow(u0, a - a2));
          d = K.mul(d, K.pow(zinv, l));
          const auto it = kE0_coords_.find(d);
          if (it == kE0_coords_.end()) fail("NotInLevel", "coefficient escaped k_{E_0}");
          for (int b2 = 0; b2 < f0; ++b2) {
            const std::uint32_t lam = it->second[b2];
            if (!lam) continue;
            const int w = (c * e0 + a2) * f0 + b2;
            if (block_val(w, v, l) >= R.prec) continue;
            auto& slot = R.at(w, v)[l];
            slot = K.add(slot, lam);
          }
        }
  }
  for (auto& entry : R.e)
    for (auto it = entry.begin(); it != entry.end();)
      it = it->second ? std::next(it) : entry.erase(it);
  return R;
}

long long MatrixModel::valuation(const ElemMatrix& a) const {
  long long best = a.prec;
  bool any = false;
  for (int w = 0; w < N; ++w)
    for (int v = 0; v < N; ++v)
      for (const auto& [l, c] : a.at(w, v))
        if (c) {
          const long long bv = block_val(w, v, l);
          if (bv < a.prec) {
            best = std::min(best, bv);
            any = true;
          }
        }
  if (!any) fail("ZeroToPrecision", "matrix is zero to its precision");
  return best;
}

ElemMatrix MatrixModel::multiply(const ElemMatrix& a, const ElemMatrix& b) const {
  const FqField& K = order.tower->k();
  auto val_or_prec = [&](const ElemMatrix& m) {
    try {
      return valuation(m);
    } catch (const Error&) {
      return static_cast<long long>(m.prec);
    }
  };
  ElemMatrix R;
  R.N = N;
  R.e.assign(N * N, {});
  R.prec = static_cast<int>(std::min(a.prec + val_or_prec(b), b.prec + val_or_prec(a)));
  for (int w = 0; w < N; ++w)
    for (int u = 0; u < N; ++u)
      for (const auto& [l1, c1] : a.at(w, u))
        for (int v = 0; v < N; ++v)
          for (const auto& [l2, c2] : b.at(u, v)) {
            if (block_val(w, v, l1 + l2) >= R.prec) continue;
            auto& slot = R.at(w, v)[l1 + l2];
            slot = K.add(slot, K.mul(c1, c2));
          }
  for (auto& entry : R.e)
    for (auto it = entry.begin(); it != entry.end();)
      it = it->second ? std::next(it) : entry.erase(it);
  return R;
}

bool MatrixModel::equal(const ElemMatrix& a, const ElemMatrix& b) const {
  const int P = std::min(a.prec, b.prec);
  for (int w = 0; w < N; ++w)
    for (int v = 0; v < N; ++v) {
      std::map<int, std::uint32_t> diff;
      const FqField& K = order.tower->k();
      for (const auto& [l, c] : a.at(w, v))
        if (block_val(w, v, l) < P) diff[l] = K.add(diff[l], c);
      for (const auto& [l, c] : b.at(w, v))
        if (block_val(w, v, l) < P) diff[l] = K.sub(diff[l], c);
      for (const auto& [l, c] : diff)
        if (c) return false;
    }
  return true;
}

std::vector<std::uint8_t> MatrixModel::unit_vector(int slot, int digit) const {
  Vec v(ambient_dim(), 0);
  v[slot * bF + digit] = 1;
  return v;
}

Lattice MatrixModel::radical_power(int k) const {
  Lattice L;
  for (int s = 0; s < static_cast<int>(slots_.size()); ++s) {
    const auto& S = slots_[s];
    if (block_val(S.w, S.v, S.l) < k) continue;
    for (int j = 0; j < bF; ++j) {
      L.pivots.push_back(s * bF + j);
      L.rows.push_back(unit_vector(s, j));
    }
  }
  return L;
}

Lattice MatrixModel::sum(const Lattice& a, const Lattice& b) const {
  Lattice r = a;
  for (const auto& row : b.rows) insert(r, row, p);
  return r;
}

bool MatrixModel::contains(const Lattice& big, const Lattice& small) const {
  for (const auto& row : small.rows) {
    Vec v = row;
    reduce(big, v, p);
    if (first_nonzero(v) >= 0) return false;
  }
  return true;
}

bool MatrixModel::same(const Lattice& a, const Lattice& b) const {
  return a.dim() == b.dim() && contains(a, b);
}

Lattice MatrixModel::intersect(const Lattice& a, const Lattice& b) const {
  // Zassenhaus: rows (u | u) and (w | 0); rows with zero left half span a ∩ b.
  const int D = ambient_dim();
  Lattice Z;
  for (const auto& u : a.rows) {
    Vec v(2 * D);
    std::copy(u.begin(), u.end(), v.begin());
    std::copy(u.begin(), u.end(), v.begin() + D);
    insert(Z, v, p);
  }
  for (const auto& w : b.rows) {
    Vec v(2 * D, 0);
    std::copy(w.begin(), w.end(), v.begin());
    insert(Z, v, p);
  }
  Lattice r;
  for (size_t i = 0; i < Z.rows.size(); ++i)
    if (Z.pivots[i] >= D) insert(r, Vec(Z.rows[i].begin() + D, Z.rows[i].end()), p);
  return r;
}

Lattice MatrixModel::n_k(const ElemMatrix& beta, int k) const {
  const long long nb = valuation(beta);
  if (k <= nb) return radical_power(0);
  if (k > beta.prec) fail("PrecisionExhausted", "element matrix not known to the requested level");
  if (k > M + nb) fail("PrecisionExhausted", "model truncation too coarse for this N_k");
  const FqField& K = order.tower->k();
  const SlotMap S = make_slots(*this, static_cast<int>(nb), k);
  const int Tdim = S.total * bF;
  const int D = ambient_dim();
  Lattice Z;
  std::vector<std::uint32_t> acc(S.total);
  for (int s = 0; s < static_cast<int>(slots_.size()); ++s) {
    const auto& X = slots_[s];
    for (int j = 0; j < bF; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      const std::uint32_t g = gammaF_[j];
      // beta x: column v, rows r
      for (int r = 0; r < N; ++r)
        for (const auto& [l, c] : beta.at(r, X.w)) {
          const int idx = S.index(r, X.v, l + X.l);
          if (idx >= 0) acc[idx] = K.add(acc[idx], K.mul(c, g));
        }
      // x beta: row w, columns c
      for (int cc = 0; cc < N; ++cc)
        for (const auto& [l, c] : beta.at(X.v, cc)) {
          const int idx = S.index(X.w, cc, l + X.l);
          if (idx >= 0) acc[idx] = K.sub(acc[idx], K.mul(c, g));
        }
      Vec v(Tdim + D, 0);
      for (int i = 0; i < S.total; ++i)
        if (acc[i]) {
          const auto& dig = kF_coords_.at(acc[i]);
          for (int d = 0; d < bF; ++d) v[i * bF + d] = static_cast<std::uint8_t>(dig[d]);
        }
      v[Tdim + s * bF + j] = 1;
      insert(Z, std::move(v), p);
    }
  }
  Lattice r;
  for (size_t i = 0; i < Z.rows.size(); ++i)
    if (Z.pivots[i] >= Tdim) insert(r, Vec(Z.rows[i].begin() + Tdim, Z.rows[i].end()), p);
  return r;
}

Lattice MatrixModel::commutant_plus(const ElemMatrix& beta, int m) const {
  if (m <= 0) return radical_power(0);
  std::string key = std::to_string(m) + ":" + std::to_string(beta.prec);
  for (const auto& entry : beta.e) {
    key += "|";
    for (const auto& [l, c] : entry) key += std::to_string(l) + "," + std::to_string(c) + ";";
  }
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    const auto it = memo_->commutants.find(key);
    if (it != memo_->commutants.end()) return it->second;
  }
  const long long nb = valuation(beta);
  const long long n = std::max<long long>(0, -nb);
  const int K = static_cast<int>(m + n + e0);
  const Lattice Pm = radical_power(m);
  const Lattice L1 = sum(n_k(beta, K), Pm);
  if (K + e0 <= M + nb && K + e0 <= beta.prec) {
    const Lattice L2 = sum(n_k(beta, K + e0), Pm);
    if (!same(L1, L2)) fail("PrecisionExhausted", "commutant approximation did not stabilize");
  }
  std::lock_guard<std::mutex> lock(memo_->mu);
  memo_->commutants.emplace(key, L1);
  return L1;
}

long long MatrixModel::min_trace_ord(const ElemMatrix& c, const Lattice& L) const {
  const FqField& K = order.tower->k();
  long long vc;
  try {
    vc = valuation(c);
  } catch (const Error&) {
    throw;
  }
  const long long known = ceil_div(c.prec, e0);
  long long best = ceil_div(M + vc, e0);
  for (const auto& row : L.rows) {
    std::map<int, std::uint32_t> tr;
    for (int s = 0; s < static_cast<int>(slots_.size()); ++s) {
      std::uint32_t x = 0;
      for (int j = 0; j < bF; ++j)
        if (row[s * bF + j]) x = K.add(x, K.mul(K.from_int(row[s * bF + j]), gammaF_[j]));
      if (!x) continue;
      const auto& X = slots_[s];  // x at (w, v), t^l: Tr(c x) picks c(v, w)
      for (const auto& [l, cc] : c.at(X.v, X.w)) tr[l + X.l] = K.add(tr[l + X.l], K.mul(cc, x));
    }
    for (const auto& [l, val] : tr)
      if (val) {
        best = std::min<long long>(best, l);
        break;
      }
  }
  if (best >= known) fail("PrecisionExhausted", "trace valuation beyond known precision");
  return best;
}

K0 oracle_k0(const MatrixModel& model, const TameSeries& beta) {
  const ElemMatrix B = model.matrix_of(beta);
  const long long nb = model.valuation(B);
  const Lattice BP = model.commutant_plus(B, 1);
  if (BP.dim() == model.ambient_dim()) return std::nullopt;
  K0 k0;
  for (long long k = nb;; ++k) {
    const Lattice Nk = model.n_k(B, static_cast<int>(k));
    if (model.contains(BP, Nk)) break;
    k0 = k;
  }
  return k0;
}

namespace {

ElemMatrix beta_matrix(const MatrixModel& model, const DefiningSeq& seq, int i) {
  return model.matrix_of(seq.entries[i].beta);
}

}  // namespace

Lattice oracle_level_lattice(const MatrixModel& model, const DefiningSeq& seq, int i, int m) {
  if (i > seq.s) return model.radical_power(0);
  return model.commutant_plus(beta_matrix(model, seq, i), m);
}

HJLattices oracle_hj(const MatrixModel& model, const DefiningSeq& seq) {
  const long long n = seq.n;
  const int hm = static_cast<int>(n / 2 + 1);
  const int jm = static_cast<int>((n + 1) / 2);
  HJLattices out;
  out.h = oracle_level_lattice(model, seq, seq.s, hm);
  out.j = oracle_level_lattice(model, seq, seq.s, jm);
  for (int i = seq.s - 1; i >= 0; --i) {
    const long long r = seq.entries[i + 1].r;
    const Lattice hx = model.intersect(out.h, model.radical_power(static_cast<int>(r / 2 + 1)));
    const Lattice jx = model.intersect(out.j, model.radical_power(static_cast<int>((r + 1) / 2)));
    out.h = model.sum(oracle_level_lattice(model, seq, i, hm), hx);
    out.j = model.sum(oracle_level_lattice(model, seq, i, jm), jx);
  }
  return out;
}

LogIndex oracle_index(const MatrixModel& model, const Lattice& big, const Lattice& small) {
  if (!model.contains(big, small)) fail("NotNested", "second lattice is not contained in the first");
  return {big.dim() - small.dim(), "oracle"};
}

}  // namespace ts
