#include "tamestrata/strata.hpp"

#include <algorithm>

namespace ts {

OrderDesc make_order(const TowerPtr& T, int m0) {
  if (m0 < 1) fail("BadDegree", "m_0 must be positive");
  OrderDesc A;
  A.tower = T;
  A.N = m0 * T->level_degree(0);
  for (int i = 0; i <= T->depth(); ++i) A.m.push_back(A.N / T->level_degree(i));
  A.e_A = T->level_e(0);
  A.q = T->q();
  return A;
}

long long nu_A(const OrderDesc& A, const TameSeries& x) {
  const Rational v = x.ord() * static_cast<long long>(A.e_A);
  if (v.denominator() != 1) fail("NotInLevel", "element is not in E_0");
  return v.numerator();
}

K0 k0_closed(const OrderDesc& A, const TameSeries& beta) {
  const CList cs = decompose_split_form(A, beta);
  if (cs.size() == 1 && cs.front().level == A.tower->depth()) return std::nullopt;
  return nu_A(A, cs.front().c);
}

K0 k0_galois(const OrderDesc& A, const TameSeries& beta) {
  const Tower& T = *A.tower;
  const Subgroup S = stabilizer(beta);
  if (static_cast<int>(S.size()) == T.group_size()) return std::nullopt;
  std::optional<Rational> best;
  for (int g = 0; g < T.group_size(); ++g) {
    if (std::binary_search(S.begin(), S.end(), g)) continue;
    const TameSeries d = sub(galois_apply(g, beta), beta);
    if (d.is_zero()) fail("PrecisionExhausted", "conjugate difference vanished to precision");
    if (!best || d.ord() > *best) best = d.ord();
  }
  const Rational v = *best * static_cast<long long>(A.e_A);
  return floor(v);
}

StratumKind stratum_classify(const Stratum& st) {
  if (st.beta.is_zero()) return StratumKind::Neither;
  const long long v = nu_A(st.order, st.beta);
  if (v != -st.n) return StratumKind::Neither;
  const K0 k0 = k0_closed(st.order, st.beta);
  if (!k0 || st.r < -*k0) return StratumKind::Simple;
  return StratumKind::Pure;
}

std::string to_string(StratumKind k) {
  switch (k) {
    case StratumKind::Pure: return "pure";
    case StratumKind::Simple: return "simple";
    case StratumKind::Neither: return "neither";
  }
  return "neither";
}

CList DefiningSeq::c_list() const {
  CList out;
  for (const auto& e : entries) out.push_back({e.level, e.c});
  return out;
}

DefiningSeq assemble_sequence(const OrderDesc& A, const CList& cs) {
  if (cs.empty()) fail("VerificationFailed", "empty summand list");
  DefiningSeq seq;
  seq.order = A;
  seq.s = static_cast<int>(cs.size()) - 1;
  seq.entries.resize(cs.size());
  TameSeries acc = cs.back().c;
  for (int i = seq.s; i >= 0; --i) {
    if (i < seq.s) acc = add(cs[i].c, acc);
    seq.entries[i].beta = acc;
    seq.entries[i].beta.level = coarsest_level(acc);
    seq.entries[i].level = cs[i].level;
    seq.entries[i].c = cs[i].c;
  }
  seq.entries[0].r = 0;
  for (int i = 1; i <= seq.s; ++i) seq.entries[i].r = -nu_A(A, cs[i - 1].c);
  seq.n = -nu_A(A, cs.back().c);
  seq.kase = cs.back().level == A.tower->depth() ? Case::A : Case::B;
  return seq;
}

namespace {

// Level below c_i in the chain: the next summand's level, or F after the last.
int lower_level(const DefiningSeq& seq, int i) {
  return i < seq.s ? seq.entries[i + 1].level : seq.order.tower->depth();
}

}  // namespace

DefiningSeq build_defining_sequence(const OrderDesc& A, const CList& cs) {
  if (cs.empty()) fail("VerificationFailed", "empty summand list");
  const Tower& T = *A.tower;
  for (size_t i = 0; i < cs.size(); ++i) {
    const int lv = cs[i].level;
    if (lv < 0 || lv > T.depth()) fail("VerificationFailed", "summand level out of range");
    if (i + 1 < cs.size() && cs[i + 1].level <= lv)
      fail("VerificationFailed", "summand fields must strictly decrease");
    if (coarsest_level(cs[i].c) < lv) fail("VerificationFailed", "summand not in its declared level");
    if (cs[i].c.is_zero()) fail("VerificationFailed", "zero summand");
  }
  for (size_t i = 0; i + 1 < cs.size(); ++i)
    if (-nu_A(A, cs[i].c) >= -nu_A(A, cs[i + 1].c))
      fail("ValuationOrder", "-nu_A(c_i) must increase strictly");
  DefiningSeq seq = assemble_sequence(A, cs);
  for (int i = 0; i <= seq.s; ++i) {
    const int lo = lower_level(seq, i);
    if (cs[i].level == lo) continue;  // terminal summand in F
    if (!is_minimal(cs[i].c, cs[i].level, lo).minimal())
      fail("NotMinimalSummand", "c_" + std::to_string(i) + " is not minimal over the next level");
  }
  const SeqReport rep = verify_defining_sequence(seq);
  if (!rep.passed()) {
    std::string bad;
    for (const auto& v : rep.verdicts)
      if (!v.ok) bad += v.name + " ";
    fail("VerificationFailed", "failed checks: " + bad);
  }
  return seq;
}

bool SeqReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.ok; });
}

const Verdict& SeqReport::get(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  fail("VerificationFailed", "no verdict named " + name);
}

SeqReport verify_defining_sequence(const DefiningSeq& seq) {
  const OrderDesc& A = seq.order;
  const Tower& T = *A.tower;
  const int s = seq.s;
  SeqReport rep;
  auto run = [&](const std::string& name, auto&& body) {
    Verdict v{name, false, ""};
    try {
      v.ok = body(v.detail);
    } catch (const Error& e) {
      v.ok = false;
      v.detail = e.what();
    }
    rep.verdicts.push_back(v);
  };

  run("a_simple", [&](std::string& why) {
    for (int i = 0; i <= s; ++i) {
      const auto& E = seq.entries[i];
      if (nu_A(A, E.beta) != -seq.n) {
        why = "nu_A(beta_" + std::to_string(i) + ") != -n";
        return false;
      }
      const K0 k0 = k0_galois(A, E.beta);
      if (k0 && !(E.r < -*k0)) {
        why = "r_" + std::to_string(i) + " >= -k0(beta_" + std::to_string(i) + ")";
        return false;
      }
    }
    return true;
  });

  run("b_levels", [&](std::string& why) {
    if (seq.entries[0].r != 0) {
      why = "r_0 != 0";
      return false;
    }
    for (int i = 0; i < s; ++i)
      if (seq.entries[i].r >= seq.entries[i + 1].r) {
        why = "r not strictly increasing";
        return false;
      }
    if (seq.entries[s].r >= seq.n) {
      why = "r_s >= n";
      return false;
    }
    return true;
  });

  run("c_fields", [&](std::string& why) {
    std::vector<Subgroup> stabs;
    for (int i = 0; i <= s; ++i) {
      stabs.push_back(stabilizer(seq.entries[i].beta));
      const int lv = seq.entries[i].level;
      if (lv < 0 || lv > T.depth() || stabs.back() != T.level_group(lv)) {
        why = "F[beta_" + std::to_string(i) + "] differs from its level";
        return false;
      }
    }
    for (int i = 0; i < s; ++i) {
      const auto& a = stabs[i];
      const auto& b = stabs[i + 1];
      if (a.size() >= b.size() || !std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        why = "fields not strictly nested";
        return false;
      }
    }
    return true;
  });

  run("d_critical", [&](std::string& why) {
    for (int i = 0; i < s; ++i) {
      const K0 k0 = k0_galois(A, seq.entries[i].beta);
      if (!k0 || seq.entries[i + 1].r != -*k0) {
        why = "r_" + std::to_string(i + 1) + " != -k0(beta_" + std::to_string(i) + ")";
        return false;
      }
      const TameSeries d = sub(seq.entries[i].beta, seq.entries[i + 1].beta);
      if (nu_A(A, d) != -seq.entries[i + 1].r) {
        why = "nu_A(beta_i - beta_{i+1}) != -r_{i+1}";
        return false;
      }
    }
    return true;
  });

  run("e_terminal", [&](std::string& why) {
    const K0 k0 = k0_galois(A, seq.entries[s].beta);
    if (k0 && *k0 != -seq.n) {
      why = "k0(beta_s) not in {-n, -inf}";
      return false;
    }
    return true;
  });

  run("f_minimal", [&](std::string& why) {
    for (int i = 0; i <= s; ++i) {
      const int lo = lower_level(seq, i);
      const int lv = seq.entries[i].level;
      if (lv == lo && i == s) continue;
      if (lv >= lo || !is_minimal(seq.entries[i].c, lv, lo).minimal()) {
        why = "c_" + std::to_string(i) + " not minimal over the next level";
        return false;
      }
    }
    return true;
  });
  return rep;
}

Case case_of(const DefiningSeq& seq) {
  const Subgroup S = stabilizer(seq.entries[seq.s].beta);
  return static_cast<int>(S.size()) == seq.order.tower->group_size() ? Case::A : Case::B;
}

// ---- decomposition ----

namespace {

struct Search {
  const OrderDesc& A;
  const TameSeries& beta;
  std::vector<int> term_level;
  // blocks in opening order: c_s first
  std::vector<std::pair<int, std::vector<Term>>> blocks;
  long long budget = 200000;
  std::optional<CList> found;

  CList to_clist() const {
    CList cs;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
      cs.push_back({it->first, TameSeries{beta.tower, it->first, it->second, beta.prec}});
    return cs;
  }

  void go(size_t t) {
    if (found || --budget <= 0) return;
    if (t == beta.terms.size()) {
      try {
        CList cs = to_clist();
        build_defining_sequence(A, cs);
        found = std::move(cs);
      } catch (const Error&) {
      }
      return;
    }
    const Term& term = beta.terms[t];
    const int tl = term_level[t];
    if (!blocks.empty() && tl >= blocks.back().first) {
      blocks.back().second.push_back(term);
      go(t + 1);
      blocks.back().second.pop_back();
      if (found) return;
    }
    const int top = blocks.empty() ? tl : std::min(tl, blocks.back().first - 1);
    for (int lv = top; lv >= 0 && !found; --lv) {
      blocks.push_back({lv, {term}});
      go(t + 1);
      blocks.pop_back();
    }
  }
};

}  // namespace

CList decompose_split_form(const OrderDesc& A, const TameSeries& beta) {
  if (beta.is_zero()) fail("ZeroToPrecision", "cannot decompose zero");
  const Tower& T = *A.tower;
  Search S{A, beta, {}, {}, 200000, std::nullopt};
  for (const auto& t : beta.terms) {
    int lv = -1;
    for (int i = T.depth(); i >= 0; --i)
      if (T.term_fixed(T.level_group(i), t.c, t.k)) {
        lv = i;
        break;
      }
    if (lv < 0) fail("NotSplitForm", "a term lies in no chain level");
    S.term_level.push_back(lv);
  }
  S.go(0);
  if (!S.found) fail("NotDecomposable", "no chain of minimal summands verifies");
  return *S.found;
}

}  // namespace ts
