#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamestrata/minimal.hpp"

namespace ts {

// Maximal hereditary order attached to the o_{E_0}-lattice chain of
// V = E_0^{m_0}; N = m_0 [E_0:F], e_A = e(E_0|F).
struct OrderDesc {
  TowerPtr tower;
  int N = 0;
  std::vector<int> m;  // m_i = N / [E_i:F] for every chain level
  int e_A = 1;
  long long q = 0;

  int m0() const { return m.front(); }
  // e(B_i | o_{E_i}) = e(E_0 | E_i)
  int e_B(int level) const { return e_A / tower->level_e(level); }
};

OrderDesc make_order(const TowerPtr& T, int m0 = 1);

// nullopt encodes -infinity.
using K0 = std::optional<long long>;

long long nu_A(const OrderDesc& A, const TameSeries& x);
K0 k0_closed(const OrderDesc& A, const TameSeries& beta);
// e_A * max ord(g beta - beta) over g outside the stabilizer of beta.
K0 k0_galois(const OrderDesc& A, const TameSeries& beta);

struct Stratum {
  OrderDesc order;
  long long n = 0;
  long long r = 0;
  TameSeries beta;
};

enum class StratumKind { Pure, Simple, Neither };
StratumKind stratum_classify(const Stratum& st);
std::string to_string(StratumKind k);

struct CEntry {
  int level = 0;
  TameSeries c;
};
using CList = std::vector<CEntry>;

// Throws NotSplitForm, NotDecomposable, ZeroToPrecision.
CList decompose_split_form(const OrderDesc& A, const TameSeries& beta);

enum class Case { A, B };
inline const char* to_string(Case c) { return c == Case::A ? "A" : "B"; }

struct SeqEntry {
  long long r = 0;
  TameSeries beta;
  int level = 0;
  TameSeries c;
};

struct DefiningSeq {
  OrderDesc order;
  long long n = 0;
  std::vector<SeqEntry> entries;
  int s = 0;
  Case kase = Case::B;

  CList c_list() const;
};

// Fills beta_i, r_i, n, s and case from the summands without any checking.
DefiningSeq assemble_sequence(const OrderDesc& A, const CList& cs);
// Throws NotMinimalSummand, ValuationOrder, VerificationFailed.
DefiningSeq build_defining_sequence(const OrderDesc& A, const CList& cs);

struct Verdict {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SeqReport {
  std::vector<Verdict> verdicts;
  bool passed() const;
  const Verdict& get(const std::string& name) const;
};

SeqReport verify_defining_sequence(const DefiningSeq& seq);
Case case_of(const DefiningSeq& seq);

}  // namespace ts
