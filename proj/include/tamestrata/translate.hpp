#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tamestrata/oracle.hpp"
#include "tamestrata/strata.hpp"

namespace ts {

// U^m(B_i) for the i-th position of a datum. Positions are sequence/Yu
// indices 0..d; a position past the last summand field stands for A itself.
struct Factor {
  int level = 0;
  long long m = 0;
  std::string label;  // Moy-Prasad depth, e.g. "1/4+"; empty when not applicable
  bool operator==(const Factor& o) const { return level == o.level && m == o.m; }
};

struct FiltrationTable {
  OrderDesc order;
  std::map<std::string, std::vector<Factor>> groups;
  const std::vector<Factor>& get(const std::string& name) const;
};

struct CharFactor {
  int level = 0;
  TameSeries c;
  Rational depth;
  std::vector<Factor> det_domain;
  std::vector<Factor> psi_domain;
  // phi_i below the psi-determined range is never invented.
  std::optional<std::vector<std::pair<long long, long long>>> low_unit_values;
};

struct BKDatumSkeleton {
  OrderDesc order;
  bool level_zero = false;  // type (b): (A, sigma, Lambda) and no seq
  DefiningSeq seq;
  std::vector<CharFactor> theta_factors;
  std::vector<std::string> notes{"kappa: out of scope", "sigma: out of scope", "Lambda: out of scope"};
};

struct YuCharacter {
  int level = 0;                 // chain level of E_i (depth() for F)
  std::optional<TameSeries> c;   // nullopt: Phi_i trivial
  Rational depth;
};

struct YuDatumSkeleton {
  TowerPtr tower;
  OrderDesc point;  // stands for y
  std::vector<int> dims;
  std::vector<Rational> depths;
  std::vector<YuCharacter> characters;
  Case kase = Case::B;
  std::string rho_slot = "out of scope";

  int d() const { return static_cast<int>(dims.size()) - 1; }
};

// BK skeleton of a verified sequence, or of a level-zero datum on A.
BKDatumSkeleton make_bk(const DefiningSeq& seq);
BKDatumSkeleton make_bk_level_zero(const OrderDesc& A);

YuDatumSkeleton bk_to_yu(const BKDatumSkeleton& bk);
// Throws DepthMismatch, NotMinimalSummand, VerificationFailed.
BKDatumSkeleton yu_to_bk(const YuDatumSkeleton& yu);

// Field-by-field equality (dims, depths, realizing elements, case).
bool same_skeleton(const YuDatumSkeleton& a, const YuDatumSkeleton& b);
bool same_skeleton(const BKDatumSkeleton& a, const BKDatumSkeleton& b);

// H1, J1, J0.
FiltrationTable h_group_table(const DefiningSeq& seq);
// K+, K0, J^i, J^i+ for i = 1..d.
FiltrationTable yu_group_table(const YuDatumSkeleton& yu);

std::vector<Factor> normalize_factors(std::vector<Factor> fs);
// Throws OrderMismatch.
bool table_compare(const FiltrationTable& a, const std::string& na, const FiltrationTable& b,
                   const std::string& nb);
// Sum of the factor lattices of a table, modulo P^T.
Lattice table_lattice(const MatrixModel& model, const DefiningSeq& seq, const std::vector<Factor>& fs,
                      int T);
bool table_compare_oracle(const MatrixModel& model, const DefiningSeq& seq, const FiltrationTable& a,
                          const std::string& na, const FiltrationTable& b, const std::string& nb);

// Throws BadLevel.
CharFactor char_factor(const BKDatumSkeleton& bk, int i);

// min ord_F Tr_{A/F}(c * (B cap P^m)) for c central in B. Throws ZeroToPrecision.
long long char_module_valuation(const OrderDesc& A, const TameSeries& c, long long m);
long long oracle_char_module_valuation(const MatrixModel& model, const DefiningSeq& seq, int level,
                                       const TameSeries& c, long long m);

struct LedgerEntry {
  std::string name;
  LogIndex closed;                 // value -1 when no closed form applies
  std::optional<LogIndex> oracle;
};

struct Ledger {
  std::vector<LedgerEntry> entries;
  bool product_identity = false;
  bool even_exponents = false;
  bool closed_matches_oracle = false;
};

// log_p [U^a(B_i) : U^b(B_i)] for 1 <= a <= b, closed form.
LogIndex closed_unit_index(const DefiningSeq& seq, int level, long long a, long long b);
// Throws OracleRequired when model is null.
Ledger ledger_indices(const BKDatumSkeleton& bk, const YuDatumSkeleton& yu, const MatrixModel* model);

}  // namespace ts
