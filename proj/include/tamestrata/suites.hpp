#pragma once

#include <string>
#include <vector>

#include "tamestrata/translate.hpp"

namespace ts {

struct CorpusDatum {
  std::string name;
  OrderDesc order;
  bool level_zero = false;
  CList cs;  // empty for level-zero data
};

// Deterministic corpus over the built-in towers: Cases A and B, d = 0..3.
std::vector<CorpusDatum> build_corpus();
BKDatumSkeleton datum_bk(const CorpusDatum& d);

enum class OracleMode { Off, On, Check };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;  // oracle-only criterion with the oracle off
  long long cases = 0;
  long long failures = 0;
  double seconds = 0;
  std::string detail;
};

// Tolerances: every criterion is exact; the two timed ones carry limits.
inline constexpr double kMinimalityTimeLimit = 30.0;
inline constexpr double kCriticalExponentTimeLimit = 120.0;
inline constexpr int kValuationSamples = 1000;
inline constexpr int kCorpusMinimum = 50;

CriterionResult criterion_minimality();
CriterionResult criterion_generic();
CriterionResult criterion_valuation(OracleMode mode);
CriterionResult criterion_critical_exponent(const std::vector<CorpusDatum>& corpus, OracleMode mode);
CriterionResult criterion_filtrations(const std::vector<CorpusDatum>& corpus, OracleMode mode);
CriterionResult criterion_index(const std::vector<CorpusDatum>& corpus, OracleMode mode);
CriterionResult criterion_character_depth(const std::vector<CorpusDatum>& corpus, OracleMode mode);
CriterionResult criterion_round_trip(const std::vector<CorpusDatum>& corpus);
CriterionResult criterion_ce();

// which: "all" or a criterion number 1..9.
std::vector<CriterionResult> run_suites(const std::string& which, OracleMode mode,
                                        const std::vector<CorpusDatum>& corpus);

}  // namespace ts
