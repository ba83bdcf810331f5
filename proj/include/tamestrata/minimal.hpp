#pragma once

#include <optional>
#include <vector>

#include "tamestrata/tame.hpp"

namespace ts {

struct MinimalityReport {
  bool cond_generates = false;  // E_lower[c] = E_upper
  bool cond_gcd = false;        // gcd(nu_E(c), e(E|E_lower)) = 1, E = E_lower[c]
  bool cond_residue = false;    // pi^{-nu} c^e generates k_E over k_{E_lower}
  bool via_sr = false;          // E_lower[sr(c)] = E_upper
  bool via_galois = false;      // all conjugate differences over E_lower have ord(c)
  Rational depth;               // -ord(c)

  bool by_definition() const { return cond_generates && cond_gcd && cond_residue; }
  bool minimal() const { return by_definition(); }
  bool consistent() const { return by_definition() == via_sr && via_sr == via_galois; }
};

struct Ge1Pair {
  int g = 0;
  int h = 0;
  std::optional<Rational> ord;  // nullopt = +infinity (equal conjugates)
};

struct Ge1Report {
  Rational depth;
  std::vector<Ge1Pair> pairs;
  bool passed = false;
};

// Minimality of c relative to E_upper / E_lower (upper <= lower are chain
// indices). Throws ZeroToPrecision, NotInLevel.
MinimalityReport is_minimal(const TameSeries& c, int upper, int lower);
bool minimal_equiv_check(const TameSeries& c, int upper, int lower);
// GE1 over pairs of F-embeddings of E_upper that agree on E_lower.
Ge1Report ge1_check(const TameSeries& c, int upper, int lower);

TameSeries series_pow(const TameSeries& a, long long k);

}  // namespace ts
