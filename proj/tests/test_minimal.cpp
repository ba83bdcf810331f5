#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tamestrata/fixtures.hpp"
#include "tamestrata/minimal.hpp"

using namespace ts;

namespace {

const int kPrec = 24;

struct Case {
  TowerPtr tower;
  int upper, lower;
  TameSeries c;
};

// C-monomials a s^k in E_upper with k in [-6, -1], every chain pair.
std::vector<Case> monomials(const std::vector<TowerPtr>& towers) {
  std::vector<Case> out;
  for (const auto& TP : towers) {
    const Tower& T = *TP;
    for (int up = 0; up <= T.depth(); ++up)
      for (int lo = up + 1; lo <= T.depth(); ++lo)
        for (int k = -6; k <= -1; ++k)
          for (std::uint32_t a = 1; a < T.k().order(); ++a)
            if (T.term_fixed(T.level_group(up), a, k))
              out.push_back({TP, up, lo, monomial(TP, up, a, k, kPrec * T.e_L())});
  }
  return out;
}

std::vector<TowerPtr> towers() {
  std::vector<TowerPtr> out{desk_tower(), deep_tower()};
  for (const auto& nt : minimality_towers()) out.push_back(nt.tower);
  return out;
}

}  // namespace

TEST_CASE("is_minimal examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto a = is_minimal(monomial(T, 0, w, -1, 32), 0, 2);
  CHECK(a.minimal());
  CHECK(a.cond_gcd);
  CHECK(a.cond_residue);
  CHECK(a.depth == Rational(1, 2));
  auto b = is_minimal(monomial(T, 2, 1, -2, 32), 0, 2);
  CHECK_FALSE(b.minimal());
  CHECK_FALSE(b.cond_generates);
  auto c = is_minimal(monomial(T, 0, 1, -1, 32), 0, 1);
  CHECK(c.minimal());
  CHECK_THROWS_AS(is_minimal(zero_series(T, 0, 32), 0, 2), Error);
}

TEST_CASE("minimal_equiv_check examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  CHECK(minimal_equiv_check(monomial(T, 2, 1, -2, 32), 0, 2));
  CHECK(minimal_equiv_check(make_series(T, 0, {{-1, w}, {1, w}}, 32), 0, 2));
  CHECK(is_minimal(make_series(T, 0, {{-1, w}, {1, w}}, 32), 0, 2).minimal());
}

TEST_CASE("ge1 examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto a = ge1_check(monomial(T, 0, w, -1, 32), 0, 2);
  CHECK(a.passed);
  CHECK(a.pairs.size() > 0);
  for (const auto& pr : a.pairs) {
    REQUIRE(pr.ord.has_value());
    CHECK(*pr.ord == Rational(-1, 2));
  }
  auto b = ge1_check(monomial(T, 2, 1, -2, 32), 0, 2);
  CHECK_FALSE(b.passed);
  bool infinite = false;
  for (const auto& pr : b.pairs) infinite = infinite || !pr.ord;
  CHECK(infinite);
  auto c = ge1_check(monomial(T, 0, 1, -3, 32), 0, 1);
  CHECK(c.passed);
  for (const auto& pr : c.pairs) CHECK(*pr.ord == Rational(-3, 2));
}

TEST_CASE("three minimality routes agree on C-monomials") {
  auto cases = monomials(towers());
  CHECK(cases.size() > 1000);
  int minimal = 0;
  for (const auto& cs : cases) {
    auto r = is_minimal(cs.c, cs.upper, cs.lower);
    CHECK(r.consistent());
    minimal += r.minimal();
  }
  CHECK(minimal > 0);
  CHECK(minimal < static_cast<int>(cases.size()));
}

TEST_CASE("GE1 agrees with minimality and sees the depth") {
  for (const auto& cs : monomials(towers())) {
    auto g = ge1_check(cs.c, cs.upper, cs.lower);
    CHECK(g.passed == is_minimal(cs.c, cs.upper, cs.lower).minimal());
    if (g.passed)
      for (const auto& pr : g.pairs)
        if (pr.ord) CHECK(*pr.ord == -g.depth);
  }
}

TEST_CASE("minimality is stable under one-units") {
  std::mt19937 rng(29);
  auto cases = monomials({desk_tower(), deep_tower()});
  for (size_t i = 0; i < cases.size(); i += 3) {
    const auto& cs = cases[i];
    const Tower& T = *cs.tower;
    const int prec = kPrec * T.e_L();
    std::vector<Term> terms{{0, 1}};
    std::uniform_int_distribution<std::uint32_t> d(0, T.k().order() - 1);
    for (int k = T.e_L(); k < 3 * T.e_L(); ++k) {
      const std::uint32_t a = d(rng);
      if (a && T.term_fixed(T.level_group(cs.upper), a, k)) terms.push_back({k, a});
    }
    auto u = make_series(cs.tower, cs.upper, terms, prec);
    auto cu = mul(cs.c, u);
    CHECK(is_minimal(cu, cs.upper, cs.lower).minimal() == is_minimal(cs.c, cs.upper, cs.lower).minimal());
    CHECK(minimal_equiv_check(cu, cs.upper, cs.lower));
  }
}

TEST_CASE("series_pow") {
  auto T = desk_tower();
  auto x = make_series(T, -1, {{-1, 2}, {0, 1}}, 16);
  CHECK(equal_to_precision(series_pow(x, 3), mul(x, mul(x, x))));
  CHECK(equal_to_precision(series_pow(x, -2), inv(mul(x, x))));
  CHECK(equal_to_precision(series_pow(x, 0), monomial(T, -1, 1, 0, 16)));
}
