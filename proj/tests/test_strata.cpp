#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tamestrata/fixtures.hpp"
#include "tamestrata/strata.hpp"
#include "tamestrata/suites.hpp"

using namespace ts;

namespace {

const int kPrec = 32;

std::string error_name(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.name();
  }
  return "none";
}

struct Desk {
  TowerPtr T = desk_tower();
  OrderDesc A = make_order(T);
  std::uint32_t w = omega(*T);
  TameSeries sinv = monomial(T, 0, 1, -1, kPrec);
  TameSeries wtinv = monomial(T, 1, w, -2, kPrec);
  TameSeries beta = add(sinv, wtinv);
};

TameSeries sum_of(const CList& cs) {
  TameSeries acc = cs.front().c;
  for (size_t i = 1; i < cs.size(); ++i) acc = add(acc, cs[i].c);
  return acc;
}

}  // namespace

TEST_CASE("order of the desk tower") {
  Desk d;
  CHECK(d.A.N == 4);
  CHECK(d.A.e_A == 2);
  CHECK(d.A.m == std::vector<int>{1, 2, 4});
  CHECK(d.A.e_B(1) == 2);
  auto A2 = make_order(d.T, 2);
  CHECK(A2.N == 8);
  CHECK(A2.m0() == 2);
}

TEST_CASE("nu_A examples") {
  Desk d;
  CHECK(nu_A(d.A, d.sinv) == -1);
  CHECK(nu_A(d.A, d.wtinv) == -2);
  CHECK(nu_A(d.A, monomial(d.T, 2, 1, 2, kPrec)) == 2);
  CHECK(error_name([&] { nu_A(d.A, zero_series(d.T, 0, kPrec)); }) == "ZeroToPrecision");
}

TEST_CASE("k0 examples") {
  Desk d;
  CHECK_FALSE(k0_closed(d.A, monomial(d.T, 2, 1, -2, kPrec)).has_value());
  CHECK(k0_closed(d.A, monomial(d.T, 0, d.w, -1, kPrec)) == K0(-1));
  CHECK(k0_closed(d.A, d.beta) == K0(-1));
  CHECK(k0_galois(d.A, d.beta) == K0(-1));
}

TEST_CASE("classify examples") {
  Desk d;
  CHECK(stratum_classify({d.A, 2, 0, d.beta}) == StratumKind::Simple);
  CHECK(stratum_classify({d.A, 2, 1, d.beta}) == StratumKind::Pure);
  CHECK(stratum_classify({d.A, 3, 0, d.wtinv}) == StratumKind::Neither);
  CHECK(to_string(StratumKind::Pure) == "pure");
}

TEST_CASE("decompose examples") {
  Desk d;
  auto cs = decompose_split_form(d.A, d.beta);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].level == 0);
  CHECK(equal_to_precision(cs[0].c, d.sinv));
  CHECK(cs[1].level == 1);
  CHECK(equal_to_precision(cs[1].c, d.wtinv));
  auto one = decompose_split_form(d.A, d.wtinv);
  REQUIRE(one.size() == 1);
  CHECK(one[0].level == 1);
  auto f = decompose_split_form(d.A, monomial(d.T, 2, 1, -2, kPrec));
  REQUIRE(f.size() == 1);
  CHECK(f[0].level == 2);
}

TEST_CASE("defining sequence examples") {
  Desk d;
  auto seq = build_defining_sequence(d.A, {{0, d.sinv}, {1, d.wtinv}});
  CHECK(seq.n == 2);
  CHECK(seq.s == 1);
  CHECK(seq.entries[0].r == 0);
  CHECK(seq.entries[1].r == 1);
  CHECK(seq.kase == Case::B);
  CHECK(case_of(seq) == Case::B);
  CHECK(verify_defining_sequence(seq).passed());

  auto single = build_defining_sequence(d.A, {{0, monomial(d.T, 0, d.w, -1, kPrec)}});
  CHECK(single.n == 1);
  CHECK(single.s == 0);
  CHECK(single.kase == Case::B);

  auto a = build_defining_sequence(d.A, {{1, d.wtinv}, {2, monomial(d.T, 2, 1, -4, kPrec)}});
  CHECK(case_of(a) == Case::A);
  CHECK(a.n == 4);

  auto f = build_defining_sequence(d.A, {{2, monomial(d.T, 2, 1, -2, kPrec)}});
  CHECK(case_of(f) == Case::A);
  CHECK(f.s == 0);
}

TEST_CASE("defining sequence errors") {
  Desk d;
  CHECK(error_name([&] { build_defining_sequence(d.A, {{0, monomial(d.T, 0, 1, -2, kPrec)}}); }) ==
        "NotMinimalSummand");
  CHECK(error_name([&] {
          build_defining_sequence(d.A, {{0, monomial(d.T, 0, 1, -3, kPrec)}, {1, d.wtinv}});
        }) == "ValuationOrder");
  CHECK(error_name([&] { build_defining_sequence(d.A, {}); }) == "VerificationFailed");
}

TEST_CASE("tampered sequences fail the right checks") {
  Desk d;
  auto swapped = assemble_sequence(d.A, {{1, d.wtinv}, {0, d.sinv}});
  CHECK_FALSE(verify_defining_sequence(swapped).get("b_levels").ok);
  // c_0 lies in E_1 but is declared at E_0.
  auto flat = assemble_sequence(d.A, {{0, monomial(d.T, 1, 1, -2, kPrec)}, {1, monomial(d.T, 1, d.w, -4, kPrec)}});
  auto rep = verify_defining_sequence(flat);
  CHECK_FALSE(rep.get("c_fields").ok);
  CHECK_FALSE(rep.get("f_minimal").ok);
}

TEST_CASE("nu_A scales ord by e_A") {
  std::mt19937 rng(41);
  std::vector<OrderDesc> orders{make_order(desk_tower()), make_order(deep_tower()), make_order(desk_tower(), 2)};
  for (const auto& nt : minimality_towers()) orders.push_back(make_order(nt.tower));
  int samples = 0;
  for (const auto& A : orders) {
    const Tower& T = *A.tower;
    std::uniform_int_distribution<std::uint32_t> c(0, T.k().order() - 1);
    std::uniform_int_distribution<int> lo(-8, 4);
    for (int trial = 0; trial < 100; ++trial)
      for (int lv = 0; lv <= T.depth(); ++lv) {
        std::vector<Term> terms;
        for (int k = lo(rng); k < 6 * T.e_L(); ++k) {
          const std::uint32_t a = c(rng);
          if (a && T.term_fixed(T.level_group(lv), a, k)) terms.push_back({k, a});
        }
        if (terms.empty()) continue;
        auto x = make_series(A.tower, lv, terms, 6 * T.e_L());
        auto on = ord_and_nu(x, lv);
        CHECK(nu_A(A, x) * T.level_e(lv) == A.e_A * on.nu);
        ++samples;
      }
  }
  CHECK(samples >= 1000);
}

TEST_CASE("corpus round trip and sequence properties") {
  auto corpus = build_corpus();
  int checked = 0;
  for (const auto& dat : corpus) {
    if (dat.level_zero) continue;
    const OrderDesc& A = dat.order;
    auto seq = build_defining_sequence(A, dat.cs);
    const TameSeries beta = sum_of(dat.cs);
    auto again = build_defining_sequence(A, decompose_split_form(A, beta));
    CHECK(equal_to_precision(sum_of(again.c_list()), beta));
    CHECK(again.n == seq.n);
    CHECK(again.s == seq.s);
    CHECK(again.kase == seq.kase);
    for (int i = 0; i <= seq.s; ++i) CHECK(again.entries[i].r == seq.entries[i].r);
    // Each beta_i is simple at the level just below the next jump.
    for (int i = 0; i <= seq.s; ++i) {
      const long long next_r = i < seq.s ? seq.entries[i + 1].r : seq.n;
      CHECK(stratum_classify({A, seq.n, next_r - 1, seq.entries[i].beta}) == StratumKind::Simple);
    }
    // Depths strictly increase along the sequence.
    for (int i = 0; i < seq.s; ++i)
      CHECK(nu_A(A, seq.entries[i].c) > nu_A(A, seq.entries[i + 1].c));
    CHECK(k0_closed(A, beta) == k0_galois(A, beta));
    ++checked;
  }
  CHECK(checked >= 50);
}
