#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tamestrata/fixtures.hpp"
#include "tamestrata/tame.hpp"

using namespace ts;

namespace {

std::string error_name(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.name();
  }
  return "none";
}

std::vector<TowerPtr> all_towers() {
  std::vector<TowerPtr> out{desk_tower(), deep_tower()};
  for (const auto& nt : minimality_towers()) out.push_back(nt.tower);
  return out;
}

// Random element of L with terms s^lo .. s^(prec-1).
TameSeries random_series(const TowerPtr& T, std::mt19937& rng, int lo, int prec) {
  std::uniform_int_distribution<std::uint32_t> c(0, T->k().order() - 1);
  std::vector<Term> terms;
  for (int k = lo; k < prec; ++k) terms.push_back({k, c(rng)});
  if (terms.front().c == 0) terms.front().c = 1;
  return make_series(T, -1, terms, prec);
}

const int kDeskPrec = 16;

}  // namespace

TEST_CASE("desk tower shape") {
  auto T = desk_tower();
  CHECK(T->group_size() == 4);
  CHECK(T->depth() == 2);
  CHECK(T->level_group(0).size() == 1);
  CHECK(T->level_group(1) == Subgroup{0, 1});
  CHECK(T->level_group(2).size() == 4);
  CHECK(T->level_e(0) == 2);
  CHECK(T->level_f(0) == 2);
  CHECK(T->level_e(1) == 1);
  CHECK(T->level_f(1) == 2);
  CHECK(T->level_degree(2) == 1);
  // tau = (0,1) moves s to -s and fixes k_L.
  CHECK(T->unit(T->index_of({0, 1})) == T->k().neg(1));
  CHECK(T->unit(T->index_of({1, 0})) == 1);
}

TEST_CASE("tower_make errors") {
  auto K = default_field(5, 2);
  CHECK(error_name([&] { tower_make(TowerSpec{K, 1, 5, 1, {{{0, 0}}}}); }) == "NotTame");
  CHECK(error_name([&] { tower_make(TowerSpec{K, 1, 7, 1, {{{0, 0}}}}); }) == "RootOfUnityMissing");
  CHECK(error_name([&] {
          tower_make(TowerSpec{K, 1, 2, 1, {{{0, 0}}, {{0, 0}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}});
        }) == "BadChain");
  CHECK(error_name([&] {
          tower_make(TowerSpec{K, 1, 2, 1, {{{0, 0}}, {{0, 0}, {1, 1}, {1, 0}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}});
        }) == "NotASubgroup");
  CHECK(error_name([&] { tower_make(TowerSpec{K, 3, 2, 1, {{{0, 0}}}}); }) == "BadDegree");
}

TEST_CASE("galois action fixes t and composes") {
  for (const auto& TP : all_towers()) {
    const Tower& T = *TP;
    const FqField& K = T.k();
    const int n = T.group_size();
    for (int g = 0; g < n; ++g) {
      const auto& ge = T.element(g);
      // sigma(s)^e * zeta = t forces u^e * phi^j(zeta) = zeta.
      CHECK(K.mul(K.pow(T.unit(g), T.e_L()), K.frob(T.spec().zeta, T.base_degree(), ge.frob_power)) ==
            T.spec().zeta);
      for (std::uint32_t c = 1; c < K.order(); c += 3)
        for (int k = -3; k <= 3; ++k)
          CHECK(T.act(g, c, k) == K.mul(K.frob(c, T.base_degree(), ge.frob_power), K.pow(T.unit(g), k)));
      CHECK(T.compose(g, T.inverse(g)) == T.identity());
    }
    std::mt19937 rng(11);
    auto x = random_series(TP, rng, -3, 4 * T.e_L());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK(equal_to_precision(galois_apply(T.compose(a, b), x), galois_apply(a, galois_apply(b, x))));
  }
}

TEST_CASE("series arithmetic examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto sinv = monomial(T, -1, 1, -1, kDeskPrec);
  auto z = add(sinv, neg(sinv));
  CHECK(z.is_zero());
  CHECK(z.prec == kDeskPrec);
  auto prod = mul(monomial(T, -1, w, -2, kDeskPrec), monomial(T, -1, 1, 2, kDeskPrec));
  REQUIRE(prod.terms.size() == 1);
  CHECK(prod.terms[0] == Term{0, w});

  auto F5 = tower_from_generators(5, 1, 1, {});
  auto one_plus_s = make_series(F5, -1, {{0, 1}, {1, 1}}, 8);
  auto r = inv(one_plus_s);
  for (int k = 0; k < 8; ++k) CHECK(r.coeff(k) == (k % 2 ? 4u : 1u));
  auto back = mul(r, one_plus_s);
  REQUIRE(back.terms.size() == 1);
  CHECK(back.terms[0] == Term{0, 1});
  CHECK_THROWS_AS(inv(zero_series(T, -1, 4)), Error);
  CHECK(error_name([&] { add(sinv, one_plus_s); }) == "TowerMismatch");
}

TEST_CASE("ord and nu examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto a = ord_and_nu(monomial(T, -1, 1, -1, kDeskPrec), -1);
  CHECK(a.ord == Rational(-1, 2));
  CHECK(a.nu == -1);
  auto b = ord_and_nu(monomial(T, 1, w, -2, kDeskPrec), 1);
  CHECK(b.ord == Rational(-1));
  CHECK(b.nu == -1);
  auto c = ord_and_nu(monomial(T, 2, 1, 6, kDeskPrec), 2);
  CHECK(c.ord == Rational(3));
  CHECK(c.nu == 3);
  CHECK(error_name([&] { ord_and_nu(monomial(T, -1, 1, -1, kDeskPrec), 1); }) == "NotInLevel");
  CHECK(error_name([&] { ord_and_nu(zero_series(T, -1, kDeskPrec), -1); }) == "ZeroToPrecision");
  CHECK(error_name([&] { monomial(T, 1, 1, -1, kDeskPrec); }) == "NotInLevel");
}

TEST_CASE("galois elements and action examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  const auto& K = T->k();
  CHECK(galois_elements(*T, 2).size() == 4);
  CHECK(galois_elements(*T, 0) == std::vector<int>{0});
  CHECK(galois_elements(*T, 1) == std::vector<int>{0, 1});
  const int tau = T->index_of({0, 1}), phi = T->index_of({1, 0});
  auto beta = make_series(T, -1, {{-2, w}, {-1, 1}}, kDeskPrec);
  auto want = make_series(T, -1, {{-2, w}, {-1, K.neg(1)}}, kDeskPrec);
  CHECK(equal_to_precision(galois_apply(tau, beta), want));
  auto x = monomial(T, 1, w, -2, kDeskPrec);
  CHECK(equal_to_precision(galois_apply(phi, x), monomial(T, -1, K.pow(w, 5), -2, kDeskPrec)));
}

TEST_CASE("stabilizer examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  const int tau = T->index_of({0, 1}), phi = T->index_of({1, 0});
  auto a = stabilizer_field(monomial(T, -1, w, 0, kDeskPrec));
  CHECK(a.degree == 2);
  CHECK(a.e == 1);
  CHECK(a.f == 2);
  CHECK(a.subgroup == Subgroup{0, tau});
  auto b = stabilizer_field(monomial(T, -1, 1, -1, kDeskPrec));
  CHECK(b.degree == 2);
  CHECK(b.e == 2);
  CHECK(b.f == 1);
  CHECK(b.subgroup == Subgroup{0, phi});
  auto c = stabilizer_field(make_series(T, -1, {{-2, w}, {-1, 1}}, kDeskPrec));
  CHECK(c.degree == 4);
  CHECK(c.subgroup == Subgroup{0});
}

TEST_CASE("sr examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto a = make_series(T, -1, {{-1, w}, {1, w}}, kDeskPrec);
  CHECK(sr_standard_rep(a) == CMonomial{w, -1});
  CHECK(sr_standard_rep(monomial(T, -1, w, -3, kDeskPrec)) == CMonomial{w, -3});
  CHECK(error_name([&] { sr_standard_rep(zero_series(T, -1, kDeskPrec)); }) == "ZeroToPrecision");
}

TEST_CASE("trace and norm examples") {
  auto T = desk_tower();
  const auto w = omega(*T);
  auto tr = trace_norm(TraceOrNorm::Trace, monomial(T, 1, w, 0, kDeskPrec), 1, 2);
  REQUIRE(tr.terms.size() == 1);
  CHECK(tr.terms[0] == Term{0, 1});
  CHECK(trace_norm(TraceOrNorm::Trace, monomial(T, 0, 1, -1, kDeskPrec), 0, 1).is_zero());
  auto nm = trace_norm(TraceOrNorm::Norm, monomial(T, 0, 1, -1, kDeskPrec), 0, 1);
  REQUIRE(nm.terms.size() == 1);
  CHECK(nm.terms[0] == Term{-2, T->k().neg(1)});
  CHECK(error_name([&] { trace_norm(TraceOrNorm::Trace, monomial(T, 0, 1, -1, kDeskPrec), 1, 2); }) ==
        "NotInLevel");
}

TEST_CASE("galois action is a valuation preserving ring morphism") {
  std::mt19937 rng(3);
  for (const auto& TP : all_towers()) {
    const int prec = 6 * TP->e_L();
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_series(TP, rng, -2, prec);
      auto b = random_series(TP, rng, -1, prec);
      for (int g = 0; g < TP->group_size(); ++g) {
        CHECK(equal_to_precision(galois_apply(g, mul(a, b)), mul(galois_apply(g, a), galois_apply(g, b))));
        CHECK(equal_to_precision(galois_apply(g, add(a, b)), add(galois_apply(g, a), galois_apply(g, b))));
        CHECK(galois_apply(g, a).ord() == a.ord());
      }
    }
  }
}

TEST_CASE("inverse multiplies back to one") {
  std::mt19937 rng(5);
  for (const auto& TP : all_towers()) {
    const int prec = 6 * TP->e_L();
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_series(TP, rng, -2, prec);
      auto one = mul(a, inv(a));
      REQUIRE_FALSE(one.is_zero());
      CHECK(one.terms.front() == Term{0, 1});
      CHECK(one.terms.size() == 1);
    }
  }
}

TEST_CASE("sr is a morphism that commutes with galois") {
  std::mt19937 rng(17);
  for (const auto& TP : all_towers()) {
    const FqField& K = TP->k();
    const int prec = 8 * TP->e_L();
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_series(TP, rng, -3, prec);
      auto b = random_series(TP, rng, -2, prec);
      auto sa = sr_standard_rep(a), sb = sr_standard_rep(b);
      CHECK(sr_standard_rep(mul(a, b)) == CMonomial{K.mul(sa.coeff, sb.coeff), sa.k + sb.k});
      for (int g = 0; g < TP->group_size(); ++g)
        CHECK(equal_to_precision(galois_apply(g, to_series(TP, sa, prec)),
                                 to_series(TP, sr_standard_rep(galois_apply(g, a)), prec)));
    }
  }
}

TEST_CASE("distinct conjugates of C-monomials differ at their own ord") {
  for (const auto& TP : all_towers()) {
    const Tower& T = *TP;
    const int prec = 10 * T.e_L();
    for (int k = -6; k <= 6; ++k)
      for (std::uint32_t c = 1; c < T.k().order(); ++c) {
        auto m = monomial(TP, -1, c, k, prec);
        for (int g = 0; g < T.group_size(); ++g)
          for (int h = 0; h < T.group_size(); ++h) {
            auto d = sub(galois_apply(g, m), galois_apply(h, m));
            if (!d.is_zero()) CHECK(d.ord() == m.ord());
          }
      }
  }
}

TEST_CASE("trace and norm land in the target level") {
  std::mt19937 rng(23);
  for (const auto& TP : all_towers()) {
    const Tower& T = *TP;
    const int prec = 6 * T.e_L();
    for (int from = 0; from <= T.depth(); ++from)
      for (int to = from; to <= T.depth(); ++to) {
        auto a = random_series(TP, rng, -2, prec);
        // Project into E_from by averaging is not available in char p, so
        // keep only the terms fixed by H_from.
        std::vector<Term> kept;
        for (const auto& t : a.terms)
          if (T.term_fixed(T.level_group(from), t.c, t.k)) kept.push_back(t);
        if (kept.empty()) continue;
        auto x = make_series(TP, from, kept, prec);
        for (auto which : {TraceOrNorm::Trace, TraceOrNorm::Norm}) {
          auto y = trace_norm(which, x, from, to);
          for (int g : T.level_group(to)) CHECK(equal_to_precision(galois_apply(g, y), y));
          CHECK(y.level == to);
        }
      }
  }
}
