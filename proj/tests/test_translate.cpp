#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tamestrata/fixtures.hpp"
#include "tamestrata/serialize.hpp"
#include "tamestrata/suites.hpp"
#include "tamestrata/translate.hpp"

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

using Pairs = std::vector<std::pair<int, long long>>;

Pairs pairs(const std::vector<Factor>& fs) {
  Pairs out;
  for (const auto& f : fs) out.push_back({f.level, f.m});
  return out;
}

struct Desk {
  TowerPtr T = desk_tower();
  OrderDesc A = make_order(T);
  std::uint32_t w = omega(*T);
  DefiningSeq seq = build_defining_sequence(A, {{0, monomial(T, 0, 1, -1, kPrec)}, {1, monomial(T, 1, w, -2, kPrec)}});
  BKDatumSkeleton bk = make_bk(seq);
  YuDatumSkeleton yu = bk_to_yu(bk);
};

BKDatumSkeleton single_block() {
  auto T = desk_tower();
  auto A = make_order(T);
  return make_bk(build_defining_sequence(A, {{0, monomial(T, 0, omega(*T), -1, kPrec)}}));
}

}  // namespace

TEST_CASE("bk_to_yu examples") {
  Desk d;
  CHECK(d.yu.d() == 2);
  CHECK(d.yu.dims == std::vector<int>{1, 2, 4});
  CHECK(d.yu.depths == std::vector<Rational>{Rational(1, 2), Rational(1), Rational(1)});
  CHECK(d.yu.kase == Case::B);
  CHECK_FALSE(d.yu.characters.back().c.has_value());

  auto y1 = bk_to_yu(single_block());
  CHECK(y1.d() == 1);
  CHECK(y1.dims == std::vector<int>{1, 4});
  CHECK(y1.depths == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  auto a = make_bk(build_defining_sequence(d.A, {{1, monomial(d.T, 1, d.w, -2, kPrec)}, {2, monomial(d.T, 2, 1, -4, kPrec)}}));
  auto ya = bk_to_yu(a);
  CHECK(ya.kase == Case::A);
  CHECK(ya.d() == a.seq.s);
  CHECK(ya.dims.back() == 4);
}

TEST_CASE("yu_to_bk examples") {
  Desk d;
  auto back = yu_to_bk(d.yu);
  CHECK(same_skeleton(back, d.bk));
  CHECK(back.seq.n == 2);
  CHECK(back.seq.entries[1].r == 1);
  CHECK(equal_to_precision(back.seq.entries[0].beta, make_series(d.T, 0, {{-2, d.w}, {-1, 1}}, kPrec)));

  auto bad = d.yu;
  std::swap(bad.depths[0], bad.depths[1]);
  CHECK(error_name([&] { yu_to_bk(bad); }) == "DepthMismatch");

  auto lz = make_bk_level_zero(d.A);
  auto ylz = bk_to_yu(lz);
  CHECK(ylz.d() == 0);
  CHECK(ylz.depths == std::vector<Rational>{Rational(0)});
  CHECK(yu_to_bk(ylz).level_zero);
}

TEST_CASE("filtration tables of the desk datum") {
  Desk d;
  auto h = h_group_table(d.seq);
  CHECK(pairs(h.get("H1")) == Pairs{{0, 1}, {1, 1}, {2, 2}});
  CHECK(pairs(h.get("J1")) == Pairs{{0, 1}, {1, 1}, {2, 1}});
  CHECK(pairs(h.get("J0")) == Pairs{{0, 0}, {1, 1}, {2, 1}});
  auto y = yu_group_table(d.yu);
  CHECK(pairs(y.get("K+")) == Pairs{{0, 1}, {1, 1}, {2, 2}});
  CHECK(pairs(y.get("K0")) == Pairs{{0, 0}, {1, 1}, {2, 1}});
  CHECK(pairs(y.get("J^2")) == Pairs{{1, 2}, {2, 1}});
  CHECK(pairs(y.get("J^2+")) == Pairs{{1, 2}, {2, 2}});
  CHECK(table_compare(h, "H1", y, "K+"));
  CHECK(table_compare(h, "J0", y, "K0"));
  CHECK_FALSE(table_compare(h, "J1", y, "K+"));

  auto model = model_build(d.A, oracle_prec_for(d.A, d.seq.n));
  CHECK(table_compare_oracle(model, d.seq, h, "H1", y, "K+"));
  CHECK(table_compare_oracle(model, d.seq, h, "J0", y, "K0"));
  CHECK_FALSE(table_compare_oracle(model, d.seq, h, "J1", y, "K+"));

  auto other = h_group_table(make_bk(build_defining_sequence(make_order(d.T, 2), d.seq.c_list())).seq);
  CHECK(error_name([&] { table_compare(h, "H1", other, "H1"); }) == "OrderMismatch");

  auto h1 = h_group_table(single_block().seq);
  CHECK(pairs(h1.get("H1")) == pairs(h1.get("J1")));
}

TEST_CASE("normalize drops dominated factors") {
  auto n = normalize_factors({{0, 3, ""}, {1, 2, ""}, {2, 2, ""}, {1, 5, ""}});
  CHECK(pairs(n) == Pairs{{2, 2}});
  auto m = normalize_factors({{0, 1, ""}, {1, 1, ""}, {2, 2, ""}});
  CHECK(pairs(m) == Pairs{{1, 1}, {2, 2}});
}

TEST_CASE("character factors") {
  Desk d;
  auto c0 = char_factor(d.bk, 0);
  CHECK(pairs(c0.det_domain) == Pairs{{0, 1}});
  CHECK(pairs(c0.psi_domain) == Pairs{{1, 1}, {2, 2}});
  CHECK(equal_to_precision(c0.c, monomial(d.T, 0, 1, -1, kPrec)));
  CHECK_FALSE(c0.low_unit_values.has_value());
  auto c1 = char_factor(d.bk, 1);
  CHECK(pairs(c1.det_domain) == Pairs{{0, 1}, {1, 1}});
  CHECK(pairs(c1.psi_domain) == Pairs{{2, 2}});
  CHECK(error_name([&] { char_factor(d.bk, 5); }) == "BadLevel");
}

TEST_CASE("character module valuations") {
  Desk d;
  auto c = monomial(d.T, 1, d.w, -2, kPrec);
  CHECK(char_module_valuation(d.A, c, 3) == 1);
  CHECK(char_module_valuation(d.A, c, 2) == 0);
  CHECK(error_name([&] { char_module_valuation(d.A, zero_series(d.T, 1, kPrec), 2); }) == "ZeroToPrecision");
  auto model = model_build(d.A, oracle_prec_for(d.A, d.seq.n));
  CHECK(oracle_char_module_valuation(model, d.seq, 1, c, 3) == 1);
  CHECK(oracle_char_module_valuation(model, d.seq, 1, c, 2) == 0);
}

TEST_CASE("ledger of the desk datum") {
  Desk d;
  CHECK(closed_unit_index(d.seq, 1, 1, 2).value == 4);
  CHECK(closed_unit_index(d.seq, 0, 1, 2).value == 2);
  CHECK(closed_unit_index(d.seq, 2, 1, 2).value == 8);
  CHECK(error_name([&] { ledger_indices(d.bk, d.yu, nullptr); }) == "OracleRequired");
  auto model = model_build(d.A, oracle_prec_for(d.A, d.seq.n));
  auto l = ledger_indices(d.bk, d.yu, &model);
  CHECK(l.product_identity);
  CHECK(l.even_exponents);
  CHECK(l.closed_matches_oracle);
  bool saw = false;
  for (const auto& e : l.entries)
    if (e.name == "J1/H1") {
      REQUIRE(e.oracle.has_value());
      CHECK(e.oracle->value == 4);
      saw = true;
    }
  CHECK(saw);

  auto one = single_block();
  auto m1 = model_build(one.order, oracle_prec_for(one.order, one.seq.n));
  for (const auto& e : ledger_indices(one, bk_to_yu(one), &m1).entries)
    if (e.name == "J1/H1") CHECK(e.oracle->value == 0);
}

TEST_CASE("corpus round trips, tables and depths") {
  auto corpus = build_corpus();
  CHECK(static_cast<int>(corpus.size()) >= kCorpusMinimum);
  bool case_a = false, case_b = false;
  for (const auto& dat : corpus) {
    auto bk = datum_bk(dat);
    auto yu = bk_to_yu(bk);
    auto bk2 = yu_to_bk(yu);
    CHECK(same_skeleton(bk2, bk));
    CHECK(same_skeleton(bk_to_yu(bk2), yu));
    if (dat.level_zero) continue;
    (bk.seq.kase == Case::A ? case_a : case_b) = true;
    auto h = h_group_table(bk.seq);
    auto y = yu_group_table(yu);
    CHECK(table_compare(h, "H1", y, "K+"));
    CHECK(table_compare(h, "J0", y, "K0"));
    for (int i = 0; i <= bk.seq.s; ++i) {
      const auto& c = bk.seq.entries[i].c;
      const long long nu = nu_A(dat.order, c);
      CHECK(Rational(-nu, dat.order.e_A) == -c.ord());
      CHECK(char_module_valuation(dat.order, c, -nu + 1) >= 1);
      CHECK(char_module_valuation(dat.order, c, -nu) <= 0);
    }
    for (const auto& ch : yu.characters)
      if (ch.c) CHECK(ch.depth == -ch.c->ord());
  }
  CHECK(case_a);
  CHECK(case_b);
}

TEST_CASE("skeleton serialization round trip") {
  for (const auto& dat : build_corpus()) {
    auto bk = datum_bk(dat);
    auto doc = document("bk_datum", bk_to_json(bk));
    auto parsed = Json::parse(doc.dump());
    CHECK(same_skeleton(bk_from_json(payload_of(parsed, "bk_datum")), bk));
    auto yu = bk_to_yu(bk);
    CHECK(same_skeleton(yu_from_json(Json::parse(yu_to_json(yu).dump())), yu));
  }
  CHECK(error_name([] { payload_of(Json::parse(R"({"schema_version":"1","kind":"yu_datum","payload":{}})"), "bk_datum"); }) ==
        "BadInput");
}
