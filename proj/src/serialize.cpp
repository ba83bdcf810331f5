#include "tamestrata/serialize.hpp"

#include <algorithm>

namespace ts {

namespace {

[[noreturn]] void bad(const std::string& what) { fail("BadInput", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    bad(std::string("bad value for ") + what);
  }
}

Json factors_to_json(const std::vector<Factor>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) {
    Json o = {{"level", f.level}, {"m", f.m}};
    if (!f.label.empty()) o["depth"] = f.label;
    a.push_back(o);
  }
  return a;
}

OrderDesc order_from(const TowerPtr& T, const Json& payload) {
  const int m0 = payload.contains("m0") ? as<int>(payload.at("m0"), "m0") : 1;
  return make_order(T, m0);
}

bool is_term(const Json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_number_integer();
}

}  // namespace

Json document(const std::string& kind, Json payload) {
  return Json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"payload", std::move(payload)}};
}

const Json& payload_of(const Json& doc, const std::string& kind) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("payload")) bad("not a document");
  if (doc.contains("schema_version") && doc.at("schema_version") != kSchemaVersion)
    bad("unsupported schema_version");
  if (doc.at("kind") != kind) bad("expected a '" + kind + "' document");
  return doc.at("payload");
}

Json error_document(const std::string& name, const std::string& detail) {
  return document("report", {{"status", "error"}, {"error", name}, {"detail", detail}});
}

Json rational_to_json(const Rational& r) { return Json::array({r.numerator(), r.denominator()}); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    bad("rationals are [numerator, denominator]");
  const long long d = j[1].get<long long>();
  if (d == 0) bad("zero denominator");
  return Rational(j[0].get<long long>(), d);
}

Json coeff_to_json(const FqField& K, std::uint32_t c) { return K.coeffs(c); }

std::uint32_t coeff_from_json(const FqField& K, const Json& j) {
  if (j.is_number_integer()) return K.from_int(j.get<long long>());
  if (j.is_array()) {
    const auto v = as<std::vector<int>>(j, "coefficient vector");
    if (static_cast<int>(v.size()) > K.f()) bad("coefficient vector longer than the field degree");
    std::vector<int> w(v.begin(), v.end());
    for (int& x : w) x = ((x % K.p()) + K.p()) % K.p();
    return K.from_coeffs(w);
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    const std::string omega_utf8 = "\xcf\x89";
    if (s.rfind(omega_utf8, 0) == 0) s = "w" + s.substr(omega_utf8.size());
    if (s.empty() || s[0] != 'w') bad("unknown coefficient '" + j.get<std::string>() + "'");
    long long k = 1;
    if (s.size() > 1) {
      if (s[1] != '^') bad("unknown coefficient '" + j.get<std::string>() + "'");
      try {
        k = std::stoll(s.substr(2));
      } catch (const std::exception&) {
        bad("bad exponent in '" + j.get<std::string>() + "'");
      }
    }
    return K.pow(K.x(), k);
  }
  bad("coefficient must be a vector, an integer or w^k");
}

Json tower_to_json(const Tower& T) {
  const FqField& K = T.k();
  Json levels = Json::array();
  for (int i = 0; i <= T.depth(); ++i) {
    Json lv = Json::array();
    for (int g : T.level_group(i)) lv.push_back({T.element(g).frob_power, T.element(g).unif_twist});
    levels.push_back(lv);
  }
  return {{"p", K.p()},
          {"f", K.f()},
          {"modulus", K.modulus()},
          {"base_degree", T.base_degree()},
          {"e", T.e_L()},
          {"zeta", coeff_to_json(K, T.spec().zeta)},
          {"levels", levels}};
}

TowerPtr tower_from_json(const Json& j) {
  const int p = as<int>(field(j, "p"), "p");
  const int f = as<int>(field(j, "f"), "f");
  const auto modulus = as<std::vector<int>>(field(j, "modulus"), "modulus");
  TowerSpec spec;
  spec.kL = FqField::make(p, f, modulus);
  spec.base_degree = j.contains("base_degree") ? as<int>(j.at("base_degree"), "base_degree") : 1;
  spec.e_L = as<int>(field(j, "e"), "e");
  spec.zeta = j.contains("zeta") ? coeff_from_json(*spec.kL, j.at("zeta")) : 1;
  auto read_elems = [](const Json& list) {
    std::vector<GaloisElement> out;
    if (!list.is_array()) bad("a level is a list of [frob_power, unif_twist] pairs");
    for (const auto& g : list) {
      const auto v = as<std::vector<int>>(g, "Galois element");
      if (v.size() != 2) bad("Galois elements are [frob_power, unif_twist]");
      out.push_back({v[0], v[1]});
    }
    return out;
  };
  if (j.contains("levels")) {
    for (const auto& lv : j.at("levels")) spec.levels.push_back(read_elems(lv));
    return Tower::make(spec);
  }
  // Generators: close each list into a subgroup, then append the full group.
  const int fL = f / spec.base_degree;
  std::vector<GaloisElement> all;
  for (int a = 0; a < fL; ++a)
    for (int m = 0; m < spec.e_L; ++m) all.push_back({a, m});
  spec.levels = {all};
  const TowerPtr full = Tower::make(spec);
  spec.levels.clear();
  for (const auto& gens : field(j, "level_generators")) {
    std::vector<int> idx;
    for (const auto& g : read_elems(gens)) idx.push_back(full->index_of(g));
    std::vector<GaloisElement> lv;
    for (int h : full->generate(idx)) lv.push_back(full->element(h));
    spec.levels.push_back(lv);
  }
  spec.levels.push_back(all);
  return Tower::make(spec);
}

Json series_to_json(const TameSeries& x) {
  const Tower& T = *x.tower;
  Json terms = Json::array();
  for (const auto& t : x.terms)
    terms.push_back({rational_to_json(Rational(t.k, T.e_L())), coeff_to_json(T.k(), t.c)});
  return {{"level", x.level}, {"prec", rational_to_json(x.precision())}, {"terms", terms}};
}

TameSeries series_from_json(const TowerPtr& T, const Json& j, int level, std::optional<Rational> prec_ord) {
  const Json* terms = &j;
  if (j.is_object()) {
    terms = &field(j, "terms");
    if (j.contains("level")) level = as<int>(j.at("level"), "level");
    if (j.contains("prec") && !prec_ord) prec_ord = rational_from_json(j.at("prec"));
  }
  Json list = *terms;
  if (is_term(list)) list = Json::array({list});
  if (!list.is_array()) bad("element must be a list of [[num, den], coeff] terms");
  std::vector<Term> out;
  Rational lowest(0);
  for (const auto& t : list) {
    if (!is_term(t)) bad("terms are [[num, den], coeff]");
    const Rational x = rational_from_json(t[0]) * static_cast<long long>(T->e_L());
    if (x.denominator() != 1) bad("exponent not in (1/e_L)Z");
    out.push_back({static_cast<int>(x.numerator()), coeff_from_json(T->k(), t[1])});
    lowest = std::min(lowest, rational_from_json(t[0]));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i].k == out[i - 1].k) {
      out[i].c = T->k().add(out[i].c, out[i - 1].c);
      out[i - 1].c = 0;
    }
  int prec;
  if (prec_ord) {
    const Rational ps = *prec_ord * static_cast<long long>(T->e_L());
    if (ps.denominator() != 1) bad("precision not in (1/e_L)Z");
    prec = static_cast<int>(ps.numerator());
  } else {
    prec = default_precision(*T, lowest);
  }
  return make_series(T, level, out, prec);
}

Json clist_to_json(const CList& cs) {
  Json a = Json::array();
  for (const auto& e : cs) a.push_back({{"level", e.level}, {"element", series_to_json(e.c)}});
  return a;
}

CList clist_from_json(const TowerPtr& T, const Json& j, std::optional<Rational> prec_ord) {
  if (!j.is_array()) bad("c_list is an array of {level, element}");
  CList cs;
  for (const auto& e : j) {
    const int lv = as<int>(field(e, "level"), "level");
    cs.push_back({lv, series_from_json(T, field(e, "element"), lv, prec_ord)});
  }
  return cs;
}

Json seq_to_json(const DefiningSeq& seq) {
  Json entries = Json::array();
  for (const auto& e : seq.entries)
    entries.push_back({{"r", e.r}, {"level", e.level}, {"c", series_to_json(e.c)}, {"beta", series_to_json(e.beta)}});
  return {{"n", seq.n}, {"s", seq.s}, {"case", to_string(seq.kase)}, {"entries", entries}};
}

Json bk_to_json(const BKDatumSkeleton& bk) {
  Json out = {{"tower", tower_to_json(*bk.order.tower)},
              {"m0", bk.order.m0()},
              {"N", bk.order.N},
              {"level_zero", bk.level_zero},
              {"notes", bk.notes}};
  if (bk.level_zero) return out;
  out["c_list"] = clist_to_json(bk.seq.c_list());
  out["n"] = bk.seq.n;
  Json r = Json::array();
  for (const auto& e : bk.seq.entries) r.push_back(e.r);
  out["r"] = r;
  out["case"] = to_string(bk.seq.kase);
  Json th = Json::array();
  for (const auto& cf : bk.theta_factors)
    th.push_back({{"level", cf.level},
                  {"depth", rational_to_json(cf.depth)},
                  {"det_domain", factors_to_json(cf.det_domain)},
                  {"psi_domain", factors_to_json(cf.psi_domain)},
                  {"low_unit_values", nullptr}});
  out["theta_factors"] = th;
  return out;
}

BKDatumSkeleton bk_from_json(const Json& payload, std::optional<Rational> prec_ord) {
  const TowerPtr T = tower_from_json(field(payload, "tower"));
  const OrderDesc A = order_from(T, payload);
  if (payload.contains("level_zero") && as<bool>(payload.at("level_zero"), "level_zero"))
    return make_bk_level_zero(A);
  return make_bk(build_defining_sequence(A, clist_from_json(T, field(payload, "c_list"), prec_ord)));
}

Json yu_to_json(const YuDatumSkeleton& yu) {
  Json depths = Json::array();
  for (const auto& r : yu.depths) depths.push_back(rational_to_json(r));
  Json chars = Json::array();
  for (const auto& ch : yu.characters)
    chars.push_back({{"level", ch.level},
                     {"depth", rational_to_json(ch.depth)},
                     {"element", ch.c ? series_to_json(*ch.c) : Json(nullptr)}});
  return {{"tower", tower_to_json(*yu.tower)},
          {"m0", yu.point.m0()},
          {"d", yu.d()},
          {"dims", yu.dims},
          {"depths", depths},
          {"characters", chars},
          {"case", to_string(yu.kase)},
          {"rho", yu.rho_slot}};
}

YuDatumSkeleton yu_from_json(const Json& payload, std::optional<Rational> prec_ord) {
  YuDatumSkeleton yu;
  yu.tower = tower_from_json(field(payload, "tower"));
  yu.point = order_from(yu.tower, payload);
  yu.dims = as<std::vector<int>>(field(payload, "dims"), "dims");
  for (const auto& r : field(payload, "depths")) yu.depths.push_back(rational_from_json(r));
  for (const auto& ch : field(payload, "characters")) {
    YuCharacter c;
    c.level = as<int>(field(ch, "level"), "level");
    c.depth = rational_from_json(field(ch, "depth"));
    if (ch.contains("element") && !ch.at("element").is_null())
      c.c = series_from_json(yu.tower, ch.at("element"), c.level, prec_ord);
    yu.characters.push_back(c);
  }
  const std::string kase = payload.contains("case") ? as<std::string>(payload.at("case"), "case") : "B";
  if (kase != "A" && kase != "B") bad("case is A or B");
  yu.kase = kase == "A" ? Case::A : Case::B;
  return yu;
}

Json table_to_json(const FiltrationTable& t) {
  Json g = Json::object();
  for (const auto& [name, fs] : t.groups) g[name] = factors_to_json(fs);
  return {{"N", t.order.N}, {"e_A", t.order.e_A}, {"groups", g}};
}

Json ledger_to_json(const Ledger& l) {
  Json es = Json::array();
  for (const auto& e : l.entries) {
    Json o = {{"name", e.name}};
    o["closed_form"] = e.closed.value >= 0 ? Json(e.closed.value) : Json(nullptr);
    o["oracle"] = e.oracle ? Json(e.oracle->value) : Json(nullptr);
    es.push_back(o);
  }
  return {{"entries", es},
          {"product_identity", l.product_identity},
          {"even_exponents", l.even_exponents},
          {"closed_matches_oracle", l.closed_matches_oracle}};
}

Json minimality_to_json(const MinimalityReport& r) {
  return {{"minimal", r.minimal()},
          {"cond_generates", r.cond_generates},
          {"cond_gcd", r.cond_gcd},
          {"cond_residue", r.cond_residue},
          {"via_sr", r.via_sr},
          {"via_galois", r.via_galois},
          {"consistent", r.consistent()},
          {"depth", rational_to_json(r.depth)}};
}

Json ge1_to_json(const Ge1Report& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"g", p.g}, {"h", p.h}, {"ord", p.ord ? rational_to_json(*p.ord) : Json("inf")}});
  return {{"passed", r.passed}, {"depth", rational_to_json(r.depth)}, {"pairs", pairs}};
}

Json seq_report_to_json(const SeqReport& r) {
  Json v = Json::array();
  for (const auto& x : r.verdicts) v.push_back({{"name", x.name}, {"ok", x.ok}, {"detail", x.detail}});
  return {{"passed", r.passed()}, {"verdicts", v}};
}

}  // namespace ts
