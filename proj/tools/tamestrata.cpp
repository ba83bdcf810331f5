#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "tamestrata/fixtures.hpp"
#include "tamestrata/serialize.hpp"
#include "tamestrata/suites.hpp"

using namespace ts;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 2;
constexpr int kInputError = 3;

struct Options {
  std::string tower_file;
  std::string prec;
  std::string oracle = "off";
  bool human = false;
};

Json read_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail("BadInput", std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("BadInput", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_json_text(ss.str());
}

// "@path" reads a file, anything else is inline JSON.
Json read_arg(const std::string& arg) {
  return !arg.empty() && arg[0] == '@' ? read_json_file(arg.substr(1)) : read_json_text(arg);
}

std::optional<Rational> parse_prec(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    const auto slash = s.find('/');
    const Rational r = slash == std::string::npos ? Rational(std::stoll(s))
                                                  : Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    if (r <= 0) fail("BadInput", "--prec must be positive");
    return r;
  } catch (const std::logic_error&) {
    fail("BadInput", "--prec must be an integer or a fraction a/b");
  }
}

TowerPtr load_tower(const Options& o) {
  if (o.tower_file.empty()) return desk_tower();
  const Json j = read_json_file(o.tower_file);
  return tower_from_json(j.contains("kind") ? payload_of(j, "tower") : j);
}

Json load_datum(const std::string& path, const std::string& kind) {
  const Json j = read_json_file(path);
  return j.contains("kind") ? payload_of(j, kind) : j;
}

OracleMode oracle_mode(const Options& o) {
  if (o.oracle == "on") return OracleMode::On;
  if (o.oracle == "check") return OracleMode::Check;
  return OracleMode::Off;
}

std::string human_scalar(const Json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer() &&
      j[1].get<long long>() > 0)
    return to_string(Rational(j[0].get<long long>(), j[1].get<long long>()));
  return j.dump();
}

void print_human(std::ostream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && v.size() == 2 && v[0].is_number_integer())) {
        out << pad << k << ":\n";
        print_human(out, v, indent + 2);
      } else {
        out << pad << k << ": " << human_scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        out << pad << "-\n";
        print_human(out, v, indent + 2);
      } else {
        out << pad << "- " << human_scalar(v) << "\n";
      }
    }
  } else {
    out << pad << j.dump() << "\n";
  }
}

void emit(const Options& o, const Json& doc) {
  if (o.human) {
    std::cout << doc.at("kind").get<std::string>() << "\n";
    print_human(std::cout, doc.at("payload"), 2);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

int exit_for(const std::string& error_name) {
  static const std::set<std::string> verification{"NotMinimalSummand", "ValuationOrder", "VerificationFailed",
                                                  "NotDecomposable", "DepthMismatch"};
  return verification.count(error_name) ? kVerificationFailed : kInputError;
}

Json tables_payload(const BKDatumSkeleton& bk, OracleMode mode) {
  const YuDatumSkeleton yu = bk_to_yu(bk);
  const FiltrationTable H = h_group_table(bk.seq);
  const FiltrationTable Y = yu_group_table(yu);
  Json cmp = {{"H1=K+", table_compare(H, "H1", Y, "K+")},
              {"J0=K0", table_compare(H, "J0", Y, "K0")},
              {"J1=K+", table_compare(H, "J1", Y, "K+")}};
  Json out = {{"bk", table_to_json(H)}, {"yu", table_to_json(Y)}, {"closed_form", cmp}};
  if (mode != OracleMode::Off) {
    const MatrixModel model = model_build(bk.order, oracle_prec_for(bk.order, bk.seq.n));
    Json oc = {{"H1=K+", table_compare_oracle(model, bk.seq, H, "H1", Y, "K+")},
               {"J0=K0", table_compare_oracle(model, bk.seq, H, "J0", Y, "K0")},
               {"J1=K+", table_compare_oracle(model, bk.seq, H, "J1", Y, "K+")}};
    if (mode == OracleMode::Check && oc != cmp) fail("VerificationFailed", "closed form and oracle disagree");
    out["oracle"] = oc;
  }
  return out;
}

Json suites_payload(const std::vector<CriterionResult>& rs, bool& all_ok) {
  Json arr = Json::array();
  all_ok = true;
  for (const auto& r : rs) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"skipped", r.skipped},
                   {"cases", r.cases},
                   {"failures", r.failures},
                   {"detail", r.detail}});
    if (!r.passed && !r.skipped) all_ok = false;
  }
  return {{"status", all_ok ? "ok" : "failed"}, {"criteria", arr}};
}

std::vector<CorpusDatum> load_corpus(const std::string& path, std::optional<Rational> prec) {
  const Json j = read_json_file(path);
  if (!j.is_array()) fail("BadInput", "a corpus file is a JSON array of bk_datum documents");
  std::vector<CorpusDatum> out;
  int idx = 0;
  for (const auto& doc : j) {
    const BKDatumSkeleton bk = bk_from_json(doc.contains("kind") ? payload_of(doc, "bk_datum") : doc, prec);
    out.push_back({"user#" + std::to_string(idx++), bk.order, bk.level_zero, bk.level_zero ? CList{} : bk.seq.c_list()});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tamestrata: tame towers, minimal elements, simple strata and datum translation"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tower", o.tower_file, "tower document (default: built-in desk tower)");
  app.add_option("--prec", o.prec, "working precision in ord units (integer or a/b)");
  app.add_option("--oracle", o.oracle, "matrix-model oracle")->check(CLI::IsMember({"on", "off", "check"}));
  app.add_flag("--human", o.human, "human-readable output");

  std::string element, clist, datum, suite = "all", corpus;
  int upper = 0, lower = 0, level = 0, m0 = 1;

  auto* cm = app.add_subcommand("check-minimal", "minimality of an element of E_upper over E_lower");
  auto* ge = app.add_subcommand("ge1", "GE1 genericity check");
  for (auto* sc : {cm, ge}) {
    sc->add_option("--element", element, "element (JSON or @file)")->required();
    sc->add_option("--upper", upper, "chain level of the element's field")->required();
    sc->add_option("--lower", lower, "chain level of the base field")->required();
  }
  auto* sr = app.add_subcommand("sr", "standard representative");
  sr->add_option("--element", element, "element (JSON or @file)")->required();
  sr->add_option("--level", level, "chain level the element lies in");
  auto* dec = app.add_subcommand("decompose", "split a tower element into minimal summands");
  dec->add_option("--element", element, "element (JSON or @file)")->required();
  dec->add_option("--m0", m0, "copies of E_0 in V");
  auto* ds = app.add_subcommand("defseq", "build and verify a defining sequence");
  ds->add_option("--c-list", clist, "c_list (JSON or @file)")->required();
  ds->add_option("--m0", m0, "copies of E_0 in V");
  auto* b2y = app.add_subcommand("bk2yu", "BK datum skeleton to Yu datum skeleton");
  auto* y2b = app.add_subcommand("yu2bk", "Yu datum skeleton to BK datum skeleton");
  auto* tb = app.add_subcommand("tables", "filtration tables of a BK datum");
  auto* lg = app.add_subcommand("ledger", "index ledger of a BK datum");
  for (auto* sc : {b2y, y2b, tb, lg}) sc->add_option("--datum", datum, "datum document")->required();
  auto* vf = app.add_subcommand("verify", "run the acceptance property suites");
  vf->add_option("--suite", suite, "all or a criterion number 1..9");
  vf->add_option("--corpus", corpus, "JSON array of bk_datum documents (default: built-in corpus)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kInputError;
  }

  try {
    const std::optional<Rational> prec = parse_prec(o.prec);
    const OracleMode mode = oracle_mode(o);
    int code = kOk;
    Json doc;
    if (*cm || *ge) {
      const TowerPtr T = load_tower(o);
      const TameSeries c = series_from_json(T, read_arg(element), upper, prec);
      doc = *cm ? document("report", {{"status", "ok"}, {"minimality", minimality_to_json(is_minimal(c, upper, lower))}})
                : document("report", {{"status", "ok"}, {"ge1", ge1_to_json(ge1_check(c, upper, lower))}});
    } else if (*sr) {
      const TowerPtr T = load_tower(o);
      const TameSeries c = series_from_json(T, read_arg(element), level, prec);
      const CMonomial m = sr_standard_rep(c);
      doc = document("element", series_to_json(to_series(T, m, c.prec)));
    } else if (*dec) {
      const TowerPtr T = load_tower(o);
      const TameSeries b = series_from_json(T, read_arg(element), 0, prec);
      doc = document("c_list", clist_to_json(decompose_split_form(make_order(T, m0), b)));
    } else if (*ds) {
      const TowerPtr T = load_tower(o);
      Json j = read_arg(clist);
      if (j.contains("kind")) j = payload_of(j, "c_list");
      const OrderDesc A = make_order(T, m0);
      const CList cs = clist_from_json(T, j, prec);
      const DefiningSeq seq = assemble_sequence(A, cs);
      const SeqReport rep = verify_defining_sequence(seq);
      Json payload = {{"status", rep.passed() ? "ok" : "failed"}, {"sequence", seq_to_json(seq)},
                      {"verification", seq_report_to_json(rep)}};
      if (rep.passed()) build_defining_sequence(A, cs);  // summand-level checks
      doc = document("report", payload);
      if (!rep.passed()) code = kVerificationFailed;
    } else if (*b2y) {
      doc = document("yu_datum", yu_to_json(bk_to_yu(bk_from_json(load_datum(datum, "bk_datum"), prec))));
    } else if (*y2b) {
      doc = document("bk_datum", bk_to_json(yu_to_bk(yu_from_json(load_datum(datum, "yu_datum"), prec))));
    } else if (*tb) {
      const BKDatumSkeleton bk = bk_from_json(load_datum(datum, "bk_datum"), prec);
      if (bk.level_zero) fail("BadLevel", "level-zero datum has no filtration tables");
      doc = document("table", tables_payload(bk, mode));
    } else if (*lg) {
      const BKDatumSkeleton bk = bk_from_json(load_datum(datum, "bk_datum"), prec);
      const YuDatumSkeleton yu = bk_to_yu(bk);
      std::optional<MatrixModel> model;
      if (mode != OracleMode::Off && !bk.level_zero)
        model = model_build(bk.order, oracle_prec_for(bk.order, bk.seq.n));
      const Ledger led = ledger_indices(bk, yu, model ? &*model : nullptr);
      doc = document("ledger", ledger_to_json(led));
      if (!led.product_identity || !led.even_exponents || !led.closed_matches_oracle) code = kVerificationFailed;
    } else if (*vf) {
      const auto cps = corpus.empty() ? build_corpus() : load_corpus(corpus, prec);
      bool ok = true;
      doc = document("report", suites_payload(run_suites(suite, mode, cps), ok));
      if (!ok) code = kVerificationFailed;
    }
    emit(o, doc);
    return code;
  } catch (const Error& e) {
    emit(o, error_document(e.name(), e.what()));
    return exit_for(e.name());
  }
}
