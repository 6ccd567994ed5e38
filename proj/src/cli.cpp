#include "divforge/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divforge/common.hpp"
#include "divforge/constructions.hpp"
#include "divforge/criteria.hpp"
#include "divforge/curves.hpp"
#include "divforge/io.hpp"
#include "divforge/rrspaces.hpp"
#include "divforge/semigroups.hpp"
#include "divforge/tower.hpp"
#include "divforge/verify.hpp"
#include "divforge/zeta.hpp"

namespace divforge::cli {
namespace {

using json = nlohmann::ordered_json;
using curves::Curve;
using curves::Divisor;
using curves::Place;

// Arbitrary-precision values are serialized as decimal strings so no output
// ever rounds; structurally bounded quantities (q, genus, indices) stay
// plain JSON numbers.
int64_t to_i64(const Int& v) {
  require(v >= std::numeric_limits<int64_t>::min() &&
              v <= std::numeric_limits<int64_t>::max(),
          "value exceeds the 64-bit range of this field");
  return v.convert_to<int64_t>();
}

json jints(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.str());
  return a;
}

std::string digest_of(const std::vector<std::string>& parts) {
  std::string joined;
  for (const std::string& p : parts) {
    joined += p;
    joined.push_back('\0');
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0')
     << io::fnv1a64(joined);
  return os.str();
}

// Collects the envelope while a command runs; wall time spans construction
// to finish().
class ReportBuilder {
 public:
  ReportBuilder(std::string command, std::string digest)
      : start_(std::chrono::steady_clock::now()) {
    rep_.command = std::move(command);
    rep_.inputs_digest = std::move(digest);
  }

  void check(const std::string& name, bool passed) {
    rep_.checks.push_back({name, passed});
  }

  json& outputs() { return outputs_; }

  RunReport finish() {
    rep_.outputs_json = outputs_.dump();
    rep_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    return rep_;
  }

 private:
  RunReport rep_;
  json outputs_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

json report_to_json(const RunReport& rep) {
  json j = json::object();
  j["command"] = rep.command;
  j["inputs_digest"] = rep.inputs_digest;
  j["outputs"] = json::parse(rep.outputs_json);
  json checks = json::array();
  for (const RunCheck& c : rep.checks) {
    json e = json::object();
    e["name"] = c.name;
    e["passed"] = c.passed;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["wall_seconds"] = rep.wall_seconds;
  return j;
}

// Flag values shared across subcommands; each handler reads the slice it
// declared.
struct Flags {
  std::string curve;
  std::string out_path;
  std::string format;  // empty = per-command default
  std::string convention = "branch=both";
  int places_k = 3;
  std::string divisor_expr;
  std::string method = "kummer";
  std::string target = "g";
  int64_t sg_m = 0, sg_r = 0;
  int64_t tw_q = 0;
  int tw_m = 0;
};

void require_format(const Flags& fl, const std::string& command,
                    std::initializer_list<const char*> allowed) {
  if (fl.format.empty()) return;
  for (const char* a : allowed)
    if (fl.format == a) return;
  throw precondition_error("the " + command + " command does not produce " +
                           fl.format + " output");
}

// Accepts a path, a bundled curve name, or a file name under the bundled
// curve directory.  Returns the curve together with the exact text that
// identifies the input (file content for files, a tagged name otherwise)
// so the report digest pins what was actually read.
std::pair<Curve, std::string> resolve_curve(const std::string& spec) {
  require(!spec.empty(), "--curve is required for this command");
  namespace fs = std::filesystem;

  auto load_file = [](const fs::path& path) -> std::pair<Curve, std::string> {
    std::ifstream in(path);
    require(in.good(), "cannot open curve file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    try {
      return {curves::curve_from_json_text(text), text};
    } catch (const nlohmann::json::exception& e) {
      throw precondition_error("malformed JSON in " + path.string() + ": " +
                               e.what());
    }
  };

  if (fs::exists(spec) && fs::is_regular_file(spec)) return load_file(spec);
  for (const std::string& name : curves::builtin_curve_names())
    if (name == spec) return {curves::builtin_curve(spec), "builtin:" + spec};
  const fs::path bundled = io::data_dir() / "curves" / spec;
  if (fs::exists(bundled) && fs::is_regular_file(bundled))
    return load_file(bundled);
  throw precondition_error("unknown curve: " + spec +
                           " (not a file, a bundled name, or a bundled file)");
}

// Writes the payload (atomically when --out is given) and reports failed
// checks on the error stream.  Returns the exit code.
int emit_report(const Flags& fl, std::ostream& out, std::ostream& err,
                const RunReport& rep) {
  std::string payload = report_to_json(rep).dump(2);
  payload.push_back('\n');
  if (!fl.out_path.empty()) {
    io::atomic_write(fl.out_path, payload);
    out << "wrote " << fl.out_path << " (" << payload.size() << " bytes)\n";
  } else {
    out << payload;
  }
  int failed = 0;
  for (const RunCheck& c : rep.checks)
    if (!c.passed) {
      ++failed;
      err << "check failed: " << c.name << "\n";
    }
  return failed == 0 ? 0 : 2;
}

json divisor_json(const Divisor& d) {
  json j = json::object();
  j["display"] = d.to_string();
  j["degree"] = d.degree().str();
  json support = json::array();
  for (const auto& [place, mult] : d.coeffs) {
    json e = json::object();
    e["place"] = place.id();
    e["degree"] = place.degree;
    e["multiplicity"] = mult.str();
    support.push_back(std::move(e));
  }
  j["support"] = std::move(support);
  return j;
}

json verdict_json(const criteria::Verdict& v) {
  json j = json::object();
  j["target"] = criteria::to_string(v.target);
  j["value"] = criteria::to_string(v.value);
  j["certificate"] = v.certificate;
  json witness = json::array();
  for (const auto& [name, value] : v.witness) {
    json e = json::object();
    e["name"] = name;
    e["value"] = value.str();
    witness.push_back(std::move(e));
  }
  j["witness"] = std::move(witness);
  j["attempted"] = v.attempted;
  j["boundary_noted"] = v.boundary_noted;
  return j;
}

// ---------------------------------------------------------------------------
// Divisor expressions:  term (+|- term)*  with  term := [count '*'] place,
// place := Pinf | Inf(k) | A(ix,iy).  Indices address base-field elements;
// affine points must be rational points of the curve.

int64_t parse_index(const std::string& s, size_t& i) {
  size_t j = i;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  require(j > i, "expected a number in the divisor expression at position " +
                     std::to_string(i));
  int64_t value = 0;
  for (size_t k = i; k < j; ++k) {
    require(value <= (std::numeric_limits<int64_t>::max() - 9) / 10,
            "index overflows in the divisor expression");
    value = value * 10 + (s[k] - '0');
  }
  i = j;
  return value;
}

void expect_char(const std::string& s, size_t& i, char c) {
  require(i < s.size() && s[i] == c,
          std::string("expected '") + c + "' in the divisor expression at position " +
              std::to_string(i));
  ++i;
}

Divisor parse_divisor(const Curve& c, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  require(!s.empty(), "the divisor expression is empty");

  std::map<std::pair<int64_t, int64_t>, Place> rational;
  for (const Place& p : c.rational_places())
    if (p.kind == Place::Kind::Affine) rational[{p.ix, p.iy}] = p;
  const auto& inf = c.infinite_places();

  Divisor d;
  size_t i = 0;
  while (i < s.size()) {
    Int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = (s[i] == '-') ? -1 : 1;
      ++i;
    } else {
      require(i == 0, "expected '+' or '-' between divisor terms");
    }
    Int count = 1;
    {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i && j < s.size() && s[j] == '*') {
        count = Int(s.substr(i, j - i));
        i = j + 1;
      }
    }
    require(i < s.size(), "the divisor expression ends before a place name");
    Place p;
    if (s.compare(i, 4, "Pinf") == 0) {
      i += 4;
      require(!inf.empty(), "the curve has no places at infinity");
      p.kind = Place::Kind::AtInfinity;
      p.inf_index = 0;
      p.degree = inf[0].degree;
    } else if (s.compare(i, 4, "Inf(") == 0) {
      i += 4;
      const int64_t k = parse_index(s, i);
      expect_char(s, i, ')');
      require(k < static_cast<int64_t>(inf.size()),
              "infinite-place index out of range: " + std::to_string(k));
      p.kind = Place::Kind::AtInfinity;
      p.inf_index = static_cast<int>(k);
      p.degree = inf[static_cast<size_t>(k)].degree;
    } else if (s.compare(i, 2, "A(") == 0) {
      i += 2;
      const int64_t ix = parse_index(s, i);
      expect_char(s, i, ',');
      const int64_t iy = parse_index(s, i);
      expect_char(s, i, ')');
      auto it = rational.find({ix, iy});
      require(it != rational.end(),
              "A(" + std::to_string(ix) + "," + std::to_string(iy) +
                  ") is not a rational point of the curve");
      p = it->second;
    } else {
      throw precondition_error(
          "unknown place name in the divisor expression at position " +
          std::to_string(i) + " (expected Pinf, Inf(k), or A(ix,iy))");
    }
    d.add(p, sign * count);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

int cmd_zeta(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "zeta", {"json"});
  auto [c, src] = resolve_curve(fl.curve);
  ReportBuilder rb("zeta", digest_of({"zeta", src}));

  const zeta::LPolynomial L = zeta::l_of_curve(c);
  zeta::weil_check(L);  // throws on any inconsistency
  rb.check("functional equation and root moduli", true);

  const int g = L.g;
  const int rmax = std::max(3, 2 * g);
  const std::vector<Int> counts = zeta::counts_from_l(L, rmax);
  const std::vector<Int> places = zeta::places_from_l(L, rmax);
  const zeta::LPolynomial back = zeta::l_from_counts(
      L.q, g, std::vector<Int>(counts.begin(), counts.begin() + g));
  rb.check("point counts determine the polynomial", back.a == L.a);

  json& o = rb.outputs();
  o["curve"] = c.name();
  o["q"] = c.field()->q();
  o["characteristic"] = c.field()->p();
  o["genus"] = g;
  o["l_coefficients"] = jints(L.a);
  o["class_number"] = L.class_number().str();
  o["p_rank"] = zeta::p_rank(L, c.field()->p());
  o["ordinary"] = zeta::is_ordinary(L, c.field()->p());
  o["point_counts"] = jints(counts);
  o["places_by_degree"] = jints(places);
  return emit_report(fl, out, err, rb.finish());
}

int cmd_places(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "places", {"json"});
  auto [c, src] = resolve_curve(fl.curve);
  ReportBuilder rb("places",
                   digest_of({"places", src, std::to_string(fl.places_k)}));

  const std::vector<Int> counts = c.places_by_degree(fl.places_k);
  const std::vector<Place> rational = c.rational_places();
  rb.check("degree-one count matches the rational place list",
           Int(rational.size()) == counts.at(0));

  const criteria::FieldSummary s = criteria::summarize(c);
  if (s.L.has_value()) {
    rb.check("enumeration agrees with the generating function",
             zeta::places_from_l(*s.L, fl.places_k) == counts);
  }

  json& o = rb.outputs();
  o["curve"] = c.name();
  o["q"] = c.field()->q();
  o["genus"] = c.genus();
  o["counts_by_degree"] = jints(counts);
  json rat = json::array();
  for (const Place& p : rational) rat.push_back(p.id());
  o["rational_places"] = std::move(rat);
  json infs = json::array();
  for (const auto& ip : c.infinite_places()) {
    json e = json::object();
    e["label"] = ip.label;
    e["degree"] = ip.degree;
    infs.push_back(std::move(e));
  }
  o["infinite_places"] = std::move(infs);
  return emit_report(fl, out, err, rb.finish());
}

int cmd_criteria(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "criteria", {"json"});
  auto [c, src] = resolve_curve(fl.curve);
  ReportBuilder rb("criteria", digest_of({"criteria", src}));

  const criteria::FieldSummary s = criteria::summarize(c);
  const criteria::Verdict vg = criteria::verdict_degree_g(s);
  const criteria::Verdict v1 = criteria::verdict_degree_gm1(s);
  const criteria::Verdict vg2 = criteria::verdict_degree_g(s);
  const criteria::Verdict v12 = criteria::verdict_degree_gm1(s);
  rb.check("decision chains are deterministic",
           vg2.value == vg.value && vg2.certificate == vg.certificate &&
               v12.value == v1.value && v12.certificate == v1.certificate);
  bool certified = true;
  for (const criteria::Verdict* v : {&vg, &v1})
    if (v->value != criteria::Truth::Unknown && v->certificate.empty())
      certified = false;
  rb.check("decided verdicts carry certificates", certified);

  json& o = rb.outputs();
  o["curve"] = c.name();
  json summary = json::object();
  summary["q"] = to_i64(s.q);
  summary["genus"] = s.g;
  summary["characteristic"] = s.p;
  if (s.B1.has_value()) summary["B1"] = s.B1->str();
  if (s.B2.has_value()) summary["B2"] = s.B2->str();
  if (s.L.has_value()) {
    summary["class_number"] = s.L->class_number().str();
    summary["l_coefficients"] = jints(s.L->a);
  }
  o["summary"] = std::move(summary);
  o["degree_g"] = verdict_json(vg);
  o["degree_gm1"] = verdict_json(v1);
  return emit_report(fl, out, err, rb.finish());
}

criteria::BranchMode parse_convention(const std::string& conv) {
  std::string v = conv;
  if (v.rfind("branch=", 0) == 0) v = v.substr(7);
  if (v == "plus") return criteria::BranchMode::Plus;
  if (v == "minus") return criteria::BranchMode::Minus;
  if (v == "both") return criteria::BranchMode::Both;
  throw precondition_error("unknown convention: " + conv +
                           " (expected branch=plus, branch=minus, or branch=both)");
}

std::string branch_name(criteria::Branch b) {
  return b == criteria::Branch::Plus ? "plus" : "minus";
}

std::string truth_of_bool(bool b) { return b ? "True" : "False"; }

int cmd_tables(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "tables", {"csv", "json"});
  const std::string format = fl.format.empty() ? "csv" : fl.format;
  const criteria::BranchMode mode = parse_convention(fl.convention);
  ReportBuilder rb("tables", digest_of({"tables", fl.convention, format}));

  const std::vector<criteria::DefectRow> reference = io::load_defect_rows();
  const criteria::TableReport rep =
      criteria::regenerate_defect_tables(reference, mode);
  rb.check("every reference row is classified",
           rep.matched + rep.mismatched == static_cast<int>(rep.rows.size()));
  const std::string summary =
      std::to_string(rep.matched) + " rows matched, " +
      std::to_string(rep.mismatched) + " mismatched of " +
      std::to_string(rep.rows.size()) + " reference rows";

  if (format == "csv") {
    std::ostringstream csv;
    csv << "q,g,k,case,n,branch,cns_sum,computed_verdict,expected,match\n";
    for (const criteria::RowReport& rr : rep.rows) {
      for (const criteria::BranchOutcome& oc : rr.outcomes) {
        csv << to_i64(rr.row.q) << ',' << rr.row.g << ',' << rr.row.k << ','
            << (rr.row.kase == criteria::DefectCase::A ? 'A' : 'B') << ','
            << rr.row.n.str() << ',' << branch_name(oc.branch) << ','
            << oc.sum.str() << ',' << criteria::to_string(oc.verdict) << ','
            << truth_of_bool(rr.row.expected) << ','
            << (oc.matches_expected ? "true" : "false") << '\n';
      }
    }
    if (!fl.out_path.empty()) {
      io::atomic_write(fl.out_path, csv.str());
      out << "wrote " << fl.out_path << " (" << csv.str().size() << " bytes)\n";
      out << summary << "\n";
    } else {
      out << csv.str();
      err << summary << "\n";
    }
    return 0;
  }

  json rows = json::array();
  for (const criteria::RowReport& rr : rep.rows) {
    json r = json::object();
    r["q"] = to_i64(rr.row.q);
    r["g"] = rr.row.g;
    r["k"] = rr.row.k;
    r["case"] = rr.row.kase == criteria::DefectCase::A ? "A" : "B";
    r["n"] = rr.row.n.str();
    r["expected"] = truth_of_bool(rr.row.expected);
    r["match"] = rr.match;
    json outcomes = json::array();
    for (const criteria::BranchOutcome& oc : rr.outcomes) {
      json e = json::object();
      e["branch"] = branch_name(oc.branch);
      e["admissible"] = oc.admissible;
      if (!oc.rejection.empty()) e["rejection"] = oc.rejection;
      e["cns_sum"] = oc.sum.str();
      e["computed_verdict"] = criteria::to_string(oc.verdict);
      e["matches_expected"] = oc.matches_expected;
      e["n1"] = oc.n1.str();
      e["count_in_range"] = oc.count_in_range;
      e["delta_zero"] = oc.delta_zero;
      e["excluded"] = oc.excluded;
      outcomes.push_back(std::move(e));
    }
    r["outcomes"] = std::move(outcomes);
    rows.push_back(std::move(r));
  }
  json& o = rb.outputs();
  o["convention"] = fl.convention;
  o["matched"] = rep.matched;
  o["mismatched"] = rep.mismatched;
  o["summary"] = summary;
  o["rows"] = std::move(rows);
  return emit_report(fl, out, err, rb.finish());
}

int cmd_construct(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "construct", {"json"});
  auto [c, src] = resolve_curve(fl.curve);
  ReportBuilder rb("construct",
                   digest_of({"construct", src, fl.method, fl.target}));

  constructions::ConstructionResult res =
      fl.method == "greedy" ? constructions::greedy_degree_g(c)
                            : constructions::kummer_g(c);
  std::string reduction_place;
  if (fl.target == "gm1") {
    // Prefer a place at infinity, then any rational place off the support.
    std::optional<Place> chosen;
    std::vector<Place> pool = res.curve.rational_places();
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Place& a, const Place& b) {
                       return (a.kind == Place::Kind::AtInfinity) >
                              (b.kind == Place::Kind::AtInfinity);
                     });
    for (const Place& p : pool) {
      if (res.divisor.coeffs.find(p) == res.divisor.coeffs.end()) {
        chosen = p;
        break;
      }
    }
    require(chosen.has_value(),
            "no rational place lies outside the support of the divisor");
    res = constructions::reduce_to_gm1(res, *chosen);
    reduction_place = chosen->id();
  }

  rb.check("degree matches the target",
           res.divisor.degree() == res.target_degree);
  rb.check("dimension claim is certified",
           res.certificate != constructions::Certificate::DegreeBookkeepingOnly);

  json& o = rb.outputs();
  o["curve"] = res.curve.name();
  o["method"] = fl.method;
  o["target"] = fl.target;
  o["target_degree"] = res.target_degree.str();
  o["divisor"] = divisor_json(res.divisor);
  o["certificate"] = constructions::certificate_name(res.certificate);
  if (res.certificate == constructions::Certificate::OracleCertified)
    o["oracle_dim"] = res.oracle_dim.str();
  if (!reduction_place.empty()) o["reduced_by"] = reduction_place;
  o["trace"] = res.trace;
  return emit_report(fl, out, err, rb.finish());
}

int cmd_rrdim(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "rrdim", {"json"});
  auto [c, src] = resolve_curve(fl.curve);
  ReportBuilder rb("rrdim", digest_of({"rrdim", src, fl.divisor_expr}));

  const Divisor d = parse_divisor(c, fl.divisor_expr);
  const Int dim = rrspaces::rr_dim(c, d);
  const Int deg = d.degree();
  const Int g = c.genus();
  const Int index = dim - deg - 1 + g;

  rb.check("dimension respects the Riemann bound",
           dim >= 0 && dim >= deg + 1 - g);
  if (dim > 0 && index > 0)
    rb.check("Clifford bound on special divisors", 2 * (dim - 1) <= deg);

  json& o = rb.outputs();
  o["curve"] = c.name();
  o["divisor"] = divisor_json(d);
  o["dim"] = dim.str();
  o["index_of_specialty"] = index.str();
  o["nonspecial"] = (index == 0);
  return emit_report(fl, out, err, rb.finish());
}

int cmd_semigroup(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "semigroup", {"json"});
  ReportBuilder rb("semigroup",
                   digest_of({"semigroup", std::to_string(fl.sg_m),
                              std::to_string(fl.sg_r)}));

  const std::vector<int64_t> gaps = semigroups::gap_set_single(fl.sg_m, fl.sg_r);
  rb.check("gap count equals (m-1)(r-1)/2",
           Int(gaps.size()) * 2 == Int(fl.sg_m - 1) * (fl.sg_r - 1));
  const semigroups::FloorReport fr = semigroups::floor_identities(fl.sg_r, fl.sg_m);
  rb.check("floor-sum identities", true);  // floor_identities throws on violation

  json& o = rb.outputs();
  o["m"] = fl.sg_m;
  o["r"] = fl.sg_r;
  o["genus"] = static_cast<int64_t>(gaps.size());
  o["multiplicity"] = semigroups::multiplicity_single(fl.sg_m, fl.sg_r);
  o["gaps"] = gaps;
  json floors = json::object();
  floors["t"] = fr.t;
  floors["jump_count"] = fr.jump_count;
  floors["gap_sum"] = fr.gap_sum;
  o["floor_identities"] = std::move(floors);
  return emit_report(fl, out, err, rb.finish());
}

int cmd_tower(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "tower", {"json"});
  ReportBuilder rb("tower", digest_of({"tower", std::to_string(fl.tw_q),
                                       std::to_string(fl.tw_m)}));

  const tower::TowerLevel lvl = tower::tower_level(fl.tw_q, fl.tw_m);
  const tower::TowerDivisor div = tower::nonspecial_tower_divisor(fl.tw_q, fl.tw_m);
  rb.check("pole order minus genus equals the zero-locus degree",
           lvl.c - lvl.genus == lvl.deg_a);
  rb.check("divisor degree equals the zero-locus degree",
           div.degree == lvl.deg_a);

  json& o = rb.outputs();
  o["q"] = fl.tw_q;
  o["m"] = fl.tw_m;
  o["genus"] = lvl.genus.str();
  o["c_m"] = lvl.c.str();
  o["degA"] = lvl.deg_a.str();
  json dj = json::object();
  dj["degree"] = div.degree.str();
  dj["certificate"] = div.certificate;
  dj["trace"] = div.trace;
  o["divisor"] = std::move(dj);

  try {
    const tower::TowerPoints pts = tower::tower_points(fl.tw_q, fl.tw_m, 1);
    json pj = json::object();
    pj["rational_places"] = pts.n_r.str();
    pj["affine"] = pts.affine.str();
    pj["pole_places"] = pts.pole_places.str();
    pj["ramified_zero_places"] = pts.ramified_zero_places.str();
    pj["split_zero_places"] = pts.split_zero_places.str();
    pj["zero_locus_degrees"] = jints(pts.zero_locus_degrees);
    o["base_field_census"] = std::move(pj);
    rb.check("first zero locus has degree q-1", pts.deg_a1 == Int(fl.tw_q) - 1);
  } catch (const precondition_error& e) {
    o["base_field_census"] = std::string("skipped: ") + e.what();
  }

  try {
    const tower::FiniteLevelReport f = tower::finite_level_check(fl.tw_q, fl.tw_m);
    json fj = json::object();
    fj["genus"] = f.genus.str();
    fj["class_number"] = f.h.str();
    fj["effective_degree_gm1"] = f.a_gm1.str();
    fj["holds"] = f.holds;
    o["class_number_comparison"] = std::move(fj);
    rb.check("effective classes of degree g-1 stay below the class number",
             f.holds);
  } catch (const precondition_error& e) {
    o["class_number_comparison"] = std::string("skipped: ") + e.what();
  }
  return emit_report(fl, out, err, rb.finish());
}

int cmd_verify(const Flags& fl, std::ostream& out, std::ostream& err) {
  require_format(fl, "verify", {"json"});
  const verify::VerifyReport rep = verify::run_all();

  if (fl.format == "json") {
    ReportBuilder rb("verify", digest_of({"verify"}));
    for (const verify::CheckResult& c : rep.checks)
      rb.check(c.suite + "/" + c.subject, c.passed);
    json details = json::array();
    for (const verify::CheckResult& c : rep.checks) {
      json e = json::object();
      e["suite"] = c.suite;
      e["subject"] = c.subject;
      e["passed"] = c.passed;
      e["detail"] = c.detail;
      details.push_back(std::move(e));
    }
    json& o = rb.outputs();
    o["passed"] = rep.passed;
    o["failed"] = rep.failed;
    o["details"] = std::move(details);
    const int code = emit_report(fl, out, err, rb.finish());
    return rep.ok() ? code : 2;
  }

  std::ostringstream text;
  for (const verify::CheckResult& c : rep.checks) {
    text << std::left << std::setw(19) << c.suite << std::setw(23) << c.subject
         << (c.passed ? "ok    " : "FAIL  ") << c.detail << "\n";
  }
  text << rep.passed << " passed, " << rep.failed << " failed\n";
  if (!fl.out_path.empty()) {
    io::atomic_write(fl.out_path, text.str());
    out << "wrote " << fl.out_path << " (" << text.str().size() << " bytes)\n";
    out << rep.passed << " passed, " << rep.failed << " failed\n";
  } else {
    out << text.str();
  }
  return rep.ok() ? 0 : 2;
}

}  // namespace

bool RunReport::all_passed() const {
  for (const RunCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

RunReport report_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw precondition_error(std::string("malformed JSON: ") + e.what());
  }
  require(j.is_object(), "a report must be a JSON object");
  for (const char* key :
       {"command", "inputs_digest", "outputs", "checks", "wall_seconds"})
    require(j.contains(key), std::string("report is missing field: ") + key);
  require(j["command"].is_string() && j["inputs_digest"].is_string(),
          "report command and digest must be strings");
  require(j["checks"].is_array(), "report checks must be an array");
  require(j["wall_seconds"].is_number(), "report wall time must be a number");

  RunReport rep;
  rep.command = j["command"].get<std::string>();
  rep.inputs_digest = j["inputs_digest"].get<std::string>();
  rep.outputs_json = j["outputs"].dump();
  for (const json& e : j["checks"]) {
    require(e.is_object() && e.contains("name") && e.contains("passed") &&
                e["name"].is_string() && e["passed"].is_boolean(),
            "each report check needs a name and a boolean result");
    rep.checks.push_back(
        {e["name"].get<std::string>(), e["passed"].get<bool>()});
  }
  rep.wall_seconds = j["wall_seconds"].get<double>();
  return rep;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact divisor arithmetic on curves over small finite fields",
               "divforge"};
  app.require_subcommand(1);
  Flags fl;

  auto add_common = [&fl](CLI::App* sub) {
    sub->add_option("--out", fl.out_path,
                    "write the payload to this file (atomically)");
    sub->add_option("--format", fl.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--convention", fl.convention,
                    "sign convention: branch=plus, branch=minus, branch=both");
  };
  auto add_curve = [&fl](CLI::App* sub) {
    sub->add_option("--curve", fl.curve,
                    "curve descriptor file or bundled curve name")
        ->required();
  };

  CLI::App* zeta_cmd = app.add_subcommand(
      "zeta", "numerator of the zeta function, class number, point counts");
  add_curve(zeta_cmd);
  add_common(zeta_cmd);

  CLI::App* places_cmd =
      app.add_subcommand("places", "place counts by degree and rational places");
  add_curve(places_cmd);
  add_common(places_cmd);
  places_cmd->add_option("--k", fl.places_k, "largest place degree to count")
      ->check(CLI::Range(1, 64));

  CLI::App* criteria_cmd = app.add_subcommand(
      "criteria", "decide existence of non-special divisors of degree g and g-1");
  add_curve(criteria_cmd);
  add_common(criteria_cmd);

  CLI::App* tables_cmd = app.add_subcommand(
      "tables", "re-derive the bundled reference tables and report mismatches");
  add_common(tables_cmd);

  CLI::App* construct_cmd = app.add_subcommand(
      "construct", "build a certified non-special divisor of degree g or g-1");
  add_curve(construct_cmd);
  add_common(construct_cmd);
  construct_cmd->add_option("--method", fl.method, "construction: kummer or greedy")
      ->check(CLI::IsMember({"kummer", "greedy"}));
  construct_cmd->add_option("--target", fl.target, "target degree: g or gm1")
      ->check(CLI::IsMember({"g", "gm1"}));

  CLI::App* rrdim_cmd = app.add_subcommand(
      "rrdim", "dimension of the space attached to a divisor");
  add_curve(rrdim_cmd);
  add_common(rrdim_cmd);
  rrdim_cmd
      ->add_option("--divisor", fl.divisor_expr,
                   "divisor expression, e.g. \"2*Pinf - 1*A(0,1)\"")
      ->required();

  CLI::App* semigroup_cmd = app.add_subcommand(
      "semigroup", "gap numbers of the ramified-place semigroup of a radical cover");
  add_common(semigroup_cmd);
  semigroup_cmd->add_option("--m", fl.sg_m, "covering degree")
      ->required()
      ->check(CLI::PositiveNumber);
  semigroup_cmd->add_option("--r", fl.sg_r, "number of branch roots")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* tower_cmd = app.add_subcommand(
      "tower", "level data of the recursive additive tower over a quadratic field");
  add_common(tower_cmd);
  tower_cmd->add_option("--q", fl.tw_q, "tower parameter (prime power)")
      ->required()
      ->check(CLI::PositiveNumber);
  tower_cmd->add_option("--m", fl.tw_m, "tower level")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run every invariant suite on the bundled data");
  add_common(verify_cmd);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (zeta_cmd->parsed()) return cmd_zeta(fl, out, err);
    if (places_cmd->parsed()) return cmd_places(fl, out, err);
    if (criteria_cmd->parsed()) return cmd_criteria(fl, out, err);
    if (tables_cmd->parsed()) return cmd_tables(fl, out, err);
    if (construct_cmd->parsed()) return cmd_construct(fl, out, err);
    if (rrdim_cmd->parsed()) return cmd_rrdim(fl, out, err);
    if (semigroup_cmd->parsed()) return cmd_semigroup(fl, out, err);
    if (tower_cmd->parsed()) return cmd_tower(fl, out, err);
    if (verify_cmd->parsed()) return cmd_verify(fl, out, err);
    check(false, "a parsed subcommand must have a handler");
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const invariant_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace divforge::cli
