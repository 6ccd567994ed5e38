#include "divforge/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "divforge/galois.hpp"
#include "divforge/rrspaces.hpp"
#include "divforge/semigroups.hpp"

namespace divforge::constructions {

namespace rr = divforge::rrspaces;
using curves::Curve;
using curves::Divisor;
using curves::Place;
using curves::single;
using galois::FFElem;
using galois::FieldPtr;

namespace {

std::pair<int64_t, int> prime_power(int64_t q) {
  require(q >= 2, "the field size must be at least two");
  for (int64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    int64_t v = q;
    int a = 0;
    while (v % p == 0) {
      v /= p;
      ++a;
    }
    require(v == 1, "the field size must be a prime power");
    return {p, a};
  }
  return {q, 1};
}

Divisor scale_divisor(const Divisor& D, int s) {
  Divisor r;
  for (const auto& [P, m] : D.coeffs) r.add(P, m * s);
  return r;
}

std::string place_list(const std::vector<int>& idx) {
  std::ostringstream os;
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? ", " : "") << idx[i];
  return os.str();
}

// Sorted branch places (x = 0, y = root) of a radical model.
std::vector<Place> branch_places(const Curve& c,
                                 const curves::KummerModel& km) {
  std::vector<Place> pts;
  for (const auto& root : km.roots) {
    Place p;
    p.kind = Place::Kind::Affine;
    p.degree = 1;
    p.ix = 0;
    p.iy = c.field()->index_of(root);
    pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Attempt an oracle run; a precondition failure (unsupported model, caps)
// leaves the existing certificate in place.
void try_oracle(ConstructionResult& res, const Int& expected_dim) {
  try {
    Int d = rr::rr_dim(res.curve, res.divisor);
    check(d == expected_dim, "constructed divisor has the wrong dimension");
    res.certificate = Certificate::OracleCertified;
    res.oracle_dim = d;
    res.trace.push_back("oracle dimension " + d.str());
  } catch (const precondition_error& e) {
    res.trace.push_back(std::string("oracle unavailable: ") + e.what());
  }
}

}  // namespace

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::SemigroupCertified:
      return "semigroup-certified";
    case Certificate::OracleCertified:
      return "oracle-certified";
    case Certificate::DegreeBookkeepingOnly:
      return "degree-bookkeeping-only";
  }
  return "unknown";
}

std::vector<int64_t> kummer_layer_sizes(int64_t m, int64_t r) {
  require(m >= 1 && r >= 1, "pole parameters must be positive");
  require(std::gcd(m, r) == 1, "pole parameters must be coprime");
  const int64_t gmax = m - 1 - m / r;
  std::vector<int64_t> s;
  if (gmax < 1) {
    check((m - 1) * (r - 1) == 0, "empty layers need genus zero");
    return s;
  }
  auto l = [&](int64_t j) { return r - (r * j) / m; };
  for (int64_t j = 1; j < gmax; ++j) s.push_back(l(j) - l(j + 1));
  s.push_back(l(gmax) - 1);
  Int wsum = 0, total = 0;
  for (int64_t j = 1; j <= gmax; ++j) {
    check(s[size_t(j - 1)] >= 0, "layer sizes are nonnegative");
    wsum += Int(j) * s[size_t(j - 1)];
    total += s[size_t(j - 1)];
  }
  check(wsum * 2 == Int(m - 1) * (r - 1), "layer degree differs from genus");
  check(total <= r - 1, "layers use more branch places than available");
  return s;
}

ConstructionResult kummer_g(const Curve& c) {
  const auto* km = std::get_if<curves::KummerModel>(&c.model());
  require(km != nullptr, "the construction applies to radical models only");
  const int64_t m = km->m;
  const int64_t r = int64_t(km->roots.size());
  require(std::gcd(m, r) == 1,
          "radical model is not totally ramified at infinity");

  auto layers = kummer_layer_sizes(m, r);
  auto pts = branch_places(c, *km);

  ConstructionResult res{c,  Divisor{}, Int(c.genus()),
                         Certificate::DegreeBookkeepingOnly, 0,
                         {}};
  size_t next = 0;
  for (size_t j = 1; j <= layers.size(); ++j) {
    std::ostringstream os;
    os << "layer " << j << ": " << layers[j - 1] << " place(s)";
    for (int64_t i = 0; i < layers[j - 1]; ++i) {
      check(next < pts.size(), "ran out of branch places");
      res.divisor.add(pts[next], Int(j));
      os << " " << pts[next].id();
      ++next;
    }
    res.trace.push_back(os.str());
  }
  check(res.divisor.degree() == res.target_degree,
        "constructed degree differs from the genus");

  check(semigroups::nonspecial_by_semigroup(c, res.divisor),
        "branch divisor fails its own semigroup certificate");
  res.certificate = Certificate::SemigroupCertified;
  res.trace.push_back("semigroup certificate: no generating vector below");
  if (next <= 24) try_oracle(res, 1);
  return res;
}

ConstructionResult norm_trace_g(int64_t q, int r) {
  auto [p, a] = prime_power(q);
  require(r >= 2, "the constant-field extension degree must be at least two");
  Int card = ipow(Int(q), unsigned(r));
  require(card <= curves::enumeration_budget(),
          "field cardinality exceeds enumeration budget");

  FieldPtr big = galois::Field::make(p, a * r);
  FieldPtr base = galois::Field::make(p, a);
  std::vector<FFElem> roots;
  for (int64_t i = 0; i < big->q(); ++i) {
    FFElem e = big->from_index(i);
    if (galois::trace_to_base(e, base).is_zero()) roots.push_back(e);
  }
  Int expected_roots = ipow(Int(q), unsigned(r - 1));
  check(Int(roots.size()) == expected_roots,
        "trace kernel has the wrong size");

  Int u = (card - 1) / (Int(q) - 1);
  Int genus2 = (u - 1) * (expected_roots - 1);
  check(genus2 % 2 == 0, "genus formula must be an integer");
  Int genus = genus2 / 2;
  require(genus < (Int(1) << 30), "genus exceeds the supported range");

  curves::KummerModel km;
  km.m = int64_t(u);
  km.roots = roots;
  Curve c("normtrace_q" + std::to_string(q) + "_r" + std::to_string(r), big,
          int(int64_t(genus)), curves::Model(km));
  c.validate();

  ConstructionResult res = kummer_g(c);
  // the coefficients must be exactly the integers in [1, u-2] that q does
  // not divide
  std::vector<Int> coeffs;
  for (const auto& [P, mult] : res.divisor.coeffs) coeffs.push_back(mult);
  std::sort(coeffs.begin(), coeffs.end());
  std::vector<Int> expect;
  for (Int i = 1; i <= u - 2; ++i)
    if (i % q != 0) expect.push_back(i);
  check(coeffs == expect, "coefficients differ from the trace-kernel rule");
  res.trace.insert(res.trace.begin(),
                   "norm-trace curve over F_" + card.str() + ", u = " +
                       u.str());
  return res;
}

ConstructionResult reduce_to_gm1(const ConstructionResult& res,
                                 const Place& P) {
  require(res.certificate != Certificate::DegreeBookkeepingOnly,
          "reduction needs a certified non-special input");
  require(res.target_degree == res.curve.genus(),
          "reduction starts from a degree-g result");
  require(P.degree == 1, "the reduction point must be rational");
  require(res.divisor.coeffs.find(P) == res.divisor.coeffs.end(),
          "the reduction point must avoid the support");
  auto rats = res.curve.rational_places();
  require(std::find(rats.begin(), rats.end(), P) != rats.end(),
          "the reduction point must be a rational place of the curve");

  ConstructionResult out{res.curve,
                         res.divisor - single(P, 1),
                         res.target_degree - 1,
                         res.certificate,
                         0,
                         res.trace};
  out.trace.push_back("removed " + P.id() +
                      "; constants cannot vanish there, so the dimension "
                      "drops to zero");
  check(out.divisor.degree() == out.target_degree,
        "reduced degree differs from g - 1");
  try_oracle(out, 0);
  return out;
}

ConstructionResult hyperelliptic_gP(int64_t q, const Place& P) {
  auto [p, a] = prime_power(q);
  require(p != 2, "the construction needs odd q");
  require(q >= 3, "the field size must be at least three");

  FieldPtr F = galois::Field::make(p, 2 * a);
  curves::KummerModel km;
  km.m = q + 1;
  km.roots = {F->zero(), F->neg(F->one())};
  int64_t g = (q - 1) / 2;
  Curve c("hyperelliptic_f" + std::to_string(F->q()), F, int(g),
          curves::Model(km));
  c.validate();

  require(P.kind == Place::Kind::Affine && P.degree == 1,
          "the base point must be an affine rational place");
  // model-x is the radical coordinate, model-y the rational one; the
  // involution sends model-y to -1 - model-y and fixes model-x
  FFElem mx = F->from_index(P.ix), my = F->from_index(P.iy);
  require(!F->add(F->add(my, my), F->one()).is_zero(),
          "the base point is fixed by the hyperelliptic involution");
  require(F->pow(mx, q + 1) == F->add(F->mul(my, my), my),
          "place does not lie on the curve");

  ConstructionResult res{c,
                         single(P, g),
                         Int(g),
                         Certificate::SemigroupCertified,
                         0,
                         {}};
  res.trace.push_back(
      "pole numbers at a non-fixed rational place are {0, g+1, g+2, ...}, "
      "so dim(gP) = 1");
  try_oracle(res, 1);
  return res;
}

ConstructionResult greedy_degree_g(const Curve& c) {
  const Int g = c.genus();
  auto rats = c.rational_places();
  require(Int(rats.size()) >= g,
          "greedy construction needs at least g rational places");

  ConstructionResult res{c, Divisor{}, g, Certificate::DegreeBookkeepingOnly,
                         0, {}};
  if (g == 0) {
    res.certificate = Certificate::SemigroupCertified;
    res.trace.push_back("genus zero: the zero divisor has dimension one");
    try_oracle(res, 1);
    return res;
  }
  res.divisor.add(rats[0], 1);
  res.trace.push_back("start: " + rats[0].id());
  while (res.divisor.degree() < g) {
    auto got = rr::greedy_support_extension(c, res.divisor, rats,
                                            rr::ExtensionRule::KeepDim);
    check(got.has_value(),
          "a dimension-keeping candidate must exist below degree g");
    res.divisor.add(*got, 1);
    res.trace.push_back("keep-dim step: " + got->id());
  }
  Int d = rr::rr_dim(c, res.divisor);
  check(d == 1, "greedy divisor must have dimension one");
  res.certificate = Certificate::OracleCertified;
  res.oracle_dim = d;
  res.trace.push_back("oracle dimension " + d.str());
  return res;
}

BoundFns BoundFns::from_curve(const Curve& c) {
  BoundFns b;
  b.g = c.genus();
  b.q = c.field()->q();
  b.points = c.count_rational_places(1);
  return b;
}

Rat BoundFns::gq(int n) const {
  require(q >= 2, "the bound data needs a field size of at least two");
  require(n >= 2, "the window size must be at least two");
  require(n <= 128, "the window size exceeds the supported range");
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  Rat sum = 0;
  Int den = (ipow(q, unsigned(n)) - 1) * (ipow(q, unsigned(n - 1)) - 1);
  for (int k = 1; k <= n - 2; ++k) {
    Int num =
        (ipow(q, unsigned(n - k)) - 1) * (ipow(q, unsigned(n - k - 1)) - 1);
    sum += Rat(num, den);
  }
  // closed form of the three geometric sums as a cross-check
  Rat closed = Rat(ipow(q, unsigned(2 * n - 1)) - ipow(q, 3), q * q - 1) -
               Rat(ipow(q, unsigned(n)) - q * q, q - 1) -
               Rat(ipow(q, unsigned(n - 1)) - q, q - 1) + Rat(n - 2);
  check(sum == closed / Rat(den), "window sum disagrees with closed form");
  memo_[n] = sum;
  return sum;
}

Int bound_f(int s, const Int& a, const BoundFns& b) {
  require(s == 1 || s == 2, "the step size must be one or two");
  const Int g = b.g;
  if (s == 1) {
    if (a == -1) return 1;
    if (a >= 0 && a <= g - 2) return g;
    return 0;
  }
  if (a == g - 2) return g;
  if (a >= -2 && a <= g - 3) {
    const Int iA = g - 1 - a;
    Int best = 0;
    bool first = true;
    for (Int w = 2; w <= iA; ++w) {
      unsigned wi = unsigned(w);
      Rat pre(ipow(b.q, wi) - 1, ipow(b.q, wi) + ipow(b.q, wi - 2) - 2);
      Rat expr = Rat(2 * g - 2 + 2 * a + 4 * w) - 2 * b.gq(int(wi)) * Rat(b.points);
      Int val = rat_floor(Rat(iA - w) + pre * expr);
      if (first || val < best) {
        best = val;
        first = false;
      }
    }
    return best;
  }
  return 0;
}

Divisor randriam_extend(const Curve& c, const Divisor& D0,
                        const std::vector<RandriamTarget>& targets,
                        const Int& d, const std::vector<Place>& S,
                        std::vector<std::string>* trace) {
  require(!targets.empty(), "at least one target is needed");
  for (const auto& t : targets)
    require(t.s == 1 || t.s == 2, "the step size must be one or two");
  for (const auto& P : S)
    require(P.degree == 1, "candidate points must be rational");
  const Int d0 = D0.degree();
  require(d >= d0, "the target degree is below the seed degree");

  for (size_t i = 0; i < targets.size(); ++i)
    require(rr::is_ordinary_divisor(
                c, scale_divisor(D0, targets[i].s) - targets[i].T),
            "the seed leaves target " + std::to_string(i) + " exceptional");

  BoundFns bf = BoundFns::from_curve(c);
  auto step_bound = [&](const Int& dp) {
    Int sum = 0;
    for (const auto& t : targets)
      sum += bound_f(t.s, Int(t.s) * dp - t.T.degree(), bf);
    return sum;
  };
  if (d > d0) {
    Int worst = 0;
    bool first = true;
    for (Int dp = d0; dp < d; ++dp) {
      Int sb = step_bound(dp);
      if (first || sb > worst) {
        worst = sb;
        first = false;
      }
    }
    require(Int(S.size()) > worst,
            "the candidate set is smaller than the counting bound requires");
  }

  Divisor D = D0;
  while (D.degree() < d) {
    const Int dp = D.degree();
    const Int sb = step_bound(dp);
    Int rejected = 0;
    bool found = false;
    std::vector<int> blockers;
    for (const auto& P : S) {
      Divisor cand = D + single(P, 1);
      bool ok = true;
      for (size_t i = 0; i < targets.size() && ok; ++i) {
        if (!rr::is_ordinary_divisor(
                c, scale_divisor(cand, targets[i].s) - targets[i].T)) {
          ok = false;
          blockers.push_back(int(i));
        }
      }
      if (!ok) {
        ++rejected;
        continue;
      }
      D = cand;
      if (trace) {
        std::ostringstream os;
        os << "degree " << Int(dp + 1).str() << ": added " << P.id()
           << " after "
           << rejected.str() << " rejection(s), bound " << sb.str();
        trace->push_back(os.str());
      }
      check(rejected <= sb, "more rejections than the counting bound allows");
      found = true;
      break;
    }
    if (!found) {
      std::sort(blockers.begin(), blockers.end());
      blockers.erase(std::unique(blockers.begin(), blockers.end()),
                     blockers.end());
      throw precondition_error(
          "no admissible point at degree " + dp.str() +
          "; blocking targets: " + place_list(blockers));
    }
  }
  return D;
}

PairResult exdecons1(const Curve& c, const Divisor& Q, const Divisor& G) {
  const Int g = c.genus();
  require(c.count_rational_places(1) > 5 * g,
          "the construction needs more than 5g rational points");
  const Int k = Q.degree(), n = G.degree();
  require(n >= 2 * k + g - 1,
          "the auxiliary divisor needs degree at least 2 deg(Q) + g - 1");
  const Int d = k + g - 1;
  require(d >= 0, "the target degree is negative");

  std::vector<RandriamTarget> targets{{1, Q}, {2, G}};
  auto seed_ok = [&](const Divisor& D0) {
    for (const auto& t : targets)
      if (!rr::is_ordinary_divisor(c, scale_divisor(D0, t.s) - t.T))
        return false;
    return true;
  };

  PairResult out;
  Divisor D0;
  bool have_seed = seed_ok(D0);
  if (have_seed) {
    out.trace.push_back("seed: zero divisor");
  } else {
    auto rats = c.rational_places();
    for (size_t i = 0; i < rats.size() && !have_seed; ++i)
      for (size_t j = 0; j < rats.size() && !have_seed; ++j) {
        if (i == j) continue;
        Divisor cand = single(rats[i], 1) - single(rats[j], 1);
        if (seed_ok(cand)) {
          D0 = cand;
          have_seed = true;
          out.trace.push_back("seed: " + rats[i].id() + " - " +
                              rats[j].id());
        }
      }
  }
  require(have_seed, "no ordinary seed divisor was found");

  out.D = randriam_extend(c, D0, targets, d, c.rational_places(), &out.trace);
  out.dim_d_minus_q = rr::rr_dim(c, out.D - Q);
  out.dim_2d_minus_g = rr::rr_dim(c, scale_divisor(out.D, 2) - G);
  check(out.D.degree() == d, "the result degree differs from deg(Q)+g-1");
  check((out.D - Q).degree() == g - 1, "D - Q must have degree g - 1");
  check(out.dim_d_minus_q == 0, "D - Q must have dimension zero");
  check(out.dim_2d_minus_g == 0, "2D - G must have dimension zero");
  return out;
}

PluAudit plu_bound_audit(const Curve& c, const Divisor& A, int s) {
  require(s == 1 || s == 2, "the step size must be one or two");
  PluAudit audit;
  audit.s = s;
  const Int g = c.genus();
  audit.degree = A.degree();
  audit.dim = rr::rr_dim(c, A);
  audit.index = audit.dim - (audit.degree + 1 - g);

  if (s == 1)
    audit.applicable = audit.index >= 1;
  else
    audit.applicable = audit.index >= 2 && audit.degree >= -2;
  if (!audit.applicable) return audit;

  for (const auto& P : c.rational_places())
    if (rr::rr_dim(c, A + single(P, s)) > audit.dim) ++audit.jump_count;

  if (s == 1) {
    audit.bounds.emplace_back("genus minus dimension",
                              Rat(g - audit.dim));
    if (audit.degree == -1)
      audit.bounds.emplace_back("degree minus one cap", Rat(1));
  } else {
    audit.bounds.emplace_back(
        "linear bound", Rat(3 * g + 3 + audit.degree - 3 * audit.dim));
    BoundFns bf = BoundFns::from_curve(c);
    for (Int w = 2; w <= audit.index; ++w) {
      unsigned wi = unsigned(w);
      Rat pre(ipow(bf.q, wi) - 1, ipow(bf.q, wi) + ipow(bf.q, wi - 2) - 2);
      Rat expr = Rat(6 * g - 6 - 2 * audit.degree - 4 * (audit.index - w)) -
                 2 * bf.gq(int(wi)) * Rat(bf.points);
      audit.bounds.emplace_back("window w=" + w.str(),
                                Rat(audit.index - w) + pre * expr);
    }
  }
  for (const auto& [label, bound] : audit.bounds)
    check(Rat(audit.jump_count) <= bound,
          "point-count bound violated: " + label);
  return audit;
}

}  // namespace divforge::constructions
