#include "divforge/curves.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace divforge::curves {

using galois::Embedding;
using galois::Field;
using nlohmann::json;

namespace {

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int mobius(int n) {
  int mu = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

FFPoly poly_from_roots(const FieldPtr& F, const std::vector<FFElem>& roots) {
  FFPoly f = FFPoly::from_coeffs(F, {F->one()});
  for (const auto& r : roots)
    f = f * FFPoly::from_coeffs(F, {-r, F->one()});
  return f;
}

FFPoly poly_gcd(FFPoly a, FFPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Monic irreducible factors with multiplicities, by trial division in index
// order of the candidate coefficient vectors (degree ascending).
std::vector<std::pair<FFPoly, int>> factor_poly(FFPoly f) {
  auto F = Field::make(f.F->p(), f.F->n());
  require(!f.is_zero(), "factor_poly: zero polynomial");
  std::vector<std::pair<FFPoly, int>> out;
  for (int d = 1; d <= f.degree(); ++d) {
    Int count = ipow(Int(F->q()), unsigned(d));
    require(count <= (int64_t(1) << 22), "factor_poly: field too large");
    for (int64_t idx = 0; idx < int64_t(count); ++idx) {
      std::vector<FFElem> cs;
      int64_t v = idx;
      for (int i = 0; i < d; ++i) {
        cs.push_back(F->from_index(v % F->q()));
        v /= F->q();
      }
      cs.push_back(F->one());
      FFPoly cand = FFPoly::from_coeffs(F, cs);
      int mult = 0;
      while (true) {
        auto [q, r] = divmod(f, cand);
        if (!r.is_zero()) break;
        f = q;
        ++mult;
      }
      if (mult > 0) out.emplace_back(cand, mult);
      if (f.degree() < d) break;
    }
    if (f.degree() < d) break;
  }
  check(f.degree() == 0, "factor_poly: leftover factor");
  return out;
}

struct SolutionBuckets {
  // For each value index v, the element indices x with key(x) == v, as
  // intrusive singly linked lists.
  std::vector<int32_t> head, nxt;
  template <typename KeyFn>
  SolutionBuckets(int64_t q, KeyFn key) : head(size_t(q), -1), nxt(size_t(q), -1) {
    for (int64_t x = 0; x < q; ++x) {
      int64_t v = key(x);
      nxt[size_t(x)] = head[size_t(v)];
      head[size_t(v)] = int32_t(x);
    }
  }
  template <typename Fn>
  void for_each(int64_t value, Fn fn) const {
    for (int32_t x = head[size_t(value)]; x >= 0; x = nxt[size_t(x)]) fn(x);
  }
  int64_t count(int64_t value) const {
    int64_t c = 0;
    for (int32_t x = head[size_t(value)]; x >= 0; x = nxt[size_t(x)]) ++c;
    return c;
  }
};

}  // namespace

int64_t enumeration_budget() {
  if (const char* e = std::getenv("DIVFORGE_BUDGET")) {
    int64_t v = std::atoll(e);
    if (v > 0) return v;
  }
  return int64_t(1) << 26;
}

std::string Place::id() const {
  std::ostringstream os;
  if (kind == Kind::Affine)
    os << "aff:d" << degree << ":" << ix << "," << iy;
  else
    os << "inf:d" << degree << ":" << inf_index;
  return os.str();
}

void Divisor::add(const Place& p, const Int& mult) {
  if (mult == 0) return;
  auto it = coeffs.find(p);
  if (it == coeffs.end()) {
    coeffs.emplace(p, mult);
  } else {
    it->second += mult;
    if (it->second == 0) coeffs.erase(it);
  }
}

Int Divisor::degree() const {
  Int d = 0;
  for (const auto& [p, m] : coeffs) d += m * p.degree;
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& [p, m] : coeffs)
    if (m < 0) return false;
  return true;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor r = a;
  for (const auto& [p, m] : b.coeffs) r.add(p, m);
  return r;
}

Divisor operator-(const Divisor& a, const Divisor& b) {
  Divisor r = a;
  for (const auto& [p, m] : b.coeffs) r.add(p, -m);
  return r;
}

bool operator==(const Divisor& a, const Divisor& b) {
  return a.coeffs == b.coeffs;
}

std::string Divisor::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : coeffs) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << p.id();
  }
  return os.str();
}

Divisor single(const Place& p, Int mult) {
  Divisor d;
  d.add(p, mult);
  return d;
}

Curve::Curve(std::string name, FieldPtr field, int genus, Model model)
    : name_(std::move(name)),
      field_(std::move(field)),
      genus_(genus),
      model_(std::move(model)) {
  validate();
}

FieldPtr Curve::extension(int d) const {
  require(d >= 1, "extension degree must be positive");
  return Field::make(field_->p(), field_->n() * d);
}

void Curve::validate() const {
  require(genus_ >= 0, "negative genus");
  if (const auto* km = std::get_if<KummerModel>(&model_)) {
    require(km->m >= 2, "radical exponent must be at least 2");
    require((field_->q() - 1) % km->m == 0,
            "radical exponent must divide q - 1");
    require(!km->roots.empty(), "radical cover needs at least one root");
    for (const auto& r : km->roots)
      require(r.F == field_.get(), "root outside the base field");
    std::set<int64_t> uniq;
    for (const auto& r : km->roots) uniq.insert(field_->index_of(r));
    require(uniq.size() == km->roots.size(), "repeated root");
  } else if (const auto* as = std::get_if<ArtinSchreierModel>(&model_)) {
    require(!as->acoeffs.empty(), "additive cover needs coefficients");
    require(!as->acoeffs.front().is_zero(),
            "additive polynomial must be separable (c_0 != 0)");
    require(!as->acoeffs.back().is_zero(),
            "leading additive coefficient must be nonzero");
    for (const auto& c : as->acoeffs)
      require(c.F == field_.get(), "additive coefficient outside base field");
    require(!as->num.is_zero(), "zero right-hand side");
    require(!as->den.is_zero(), "zero denominator");
    require(as->den.leading().is_one(), "denominator must be monic");
    require(poly_gcd(as->num, as->den).degree() == 0,
            "right-hand side must be in lowest terms");
  } else {
    const auto& pm = std::get<PlaneModel>(model_);
    require(!pm.terms.empty(), "empty plane model");
    for (const auto& t : pm.terms) {
      require(t.i >= 0 && t.j >= 0, "negative exponent");
      require(!t.coeff.is_zero(), "zero coefficient term");
      require(t.coeff.F == field_.get(), "coefficient outside base field");
    }
    for (const auto& c : pm.corrections)
      require(c.degree >= 1, "correction degree must be positive");
  }
  // Model-specific genus formulas.
  if (const auto* km = std::get_if<KummerModel>(&model_)) {
    int64_t w = int64_t(km->roots.size());
    int64_t dinf = gcd64(km->m, w);
    Int twice = (km->m - 1) * (w - 1) + 1 - dinf;
    check(twice == Int(2) * genus_, "declared genus contradicts radical cover formula");
  } else if (const auto* as = std::get_if<ArtinSchreierModel>(&model_)) {
    int s = int(as->acoeffs.size()) - 1;
    // kernel of the additive map must be rational
    FFPoly A = FFPoly::zero(field_);
    {
      Int qa = ipow(Int(field_->p()), unsigned(s));
      std::vector<FFElem> cs(size_t(int64_t(qa)) + 1, field_->zero());
      int64_t pw = 1;
      for (int i = 0; i <= s; ++i) {
        cs[size_t(pw)] = as->acoeffs[size_t(i)];
        pw *= field_->p();
      }
      A = FFPoly::from_coeffs(field_, cs);
    }
    int64_t qa = A.degree();
    check(int64_t(distinct_roots(A).size()) == qa,
          "kernel of the additive map must lie in the base field");
    // pole orders must be coprime to p; with s == 1 the genus has a closed form
    Int conductor = -2;
    for (const auto& [h, e] : factor_poly(as->den)) {
      require(e % field_->p() != 0,
              "pole order divisible by the characteristic is unsupported");
      conductor += Int(e + 1) * h.degree();
    }
    int vinf = as->den.degree() - as->num.degree();
    if (vinf < 0) {
      require((-vinf) % field_->p() != 0,
              "pole order at infinity divisible by the characteristic");
      conductor += Int(-vinf + 1);
    }
    if (s == 1) {
      Int twice = (field_->p() - 1) * conductor;
      check(twice == Int(2) * genus_,
            "declared genus contradicts additive cover formula");
    }
  }
}

const std::vector<InfinitePlaceInfo>& Curve::infinite_places() const {
  if (inf_cached_) return inf_cache_;
  std::vector<InfinitePlaceInfo> out;
  if (const auto* km = std::get_if<KummerModel>(&model_)) {
    int64_t w = int64_t(km->roots.size());
    int64_t dinf = gcd64(km->m, w);
    // places over the pole of f: Frobenius orbits of the dinf-th roots of unity
    for (int j = 1; j <= int(dinf); ++j) {
      auto K = extension(j);
      std::set<int64_t> reps;
      for (int64_t i = 0; i < K->q(); ++i) {
        FFElem z = K->from_index(i);
        if (!(K->pow(z, dinf) == K->one())) continue;
        // exact degree j over the base field
        FFElem zz = z;
        int deg = 0;
        do {
          zz = K->pow(zz, field_->q());
          ++deg;
        } while (!(zz == z));
        if (deg != j) continue;
        // canonical orbit representative
        int64_t best = K->index_of(z);
        zz = z;
        for (int t = 1; t < j; ++t) {
          zz = K->pow(zz, field_->q());
          best = std::min(best, K->index_of(zz));
        }
        reps.insert(best);
      }
      for (int64_t rep : reps) {
        std::ostringstream os;
        os << "overpole:" << j << ":" << rep;
        out.push_back({j, os.str()});
      }
    }
  } else if (const auto* as = std::get_if<ArtinSchreierModel>(&model_)) {
    int idx = 0;
    for (const auto& [h, e] : factor_poly(as->den)) {
      (void)e;
      std::ostringstream os;
      os << "pole" << idx++;
      out.push_back({h.degree(), os.str()});
    }
    int vinf = as->den.degree() - as->num.degree();
    if (vinf < 0) {
      out.push_back({1, "pole_inf"});
    } else {
      // x = infinity is an ordinary point with value c; one place per
      // Frobenius orbit of the fiber A(y) = c
      FFElem c = vinf > 0 ? field_->zero()
                          : as->num.leading() / as->den.leading();
      int s = int(as->acoeffs.size()) - 1;
      int64_t qa = 1;  // p^s bounds the degree of any fiber point
      for (int i = 0; i < s; ++i) qa *= field_->p();
      for (int j = 1; j <= int(qa); ++j) {
        auto K = extension(j);
        FFElem cK = galois::lift_elem(c, K);
        std::set<int64_t> reps;
        bool found = false;
        for (int64_t i = 0; i < K->q(); ++i) {
          FFElem y = K->from_index(i);
          FFElem val = K->zero();
          int64_t pw = 1;
          for (size_t t = 0; t < as->acoeffs.size(); ++t) {
            val = val + galois::lift_elem(as->acoeffs[t], K) * K->pow(y, pw);
            pw *= field_->p();
          }
          if (!(val == cK)) continue;
          found = true;
          FFElem zz = y;
          int deg = 0;
          do {
            zz = K->pow(zz, field_->q());
            ++deg;
          } while (!(zz == y));
          if (deg != j) continue;
          int64_t best = K->index_of(y);
          zz = y;
          for (int t = 1; t < j; ++t) {
            zz = K->pow(zz, field_->q());
            best = std::min(best, K->index_of(zz));
          }
          reps.insert(best);
        }
        for (int64_t rep : reps) {
          std::ostringstream os;
          os << "atinf:" << j << ":" << rep;
          out.push_back({j, os.str()});
        }
        if (found) break;  // the fiber is a kernel coset: one field holds it all
      }
    }
  } else {
    const auto& pm = std::get<PlaneModel>(model_);
    for (const auto& c : pm.corrections) out.push_back({c.degree, c.id});
  }
  inf_cache_ = std::move(out);
  inf_cached_ = true;
  return inf_cache_;
}

Int Curve::affine_count(int r) const {
  auto K = extension(r);
  int64_t Q = K->q();
  if (const auto* km = std::get_if<KummerModel>(&model_)) {
    require(Q <= enumeration_budget(), "point count exceeds enumeration budget");
    FFPoly f = galois::lift_poly(poly_from_roots(field_, km->roots), K);
    int64_t d = gcd64(km->m, Q - 1);
    Int e = (Q - 1) / d;
    Int total = 0;
    for (int64_t i = 0; i < Q; ++i) {
      FFElem v = f.eval(K->from_index(i));
      if (v.is_zero())
        total += 1;
      else if (K->pow(v, e).is_one())
        total += d;
    }
    return total;
  }
  if (const auto* as = std::get_if<ArtinSchreierModel>(&model_)) {
    require(Q <= enumeration_budget(), "point count exceeds enumeration budget");
    // image set and kernel size of the additive map over K
    std::vector<FFElem> ac;
    for (const auto& c : as->acoeffs) ac.push_back(galois::lift_elem(c, K));
    auto eval_A = [&](const FFElem& y) {
      FFElem val = K->zero();
      int64_t pw = 1;
      for (const auto& c : ac) {
        val = val + c * K->pow(y, pw);
        pw *= field_->p();
      }
      return val;
    };
    std::unordered_set<int64_t> image;
    int64_t kernel = 0;
    for (int64_t i = 0; i < Q; ++i) {
      FFElem v = eval_A(K->from_index(i));
      image.insert(K->index_of(v));
      if (v.is_zero()) ++kernel;
    }
    FFPoly num = galois::lift_poly(as->num, K);
    FFPoly den = galois::lift_poly(as->den, K);
    Int total = 0;
    for (int64_t i = 0; i < Q; ++i) {
      FFElem x = K->from_index(i);
      FFElem dv = den.eval(x);
      if (dv.is_zero()) continue;
      FFElem c = num.eval(x) / dv;
      if (image.count(K->index_of(c))) total += kernel;
    }
    return total;
  }
  const auto& pm = std::get<PlaneModel>(model_);
  require(Int(Q) * Q <= enumeration_budget(),
          "point count exceeds enumeration budget");
  std::vector<PlaneModel::Term> terms;
  for (const auto& t : pm.terms)
    terms.push_back({t.i, t.j, galois::lift_elem(t.coeff, K)});
  auto eval_terms = [&](auto sel, const FFElem& x, const FFElem& y) {
    FFElem acc = K->zero();
    for (const auto& t : terms) {
      auto [c, di, dj] = sel(t);
      if (c.is_zero()) continue;
      FFElem term = c;
      for (int a = 0; a < di; ++a) term = term * x;
      for (int b = 0; b < dj; ++b) term = term * y;
      acc = acc + term;
    }
    return acc;
  };
  auto value = [&](const FFElem& x, const FFElem& y) {
    return eval_terms(
        [&](const PlaneModel::Term& t) { return std::tuple(t.coeff, t.i, t.j); },
        x, y);
  };
  auto dx = [&](const FFElem& x, const FFElem& y) {
    return eval_terms(
        [&](const PlaneModel::Term& t) {
          return std::tuple(t.i == 0 ? K->zero() : K->from_int(t.i) * t.coeff,
                            std::max(t.i - 1, 0), t.j);
        },
        x, y);
  };
  auto dy = [&](const FFElem& x, const FFElem& y) {
    return eval_terms(
        [&](const PlaneModel::Term& t) {
          return std::tuple(t.j == 0 ? K->zero() : K->from_int(t.j) * t.coeff,
                            t.i, std::max(t.j - 1, 0));
        },
        x, y);
  };
  Int total = 0;
  for (int64_t i = 0; i < Q; ++i) {
    FFElem x = K->from_index(i);
    for (int64_t j = 0; j < Q; ++j) {
      FFElem y = K->from_index(j);
      if (!value(x, y).is_zero()) continue;
      check(!dx(x, y).is_zero() || !dy(x, y).is_zero(),
            "singular affine point; model must declare it as a correction");
      total += 1;
    }
  }
  return total;
}

Int Curve::count_rational_places(int r) const {
  require(r >= 1, "constant field extension degree must be positive");
  Int total = affine_count(r);
  for (const auto& ip : infinite_places())
    if (r % ip.degree == 0) total += ip.degree;
  return total;
}

std::vector<Int> Curve::count_series(int rmax) const {
  std::vector<Int> out;
  for (int r = 1; r <= rmax; ++r) out.push_back(count_rational_places(r));
  return out;
}

std::vector<Int> Curve::places_by_degree(int kmax) const {
  std::vector<Int> counts = count_series(kmax);
  std::vector<Int> out;
  for (int k = 1; k <= kmax; ++k) {
    Int sum = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) sum += Int(mobius(k / d)) * counts[size_t(d) - 1];
    check(sum % k == 0, "place count inversion not integral");
    Int bk = sum / k;
    check(bk >= 0, "negative place count");
    out.push_back(bk);
  }
  return out;
}

std::vector<Place> Curve::places_of_degree(int d) const {
  require(d >= 1, "place degree must be positive");
  auto K = extension(d);
  int64_t Q = K->q();
  int64_t q0 = field_->q();

  std::set<std::pair<int64_t, int64_t>> reps;
  auto consider = [&](const FFElem& x, const FFElem& y) {
    // exact degree of the pair = orbit length under the q-power Frobenius
    FFElem xx = x, yy = y;
    int deg = 0;
    do {
      xx = K->pow(xx, q0);
      yy = K->pow(yy, q0);
      ++deg;
    } while (!(xx == x && yy == y));
    if (deg != d) return;
    int64_t bx = K->index_of(x), by = K->index_of(y);
    xx = x;
    yy = y;
    for (int t = 1; t < d; ++t) {
      xx = K->pow(xx, q0);
      yy = K->pow(yy, q0);
      auto cand = std::make_pair(K->index_of(xx), K->index_of(yy));
      if (cand < std::make_pair(bx, by)) std::tie(bx, by) = cand;
    }
    reps.insert({bx, by});
  };

  if (const auto* km = std::get_if<KummerModel>(&model_)) {
    require(Q * km->m <= enumeration_budget(),
            "place enumeration exceeds budget");
    FFPoly f = galois::lift_poly(poly_from_roots(field_, km->roots), K);
    SolutionBuckets buckets(Q, [&](int64_t x) {
      return K->index_of(K->pow(K->from_index(x), km->m));
    });
    for (int64_t i = 0; i < Q; ++i) {
      FFElem y = K->from_index(i);
      int64_t v = K->index_of(f.eval(y));
      buckets.for_each(v, [&](int32_t x) { consider(K->from_index(x), y); });
    }
  } else if (const auto* as = std::get_if<ArtinSchreierModel>(&model_)) {
    require(Q * 4 <= enumeration_budget(), "place enumeration exceeds budget");
    std::vector<FFElem> ac;
    for (const auto& c : as->acoeffs) ac.push_back(galois::lift_elem(c, K));
    SolutionBuckets buckets(Q, [&](int64_t yi) {
      FFElem y = K->from_index(yi);
      FFElem val = K->zero();
      int64_t pw = 1;
      for (const auto& c : ac) {
        val = val + c * K->pow(y, pw);
        pw *= field_->p();
      }
      return K->index_of(val);
    });
    FFPoly num = galois::lift_poly(as->num, K);
    FFPoly den = galois::lift_poly(as->den, K);
    for (int64_t i = 0; i < Q; ++i) {
      FFElem x = K->from_index(i);
      FFElem dv = den.eval(x);
      if (dv.is_zero()) continue;
      int64_t v = K->index_of(num.eval(x) / dv);
      buckets.for_each(v, [&](int32_t y) { consider(x, K->from_index(y)); });
    }
  } else {
    require(Int(Q) * Q <= enumeration_budget(),
            "place enumeration exceeds budget");
    // reuse the counting path's smoothness guarantee by direct scan
    const auto& pm = std::get<PlaneModel>(model_);
    std::vector<PlaneModel::Term> terms;
    for (const auto& t : pm.terms)
      terms.push_back({t.i, t.j, galois::lift_elem(t.coeff, K)});
    for (int64_t i = 0; i < Q; ++i) {
      FFElem x = K->from_index(i);
      for (int64_t j = 0; j < Q; ++j) {
        FFElem y = K->from_index(j);
        FFElem acc = K->zero();
        for (const auto& t : terms) {
          FFElem term = t.coeff;
          for (int a = 0; a < t.i; ++a) term = term * x;
          for (int b = 0; b < t.j; ++b) term = term * y;
          acc = acc + term;
        }
        if (acc.is_zero()) consider(x, y);
      }
    }
  }

  std::vector<Place> out;
  for (const auto& [ix, iy] : reps) {
    Place p;
    p.kind = Place::Kind::Affine;
    p.degree = d;
    p.ix = ix;
    p.iy = iy;
    out.push_back(p);
  }
  const auto& infos = infinite_places();
  for (size_t i = 0; i < infos.size(); ++i) {
    if (infos[i].degree != d) continue;
    Place p;
    p.kind = Place::Kind::AtInfinity;
    p.degree = d;
    p.inf_index = int(i);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor parsing and the bundled registry.

namespace {

FFPoly poly_from_indices(const FieldPtr& F, const std::vector<int64_t>& idx) {
  std::vector<FFElem> cs;
  for (int64_t v : idx) cs.push_back(F->from_index(v));
  return FFPoly::from_coeffs(F, cs);
}

Curve curve_from_json(const json& j) {
  require(j.contains("name") && j.contains("field") && j.contains("genus") &&
              j.contains("model"),
          "curve descriptor missing required keys");
  std::string name = j.at("name").get<std::string>();
  int64_t p = j.at("field").at("p").get<int64_t>();
  int n = j.at("field").at("n").get<int>();
  auto F = Field::make(p, n);
  int genus = j.at("genus").get<int>();
  const json& m = j.at("model");
  std::string type = m.at("type").get<std::string>();
  if (type == "kummer") {
    KummerModel km;
    km.m = m.at("m").get<int64_t>();
    for (int64_t idx : m.at("roots").get<std::vector<int64_t>>())
      km.roots.push_back(F->from_index(idx));
    return Curve(name, F, genus, km);
  }
  if (type == "additive") {
    ArtinSchreierModel as;
    for (int64_t idx : m.at("a").get<std::vector<int64_t>>())
      as.acoeffs.push_back(F->from_index(idx));
    as.num = poly_from_indices(F, m.at("num").get<std::vector<int64_t>>());
    as.den = m.contains("den")
                 ? poly_from_indices(F, m.at("den").get<std::vector<int64_t>>())
                 : FFPoly::from_coeffs(F, {F->one()});
    return Curve(name, F, genus, as);
  }
  if (type == "plane") {
    PlaneModel pm;
    for (const auto& t : m.at("terms")) {
      require(t.is_array() && t.size() == 3, "plane term must be [i, j, c]");
      pm.terms.push_back({t[0].get<int>(), t[1].get<int>(),
                          F->from_index(t[2].get<int64_t>())});
    }
    if (m.contains("corrections"))
      for (const auto& c : m.at("corrections"))
        pm.corrections.push_back(
            {c.at("id").get<std::string>(), c.at("degree").get<int>()});
    return Curve(name, F, genus, pm);
  }
  throw precondition_error("unknown model type: " + type);
}

std::string data_dir() {
  if (const char* e = std::getenv("DIVFORGE_DATA_DIR")) return e;
  return DIVFORGE_DATA_DIR;
}

}  // namespace

Curve curve_from_json_text(const std::string& text) {
  return curve_from_json(json::parse(text));
}

Curve curve_from_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), "cannot open curve descriptor: " + path);
  json j;
  in >> j;
  return curve_from_json(j);
}

std::vector<std::string> builtin_curve_names() {
  std::vector<std::string> names;
  std::filesystem::path dir = std::filesystem::path(data_dir()) / "curves";
  require(std::filesystem::is_directory(dir),
          "curve data directory not found: " + dir.string());
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") names.push_back(e.path().stem());
  std::sort(names.begin(), names.end());
  return names;
}

Curve builtin_curve(const std::string& name) {
  std::filesystem::path file =
      std::filesystem::path(data_dir()) / "curves" / (name + ".json");
  require(std::filesystem::exists(file), "unknown curve: " + name);
  return curve_from_file(file.string());
}

}  // namespace divforge::curves
