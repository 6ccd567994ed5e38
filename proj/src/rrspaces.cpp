#include "divforge/rrspaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace divforge::rrspaces {

using galois::Embedding;
using galois::Field;
using galois::lift_elem;
using galois::lift_poly;

namespace {

// ---------------------------------------------------------------------------
// Model normalization.  Both supported families present the same function-
// field shape: a degree-`cover_deg` cover of the rational field F_q(base),
// totally ramified over a single rational place at infinity, where the base
// coordinate has pole order cover_deg and the covering coordinate pole order
// cover_pole, gcd(cover_deg, cover_pole) = 1.  The monomials base^i cover^j
// with 0 <= j < cover_deg realise exactly the Weierstrass semigroup
// <cover_deg, cover_pole> of pole numbers at that place.
// ---------------------------------------------------------------------------

struct ModelView {
  bool radical = false;         // otherwise additive
  int64_t cover_deg = 0;        // = pole order of the base coordinate
  int64_t cover_pole = 0;       // pole order of the covering coordinate
  FFPoly rhs;                   // f(base): x^m = f(y) resp. A(y) = num(x)
  std::vector<FFElem> acoeffs;  // additive models only
};

FFPoly poly_from_roots(const FieldPtr& F, const std::vector<FFElem>& roots) {
  FFPoly f = FFPoly::constant(F, F->one());
  for (const auto& r : roots)
    f = f * FFPoly::from_coeffs(F, {F->zero() - r, F->one()});
  return f;
}

ModelView view_of(const Curve& c) {
  ModelView v;
  const auto& F = c.field();
  if (const auto* km = std::get_if<curves::KummerModel>(&c.model())) {
    require(std::gcd(km->m, int64_t(km->roots.size())) == 1,
            "radical model is not totally ramified at infinity");
    v.radical = true;
    v.cover_deg = km->m;
    v.cover_pole = int64_t(km->roots.size());
    v.rhs = poly_from_roots(F, km->roots);
  } else if (const auto* as =
                 std::get_if<curves::ArtinSchreierModel>(&c.model())) {
    require(as->den.degree() == 0,
            "additive models with denominators are unsupported for "
            "dimension queries");
    v.radical = false;
    v.cover_deg = 1;
    for (size_t i = 1; i < as->acoeffs.size(); ++i) v.cover_deg *= F->p();
    v.cover_pole = as->num.degree();
    v.acoeffs = as->acoeffs;
    v.rhs = as->num;
    require(v.cover_pole >= 1,
            "constant right-hand side has no place at infinity");
  } else {
    throw precondition_error(
        "plane models are unsupported for dimension queries");
  }
  check(std::gcd(v.cover_deg, v.cover_pole) == 1,
        "pole numbers at infinity are not coprime");
  check(Int(2) * c.genus() == Int(v.cover_deg - 1) * (v.cover_pole - 1),
        "genus does not match the semigroup at infinity");
  const auto& inf = c.infinite_places();
  check(inf.size() == 1 && inf[0].degree == 1,
        "model must expose a single rational place at infinity");
  return v;
}

int64_t pole_order(const ModelView& v, int64_t i, int64_t j) {
  return v.cover_deg * i + v.cover_pole * j;
}

// Pole order of a function representation at the place at infinity; -1 if f
// is the zero representation.
int64_t infinity_pole(const ModelView& v, const FunctionRep& f) {
  int64_t best = -1;
  for (size_t j = 0; j < f.comps.size(); ++j) {
    if (f.comps[j].is_zero()) continue;
    best = std::max(best, pole_order(v, f.comps[j].degree(), int64_t(j)));
  }
  return best;
}

void validate_function(const Curve& c, const ModelView& v,
                       const FunctionRep& f) {
  require(int64_t(f.comps.size()) <= v.cover_deg,
          "function representation exceeds the module rank");
  for (const auto& g : f.comps)
    require(g.F == nullptr || g.F == c.field().get(),
            "function coefficients outside the base field");
}

// ---------------------------------------------------------------------------
// Truncated power series over a finite field.  All series share one working
// precision; operations truncate to it.
// ---------------------------------------------------------------------------

struct Series {
  const Field* K = nullptr;
  std::vector<FFElem> c;

  int len() const { return int(c.size()); }
};

Series s_const(const FieldPtr& K, const FFElem& v, int len) {
  Series s;
  s.K = K.get();
  s.c.assign(size_t(len), K->zero());
  if (len > 0) s.c[0] = v;
  return s;
}

Series s_add(const Series& a, const Series& b) {
  Series r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  return r;
}

Series s_sub(const Series& a, const Series& b) {
  Series r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  return r;
}

Series s_mul(const Series& a, const Series& b) {
  Series r;
  r.K = a.K;
  r.c.assign(a.c.size(), a.K->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; i + j < b.c.size(); ++j)
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  }
  return r;
}

Series s_scale(const Series& a, const FFElem& v) {
  Series r = a;
  for (auto& x : r.c) x = x * v;
  return r;
}

// Multiplicative inverse; the constant term must be nonzero.
Series s_inv(const Series& a) {
  check(!a.c.empty() && !a.c[0].is_zero(),
        "series inverse requires a unit constant term");
  Series r;
  r.K = a.K;
  r.c.assign(a.c.size(), a.K->zero());
  FFElem inv0 = a.K->inv(a.c[0]);
  r.c[0] = inv0;
  for (size_t k = 1; k < a.c.size(); ++k) {
    FFElem acc = a.K->zero();
    for (size_t i = 1; i <= k; ++i) acc = acc + a.c[i] * r.c[k - i];
    r.c[k] = a.K->zero() - acc * inv0;
  }
  return r;
}

Series s_pow(const Series& a, int64_t e) {
  FieldPtr Kp = a.K->shared_from_this();
  Series r = s_const(Kp, a.K->one(), a.len());
  Series base = a;
  while (e > 0) {
    if (e & 1) r = s_mul(r, base);
    base = s_mul(base, base);
    e >>= 1;
  }
  return r;
}

bool s_is_zero(const Series& a) {
  for (const auto& x : a.c)
    if (!x.is_zero()) return false;
  return true;
}

Series eval_poly_series(const FFPoly& f, const Series& at) {
  FieldPtr Kp = at.K->shared_from_this();
  Series acc = s_const(Kp, at.K->zero(), at.len());
  for (int i = f.degree(); i >= 0; --i) {
    acc = s_mul(acc, at);
    acc.c[0] = acc.c[0] + f.c[size_t(i)];
  }
  return acc;
}

// Newton iteration: solve X^m = F with X(0) = x0 != 0, gcd(m, p) = 1.
Series solve_radical(const FieldPtr& K, const Series& F, const FFElem& x0,
                     int64_t m) {
  FFElem mK = K->from_int(m % K->p());
  check(!mK.is_zero(), "radical exponent divisible by the characteristic");
  Series X = s_const(K, x0, F.len());
  for (int it = 0; it < F.len() + 4; ++it) {
    Series resid = s_sub(s_pow(X, m), F);
    if (s_is_zero(resid)) return X;
    Series deriv = s_scale(s_pow(X, m - 1), mK);
    X = s_sub(X, s_mul(resid, s_inv(deriv)));
  }
  check(s_is_zero(s_sub(s_pow(X, m), F)), "radical expansion did not converge");
  return X;
}

// Newton iteration: solve f(Y) = T with Y(0) = y0, f'(y0) != 0.
Series solve_poly_eq(const FieldPtr& K, const FFPoly& f, const Series& T,
                     const FFElem& y0) {
  FFPoly df = galois::derivative(f);
  Series Y = s_const(K, y0, T.len());
  for (int it = 0; it < T.len() + 4; ++it) {
    Series resid = s_sub(eval_poly_series(f, Y), T);
    if (s_is_zero(resid)) return Y;
    Y = s_sub(Y, s_mul(resid, s_inv(eval_poly_series(df, Y))));
  }
  check(s_is_zero(s_sub(eval_poly_series(f, Y), T)),
        "implicit expansion did not converge");
  return Y;
}

Series eval_additive(const FieldPtr& K, const std::vector<FFElem>& acoeffs,
                     int64_t p, const Series& Y) {
  Series acc = s_const(K, K->zero(), Y.len());
  Series pw = Y;
  for (size_t i = 0; i < acoeffs.size(); ++i) {
    if (i > 0) pw = s_pow(pw, p);
    acc = s_add(acc, s_scale(pw, acoeffs[i]));
  }
  return acc;
}

// Coefficients must already live in K.
FFElem eval_additive_elem(const FieldPtr& K,
                          const std::vector<FFElem>& acoeffs, int64_t p,
                          const FFElem& y) {
  FFElem acc = K->zero();
  int64_t pw = 1;
  for (const auto& a : acoeffs) {
    acc = acc + a * K->pow(y, pw);
    pw *= p;
  }
  return acc;
}

// Solve A(Y) = R with Y(0) = y0 for an additive A with A'(Y) = a_0 != 0.
Series solve_additive(const FieldPtr& K, const std::vector<FFElem>& acoeffs,
                      int64_t p, const Series& R, const FFElem& y0) {
  check(!acoeffs[0].is_zero(), "inseparable additive polynomial");
  FFElem inv0 = K->inv(acoeffs[0]);
  Series Y = s_const(K, y0, R.len());
  for (int it = 0; it < R.len() + 4; ++it) {
    Series resid = s_sub(R, eval_additive(K, acoeffs, p, Y));
    if (s_is_zero(resid)) return Y;
    Y = s_add(Y, s_scale(resid, inv0));
  }
  check(s_is_zero(s_sub(R, eval_additive(K, acoeffs, p, Y))),
        "additive expansion did not converge");
  return Y;
}

// ---------------------------------------------------------------------------
// Local coordinates at an affine place.
// ---------------------------------------------------------------------------

struct PointContext {
  FieldPtr K;  // residue field F_{q^deg}
  bool ramified = false;
  Series base;   // base coordinate in powers of the uniformizer
  Series cover;  // covering coordinate
};

PointContext context_at(const Curve& c, const ModelView& v, const Place& P,
                        int len) {
  require(P.kind == Place::Kind::Affine,
          "local expansions exist at affine places only");
  require(P.degree >= 1 && P.degree <= 3,
          "affine support is limited to places of degree at most three");
  auto K = c.extension(P.degree);
  FFElem px = K->from_index(P.ix), py = K->from_index(P.iy);
  FFElem base0 = v.radical ? py : px;
  FFElem cover0 = v.radical ? px : py;
  FFPoly rhsK = lift_poly(v.rhs, K);
  std::vector<FFElem> aK;
  for (const auto& a : v.acoeffs) aK.push_back(lift_elem(a, K));
  if (v.radical) {
    require(K->pow(cover0, v.cover_deg) == rhsK.eval(base0),
            "place does not lie on the curve");
  } else {
    require(eval_additive_elem(K, aK, c.field()->p(), cover0) ==
                rhsK.eval(base0),
            "place does not lie on the curve");
  }

  PointContext ctx;
  ctx.K = K;
  if (v.radical && cover0.is_zero()) {
    // Totally ramified: the covering coordinate is the uniformizer and the
    // base coordinate solves rhs(base) = u^m from the simple root base0.
    check(P.degree == 1, "ramified radical places are rational");
    check(rhsK.eval(base0).is_zero(), "ramified place off the branch locus");
    ctx.ramified = true;
    ctx.cover = s_const(K, K->zero(), len);
    if (len > 1) ctx.cover.c[1] = K->one();
    Series target = s_const(K, K->zero(), len);
    if (v.cover_deg < len) target.c[size_t(v.cover_deg)] = K->one();
    ctx.base = solve_poly_eq(K, rhsK, target, base0);
  } else {
    // Unramified: the shifted base coordinate is the uniformizer.
    ctx.base = s_const(K, base0, len);
    if (len > 1) ctx.base.c[1] = K->one();
    Series rhs_at = eval_poly_series(rhsK, ctx.base);
    if (v.radical)
      ctx.cover = solve_radical(K, rhs_at, cover0, v.cover_deg);
    else
      ctx.cover = solve_additive(K, aK, c.field()->p(), rhs_at, cover0);
  }
  return ctx;
}

Series eval_function_series(const PointContext& ctx, const FunctionRep& f) {
  Series acc = s_const(ctx.K, ctx.K->zero(), ctx.base.len());
  Series cpow = s_const(ctx.K, ctx.K->one(), ctx.base.len());
  for (size_t j = 0; j < f.comps.size(); ++j) {
    if (j > 0) cpow = s_mul(cpow, ctx.cover);
    if (f.comps[j].is_zero()) continue;
    FFPoly gK = lift_poly(f.comps[j], ctx.K);
    acc = s_add(acc, s_mul(eval_poly_series(gK, ctx.base), cpow));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Fiber of the cover through a given affine place: the zero places of the
// minimal polynomial of the base coordinate, with their multiplicities in
// div(mu(base)).  Because radical models have their torsion in F_q and
// additive models their kernel, the whole fiber lives inside the residue
// field of the given place.
// ---------------------------------------------------------------------------

struct FiberPlace {
  Place place;
  int64_t mult;  // v at that place of mu(base)
};

int64_t subfield_degree(const FieldPtr& K, const FFElem& a, int64_t q0) {
  FFElem z = a;
  int64_t d = 0;
  do {
    z = K->pow(z, q0);
    ++d;
  } while (!(z == a));
  return d;
}

std::vector<FiberPlace> fiber_of(const Curve& c, const ModelView& v,
                                 const Place& Q, int64_t* base_point_degree) {
  auto K = c.extension(Q.degree);
  int64_t q0 = c.field()->q();
  FFElem px = K->from_index(Q.ix), py = K->from_index(Q.iy);
  FFElem base0 = v.radical ? py : px;
  FFElem cover0 = v.radical ? px : py;
  *base_point_degree = subfield_degree(K, base0, q0);

  if (v.radical && cover0.is_zero()) {
    check(*base_point_degree == 1, "branch locus must be rational");
    return {{Q, v.cover_deg}};
  }

  // The fiber over base0 is {cover0 * zeta} (radical) or {cover0 + kappa}
  // (additive) with the shifts drawn from the base field; conjugate base
  // points are reached by the Frobenius orbits of these points.
  std::vector<FFElem> shifts;
  const auto& F = c.field();
  for (int64_t i = 0; i < F->q(); ++i) {
    FFElem z = F->from_index(i);
    bool keep = v.radical
                    ? F->pow(z, v.cover_deg).is_one()
                    : eval_additive_elem(F, v.acoeffs, F->p(), z).is_zero();
    if (keep) shifts.push_back(lift_elem(z, K));
  }
  check(int64_t(shifts.size()) == v.cover_deg,
        "fiber shifts must fill the covering degree");

  std::set<std::pair<int64_t, int64_t>> seen;
  std::vector<FiberPlace> out;
  int64_t degsum = 0;
  for (const auto& z : shifts) {
    FFElem cov = v.radical ? cover0 * z : cover0 + z;
    FFElem x = v.radical ? cov : base0;
    FFElem y = v.radical ? base0 : cov;
    if (seen.count({K->index_of(x), K->index_of(y)})) continue;
    // Frobenius orbit of the pair inside K.
    std::vector<std::pair<FFElem, FFElem>> orbit;
    FFElem xx = x, yy = y;
    do {
      orbit.push_back({xx, yy});
      seen.insert({K->index_of(xx), K->index_of(yy)});
      xx = K->pow(xx, q0);
      yy = K->pow(yy, q0);
    } while (!(xx == x && yy == y));
    int s = int(orbit.size());
    auto Ks = c.extension(s);
    Place R;
    R.kind = Place::Kind::Affine;
    R.degree = s;
    std::pair<int64_t, int64_t> best{-1, -1};
    for (const auto& [ox, oy] : orbit) {
      int64_t rix, riy;
      if (s == Q.degree) {
        rix = K->index_of(ox);
        riy = K->index_of(oy);
      } else {
        const auto& emb = Embedding::get(Ks, K);
        auto pxs = emb.preimage(ox), pys = emb.preimage(oy);
        check(pxs.has_value() && pys.has_value(),
              "orbit member escapes its degree subfield");
        rix = Ks->index_of(*pxs);
        riy = Ks->index_of(*pys);
      }
      if (best.first < 0 || std::make_pair(rix, riy) < best)
        best = {rix, riy};
    }
    R.ix = best.first;
    R.iy = best.second;
    out.push_back({R, 1});
    degsum += s;
  }
  check(degsum == v.cover_deg * *base_point_degree,
        "fiber degrees must sum to the covering degree");
  return out;
}

bool place_is_ramified(const Curve& c, const ModelView& v, const Place& P) {
  if (!v.radical || P.kind != Place::Kind::Affine) return false;
  auto K = c.extension(P.degree);
  return K->from_index(P.ix).is_zero();
}

bool lies_on_curve(const Curve& c, const ModelView& v, const Place& P) {
  auto K = c.extension(P.degree);
  FFElem px = K->from_index(P.ix), py = K->from_index(P.iy);
  FFPoly rhsK = lift_poly(v.rhs, K);
  if (v.radical) return K->pow(px, v.cover_deg) == rhsK.eval(py);
  std::vector<FFElem> aK;
  for (const auto& a : v.acoeffs) aK.push_back(lift_elem(a, K));
  return eval_additive_elem(K, aK, c.field()->p(), py) == rhsK.eval(px);
}

}  // namespace

// ---------------------------------------------------------------------------
// Function representations.
// ---------------------------------------------------------------------------

bool FunctionRep::is_zero() const {
  for (const auto& g : comps)
    if (!g.is_zero()) return false;
  return true;
}

FunctionRep base_polynomial(const Curve& c, const FFPoly& g) {
  ModelView v = view_of(c);
  (void)v;
  require(g.F == nullptr || g.F == c.field().get(),
          "polynomial outside the base field");
  FunctionRep f;
  f.comps = {g};
  return f;
}

FunctionRep cover_power(const Curve& c, int j) {
  ModelView v = view_of(c);
  require(j >= 0 && int64_t(j) < v.cover_deg,
          "covering power outside the module rank");
  FunctionRep f;
  const auto& F = c.field();
  f.comps.assign(size_t(j) + 1, FFPoly::zero(F));
  f.comps[size_t(j)] = FFPoly::constant(F, F->one());
  return f;
}

FunctionRep make_function(const Curve& c, std::vector<FFPoly> comps) {
  ModelView v = view_of(c);
  FunctionRep f;
  f.comps = std::move(comps);
  validate_function(c, v, f);
  return f;
}

// ---------------------------------------------------------------------------
// Expansions and valuations.
// ---------------------------------------------------------------------------

LocalExpansion expand(const Curve& c, const FunctionRep& f, const Place& P,
                      int order) {
  require(order >= 0, "expansion order must be nonnegative");
  ModelView v = view_of(c);
  validate_function(c, v, f);
  int precision = order + 2;
  PointContext ctx = context_at(c, v, P, precision);
  Series s = eval_function_series(ctx, f);
  LocalExpansion e;
  e.place = P;
  e.coeff_field = ctx.K;
  e.coeffs = s.c;
  e.precision = precision;
  return e;
}

int valuation(const Curve& c, const FunctionRep& f, const Place& P) {
  ModelView v = view_of(c);
  validate_function(c, v, f);
  require(!f.is_zero(), "valuation of the zero function is undefined");
  if (P.kind == Place::Kind::AtInfinity) {
    require(P.inf_index == 0 && P.degree == 1, "unknown place at infinity");
    return int(-infinity_pole(v, f));
  }
  // The zero divisor of f has degree equal to its pole order at infinity, so
  // the valuation at a degree-d place is at most that order divided by d.
  int64_t zero_budget = infinity_pole(v, f);
  int cap = int(zero_budget / P.degree) + 1;
  int prec = 4;
  for (;;) {
    PointContext ctx = context_at(c, v, P, prec);
    Series s = eval_function_series(ctx, f);
    for (int i = 0; i < prec; ++i)
      if (!s.c[size_t(i)].is_zero()) return i;
    check(prec < cap + 2,
          "nonzero function vanishing beyond its zero budget");
    prec = std::min(prec * 2, cap + 2);
  }
}

// ---------------------------------------------------------------------------
// Riemann-Roch dimension.
// ---------------------------------------------------------------------------

Int rr_dim(const Curve& c, const Divisor& D, int guard) {
  require(guard >= 2, "expansion guard must keep at least two digits");
  ModelView v = view_of(c);
  const int g = c.genus();
  const Int deg = D.degree();
  require(deg <= Int(4 * g + 8), "divisor degree exceeds the supported cap");
  require(D.coeffs.size() <= 24, "divisor support exceeds the supported cap");
  Int mass = 0;
  for (const auto& [P, m] : D.coeffs)
    mass += (m < 0 ? -m : m) * P.degree;
  require(mass <= Int(2 * (4 * g + 8)),
          "divisor coefficient mass exceeds the supported cap");
  if (deg < 0) return 0;

  // Classify the support and clear affine poles with powers of the minimal
  // polynomial of each base coordinate: E = D - div(h) has no positive
  // affine part, and L(D) ~ L(E) via multiplication by h.
  int64_t e_inf = 0;
  std::map<Place, int64_t> E;
  for (const auto& [P, m] : D.coeffs) {
    int64_t mi = int64_t(m);
    if (P.kind == Place::Kind::AtInfinity) {
      require(P.inf_index == 0 && P.degree == 1, "unknown place at infinity");
      e_inf += mi;
    } else {
      require(P.degree <= 3,
              "affine support is limited to places of degree at most three");
      require(lies_on_curve(c, v, P), "place does not lie on the curve");
      E[P] += mi;
    }
  }
  for (const auto& [Q, m] : E) {
    if (m <= 0) continue;
    int64_t ram = place_is_ramified(c, v, Q) ? v.cover_deg : 1;
    int64_t eQ = (m + ram - 1) / ram;
    int64_t base_deg = 0;
    auto fiber = fiber_of(c, v, Q, &base_deg);
    e_inf += v.cover_deg * base_deg * eQ;
    for (const auto& fp : fiber) E[fp.place] -= eQ * fp.mult;
  }
  for (const auto& [R, val] : E)
    check(val <= 0, "pole clearing left a positive affine coefficient");

  if (e_inf < 0) return 0;

  // Monomial basis of L(e_inf * Pinf): distinct pole orders, one per
  // semigroup element.
  struct Mono {
    int64_t i, j;
  };
  std::vector<Mono> basis;
  for (int64_t j = 0; j < v.cover_deg; ++j) {
    if (v.cover_pole * j > e_inf) continue;
    for (int64_t i = 0; pole_order(v, i, j) <= e_inf; ++i)
      basis.push_back({i, j});
  }
  if (e_inf >= 2 * g - 1)
    check(Int(basis.size()) == Int(e_inf) + 1 - g,
          "semigroup count disagrees with the expected dimension");
  const int64_t B = int64_t(basis.size());
  if (B == 0) return 0;

  // Vanishing conditions at every affine place with a negative coefficient.
  // Unknowns are the F_q-coefficients of the basis monomials, handled as
  // n = [F_q : F_p] columns each so that plain F_p elimination applies; the
  // solution set is an F_q-subspace, so the corank is divisible by n.
  const int n = c.field()->n();
  const int64_t p = c.field()->p();
  std::vector<std::vector<int64_t>> rows;
  int64_t max_i = 0, max_j = 0;
  for (const auto& mo : basis) {
    max_i = std::max(max_i, mo.i);
    max_j = std::max(max_j, mo.j);
  }
  for (const auto& [R, val] : E) {
    if (val >= 0) continue;
    int t = int(-val);
    PointContext ctx = context_at(c, v, R, t + guard);
    require(Int(rows.size() + size_t(t) * ctx.K->n()) * Int(B) * n <=
                curves::enumeration_budget(),
            "dimension query exceeds the enumeration budget");
    std::vector<Series> bpow(size_t(max_i) + 1), cpow(size_t(max_j) + 1);
    bpow[0] = s_const(ctx.K, ctx.K->one(), t + guard);
    for (int64_t i = 1; i <= max_i; ++i)
      bpow[size_t(i)] = s_mul(bpow[size_t(i) - 1], ctx.base);
    cpow[0] = bpow[0];
    for (int64_t j = 1; j <= max_j; ++j)
      cpow[size_t(j)] = s_mul(cpow[size_t(j) - 1], ctx.cover);
    // omega powers: the image of the base-field generator in the residue
    // field spans the F_q-column block of each monomial.
    std::vector<FFElem> wpow(size_t(n), ctx.K->one());
    FFElem w = lift_elem(c.field()->gen(), ctx.K);
    for (int tpw = 1; tpw < n; ++tpw) wpow[size_t(tpw)] = wpow[size_t(tpw) - 1] * w;
    const int nd = ctx.K->n();
    for (int o = 0; o < t; ++o) {
      std::vector<std::vector<int64_t>> block(
          size_t(nd), std::vector<int64_t>(size_t(B) * size_t(n), 0));
      bool any = false;
      for (int64_t k = 0; k < B; ++k) {
        // u^o coefficient of base^i cover^j by convolving the cached powers.
        FFElem coeff = ctx.K->zero();
        const auto& bs = bpow[size_t(basis[size_t(k)].i)];
        const auto& cs = cpow[size_t(basis[size_t(k)].j)];
        for (int a = 0; a <= o; ++a)
          coeff = coeff + bs.c[size_t(a)] * cs.c[size_t(o - a)];
        if (coeff.is_zero()) continue;
        for (int tt = 0; tt < n; ++tt) {
          FFElem entry = coeff * wpow[size_t(tt)];
          for (int l = 0; l < nd; ++l) {
            int64_t val2 = l < int(entry.c.size()) ? entry.c[size_t(l)] : 0;
            if (val2 != 0) {
              block[size_t(l)][size_t(k) * size_t(n) + size_t(tt)] = val2;
              any = true;
            }
          }
        }
      }
      if (any)
        for (auto& r : block) rows.push_back(std::move(r));
    }
  }

  int rank = galois::rank_mod_p(std::move(rows), int(B) * n, p);
  int64_t corank = B * n - rank;
  check(corank % n == 0, "solution space is not an F_q-subspace");
  Int dim = corank / n;

  // Riemann's inequality, with equality beyond degree 2g - 2.
  Int lower = deg - g + 1;
  check(dim >= (lower > 0 ? lower : Int(0)),
        "dimension below the Riemann bound");
  if (deg > 2 * g - 2)
    check(dim == lower, "dimension above the Riemann bound for large degree");
  return dim;
}

bool is_nonspecial(const Curve& c, const Divisor& D) {
  Int i = rr_dim(c, D) - D.degree() - 1 + c.genus();
  check(i >= 0, "negative index of speciality");
  return i == 0;
}

bool is_ordinary_divisor(const Curve& c, const Divisor& D) {
  Int expected = D.degree() + 1 - c.genus();
  if (expected < 0) expected = 0;
  return rr_dim(c, D) == expected;
}

bool equivalent(const Curve& c, const Divisor& D1, const Divisor& D2) {
  require(D1.degree() == D2.degree(),
          "equivalence requires divisors of equal degree");
  Int d = rr_dim(c, D1 - D2);
  check(d == 0 || d == 1, "degree-zero space has dimension zero or one");
  return d == 1;
}

std::optional<Place> greedy_support_extension(
    const Curve& c, const Divisor& D, const std::vector<Place>& candidates,
    ExtensionRule rule) {
  Int have = rr_dim(c, D);
  for (const auto& P : candidates) {
    Int got = rr_dim(c, D + curves::single(P));
    bool ok = rule == ExtensionRule::KeepDim ? got == have : got > have;
    if (ok) return P;
  }
  return std::nullopt;
}

}  // namespace divforge::rrspaces
