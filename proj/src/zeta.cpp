#include "divforge/zeta.hpp"

namespace divforge::zeta {

namespace {

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

void validate_shape(const LPolynomial& L) {
  require(L.g >= 0, "negative genus");
  require(L.q >= 2, "invalid field size");
  require(int(L.a.size()) == 2 * L.g + 1, "coefficient count must be 2g+1");
  require(L.a[0] == 1, "constant coefficient must be 1");
  for (int i = 0; i <= L.g; ++i)
    check(L.a[size_t(2 * L.g - i)] == ipow(L.q, unsigned(L.g - i)) * L.a[size_t(i)],
          "functional equation violated");
}

// dense rational polynomials, ascending coefficients
using QPoly = std::vector<Rat>;

int qdeg(const QPoly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[size_t(i)] != 0) return i;
  return -1;
}

Rat qeval(const QPoly& f, const Rat& x) {
  Rat acc = 0;
  for (int i = int(f.size()) - 1; i >= 0; --i) acc = acc * x + f[size_t(i)];
  return acc;
}

QPoly qderivative(const QPoly& f) {
  QPoly out;
  for (size_t i = 1; i < f.size(); ++i) out.push_back(Rat(i) * f[i]);
  return out;
}

// quotient and remainder of a by b (b nonzero)
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  int db = qdeg(b);
  check(db >= 0, "division by the zero polynomial");
  QPoly quot(a.size(), Rat(0));
  for (int da = qdeg(a); da >= db; da = qdeg(a)) {
    Rat c = a[size_t(da)] / b[size_t(db)];
    quot[size_t(da - db)] = c;
    for (int i = 0; i <= db; ++i) a[size_t(da - db + i)] -= c * b[size_t(i)];
    a[size_t(da)] = 0;  // clear exactly
  }
  return {quot, a};
}

// divide out d if it divides f exactly; report whether it did
bool qdivide_exact(QPoly& f, const QPoly& d) {
  auto [quot, rem] = qdivmod(f, d);
  if (qdeg(rem) >= 0) return false;
  f = std::move(quot);
  return true;
}

QPoly qmonic_gcd(QPoly a, QPoly b) {
  while (qdeg(b) >= 0) {
    QPoly r = qdivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  int d = qdeg(a);
  check(d >= 0, "gcd of two zero polynomials");
  Rat lead = a[size_t(d)];
  for (auto& c : a) c /= lead;
  return a;
}

// exact sign of f at side * 2 sqrt(q): split into even and odd parts,
// f(x) = E(x^2) + x O(x^2), and compare E(4q) against -+ 2 sqrt(q) O(4q)
int qsign_at_boundary(const QPoly& f, const Int& q, int side) {
  Rat even = 0, odd = 0, z = Rat(4 * q), zp = 1;
  for (size_t i = 0; i + 1 < f.size(); i += 2) {
    even += f[i] * zp;
    odd += f[i + 1] * zp;
    zp *= z;
  }
  if (f.size() % 2 == 1) even += f[f.size() - 1] * zp;
  return cmp_rat_sqrt(even, Rat(-2 * side) * odd, q);
}

}  // namespace

Int LPolynomial::eval(const Rat& t) const {
  Rat acc = 0;
  for (int i = int(a.size()) - 1; i >= 0; --i) acc = acc * t + a[size_t(i)];
  check(boost::multiprecision::denominator(acc) == 1,
        "non-integral evaluation");
  return boost::multiprecision::numerator(acc);
}

Int LPolynomial::class_number() const {
  Int h = 0;
  for (const auto& c : a) h += c;
  check(h > 0, "class number must be positive");
  return h;
}

LPolynomial l_from_counts(const Int& q, int g, const std::vector<Int>& counts) {
  require(g >= 0, "negative genus");
  require(int(counts.size()) >= g, "need the first g point counts");
  LPolynomial L;
  L.q = q;
  L.g = g;
  L.a.assign(size_t(2 * g) + 1, 0);
  L.a[0] = 1;
  std::vector<Int> S(size_t(g) + 1, 0);
  for (int r = 1; r <= g; ++r)
    S[size_t(r)] = counts[size_t(r) - 1] - (ipow(q, unsigned(r)) + 1);
  for (int i = 1; i <= g; ++i) {
    Int acc = 0;
    for (int j = 1; j <= i; ++j) acc += S[size_t(j)] * L.a[size_t(i - j)];
    check(acc % i == 0, "coefficient recursion not integral");
    L.a[size_t(i)] = acc / i;
  }
  for (int i = 0; i < g; ++i)
    L.a[size_t(2 * g - i)] = ipow(q, unsigned(g - i)) * L.a[size_t(i)];
  // round trip: the counts implied by L must reproduce the inputs
  if (g > 0) {
    auto back = counts_from_l(L, g);
    for (int r = 1; r <= g; ++r)
      check(back[size_t(r) - 1] == counts[size_t(r) - 1],
            "count round trip failed");
  }
  L.class_number();
  return L;
}

std::vector<Int> counts_from_l(const LPolynomial& L, int rmax) {
  validate_shape(L);
  require(rmax >= 1, "rmax must be positive");
  int n = 2 * L.g;
  // Reciprocal-root polynomial t^n L(1/t) = t^n + a_1 t^{n-1} + ... + a_n is
  // monic with the alpha_i as roots; Newton's identities give the power sums.
  std::vector<Int> p(size_t(rmax) + 1, 0);
  for (int k = 1; k <= rmax; ++k) {
    Int acc = 0;
    for (int i = 1; i <= std::min(k - 1, n); ++i)
      acc += L.a[size_t(i)] * p[size_t(k - i)];
    if (k <= n) acc += Int(k) * L.a[size_t(k)];
    p[size_t(k)] = -acc;
  }
  std::vector<Int> out;
  for (int r = 1; r <= rmax; ++r)
    out.push_back(ipow(L.q, unsigned(r)) + 1 - p[size_t(r)]);
  return out;
}

std::vector<Int> places_from_l(const LPolynomial& L, int kmax) {
  auto counts = counts_from_l(L, kmax);
  std::vector<Int> out;
  for (int k = 1; k <= kmax; ++k) {
    Int sum = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) sum += Int(mobius(k / d)) * counts[size_t(d) - 1];
    check(sum % k == 0, "place count inversion not integral");
    Int bk = sum / k;
    check(bk >= 0, "negative place count implied by L");
    out.push_back(bk);
  }
  return out;
}

std::vector<Int> effective_counts(const LPolynomial& L, int mmax) {
  validate_shape(L);
  require(mmax <= std::max(2 * L.g - 2, 0),
          "closed formula only valid up to degree 2g-2");
  std::vector<Int> out;
  for (int m = 0; m <= mmax; ++m) {
    Int acc = 0;
    for (int i = 0; i <= m; ++i) {
      Int num = ipow(L.q, unsigned(m - i + 1)) - 1;
      check(num % (L.q - 1) == 0, "geometric sum not integral");
      acc += (num / (L.q - 1)) * L.a[size_t(i)];
    }
    check(acc >= 0, "negative effective divisor count");
    out.push_back(acc);
  }
  return out;
}

Int effective_count_oracle(const LPolynomial& L, int n) {
  require(n >= 0, "degree must be nonnegative");
  if (n == 0) return 1;
  auto B = places_from_l(L, n);
  // coefficient extraction from prod_k (1 - t^k)^{-B_k}, truncated at t^n
  std::vector<Int> poly(size_t(n) + 1, 0);
  poly[0] = 1;
  for (int k = 1; k <= n; ++k) {
    if (B[size_t(k) - 1] == 0) continue;
    std::vector<Int> next(size_t(n) + 1, 0);
    for (int j = 0; k * j <= n; ++j) {
      // C(B_k + j - 1, j) copies of t^{kj}
      Int coef = binomial(B[size_t(k) - 1] + j - 1, unsigned(j));
      for (int i = 0; i + k * j <= n; ++i)
        next[size_t(i + k * j)] += coef * poly[size_t(i)];
    }
    poly = std::move(next);
  }
  return poly[size_t(n)];
}

Int effective_count_below_genus(const LPolynomial& L, int k) {
  validate_shape(L);
  require(k >= 1 && k <= L.g, "index out of range");
  Int h = L.class_number();
  Int top = 0, bottom = 0;
  for (int i = 0; i <= L.g + k - 1; ++i) top += L.a[size_t(i)];
  for (int i = 0; i <= L.g - k; ++i) bottom += L.a[size_t(i)];
  Rat value = (Rat(h - top) / ipow(L.q, unsigned(k - 1)) - bottom) / (L.q - 1);
  check(boost::multiprecision::denominator(value) == 1,
        "effective divisor count not integral");
  Int out = boost::multiprecision::numerator(value);
  check(out >= 0, "negative effective divisor count");
  return out;
}

LPolynomial l_from_real_parts(const Int& q, const RealPartSpec& spec) {
  require(q >= 2, "invalid field size");
  auto mul = [](const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<Int> poly{1};
  for (const auto& x : spec.rational) {
    require(x * x <= 4 * q, "real part outside the Weil interval");
    poly = mul(poly, {1, -x, q});
  }
  for (const auto& pr : spec.pairs) {
    Int disc = pr.s * pr.s - 4 * pr.p;
    require(disc >= 0, "quadratic pair has complex roots");
    // both roots of x^2 - s x + p must lie in [-2 sqrt(q), 2 sqrt(q)]:
    // values at the interval ends are nonnegative and the vertex is inside
    require(cmp_rat_sqrt(Rat(4 * q + pr.p), Rat(2 * pr.s), q) >= 0,
            "real part above the Weil interval");
    require(cmp_rat_sqrt(Rat(4 * q + pr.p), Rat(-2 * pr.s), q) >= 0,
            "real part below the Weil interval");
    require(pr.s * pr.s <= 16 * q, "pair midpoint outside the Weil interval");
    poly = mul(poly, {1, -pr.s, pr.p + 2 * q, -q * pr.s, q * q});
  }
  LPolynomial L;
  L.q = q;
  L.g = spec.genus();
  L.a = std::move(poly);
  validate_shape(L);
  return L;
}

Int cross_sum(const LPolynomial& L) {
  validate_shape(L);
  Int acc = L.a[size_t(L.g)];
  for (int i = 0; i < L.g; ++i) acc += 2 * L.a[size_t(i)];
  return acc;
}

std::vector<Int> real_part_polynomial(const LPolynomial& L) {
  validate_shape(L);
  int g = L.g;
  // peel off w_j * t^(g-k) (t^2 + q)^k for k = g..0 from the reciprocal-root
  // polynomial; rem[i] tracks the coefficient of t^(2g-i)
  std::vector<Int> rem = L.a;
  std::vector<Int> w(size_t(g) + 1, 0);
  for (int k = g; k >= 0; --k) {
    int j = g - k;
    w[size_t(j)] = rem[size_t(j)];
    for (int i = 0; i <= k; ++i)
      rem[size_t(g - k + 2 * i)] -=
          w[size_t(j)] * binomial(Int(k), unsigned(i)) * ipow(L.q, unsigned(i));
  }
  for (const auto& c : rem)
    check(c == 0, "self-reciprocal reduction left a remainder");
  return w;
}

int p_rank(const LPolynomial& L, int64_t p) {
  validate_shape(L);
  require(p >= 2, "invalid characteristic");
  require(L.q % p == 0, "characteristic does not divide the field size");
  int gamma = 0;
  for (int i = 0; i <= 2 * L.g; ++i)
    if (L.a[size_t(i)] % p != 0) gamma = i;
  check(gamma <= L.g, "p-rank exceeds the genus");
  return gamma;
}

bool is_ordinary(const LPolynomial& L, int64_t p) {
  return p_rank(L, p) == L.g;
}

void weil_check(const LPolynomial& L) {
  validate_shape(L);
  L.class_number();
  // exact squared Weil bounds on implied counts
  if (L.g > 0) {
    auto counts = counts_from_l(L, 2 * L.g);
    for (int r = 1; r <= 2 * L.g; ++r) {
      Int qr = ipow(L.q, unsigned(r));
      Int dev = counts[size_t(r) - 1] - qr - 1;
      check(dev * dev <= Int(4 * L.g) * L.g * qr,
            "implied count violates the Weil bound");
    }
    // implied place counts must be nonnegative integers
    places_from_l(L, 2 * L.g);
    // every reciprocal root has modulus sqrt(q) iff every root of the
    // real-part polynomial is real and lies in [-2 sqrt(q), 2 sqrt(q)]
    auto w = real_part_polynomial(L);
    QPoly W(w.rbegin(), w.rend());
    // strip roots sitting exactly on the interval ends
    Int s = isqrt(L.q);
    if (s * s == L.q) {
      for (int side : {1, -1}) {
        QPoly lin{Rat(-side * 2 * s), Rat(1)};
        while (qdeg(W) >= 1 && qeval(W, Rat(side * 2 * s)) == 0)
          qdivide_exact(W, lin);
      }
    } else {
      // an irrational boundary root +-2 sqrt(q) only enters via x^2 - 4q
      QPoly quad{Rat(-4 * L.q), Rat(0), Rat(1)};
      while (qdeg(W) >= 2 && qdivide_exact(W, quad)) {
      }
    }
    if (qdeg(W) >= 1) {
      QPoly sf = qdivmod(W, qmonic_gcd(W, qderivative(W))).first;
      std::vector<QPoly> chain{sf, qderivative(sf)};
      while (qdeg(chain.back()) > 0) {
        QPoly r = qdivmod(chain[chain.size() - 2], chain.back()).second;
        if (qdeg(r) < 0) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
      }
      auto variations = [&](int side) {
        int flips = 0, prev = 0;
        for (const auto& f : chain) {
          int sgn = qsign_at_boundary(f, L.q, side);
          if (sgn == 0) continue;
          if (prev != 0 && sgn != prev) ++flips;
          prev = sgn;
        }
        return flips;
      };
      check(variations(-1) - variations(+1) == qdeg(sf),
            "reciprocal root does not have modulus sqrt(q)");
    }
  }
}

LPolynomial l_of_curve(const curves::Curve& c) {
  auto counts = c.count_series(c.genus());
  LPolynomial L = l_from_counts(c.field()->q(), c.genus(), counts);
  weil_check(L);
  return L;
}

}  // namespace divforge::zeta
