#include "divforge/galois.hpp"

#include <algorithm>
#include <map>

namespace divforge::galois {

namespace {

constexpr int64_t kFieldSizeCap = int64_t(1) << 20;

int64_t mod_pos(int64_t v, int64_t p) {
  int64_t r = v % p;
  return r < 0 ? r + p : r;
}

int64_t inv_mod_p(int64_t a, int64_t p) {
  // Extended Euclid on integers; a nonzero mod p, p prime.
  int64_t t = 0, nt = 1, r = p, nr = mod_pos(a, p);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  check(r == 1, "inv_mod_p of non-unit");
  return mod_pos(t, p);
}

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Small dense polynomials over F_p used only for modulus selection.
using PPoly = std::vector<int64_t>;

int pdeg(const PPoly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

PPoly pmod(PPoly a, const PPoly& b, int64_t p) {
  int db = pdeg(b);
  check(db >= 0, "pmod by zero");
  int64_t lead_inv = inv_mod_p(b[db], p);
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    int64_t f = mod_pos(a[da] * lead_inv, p);
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = mod_pos(a[da - db + i] - f * b[i], p);
  }
  return a;
}

bool divides(const PPoly& g, const PPoly& f, int64_t p) {
  return pdeg(pmod(f, g, p)) < 0;
}

// Trial division by every monic polynomial of degree 1..n/2.
bool is_irreducible(const PPoly& f, int64_t p) {
  int n = pdeg(f);
  if (n == 1) return true;
  for (int d = 1; 2 * d <= n; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t idx = 0; idx < count; ++idx) {
      PPoly g(d + 1, 0);
      int64_t v = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

// Lexicographically least monic irreducible of degree n, comparing the
// coefficient tuple (c_0, ..., c_{n-1}) with c_0 most significant.
PPoly least_irreducible(int64_t p, int n) {
  if (n == 1) return PPoly{0, 1};  // x itself
  std::vector<int64_t> digits(n, 0);
  while (true) {
    PPoly f(digits.begin(), digits.end());
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
    int i = n - 1;
    while (i >= 0 && digits[i] == p - 1) digits[i--] = 0;
    check(i >= 0, "no irreducible polynomial found");
    digits[i]++;
  }
}

std::map<std::pair<int64_t, int>, FieldPtr>& field_registry() {
  static std::map<std::pair<int64_t, int>, FieldPtr> reg;
  return reg;
}

}  // namespace

Field::Field(int64_t p, int n, std::vector<int64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < n; ++i) q_ *= p;
}

FieldPtr Field::make(int64_t p, int n) {
  require(is_prime(p), "field characteristic must be prime");
  require(n >= 1, "field extension degree must be >= 1");
  Int size = ipow(Int(p), unsigned(n));
  require(size <= kFieldSizeCap, "field size exceeds 2^20 cap");
  auto key = std::make_pair(p, n);
  auto& reg = field_registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  FieldPtr f(new Field(p, n, least_irreducible(p, n)));
  reg[key] = f;
  return f;
}

std::vector<int64_t> Field::reduce(std::vector<int64_t> poly) const {
  for (auto& v : poly) v = mod_pos(v, p_);
  for (int d = int(poly.size()) - 1; d >= n_; --d) {
    int64_t f = poly[d];
    if (f == 0) continue;
    poly[d] = 0;
    // modulus is monic: x^n = -(lower part)
    for (int i = 0; i < n_; ++i)
      poly[d - n_ + i] = mod_pos(poly[d - n_ + i] - f * modulus_[i], p_);
  }
  poly.resize(n_);
  return poly;
}

FFElem Field::zero() const { return FFElem{this, std::vector<int64_t>(n_, 0)}; }

FFElem Field::one() const { return from_int(1); }

FFElem Field::from_int(int64_t v) const {
  std::vector<int64_t> c(n_, 0);
  c[0] = mod_pos(v, p_);
  return FFElem{this, std::move(c)};
}

FFElem Field::gen() const {
  std::vector<int64_t> c(n_ + 1, 0);
  c[1] = 1;
  return FFElem{this, reduce(std::move(c))};
}

FFElem Field::from_index(int64_t idx) const {
  require(idx >= 0 && idx < q_, "element index out of range");
  std::vector<int64_t> c(n_, 0);
  for (int i = 0; i < n_; ++i) {
    c[i] = idx % p_;
    idx /= p_;
  }
  return FFElem{this, std::move(c)};
}

int64_t Field::index_of(const FFElem& a) const {
  check(a.F == this, "index_of: element from another field");
  int64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
  return idx;
}

FFElem Field::add(const FFElem& a, const FFElem& b) const {
  check(a.F == this && b.F == this, "mixed-field addition");
  FFElem r = a;
  for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(r.c[i] + b.c[i], p_);
  return r;
}

FFElem Field::sub(const FFElem& a, const FFElem& b) const {
  check(a.F == this && b.F == this, "mixed-field subtraction");
  FFElem r = a;
  for (int i = 0; i < n_; ++i) r.c[i] = mod_pos(r.c[i] - b.c[i], p_);
  return r;
}

FFElem Field::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem Field::mul(const FFElem& a, const FFElem& b) const {
  check(a.F == this && b.F == this, "mixed-field multiplication");
  std::vector<int64_t> prod(2 * n_ - 1, 0);
  for (int i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < n_; ++j)
      prod[i + j] = mod_pos(prod[i + j] + a.c[i] * b.c[j], p_);
  }
  return FFElem{this, reduce(std::move(prod))};
}

FFElem Field::inv(const FFElem& a) const {
  check(a.F == this, "inv: element from another field");
  require(!a.is_zero(), "inverse of zero");
  // Extended Euclid in F_p[x] against the modulus.
  PPoly r = modulus_, nr(a.c.begin(), a.c.end());
  PPoly t{0}, nt{1};
  while (pdeg(nr) > 0) {
    int dr = pdeg(r), dnr = pdeg(nr);
    if (dr < dnr) {
      std::swap(r, nr);
      std::swap(t, nt);
      continue;
    }
    int64_t f = mod_pos(r[dr] * inv_mod_p(nr[dnr], p_), p_);
    int shift = dr - dnr;
    if (int(r.size()) < dnr + shift + 1) r.resize(dnr + shift + 1, 0);
    for (int i = 0; i <= dnr; ++i)
      r[i + shift] = mod_pos(r[i + shift] - f * nr[i], p_);
    if (int(t.size()) < int(nt.size()) + shift) t.resize(nt.size() + shift, 0);
    for (size_t i = 0; i < nt.size(); ++i)
      t[i + shift] = mod_pos(t[i + shift] - f * nt[i], p_);
  }
  check(pdeg(nr) == 0, "inv: gcd not constant");
  int64_t s = inv_mod_p(nr[0], p_);
  nt.resize(n_, 0);
  for (auto& v : nt) v = mod_pos(v * s, p_);
  return FFElem{this, reduce(std::move(nt))};
}

FFElem Field::pow(const FFElem& a, const Int& e) const {
  check(a.F == this, "pow: element from another field");
  if (e < 0) return pow(inv(a), -e);
  FFElem base = a, r = one();
  Int k = e;
  while (k > 0) {
    if ((k & 1) != 0) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::vector<FFElem> Field::elements() const {
  std::vector<FFElem> out;
  out.reserve(size_t(q_));
  for (int64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
  return out;
}

bool FFElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](int64_t v) { return v == 0; });
}

bool FFElem::is_one() const {
  if (c.empty() || c[0] != 1) return false;
  return std::all_of(c.begin() + 1, c.end(), [](int64_t v) { return v == 0; });
}

FFElem operator+(const FFElem& a, const FFElem& b) { return a.F->add(a, b); }
FFElem operator-(const FFElem& a, const FFElem& b) { return a.F->sub(a, b); }
FFElem operator-(const FFElem& a) { return a.F->neg(a); }
FFElem operator*(const FFElem& a, const FFElem& b) { return a.F->mul(a, b); }
FFElem operator/(const FFElem& a, const FFElem& b) {
  return a.F->mul(a, b.F->inv(b));
}

namespace {
std::map<std::pair<const Field*, const Field*>, std::unique_ptr<Embedding>>&
embedding_registry() {
  static std::map<std::pair<const Field*, const Field*>,
                  std::unique_ptr<Embedding>>
      reg;
  return reg;
}
}  // namespace

Embedding::Embedding(const Field* small, const Field* big)
    : small_(small), big_(big) {
  require(small->p() == big->p(), "embedding requires equal characteristic");
  require(big->n() % small->n() == 0,
          "embedding requires subfield degree dividing extension degree");
  if (small->n() == 1) {
    gen_image_ = big->zero();
  } else {
    // Lexicographically least root of the subfield modulus, by element index.
    const auto& m = small->modulus();
    bool found = false;
    for (int64_t idx = 0; idx < big->q() && !found; ++idx) {
      FFElem x = big->from_index(idx);
      FFElem acc = big->zero();
      for (int i = int(m.size()) - 1; i >= 0; --i)
        acc = acc * x + big->from_int(m[i]);
      if (acc.is_zero()) {
        gen_image_ = x;
        found = true;
      }
    }
    check(found, "subfield modulus has no root in extension");
  }
  for (int64_t idx = 0; idx < small->q(); ++idx) {
    FFElem a = small->from_index(idx);
    reverse_[big->index_of(map(a))] = idx;
  }
}

const Embedding& Embedding::get(const FieldPtr& small, const FieldPtr& big) {
  auto key = std::make_pair(small.get(), big.get());
  auto& reg = embedding_registry();
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, std::unique_ptr<Embedding>(
                              new Embedding(small.get(), big.get())))
             .first;
  return *it->second;
}

FFElem Embedding::map(const FFElem& a) const {
  check(a.F == small_, "embedding map: element not from subfield");
  if (small_ == big_) return a;
  FFElem acc = big_->zero();
  for (int i = small_->n() - 1; i >= 0; --i)
    acc = acc * gen_image_ + big_->from_int(a.c[i]);
  return acc;
}

std::optional<FFElem> Embedding::preimage(const FFElem& b) const {
  check(b.F == big_, "embedding preimage: element not from extension");
  auto it = reverse_.find(big_->index_of(b));
  if (it == reverse_.end()) return std::nullopt;
  return small_->from_index(it->second);
}

FFElem trace_to_base(const FFElem& a, const FieldPtr& base) {
  const Field* big = a.F;
  require(base->p() == big->p() && big->n() % base->n() == 0,
          "trace_to_base: not a declared subfield");
  int d = big->n() / base->n();
  Int qb = base->q();
  FFElem acc = a, sum = a;
  for (int i = 1; i < d; ++i) {
    acc = big->pow(acc, qb);
    sum = sum + acc;
  }
  auto fbig = field_registry().at({big->p(), big->n()});
  auto pre = Embedding::get(base, fbig).preimage(sum);
  check(pre.has_value(), "trace value escaped the base field");
  return *pre;
}

FFPoly FFPoly::from_coeffs(const FieldPtr& f, std::vector<FFElem> coeffs) {
  FFPoly p;
  p.F = f.get();
  p.c = std::move(coeffs);
  for (const auto& e : p.c) check(e.F == p.F, "FFPoly coefficient field mismatch");
  p.trim();
  return p;
}

FFPoly FFPoly::constant(const FieldPtr& f, const FFElem& v) {
  return from_coeffs(f, {v});
}

FFPoly FFPoly::zero(const FieldPtr& f) { return from_coeffs(f, {}); }

int FFPoly::degree() const {
  for (int i = int(c.size()) - 1; i >= 0; --i)
    if (!c[i].is_zero()) return i;
  return -1;
}

void FFPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

FFElem FFPoly::eval(const FFElem& x) const {
  check(x.F == F, "FFPoly eval: point from another field");
  FFElem acc = F->zero();
  for (int i = int(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

FFElem FFPoly::leading() const {
  int d = degree();
  check(d >= 0, "leading coefficient of zero polynomial");
  return c[d];
}

bool FFPoly::operator==(const FFPoly& o) const {
  if (F != o.F) return false;
  int d = degree();
  if (d != o.degree()) return false;
  for (int i = 0; i <= d; ++i)
    if (c[size_t(i)] != o.c[size_t(i)]) return false;
  return true;
}

FFPoly operator+(const FFPoly& a, const FFPoly& b) {
  check(a.F == b.F, "FFPoly add: field mismatch");
  FFPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), a.F->zero());
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  r.trim();
  return r;
}

FFPoly operator-(const FFPoly& a, const FFPoly& b) {
  check(a.F == b.F, "FFPoly sub: field mismatch");
  FFPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), a.F->zero());
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  r.trim();
  return r;
}

FFPoly operator*(const FFPoly& a, const FFPoly& b) {
  check(a.F == b.F, "FFPoly mul: field mismatch");
  if (a.c.empty() || b.c.empty()) { FFPoly z; z.F = a.F; return z; }
  FFPoly r;
  r.F = a.F;
  r.c.assign(a.c.size() + b.c.size() - 1, a.F->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b) {
  check(a.F == b.F, "FFPoly divmod: field mismatch");
  int db = b.degree();
  require(db >= 0, "FFPoly division by zero");
  FFPoly rem = a, quot;
  quot.F = a.F;
  int da = rem.degree();
  if (da >= db) quot.c.assign(size_t(da - db + 1), a.F->zero());
  FFElem lead_inv = a.F->inv(b.c[db]);
  for (int d = rem.degree(); d >= db; d = rem.degree()) {
    FFElem f = rem.c[d] * lead_inv;
    quot.c[d - db] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[d - db + i] = rem.c[d - db + i] - f * b.c[i];
  }
  quot.trim();
  rem.trim();
  return {quot, rem};
}

FFPoly derivative(const FFPoly& a) {
  FFPoly r;
  r.F = a.F;
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(a.F->from_int(int64_t(i)) * a.c[i]);
  r.trim();
  return r;
}

std::vector<FFElem> distinct_roots(const FFPoly& f) {
  require(f.degree() >= 0, "roots of the zero polynomial");
  std::vector<FFElem> roots;
  for (int64_t i = 0; i < f.F->q(); ++i) {
    FFElem x = f.F->from_index(i);
    if (f.eval(x).is_zero()) roots.push_back(x);
  }
  return roots;
}

int count_roots_with_multiplicity(const FFPoly& f) {
  require(f.degree() >= 0, "roots of the zero polynomial");
  int total = 0;
  for (int64_t i = 0; i < f.F->q(); ++i) {
    FFElem a = f.F->from_index(i);
    if (!f.eval(a).is_zero()) continue;
    // divide out (x - a) repeatedly
    FFPoly g = f;
    FFPoly lin;
    lin.F = f.F;
    lin.c = {f.F->neg(a), f.F->one()};
    while (true) {
      auto [q, r] = divmod(g, lin);
      if (!r.is_zero()) break;
      ++total;
      g = q;
      if (g.degree() < 1) break;
    }
  }
  return total;
}

FFPoly minimal_polynomial(const FFElem& a, const FieldPtr& base) {
  const Field* big = a.F;
  require(base->p() == big->p() && big->n() % base->n() == 0,
          "minimal_polynomial: not a declared subfield");
  auto fbig = Field::make(big->p(), big->n());
  Int qb = base->q();
  // Collect the Frobenius orbit of a over the base field.
  std::vector<FFElem> orbit{a};
  FFElem cur = big->pow(a, qb);
  while (!(cur == a)) {
    orbit.push_back(cur);
    cur = big->pow(cur, qb);
  }
  FFPoly prod;
  prod.F = big;
  prod.c = {big->one()};
  for (const auto& r : orbit) {
    FFPoly lin;
    lin.F = big;
    lin.c = {big->neg(r), big->one()};
    prod = prod * lin;
  }
  const auto& emb = Embedding::get(base, fbig);
  std::vector<FFElem> small_coeffs;
  for (const auto& coef : prod.c) {
    auto pre = emb.preimage(coef);
    check(pre.has_value(), "minimal polynomial coefficient outside base field");
    small_coeffs.push_back(*pre);
  }
  return FFPoly::from_coeffs(base, std::move(small_coeffs));
}

FFElem lift_elem(const FFElem& a, const FieldPtr& big) {
  auto small = Field::make(a.F->p(), a.F->n());
  return Embedding::get(small, big).map(a);
}

FFPoly lift_poly(const FFPoly& f, const FieldPtr& big) {
  auto small = Field::make(f.F->p(), f.F->n());
  const auto& emb = Embedding::get(small, big);
  std::vector<FFElem> cs;
  cs.reserve(f.c.size());
  for (const auto& e : f.c) cs.push_back(emb.map(e));
  return FFPoly::from_coeffs(big, std::move(cs));
}

int rank_mod_p(std::vector<std::vector<int64_t>> rows, int cols, int64_t p) {
  for (auto& r : rows) {
    r.resize(size_t(cols), 0);
    for (auto& v : r) v = mod_pos(v, p);
  }
  int rank = 0;
  size_t row = 0;
  for (int col = 0; col < cols && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    int64_t inv = inv_mod_p(rows[row][col], p);
    for (int j = col; j < cols; ++j)
      rows[row][j] = mod_pos(rows[row][j] * inv, p);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == row || rows[i][col] == 0) continue;
      int64_t f = rows[i][col];
      for (int j = col; j < cols; ++j)
        rows[i][j] = mod_pos(rows[i][j] - f * rows[row][j], p);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace divforge::galois
