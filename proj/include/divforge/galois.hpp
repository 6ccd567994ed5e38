#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "divforge/common.hpp"

namespace divforge::galois {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Element of a finite field, stored as a coefficient vector over F_p with
// respect to the power basis of the field's canonical modulus.  Elements
// remember their owning field; mixing fields in arithmetic is an error.
struct FFElem {
  const Field* F = nullptr;
  std::vector<int64_t> c;

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FFElem& o) const { return F == o.F && c == o.c; }
  bool operator!=(const FFElem& o) const { return !(*this == o); }
};

FFElem operator+(const FFElem& a, const FFElem& b);
FFElem operator-(const FFElem& a, const FFElem& b);
FFElem operator-(const FFElem& a);
FFElem operator*(const FFElem& a, const FFElem& b);
FFElem operator/(const FFElem& a, const FFElem& b);

// F_{p^n} with the canonical modulus: the lexicographically least monic
// irreducible of degree n over F_p, coefficients compared low-to-high.
// Field objects are interned; identical (p, n) always yields the same object,
// so element contexts can be compared by pointer.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(int64_t p, int n);

  int64_t p() const { return p_; }
  int n() const { return n_; }
  int64_t q() const { return q_; }  // p^n, capped at 2^20
  const std::vector<int64_t>& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(int64_t v) const;          // image of an integer constant
  FFElem gen() const;                        // class of x in F_p[x]/(modulus)
  FFElem from_index(int64_t idx) const;      // base-p digits, c[0] least significant
  int64_t index_of(const FFElem& a) const;

  FFElem add(const FFElem& a, const FFElem& b) const;
  FFElem sub(const FFElem& a, const FFElem& b) const;
  FFElem neg(const FFElem& a) const;
  FFElem mul(const FFElem& a, const FFElem& b) const;
  FFElem inv(const FFElem& a) const;
  FFElem pow(const FFElem& a, const Int& e) const;
  FFElem frobenius(const FFElem& a) const { return pow(a, p_); }

  // All q elements in canonical (index) order.
  std::vector<FFElem> elements() const;

 private:
  Field(int64_t p, int n, std::vector<int64_t> modulus);
  std::vector<int64_t> reduce(std::vector<int64_t> poly) const;

  int64_t p_;
  int n_;
  int64_t q_;
  std::vector<int64_t> modulus_;  // length n+1, monic
};

// Embedding of a subfield into an extension with the same characteristic,
// determined by sending the subfield generator to the lexicographically least
// root of the subfield modulus in the big field.  Cached per field pair.
class Embedding {
 public:
  static const Embedding& get(const FieldPtr& small, const FieldPtr& big);

  const Field* small() const { return small_; }
  const Field* big() const { return big_; }
  FFElem map(const FFElem& a) const;
  // Inverse on the image; nullopt for elements outside the embedded subfield.
  std::optional<FFElem> preimage(const FFElem& b) const;

 private:
  Embedding(const Field* small, const Field* big);
  const Field* small_;
  const Field* big_;
  FFElem gen_image_;
  std::map<int64_t, int64_t> reverse_;  // big index -> small index
};

// Trace from F_{q^r} down to the declared subfield F_q (both canonical).
FFElem trace_to_base(const FFElem& a, const FieldPtr& base);

// Dense univariate polynomial over a finite field, low-to-high coefficients.
struct FFPoly {
  const Field* F = nullptr;
  std::vector<FFElem> c;

  static FFPoly from_coeffs(const FieldPtr& f, std::vector<FFElem> coeffs);
  static FFPoly constant(const FieldPtr& f, const FFElem& v);
  static FFPoly zero(const FieldPtr& f);

  int degree() const;  // -1 for zero polynomial
  bool is_zero() const { return degree() < 0; }
  void trim();
  FFElem eval(const FFElem& x) const;
  FFElem leading() const;

  // Equality up to trailing zeros.
  bool operator==(const FFPoly& o) const;
  bool operator!=(const FFPoly& o) const { return !(*this == o); }
};

FFPoly operator+(const FFPoly& a, const FFPoly& b);
FFPoly operator-(const FFPoly& a, const FFPoly& b);
FFPoly operator*(const FFPoly& a, const FFPoly& b);
// Quotient and remainder; divisor must be nonzero.
std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b);
FFPoly derivative(const FFPoly& a);

// Distinct roots in the coefficient field, canonical order.
std::vector<FFElem> distinct_roots(const FFPoly& f);
// Number of roots counted with multiplicity.
int count_roots_with_multiplicity(const FFPoly& f);

// Minimal polynomial over F_q of an element of F_{q^d} (coefficients returned
// in the small field).  `a` must live in a canonical extension of `base`.
FFPoly minimal_polynomial(const FFElem& a, const FieldPtr& base);

// Re-express an element / the coefficients of a polynomial in a canonical
// extension field (degree of `big` must be a multiple of the current one).
FFElem lift_elem(const FFElem& a, const FieldPtr& big);
FFPoly lift_poly(const FFPoly& f, const FieldPtr& big);

// Rank of an integer matrix over F_p (entries reduced mod p).  Rows may have
// any length <= cols; they are zero-padded.
int rank_mod_p(std::vector<std::vector<int64_t>> rows, int cols, int64_t p);

}  // namespace divforge::galois
