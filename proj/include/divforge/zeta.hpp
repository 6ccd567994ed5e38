#pragma once

#include <vector>

#include "divforge/common.hpp"
#include "divforge/curves.hpp"

namespace divforge::zeta {

// Numerator of the zeta function of a function field over F_q: a degree-2g
// integer polynomial with a_0 = 1 satisfying a_{2g-i} = q^{g-i} a_i.
struct LPolynomial {
  Int q = 0;
  int g = 0;
  std::vector<Int> a;  // a_0 .. a_{2g}

  Int eval(const Rat& t) const;  // numerator value; use with care
  Int class_number() const;      // L(1), always positive
};

// Recover L from the first g point counts N_1..N_g (constant field
// extensions), using the logarithmic-derivative recursion and the functional
// equation.  Checks integrality, positivity of the class number, and that the
// counts it implies reproduce the input.
LPolynomial l_from_counts(const Int& q, int g, const std::vector<Int>& counts);

// Point counts N_1..N_rmax implied by L, via Newton power sums of the
// reciprocal-root polynomial.
std::vector<Int> counts_from_l(const LPolynomial& L, int rmax);

// Degree-k place counts B_1..B_kmax implied by L.
std::vector<Int> places_from_l(const LPolynomial& L, int kmax);

// Number of effective divisors of degree m for 0 <= m <= 2g-2, from the
// closed formula sum_i (q^{m-i+1}-1)/(q-1) a_i.
std::vector<Int> effective_counts(const LPolynomial& L, int mmax);

// Independent recomputation of the number of effective divisors of degree n
// as the t^n coefficient of prod_k (1-t^k)^{-B_k}.
Int effective_count_oracle(const LPolynomial& L, int n);

// A_{g-k} expressed through the class number and the low half of L alone:
// (q-1) A_{g-k} = q^{1-k} (h - sum_{i=0}^{g+k-1} a_i) - sum_{i=0}^{g-k} a_i.
Int effective_count_below_genus(const LPolynomial& L, int k);

// Multiset of real parts alpha_i + conj(alpha_i), given exactly: integer
// entries plus quadratic pairs x^2 - s x + p (the two roots of each pair).
struct QuadraticPair {
  Int s;  // sum of the two real parts
  Int p;  // product of the two real parts
};
struct RealPartSpec {
  std::vector<Int> rational;
  std::vector<QuadraticPair> pairs;
  int genus() const { return int(rational.size()) + 2 * int(pairs.size()); }
};

// Expand prod (1 - x t + q t^2) over the spec into an integer L-polynomial.
// Requires every real part to lie in [-2 sqrt(q), 2 sqrt(q)] (exact checks).
LPolynomial l_from_real_parts(const Int& q, const RealPartSpec& spec);

// a_g + 2 sum_{i=0}^{g-1} a_i; its sign drives the degree g-1 existence test.
Int cross_sum(const LPolynomial& L);

// Coefficients w_0..w_g of the real-part polynomial W(x) = sum_j w_j x^{g-j},
// defined by t^{2g} L(1/t) = prod_i (t^2 - x_i t + q) with the x_i the roots
// of W.  Exists whenever L satisfies the functional equation.
std::vector<Int> real_part_polynomial(const LPolynomial& L);

// p-rank = degree of L mod p; the field is ordinary when it equals g.
int p_rank(const LPolynomial& L, int64_t p);
bool is_ordinary(const LPolynomial& L, int64_t p);

// Consistency battery: functional equation, positive class number, exact
// squared Weil bounds on the implied counts, nonnegative integral place
// counts, and an exact Sturm-chain proof that all reciprocal roots have
// modulus sqrt(q) (all real parts real and within [-2 sqrt(q), 2 sqrt(q)]).
void weil_check(const LPolynomial& L);

// L-polynomial of a bundled or user curve: counts N_1..N_g by enumeration,
// then l_from_counts (subject to the enumeration budget).
LPolynomial l_of_curve(const curves::Curve& c);

}  // namespace divforge::zeta
