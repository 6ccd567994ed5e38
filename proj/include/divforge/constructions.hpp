#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/curves.hpp"

namespace divforge::constructions {

// How a returned divisor's dimension claim is backed.
enum class Certificate {
  SemigroupCertified,     // a Weierstrass-semigroup argument pins the dimension
  OracleCertified,        // the dimension oracle recomputed it
  DegreeBookkeepingOnly,  // only the degree contract was checked
};

std::string certificate_name(Certificate c);

struct ConstructionResult {
  curves::Curve curve;        // the curve the divisor lives on
  curves::Divisor divisor;
  Int target_degree;          // g or g - 1
  Certificate certificate;
  Int oracle_dim;             // dimension reported when OracleCertified
  std::vector<std::string> trace;  // ordered record of the choices made
};

// Layer sizes of the branch-place construction: s_j for 1 <= j <= gmax with
// gmax = m - 1 - floor(m/r), where l_j = r - floor(rj/m),
// s_j = l_j - l_{j+1} for j < gmax and s_gmax = l_gmax - 1.  Always
// satisfies sum_j j * s_j = (m-1)(r-1)/2 and sum_j s_j <= r - 1.
std::vector<int64_t> kummer_layer_sizes(int64_t m, int64_t r);

// Branch-place divisor of degree g on a radical cover
// x^m = prod (y - alpha_i) with gcd(m, r) = 1:
// A = sum_j j * (next s_j branch places in canonical order).
// deg(A) = g always; the result is non-special.
ConstructionResult kummer_g(const curves::Curve& c);

// The same construction specialised to the curve N(x) = Tr(y) over F_{q^r}
// (norm and trace taken to F_q).  Builds the curve, then delegates; the
// resulting coefficients are exactly the integers in [1, u-2] not divisible
// by q, with u = (q^r - 1)/(q - 1).
ConstructionResult norm_trace_g(int64_t q, int r);

// D - P for a rational place P off the support of a certified degree-g
// result: non-special of degree g - 1 because L(D - P) sits inside the
// constants of L(D) and the constants do not vanish at P.
ConstructionResult reduce_to_gm1(const ConstructionResult& res,
                                 const curves::Place& P);

// g*P on the hyperelliptic curve y^{q+1} = x^2 + x over F_{q^2}, q odd,
// where P = P_{ab} is rational with 2a + 1 != 0 (off the fixed locus of the
// hyperelliptic involution).  The pole numbers at such P are
// {0, g+1, g+2, ...}, so dim(gP) = 1.
ConstructionResult hyperelliptic_gP(int64_t q, const curves::Place& P);

// Effective degree-g divisor with rational support built by g greedy
// dimension-keeping extensions starting from the first rational place.
// Needs at least g rational places; each step is guaranteed a candidate
// because at most g - 1 points can raise the dimension.
ConstructionResult greedy_degree_g(const curves::Curve& c);

// Exact rational bound data for the incremental method.
struct BoundFns {
  int64_t g = 0;
  Int q = 0;
  Int points = 0;  // number of rational places

  static BoundFns from_curve(const curves::Curve& c);

  // G_q(n) = sum_{k=1}^{n-2} (q^{n-k}-1)(q^{n-k-1}-1) /
  //          ((q^n-1)(q^{n-1}-1)),   n >= 2, exact and memoized; a closed
  // form of the geometric sums cross-checks every evaluation.
  Rat gq(int n) const;

 private:
  mutable std::map<int, Rat> memo_;
};

// f_s(a): an upper bound for the number of rational points P such that an
// ordinary divisor A of degree a turns exceptional after adding sP.
//   f_1: 1 at a = -1; g on [0, g-2]; 0 elsewhere.
//   f_2: g at a = g-2; on [-2, g-3] the minimum over window sizes
//        2 <= w <= g-1-a of
//        floor((g-1-a-w) + (1 + (q^{w-2}-1)/(q^w-1))^{-1}
//              * (2g-2+2a+4w - 2 G_q(w) * points));
//        0 elsewhere.
// Their maxima over the integers are g and 4g.
Int bound_f(int s, const Int& a, const BoundFns& b);

struct RandriamTarget {
  int s = 1;          // 1 or 2
  curves::Divisor T;  // target divisor; s*D - T must stay ordinary
};

// Incremental construction: starting from a seed D0 with every s_i*D0 - T_i
// ordinary, add points of S one at a time (first admissible in canonical
// order) until degree d, keeping every target ordinary.  Requires
// #S > max_{d0 <= d' < d} sum_i f_{s_i}(s_i d' - t_i), which guarantees an
// admissible point at every step; the per-step rejection count is audited
// against that bound.  D - D0 is effective and supported in S.
curves::Divisor randriam_extend(const curves::Curve& c,
                                const curves::Divisor& D0,
                                const std::vector<RandriamTarget>& targets,
                                const Int& d,
                                const std::vector<curves::Place>& S,
                                std::vector<std::string>* trace = nullptr);

// Degree g-1 pair construction: for rational divisors Q, G with more than
// 5g rational points on the curve and deg(G) >= 2 deg(Q) + g - 1, produce D
// with D - Q non-special of degree g - 1 and dim(2D - G) = 0.  The seed is
// found automatically: the zero divisor when every target is ordinary for
// it, otherwise the first difference of two rational places that works.
struct PairResult {
  curves::Divisor D;
  Int dim_d_minus_q = 0;
  Int dim_2d_minus_g = 0;
  std::vector<std::string> trace;
};

PairResult exdecons1(const curves::Curve& c, const curves::Divisor& Q,
                     const curves::Divisor& G);

// Exhaustive audit of the dimension-jump point bounds: enumerate the
// rational places P with dim(A + sP) > dim(A) and compare their number
// against every applicable bound (g - dim(A) for s = 1 plus the degree -1
// cap; 3g+3+deg-3dim and the window-refined rational bounds for s = 2).
// A violated bound is an internal error: the bounds are theorems.
struct PluAudit {
  bool applicable = false;
  int s = 1;
  Int degree = 0, dim = 0, index = 0;  // of A
  Int jump_count = 0;
  std::vector<std::pair<std::string, Rat>> bounds;  // label -> value
};

PluAudit plu_bound_audit(const curves::Curve& c, const curves::Divisor& A,
                         int s);

}  // namespace divforge::constructions
