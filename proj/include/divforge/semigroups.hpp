#pragma once

#include <cstdint>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/curves.hpp"

namespace divforge::semigroups {

// Weierstrass semigroups at the totally ramified affine places of a radical
// cover x^m = prod_{i=1}^{r} (y - alpha_i) with gcd(m, r) = 1.  P_1, ..., P_r
// denote the places over the branch points y = alpha_i; all of them share
// the same single-place semigroup.

// Gap numbers at one ramified place, sorted ascending:
//   { mk + j : 1 <= j <= m-1-floor(m/r), 0 <= k <= r-2-floor(rj/m) }.
// Their number always equals the genus (m-1)(r-1)/2.
std::vector<int64_t> gap_set_single(int64_t m, int64_t r);

// Membership of a single value in the pole-number semigroup at one ramified
// place (the complement of gap_set_single).
bool pole_number_single(int64_t m, int64_t r, int64_t a);

// Least nonzero pole number at a ramified place: m - floor(m/r).
int64_t multiplicity_single(int64_t m, int64_t r);

// The minimal generating vectors of H(P_1, ..., P_l) that involve all l
// places at once: the strictly positive l-tuples
//   (m s_1 + j, ..., m s_l + j),  1 <= j <= m-1-floor(m/r),
//   s_i >= 0,  sum s_i = r - l - floor(rj/m),
// valid for 2 <= l <= r - floor(r/m).  The single-place parts of the full
// minimal generating set are described by gap_set_single's complement and
// are not materialised here.
struct GammaSet {
  int64_t m = 0, r = 0;
  int l = 1;
  std::vector<std::vector<int64_t>> vectors;  // sorted, duplicate-free
};

GammaSet gamma_plus_multi(int64_t m, int64_t r, int l);

// Membership of an l-tuple in H(P_1, ..., P_l), decided through the least
// upper bounds of minimal generators inside the box [0, alpha].  The lub
// description of the semigroup needs l < q, where q is the field size.
bool semigroup_member(const std::vector<int64_t>& alpha, int64_t m, int64_t r,
                      int64_t q);

// Sufficient non-specialty certificate for an effective divisor A of degree
// g supported on ramified rational places of a radical cover: true when no
// minimal generating vector lies componentwise below A's coefficients.
// A "true" answer proves dim(A) = 1; "false" is inconclusive and callers are
// expected to fall back to the dimension oracle.
bool nonspecial_by_semigroup(const curves::Curve& c, const curves::Divisor& A);

// Checked floor-sum identities used by the degree bookkeeping of the
// explicit divisor constructions, with t = r mod m:
//   floor(r(j+1)/m) - floor(rj/m) = floor(r/m) + [j in {floor(km/t)}],
//   sum_{k=1}^{t-1} floor(km/t) = (m-1)(t-1)/2.
// Violations raise internal errors; the report returns the checked data.
struct FloorReport {
  int64_t r = 0, m = 0, t = 0;
  int jump_count = 0;   // number of positions where the difference jumps
  int64_t gap_sum = 0;  // sum_{k=1}^{t-1} floor(km/t)
};

FloorReport floor_identities(int64_t r, int64_t m);

}  // namespace divforge::semigroups
