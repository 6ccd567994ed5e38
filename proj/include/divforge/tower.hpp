#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divforge/common.hpp"

namespace divforge::tower {

// Recursive additive tower over the quadratic constant field F_{q^2}: the
// first level is the rational field F_1 = F_{q^2}(x_1), and level i + 1
// adjoins a root of
//
//   x_{i+1}^q + x_{i+1} = x_i^q / (x_i^{q-1} + 1).
//
// The closed forms below are exact for every prime power q >= 2 and every
// level m >= 1.

// Genus of the level-m field: (q^{m/2} - 1)^2 for even m, and
// (q^{(m+1)/2} - 1)(q^{(m-1)/2} - 1) for odd m.
Int tower_genus(int64_t q, int m);

// Pole order at the unique place above x_1 = infinity used by the
// non-special construction: q^m - q^{m/2} for even m, q^m - q^{(m+1)/2}
// for odd m.  Always c_m - genus = q^{floor(m/2)} - 1 >= 0.
Int c_m(int64_t q, int m);

// Degree of A_j, the divisor of all places lying over zeros of the first j
// level denominators x_1^{q-1} + 1, ..., x_j^{q-1} + 1.  Equals q^j - 1
// whenever 1 <= j <= m/2.
Int deg_aj(int64_t q, int j, int m);

// Invariants of one tower level.  deg_a = c - genus = q^{floor(m/2)} - 1 is
// the degree of A^{(m)} = A_{floor(m/2)} (the zero divisor when m = 1).
struct TowerLevel {
  int64_t q = 0;
  int m = 1;
  Int genus;
  Int c;
  Int deg_a;
  int level_j = 0;  // floor(m/2): which A_j enters the construction
};

TowerLevel tower_level(int64_t q, int m);

// Symbolic non-special divisor c * Pinf - A^{(m)}, of degree equal to the
// genus, with a one-dimensional space pinned by the product of the first
// floor(m/2) level denominators.  The certificate records how the support
// was checked: "support-enumerated" when the zero loci were listed point by
// point (m <= 3 within the field budget), "degree-bookkeeping-only" when
// only the closed-form degrees back the record.
struct TowerDivisor {
  TowerLevel level;
  Int degree;  // c - deg A^{(m)}; always equals the genus
  std::string certificate;
  std::vector<std::string> trace;
};

TowerDivisor nonspecial_tower_divisor(int64_t q, int m);

// Exhaustive census of the rational places of a low level (m <= 3) over the
// constant field extension F_{q^{2r}}, stratified by coordinate behaviour:
// the totally ramified chain above x_1 = infinity, the totally ramified
// chains above the q - 1 zeros of x_1^{q-1} + 1, the unramified places above
// the level-2 denominator zeros (m = 3 only), and the fully affine tuples.
struct TowerPoints {
  int64_t q = 0;
  int m = 1;
  int r = 1;
  Int n_r;                   // all rational places over F_{q^{2r}}
  Int pole_places;           // above x_1 = infinity: always exactly 1
  Int ramified_zero_places;  // above zeros of x_1^{q-1} + 1: always q - 1
  Int split_zero_places;     // m = 3 only: above the level-2 denominator zeros
  Int affine;                // tuples with every denominator nonzero
  Int deg_a1;                // enumerated degree of A_1 (0 when m = 1)
  // Degree of the divisor of places over the level-i denominator zeros,
  // i = 1 .. m-1: q - 1 at level 1, q^2 - q at level 2.
  std::vector<Int> zero_locus_degrees;
  std::vector<std::string> trace;
};

TowerPoints tower_points(int64_t q, int m, int r);

// Builds the zeta numerator of a low level (m <= 3) from enumerated counts
// N_1 .. N_g and compares the number of effective divisor classes of degree
// g - 1 against the class number; holds means a_gm1 < h (vacuous at genus
// zero).
struct FiniteLevelReport {
  int64_t q = 0;
  int m = 1;
  Int genus;
  Int h;      // class number
  Int a_gm1;  // effective divisors of degree genus - 1
  bool holds = true;
  std::vector<Int> counts;  // N_1 .. N_g over F_{q^2}
  std::vector<std::string> trace;
};

FiniteLevelReport finite_level_check(int64_t q, int m);

}  // namespace divforge::tower
