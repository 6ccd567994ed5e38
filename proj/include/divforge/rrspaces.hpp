#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/curves.hpp"
#include "divforge/galois.hpp"

namespace divforge::rrspaces {

using curves::Curve;
using curves::Divisor;
using curves::Place;
using galois::FFElem;
using galois::FFPoly;
using galois::FieldPtr;

// A function in the coordinate ring, written in the canonical module basis
// over the rational subfield:
//   radical models   f = sum_j comps[j](y) * x^j,  0 <= j < m
//   additive models  f = sum_j comps[j](x) * y^j,  0 <= j < p^s
// The representation is the reduced form modulo the curve equation, so it is
// unique.  Such functions are regular on the affine chart; their only poles
// sit at the place at infinity.
struct FunctionRep {
  std::vector<FFPoly> comps;
  bool is_zero() const;
};

// comps = {g}, i.e. a polynomial in the rational coordinate alone.
FunctionRep base_polynomial(const Curve& c, const FFPoly& g);
// The j-th power of the covering coordinate.
FunctionRep cover_power(const Curve& c, int j);
// Assemble from explicit components (validated against the model).
FunctionRep make_function(const Curve& c, std::vector<FFPoly> comps);

// Truncated power-series expansion at an affine place in its canonical
// uniformizer: the radical coordinate at ramified radical places, the shifted
// rational coordinate elsewhere.  Coefficients live in the residue field
// F_{q^deg}.  Two guard digits beyond the requested order are always kept.
struct LocalExpansion {
  Place place;
  FieldPtr coeff_field;
  std::vector<FFElem> coeffs;  // u^0 .. u^{precision-1}
  int precision = 0;
};

LocalExpansion expand(const Curve& c, const FunctionRep& f, const Place& P,
                      int order);

// Exact valuation v_P(f).  At the place at infinity this is a closed formula
// from the pole numbers; at affine places the expansion is scanned with
// doubling precision up to the zero-degree bound.
int valuation(const Curve& c, const FunctionRep& f, const Place& P);

// Exact dimension of the Riemann-Roch space L(D).  Supported models expose a
// single rational place at infinity whose Weierstrass semigroup is generated
// by two coprime pole numbers (radical models with gcd(m, r) = 1, additive
// models with polynomial right-hand side).  Divisor support may combine that
// place with affine places of degree at most three.
// Preconditions: deg(D) <= 4g + 8 and |supp(D)| <= 24.
// `guard` sets the extra expansion digits; the result is independent of it.
Int rr_dim(const Curve& c, const Divisor& D, int guard = 2);

// Index of speciality i(D) = dim(D) - deg(D) - 1 + g equals zero.
bool is_nonspecial(const Curve& c, const Divisor& D);

// dim(D) = max(0, deg(D) + 1 - g), the generic dimension for its degree.
bool is_ordinary_divisor(const Curve& c, const Divisor& D);

// Linear equivalence: D1 - D2 is principal.  Degrees must agree.
bool equivalent(const Curve& c, const Divisor& D1, const Divisor& D2);

enum class ExtensionRule { KeepDim, RaiseDim };

// First candidate place P (in the given order) with dim(D + P) = dim(D)
// (KeepDim) or dim(D + P) > dim(D) (RaiseDim); nullopt when none qualifies.
std::optional<Place> greedy_support_extension(
    const Curve& c, const Divisor& D, const std::vector<Place>& candidates,
    ExtensionRule rule);

}  // namespace divforge::rrspaces
