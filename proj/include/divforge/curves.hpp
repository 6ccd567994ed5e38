#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/galois.hpp"

namespace divforge::curves {

using galois::FFElem;
using galois::FFPoly;
using galois::FieldPtr;

// Cyclic radical cover  x^m = f(y)  with f = prod (y - alpha_i) over distinct
// roots alpha_i in the base field, and m dividing q - 1 so that the extension
// is Kummer.  The "radical" variable is x; y generates the rational base.
struct KummerModel {
  int64_t m = 0;
  std::vector<FFElem> roots;  // distinct, in the base field
};

// Additive cover  A(y) = num(x)/den(x)  with A(y) = sum_i c_i y^{p^i},
// c_0 != 0 and ker(A) contained in the base field; den monic.  Every pole of
// the right-hand side must have order coprime to p (checked in validate), so
// each pole carries exactly one totally ramified place.
struct ArtinSchreierModel {
  std::vector<FFElem> acoeffs;  // c_0 ... c_s
  FFPoly num;
  FFPoly den;
};

// Affine plane curve F(x, y) = 0 whose affine locus is smooth; closed points
// not visible in this chart are declared explicitly, one entry per closed
// point with its degree.  Counting refuses singular affine solutions.
struct PlaneCorrection {
  std::string id;
  int degree = 0;
};
struct PlaneModel {
  // term list: coefficient of x^i y^j (coefficient nonzero)
  struct Term {
    int i = 0, j = 0;
    FFElem coeff;
  };
  std::vector<Term> terms;
  std::vector<PlaneCorrection> corrections;
};

using Model = std::variant<KummerModel, ArtinSchreierModel, PlaneModel>;

// A closed point, identified by the Frobenius orbit of a representative.
// Affine places store the lexicographically least representative (as element
// indices in F_{q^degree}); places outside the affine chart refer to the
// curve's list of declared/derived infinite places.
struct Place {
  enum class Kind { Affine, AtInfinity };
  Kind kind = Kind::Affine;
  int degree = 1;
  int64_t ix = 0, iy = 0;  // affine representative (element indices)
  int inf_index = 0;       // index into Curve::infinite_places()

  std::string id() const;
  friend bool operator<(const Place& a, const Place& b) {
    return std::tie(a.kind, a.degree, a.ix, a.iy, a.inf_index) <
           std::tie(b.kind, b.degree, b.ix, b.iy, b.inf_index);
  }
  friend bool operator==(const Place& a, const Place& b) {
    return !(a < b) && !(b < a);
  }
};

// Formal Z-linear combination of places.
struct Divisor {
  std::map<Place, Int> coeffs;

  void add(const Place& p, const Int& mult);
  Int degree() const;
  bool is_effective() const;
  bool is_zero() const { return coeffs.empty(); }
  friend Divisor operator+(const Divisor& a, const Divisor& b);
  friend Divisor operator-(const Divisor& a, const Divisor& b);
  friend bool operator==(const Divisor& a, const Divisor& b);
  std::string to_string() const;
};

Divisor single(const Place& p, Int mult = 1);

// Place outside the affine chart, derived from the model (Kummer: orbits of
// the m/gcd-th roots of unity over the pole of f; additive covers: one place
// per pole of the right-hand side plus the fiber over x = infinity when that
// point is ordinary; plane models: the declared corrections).
struct InfinitePlaceInfo {
  int degree = 1;
  std::string label;
};

class Curve {
 public:
  Curve(std::string name, FieldPtr field, int genus, Model model);

  const std::string& name() const { return name_; }
  const FieldPtr& field() const { return field_; }
  int genus() const { return genus_; }
  const Model& model() const { return model_; }

  // Structural checks: model well-formedness and, where a closed genus
  // formula exists (Kummer and degree-p additive covers), agreement with the
  // declared genus.  Throws on violation.
  void validate() const;

  const std::vector<InfinitePlaceInfo>& infinite_places() const;

  // Number of degree-one places after constant field extension of degree r.
  Int count_rational_places(int r) const;
  // N_1 .. N_rmax.
  std::vector<Int> count_series(int rmax) const;
  // B_1 .. B_kmax via Mobius inversion of the counts (exactness checked).
  std::vector<Int> places_by_degree(int kmax) const;

  // All places of exact degree d, affine ones ordered by representative,
  // then the infinite ones of that degree.
  std::vector<Place> places_of_degree(int d) const;
  std::vector<Place> rational_places() const { return places_of_degree(1); }

  // Field of definition of degree-d points.
  FieldPtr extension(int d) const;

 private:
  Int affine_count(int r) const;
  std::string name_;
  FieldPtr field_;
  int genus_;
  Model model_;
  mutable std::vector<InfinitePlaceInfo> inf_cache_;
  mutable bool inf_cached_ = false;
};

// Enumeration budget: counting or place enumeration that would require more
// than this many point evaluations is refused.  Override with the
// DIVFORGE_BUDGET environment variable.
int64_t enumeration_budget();

// Bundled curve registry, loaded from the data directory.
std::vector<std::string> builtin_curve_names();
Curve builtin_curve(const std::string& name);
// Parse a descriptor (see data/curves/*.json for the schema).
Curve curve_from_json_text(const std::string& text);
Curve curve_from_file(const std::string& path);

}  // namespace divforge::curves
