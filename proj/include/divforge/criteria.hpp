#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/curves.hpp"
#include "divforge/zeta.hpp"

namespace divforge::criteria {

// Existence targets: a non-special divisor of degree g (effective) or of
// degree g-1 (zero-dimensional).
enum class Target { DegreeG, DegreeGminus1 };

enum class Truth {
  True,
  False,
  Unknown,
  // The degree g-1 decision for q = 2 hinges on the strict sign of an
  // integer invariant; the value 0 decides "no" exactly on the boundary of
  // the inequality.  That outcome is kept distinct from a plain False so
  // downstream reports can flag it.
  BoundaryFalse,
};

std::string to_string(Target t);
std::string to_string(Truth t);

// Decision together with the criterion that produced it.  `certificate`
// names the rule that fired; `witness` holds the numeric facts that make the
// rule applicable, in a stable order.  When the chain is exhausted without a
// decision, `value` is Unknown and `attempted` lists every rule that was
// evaluated (or skipped for lack of data) along the way.
struct Verdict {
  Target target = Target::DegreeG;
  Truth value = Truth::Unknown;
  std::string certificate;
  std::vector<std::pair<std::string, Int>> witness;
  std::vector<std::string> attempted;
  bool boundary_noted = false;
};

// The numeric facts about one function field that the decision chains
// consume.  `L` may be absent when counting points is beyond the enumeration
// budget; `B1`/`B2` are cheaper and may still be available in that case.
struct FieldSummary {
  Int q = 0;
  int g = 0;
  int64_t p = 0;  // characteristic
  std::optional<zeta::LPolynomial> L;
  std::optional<Int> B1;
  std::optional<Int> B2;
};

// Collects the summary of a concrete curve model.  Point counting failures
// caused by budget or field-size limits leave `L` (and possibly `B2`)
// unset; they never propagate.
FieldSummary summarize(const curves::Curve& curve);

// Decision chain for the existence of an effective non-special divisor of
// degree g.  Rules are tried from the cheapest to the most demanding; the
// first applicable one decides.
Verdict verdict_degree_g(const FieldSummary& f);

// Decision chain for the existence of a non-special divisor of degree g-1.
Verdict verdict_degree_gm1(const FieldSummary& f);

// A divisor of degree gamma-1 and dimension zero always exists, where gamma
// is the p-rank of the field.  Returns the witness data (gamma, gamma-1, and
// whether gamma attains its maximum g).
Verdict gamma_minus_1_dimension_zero(const zeta::LPolynomial& L, int64_t p);

// Lower bound linking consecutive effective-divisor counts:
// if B_1 >= m >= 1 then A_n >= m*A_{n-1} - m(m-1)/2 * A_{n-2} for n >= 2.
// Returns whether the inequality holds for the supplied data.
bool nixi_inequality(const std::vector<Int>& A, const Int& B1, const Int& m,
                     int n);

// Defect of a point count: k = g*[2*sqrt(q)] - |N_1 - (q+1)|, the distance
// from the Serre bound.  Requires N_1 to satisfy that bound.
Int defect(const Int& N1, const Int& q, int g);

// Shape of the real-part tuple attached to a defect value.
//  - Case A: g-1 entries at the bound [2*sqrt(q)] and one at [2*sqrt(q)]-k.
//  - Case B: g-2 entries at the bound plus a conjugate quadratic pair with
//    trace 2*[2*sqrt(q)]-k and an extra integer parameter n.
// Branch selects the overall sign convention of the tuple.
enum class DefectCase { A, B };
enum class Branch { Plus, Minus };

struct DefectSpec {
  Int q = 0;
  int g = 0;
  int k = 0;
  DefectCase kase = DefectCase::A;
  Int n = 0;  // case B only
  Branch branch = Branch::Plus;
};

struct ScasenResult {
  zeta::RealPartSpec parts;
  // Case B tuples require a strictly positive discriminant (k+2)^2 - 4n for
  // the two extremal roots to be distinct; equality is admitted but flagged.
  bool delta_zero = false;
};

// Builds the real-part tuple for a defect specification, enforcing the
// case A range 3 <= k <= 2*[2*sqrt(q)] and, for case B, the exact
// square-root range conditions on k +- sqrt((k+2)^2 - 4n).
ScasenResult scasen_tuple(const DefectSpec& spec);

// Totally positive algebraic integer of degree d over Q with relative
// deficiency kval = trace - degree; d = 2 also needs the norm n.
struct TotallyPositiveRoot {
  int d = 1;
  Int trace = 0;  // equals the root itself when d = 1
  Int norm = 0;
  Int disc = 0;  // (kval+2)^2 - 4n when d = 2, else 0
};

TotallyPositiveRoot reldeftr_solve(int d, const Int& kval, const Int& n = 0);

// Integer splitting obstruction: a monic integer polynomial that factors as
// P1*P2 with both factors non-constant and |Res(P1, P2)| = 1 cannot be the
// characteristic polynomial of the real parts of a point-count spectrum.
// Coefficients ascending, leading coefficient 1.
bool exicur_excludes(const std::vector<Int>& monic_coeffs_ascending);

// The sign invariant deciding degree g-1 existence from the L-polynomial:
// sum = a_g + 2*(a_0 + ... + a_{g-1}).  For q >= 3 existence holds iff
// sum >= 0; for q = 2 iff sum > 0 (sum = 0 reports BoundaryFalse).
// Also returns A_{g-1} = (h - sum)/(q - 1) as a consistency witness.
struct CnsReport {
  Int sum = 0;
  Truth verdict = Truth::Unknown;
  Int a_gm1 = 0;
};

CnsReport cns_sum(const zeta::LPolynomial& L);

// One reference row of the bundled defect table (n is 0 for case A rows).
struct DefectRow {
  Int q = 0;
  int g = 0;
  int k = 0;
  DefectCase kase = DefectCase::A;
  Int n = 0;
  bool expected = false;
};

// Outcome of re-deriving one reference row under one sign branch.
struct BranchOutcome {
  Branch branch = Branch::Plus;
  bool admissible = false;    // tuple passes the range conditions
  std::string rejection;      // failing condition when not admissible
  Int sum = 0;
  Truth verdict = Truth::Unknown;
  bool matches_expected = false;
  Int n1 = 0;                 // point count implied by the tuple
  bool count_in_range = false;  // 0 <= N_1 <= g
  bool delta_zero = false;
  bool excluded = false;      // splitting obstruction applies
};

struct RowReport {
  DefectRow row;
  std::vector<BranchOutcome> outcomes;
  bool match = false;  // some requested branch reproduces the expected value
};

struct TableReport {
  std::vector<RowReport> rows;
  int matched = 0;
  int mismatched = 0;
};

enum class BranchMode { Plus, Minus, Both };

// Recomputes every reference row from scratch (tuple -> L-polynomial -> sign
// invariant) and compares with the recorded expectation.  Mismatches are
// reported, never fatal.
TableReport regenerate_defect_tables(const std::vector<DefectRow>& reference,
                                     BranchMode mode);

}  // namespace divforge::criteria
