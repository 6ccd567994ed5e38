#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "divforge/constructions.hpp"
#include "divforge/curves.hpp"
#include "divforge/galois.hpp"
#include "divforge/rrspaces.hpp"

using namespace divforge;
namespace cn = divforge::constructions;
namespace rr = divforge::rrspaces;
using curves::builtin_curve;
using curves::Curve;
using curves::Divisor;
using curves::Place;
using curves::single;
using cn::Certificate;

namespace {

Place at_infinity() {
  Place p;
  p.kind = Place::Kind::AtInfinity;
  p.degree = 1;
  p.inf_index = 0;
  return p;
}

Place ramified_place(int64_t iy) {
  Place p;
  p.kind = Place::Kind::Affine;
  p.degree = 1;
  p.ix = 0;
  p.iy = iy;
  return p;
}

Place affine_place(int64_t ix, int64_t iy) {
  Place p;
  p.kind = Place::Kind::Affine;
  p.degree = 1;
  p.ix = ix;
  p.iy = iy;
  return p;
}

std::vector<int64_t> v64(std::initializer_list<long long> v) {
  return std::vector<int64_t>(v.begin(), v.end());
}

std::vector<int64_t> root_indices(const Curve& c) {
  const auto& km = std::get<curves::KummerModel>(c.model());
  std::vector<int64_t> idx;
  for (const auto& r : km.roots) idx.push_back(c.field()->index_of(r));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<Int> sorted_coeffs(const Divisor& D) {
  std::vector<Int> out;
  for (const auto& [p, m] : D.coeffs) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("layer sizes satisfy the degree identity") {
  CHECK(cn::kummer_layer_sizes(4, 3) == v64({1, 1}));
  CHECK(cn::kummer_layer_sizes(5, 3) == v64({1, 0, 1}));
  CHECK(cn::kummer_layer_sizes(7, 3) == v64({0, 1, 0, 1}));
  CHECK(cn::kummer_layer_sizes(7, 4) == v64({1, 0, 1, 0, 1}));
  CHECK(cn::kummer_layer_sizes(2, 5) == v64({2}));
  CHECK(cn::kummer_layer_sizes(3, 2) == v64({1}));

  // genus zero means no layers at all
  CHECK(cn::kummer_layer_sizes(1, 5).empty());
  CHECK(cn::kummer_layer_sizes(5, 1).empty());
  CHECK(cn::kummer_layer_sizes(1, 1).empty());

  for (int64_t m = 1; m <= 20; ++m)
    for (int64_t r = 1; r <= 20; ++r) {
      if (std::gcd(m, r) != 1) continue;
      auto s = cn::kummer_layer_sizes(m, r);
      Int weighted = 0, total = 0;
      for (size_t j = 0; j < s.size(); ++j) {
        CHECK(s[j] >= 0);
        weighted += Int(int64_t(j) + 1) * s[j];
        total += s[j];
      }
      CHECK(weighted * 2 == Int(m - 1) * (r - 1));
      CHECK(total <= r - 1);
    }

  CHECK_THROWS_WITH_AS(cn::kummer_layer_sizes(6, 3),
                       doctest::Contains("coprime"), precondition_error);
  CHECK_THROWS_WITH_AS(cn::kummer_layer_sizes(0, 3),
                       doctest::Contains("positive"), precondition_error);
}

TEST_CASE("branch divisor construction reaches degree g") {
  CHECK(cn::certificate_name(Certificate::SemigroupCertified) ==
        "semigroup-certified");
  CHECK(cn::certificate_name(Certificate::OracleCertified) ==
        "oracle-certified");
  CHECK(cn::certificate_name(Certificate::DegreeBookkeepingOnly) ==
        "degree-bookkeeping-only");

  SUBCASE("hermitian over F9") {
    Curve c = builtin_curve("hermitian_q3");
    auto res = cn::kummer_g(c);
    Divisor want = single(ramified_place(0), 1) + single(ramified_place(3), 2);
    CHECK(res.divisor == want);
    CHECK(res.target_degree == 3);
    CHECK(res.divisor.degree() == 3);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
    REQUIRE(!res.trace.empty());
    CHECK(res.trace[0].substr(0, 8) == "layer 1:");
  }

  SUBCASE("hermitian over F4") {
    auto res = cn::kummer_g(builtin_curve("hermitian_q2"));
    CHECK(res.divisor == single(ramified_place(0), 1));
    CHECK(res.target_degree == 1);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
  }

  SUBCASE("quintic cover of the F11 line") {
    auto res = cn::kummer_g(builtin_curve("kummer_5_3_f11"));
    Divisor want = single(ramified_place(0), 1) + single(ramified_place(1), 3);
    CHECK(res.divisor == want);
    CHECK(res.target_degree == 4);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
  }

  SUBCASE("norm-trace cover of the F8 line") {
    auto res = cn::kummer_g(builtin_curve("normtrace_q2_r3"));
    Divisor want = single(ramified_place(0), 1) +
                   single(ramified_place(3), 3) + single(ramified_place(5), 5);
    CHECK(res.divisor == want);
    CHECK(res.target_degree == 9);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_WITH_AS(cn::kummer_g(builtin_curve("fekes_q3")),
                         doctest::Contains("totally ramified"),
                         precondition_error);
    CHECK_THROWS_WITH_AS(cn::kummer_g(builtin_curve("ec_q2")),
                         doctest::Contains("radical models"),
                         precondition_error);
  }
}

TEST_CASE("norm-trace specialization matches the stored instances") {
  SUBCASE("q = 2, r = 2 rebuilds the F4 hermitian curve") {
    auto res = cn::norm_trace_g(2, 2);
    Curve ref = builtin_curve("hermitian_q2");
    CHECK(res.curve.genus() == 1);
    CHECK(std::get<curves::KummerModel>(res.curve.model()).m == 3);
    CHECK(root_indices(res.curve) == root_indices(ref));
    CHECK(res.divisor == single(ramified_place(0), 1));
  }

  SUBCASE("q = 3, r = 2 rebuilds the F9 hermitian curve") {
    auto res = cn::norm_trace_g(3, 2);
    Curve ref = builtin_curve("hermitian_q3");
    CHECK(res.curve.genus() == 3);
    CHECK(std::get<curves::KummerModel>(res.curve.model()).m == 4);
    CHECK(root_indices(res.curve) == root_indices(ref));
    CHECK(sorted_coeffs(res.divisor) == std::vector<Int>{1, 2});
  }

  SUBCASE("q = 2, r = 3 rebuilds the stored norm-trace curve") {
    auto res = cn::norm_trace_g(2, 3);
    Curve ref = builtin_curve("normtrace_q2_r3");
    CHECK(res.curve.genus() == 9);
    CHECK(std::get<curves::KummerModel>(res.curve.model()).m == 7);
    CHECK(root_indices(res.curve) == root_indices(ref));
    // exactly the odd coefficients below u - 1 appear
    CHECK(sorted_coeffs(res.divisor) == std::vector<Int>{1, 3, 5});
    CHECK(res.certificate == Certificate::OracleCertified);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_WITH_AS(cn::norm_trace_g(6, 2),
                         doctest::Contains("prime power"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::norm_trace_g(2, 1),
                         doctest::Contains("at least two"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::norm_trace_g(2, 30),
                         doctest::Contains("enumeration budget"),
                         precondition_error);
  }
}

TEST_CASE("reduction to degree g-1") {
  Curve c = builtin_curve("hermitian_q3");
  auto base = cn::kummer_g(c);
  Place inf = at_infinity();

  SUBCASE("removing the infinite place") {
    auto res = cn::reduce_to_gm1(base, inf);
    CHECK(res.divisor == base.divisor - single(inf, 1));
    CHECK(res.target_degree == 2);
    CHECK(res.divisor.degree() == 2);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 0);
  }

  SUBCASE("removing an unused branch place") {
    auto res = cn::reduce_to_gm1(base, ramified_place(6));
    CHECK(res.divisor.degree() == 2);
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 0);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_WITH_AS(cn::reduce_to_gm1(base, ramified_place(0)),
                         doctest::Contains("avoid the support"),
                         precondition_error);
    CHECK_THROWS_WITH_AS(cn::reduce_to_gm1(base, affine_place(1, 0)),
                         doctest::Contains("rational place of the curve"),
                         precondition_error);

    cn::ConstructionResult fake{
        c, single(inf, 3), 3, Certificate::DegreeBookkeepingOnly, 0, {}};
    CHECK_THROWS_WITH_AS(cn::reduce_to_gm1(fake, ramified_place(0)),
                         doctest::Contains("certified"), precondition_error);

    auto once = cn::reduce_to_gm1(base, inf);
    CHECK_THROWS_WITH_AS(cn::reduce_to_gm1(once, ramified_place(6)),
                         doctest::Contains("degree-g result"),
                         precondition_error);
  }
}

TEST_CASE("hyperelliptic base-point construction") {
  SUBCASE("q = 3") {
    auto res = cn::hyperelliptic_gP(3, affine_place(0, 0));
    Curve ref = builtin_curve("fekes_q3");
    CHECK(res.curve.genus() == 1);
    CHECK(std::get<curves::KummerModel>(res.curve.model()).m == 4);
    CHECK(root_indices(res.curve) == root_indices(ref));
    CHECK(res.divisor == single(affine_place(0, 0), 1));
    CHECK(res.target_degree == 1);
    // the dimension oracle cannot price this model, so the pole-number
    // argument stands on its own
    CHECK(res.certificate == Certificate::SemigroupCertified);

    auto reduced = cn::reduce_to_gm1(res, affine_place(0, 2));
    CHECK(reduced.target_degree == 0);
    CHECK(reduced.certificate == Certificate::SemigroupCertified);
    CHECK(reduced.divisor.degree() == 0);
  }

  SUBCASE("q = 5") {
    auto res = cn::hyperelliptic_gP(5, affine_place(0, 0));
    CHECK(res.curve.genus() == 2);
    CHECK(std::get<curves::KummerModel>(res.curve.model()).m == 6);
    CHECK(res.divisor == single(affine_place(0, 0), 2));
    CHECK(res.certificate == Certificate::SemigroupCertified);
  }

  SUBCASE("preconditions") {
    // over F9 the involution fixes the locus 2a + 1 = 0, i.e. a = 1
    CHECK_THROWS_WITH_AS(cn::hyperelliptic_gP(3, affine_place(0, 1)),
                         doctest::Contains("involution"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::hyperelliptic_gP(3, affine_place(1, 0)),
                         doctest::Contains("lie on the curve"),
                         precondition_error);
    CHECK_THROWS_WITH_AS(cn::hyperelliptic_gP(4, affine_place(0, 0)),
                         doctest::Contains("odd"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::hyperelliptic_gP(6, affine_place(0, 0)),
                         doctest::Contains("prime power"), precondition_error);
    Place inf;
    inf.kind = Place::Kind::AtInfinity;
    CHECK_THROWS_WITH_AS(cn::hyperelliptic_gP(3, inf),
                         doctest::Contains("affine rational place"),
                         precondition_error);
  }
}

TEST_CASE("greedy degree-g construction") {
  SUBCASE("genus one") {
    Curve c = builtin_curve("hermitian_q2");
    auto res = cn::greedy_degree_g(c);
    CHECK(res.divisor == single(c.rational_places().at(0), 1));
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
  }

  SUBCASE("genus three, deterministic") {
    Curve c = builtin_curve("hermitian_q3");
    auto res = cn::greedy_degree_g(c);
    CHECK(res.divisor.degree() == 3);
    CHECK(res.divisor.is_effective());
    CHECK(res.certificate == Certificate::OracleCertified);
    CHECK(res.oracle_dim == 1);
    CHECK(rr::is_nonspecial(c, res.divisor));
    auto again = cn::greedy_degree_g(c);
    CHECK(res.divisor == again.divisor);
  }

  SUBCASE("genus zero") {
    auto F = galois::Field::make(5, 1);
    Curve line("conic_f5", F, 0,
               curves::Model(curves::KummerModel{2, {F->zero()}}));
    line.validate();
    auto res = cn::greedy_degree_g(line);
    CHECK(res.divisor.is_zero());
    CHECK(res.target_degree == 0);
    CHECK(res.certificate != Certificate::DegreeBookkeepingOnly);
  }

  SUBCASE("needs g rational places") {
    CHECK_THROWS_WITH_AS(cn::greedy_degree_g(builtin_curve("g3h2_a")),
                         doctest::Contains("rational places"),
                         precondition_error);
  }
}

TEST_CASE("window sums are exact and monotone") {
  cn::BoundFns b = cn::BoundFns::from_curve(builtin_curve("hermitian_q3"));
  CHECK(b.g == 3);
  CHECK(b.q == 9);
  CHECK(b.points == 28);
  CHECK(b.gq(2) == 0);
  CHECK(b.gq(3) == Rat(1, 91));

  cn::BoundFns b2;
  b2.q = 2;
  CHECK(b2.gq(2) == 0);
  CHECK(b2.gq(3) == Rat(1, 7));
  CHECK(b2.gq(4) == Rat(8, 35));

  cn::BoundFns b3;
  b3.q = 3;
  CHECK(b3.gq(3) == Rat(1, 13));

  for (int64_t q : {2, 3, 4}) {
    cn::BoundFns bq;
    bq.q = q;
    Rat prev = 0;
    for (int n = 2; n <= 40; ++n) {
      Rat cur = bq.gq(n);
      CHECK(cur >= prev);
      prev = cur;
    }
  }

  CHECK_THROWS_WITH_AS(b.gq(1), doctest::Contains("at least two"),
                       precondition_error);
}

TEST_CASE("step bounds take their known values") {
  cn::BoundFns h3 = cn::BoundFns::from_curve(builtin_curve("hermitian_q3"));

  SUBCASE("single-step bound on the genus-3 curve") {
    CHECK(cn::bound_f(1, -2, h3) == 0);
    CHECK(cn::bound_f(1, -1, h3) == 1);
    CHECK(cn::bound_f(1, 0, h3) == 3);
    CHECK(cn::bound_f(1, 1, h3) == 3);
    CHECK(cn::bound_f(1, 2, h3) == 0);
    CHECK(cn::bound_f(1, 5, h3) == 0);
  }

  SUBCASE("double-step bound on the genus-3 curve") {
    CHECK(cn::bound_f(2, -3, h3) == 0);
    CHECK(cn::bound_f(2, -2, h3) == 10);
    CHECK(cn::bound_f(2, -1, h3) == 11);
    CHECK(cn::bound_f(2, 0, h3) == 12);
    CHECK(cn::bound_f(2, 1, h3) == 3);
    CHECK(cn::bound_f(2, 2, h3) == 0);
  }

  SUBCASE("genus-1 curve collapses the middle range") {
    cn::BoundFns h2 = cn::BoundFns::from_curve(builtin_curve("hermitian_q2"));
    CHECK(cn::bound_f(1, -1, h2) == 1);
    CHECK(cn::bound_f(1, 0, h2) == 0);
    CHECK(cn::bound_f(2, -2, h2) == 4);
    CHECK(cn::bound_f(2, -1, h2) == 1);
    CHECK(cn::bound_f(2, 0, h2) == 0);
  }

  SUBCASE("maxima over all degrees equal s^2 g") {
    for (const char* name :
         {"hermitian_q2", "hermitian_q3", "kummer_5_3_f11"}) {
      cn::BoundFns b = cn::BoundFns::from_curve(builtin_curve(name));
      for (int s : {1, 2}) {
        Int best = 0;
        for (Int a = -6; a <= Int(b.g) + 3; ++a)
          best = std::max(best, cn::bound_f(s, a, b));
        CHECK(best == Int(s) * s * b.g);
      }
    }
  }

  SUBCASE("nondecreasing left of the peak") {
    Int prev = 0;
    for (Int a = -2; a <= 0; ++a) {
      Int cur = cn::bound_f(2, a, h3);
      CHECK(cur >= prev);
      prev = cur;
    }
  }

  CHECK_THROWS_WITH_AS(cn::bound_f(3, 0, h3), doctest::Contains("one or two"),
                       precondition_error);
}

TEST_CASE("incremental extension keeps every target ordinary") {
  Curve c = builtin_curve("hermitian_q3");
  auto rats = c.rational_places();
  Place inf = at_infinity();
  Divisor zero;
  std::vector<cn::RandriamTarget> targets{{1, zero}, {2, single(inf, 2)}};

  SUBCASE("the zero seed violates ordinarity of D - 0") {
    CHECK_THROWS_WITH_AS(cn::randriam_extend(c, zero, targets, 2, rats),
                         doctest::Contains("leaves target"),
                         precondition_error);
  }

  SUBCASE("a difference seed extends to degree two") {
    Divisor seed = single(rats[0], 1) - single(rats[1], 1);
    std::vector<std::string> trace;
    Divisor D = cn::randriam_extend(c, seed, targets, 2, rats, &trace);
    CHECK(D.degree() == 2);
    CHECK((D - seed).is_effective());
    CHECK(rr::rr_dim(c, D) == 0);
    CHECK(rr::rr_dim(c, D + D - single(inf, 2)) == 0);
    CHECK(trace.size() == 2);
  }

  SUBCASE("target degree equal to the seed degree returns the seed") {
    Divisor seed = single(rats[0], 1) - single(rats[1], 1);
    CHECK(cn::randriam_extend(c, seed, targets, 0, rats) == seed);
  }

  SUBCASE("preconditions") {
    Divisor seed = single(rats[0], 1) - single(rats[1], 1);
    std::vector<Place> few(rats.begin(), rats.begin() + 12);
    CHECK_THROWS_WITH_AS(cn::randriam_extend(c, seed, targets, 2, few),
                         doctest::Contains("candidate set is smaller"),
                         precondition_error);
    std::vector<cn::RandriamTarget> bad{{3, zero}};
    CHECK_THROWS_WITH_AS(cn::randriam_extend(c, seed, bad, 2, rats),
                         doctest::Contains("one or two"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::randriam_extend(c, seed, targets, -1, rats),
                         doctest::Contains("below the seed degree"),
                         precondition_error);
    std::vector<Place> withq2 = rats;
    Place q2;
    q2.degree = 2;
    withq2.push_back(q2);
    CHECK_THROWS_WITH_AS(cn::randriam_extend(c, seed, targets, 2, withq2),
                         doctest::Contains("must be rational"),
                         precondition_error);
  }
}

TEST_CASE("pair construction yields two vanishing dimensions") {
  Curve c = builtin_curve("hermitian_q3");
  Place inf = at_infinity();
  Divisor zero;

  SUBCASE("zero numerator divisor") {
    auto res = cn::exdecons1(c, zero, single(inf, 2));
    CHECK(res.D.degree() == 2);
    CHECK(res.dim_d_minus_q == 0);
    CHECK(res.dim_2d_minus_g == 0);
    REQUIRE(!res.trace.empty());
    CHECK(res.trace[0].substr(0, 6) == "seed: ");
  }

  SUBCASE("positive-degree divisors seed from the zero divisor") {
    auto res = cn::exdecons1(c, single(inf, 1), single(inf, 4));
    CHECK(res.D.degree() == 3);
    CHECK((res.D - single(inf, 1)).degree() == 2);
    CHECK(res.dim_d_minus_q == 0);
    CHECK(res.dim_2d_minus_g == 0);
    REQUIRE(!res.trace.empty());
    CHECK(res.trace[0] == "seed: zero divisor");
  }

  SUBCASE("genus one with both divisors zero") {
    Curve e = builtin_curve("hermitian_q2");
    auto res = cn::exdecons1(e, zero, zero);
    CHECK(res.D.degree() == 0);
    CHECK(res.dim_d_minus_q == 0);
    CHECK(res.dim_2d_minus_g == 0);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_WITH_AS(cn::exdecons1(builtin_curve("kummer_5_3_f11"), zero,
                                       zero),
                         doctest::Contains("5g"), precondition_error);
    CHECK_THROWS_WITH_AS(cn::exdecons1(c, single(inf, 1), single(inf, 2)),
                         doctest::Contains("degree at least"),
                         precondition_error);
  }
}

TEST_CASE("jump-count audits stay within the proved bounds") {
  Curve c = builtin_curve("hermitian_q3");
  Place inf = at_infinity();
  Divisor zero;

  SUBCASE("zero divisor, single step") {
    auto a = cn::plu_bound_audit(c, zero, 1);
    CHECK(a.applicable);
    CHECK(a.degree == 0);
    CHECK(a.dim == 1);
    CHECK(a.index == 3);
    // no rational point gives the curve a degree-one map to the line
    CHECK(a.jump_count == 0);
    REQUIRE(a.bounds.size() == 1);
    CHECK(a.bounds[0].second == Rat(2));
  }

  SUBCASE("two poles at infinity, single step") {
    auto a = cn::plu_bound_audit(c, single(inf, 2), 1);
    CHECK(a.applicable);
    CHECK(a.dim == 1);
    CHECK(a.index == 1);
    // the tangent section at the infinite place is 4x itself, so only that
    // place completes 2P to a special divisor
    CHECK(a.jump_count == 1);
  }

  SUBCASE("degree minus one is capped at a single jump") {
    auto a = cn::plu_bound_audit(c, zero - single(inf, 1), 1);
    CHECK(a.applicable);
    CHECK(a.dim == 0);
    CHECK(a.index == 3);
    CHECK(a.jump_count == 1);
    REQUIRE(a.bounds.size() == 2);
    CHECK(a.bounds[0].second == Rat(3));
    CHECK(a.bounds[1].second == Rat(1));
  }

  SUBCASE("zero divisor, double step") {
    auto a = cn::plu_bound_audit(c, zero, 2);
    CHECK(a.applicable);
    CHECK(a.index == 3);
    // the curve is not hyperelliptic, so no 2P moves in a pencil
    CHECK(a.jump_count == 0);
    REQUIRE(a.bounds.size() == 3);
    CHECK(a.bounds[0].second == Rat(9));
    CHECK(a.bounds[1].second == Rat(9));
    CHECK(a.bounds[2].second == Rat(259, 23));
  }

  SUBCASE("out of range") {
    CHECK_FALSE(cn::plu_bound_audit(c, single(inf, 5), 1).applicable);
    CHECK_FALSE(cn::plu_bound_audit(c, single(inf, 5), 2).applicable);
    CHECK_FALSE(cn::plu_bound_audit(c, zero - single(inf, 3), 2).applicable);
    CHECK_THROWS_WITH_AS(cn::plu_bound_audit(c, zero, 3),
                         doctest::Contains("one or two"), precondition_error);
  }
}
