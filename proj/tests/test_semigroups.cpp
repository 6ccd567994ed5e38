#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "divforge/curves.hpp"
#include "divforge/rrspaces.hpp"
#include "divforge/semigroups.hpp"

using namespace divforge;
namespace sg = divforge::semigroups;
namespace rr = divforge::rrspaces;
using curves::Curve;
using curves::Divisor;
using curves::Place;
using curves::single;

namespace {

std::vector<int64_t> v64(std::initializer_list<long long> v) {
  return std::vector<int64_t>(v.begin(), v.end());
}

Place ramified_place(int64_t iy) {
  Place p;
  p.kind = Place::Kind::Affine;
  p.degree = 1;
  p.ix = 0;
  p.iy = iy;
  return p;
}

// Membership via the defining dimension jumps: alpha is a pole vector of
// (P_1, ..., P_l) iff removing any one place drops the dimension.
bool member_by_dims(const Curve& c, const std::vector<Place>& pts,
                    const std::vector<int64_t>& alpha) {
  Divisor D;
  for (size_t i = 0; i < pts.size(); ++i)
    if (alpha[i] != 0) D.add(pts[i], alpha[i]);
  Int d = rr::rr_dim(c, D);
  for (const auto& p : pts)
    if (rr::rr_dim(c, D - single(p, 1)) + 1 != d) return false;
  return true;
}

// All ways to write `total` as an ordered sum of `parts` nonnegative terms.
void compositions(int64_t total, int parts, std::vector<int64_t>& cur,
                  std::vector<std::vector<int64_t>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int64_t v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("gap sets match the genus and the pole-number formula") {
  CHECK(sg::gap_set_single(3, 2) == v64({1}));
  CHECK(sg::gap_set_single(4, 3) == v64({1, 2, 5}));
  CHECK(sg::gap_set_single(5, 3) == v64({1, 2, 3, 6}));
  CHECK(sg::gap_set_single(3, 5) == v64({1, 2, 4, 7}));
  CHECK(sg::gap_set_single(7, 4) == v64({1, 2, 3, 4, 5, 8, 9, 10, 15}));
  CHECK(sg::gap_set_single(1, 5).empty());
  CHECK(sg::gap_set_single(2, 1).empty());

  // cardinality equals the genus for every coprime pair
  for (int64_t m = 1; m <= 20; ++m)
    for (int64_t r = 1; r <= 20; ++r) {
      if (std::gcd(m, r) != 1) continue;
      CHECK(Int(sg::gap_set_single(m, r).size()) * 2 ==
            Int(m - 1) * (r - 1));
    }

  CHECK_THROWS_WITH_AS(sg::gap_set_single(4, 2),
                       doctest::Contains("coprime"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::gap_set_single(0, 3),
                       doctest::Contains("positive"), precondition_error);
}

TEST_CASE("single-place membership complements the gap set") {
  for (auto [m, r] : {std::pair<int64_t, int64_t>{4, 3},
                      {3, 5},
                      {7, 4},
                      {5, 3},
                      {3, 2}}) {
    auto gaps = sg::gap_set_single(m, r);
    int64_t frobenius = gaps.empty() ? -1 : gaps.back();
    for (int64_t a = 0; a <= frobenius + 2; ++a) {
      bool is_gap = std::find(gaps.begin(), gaps.end(), a) != gaps.end();
      CHECK(sg::pole_number_single(m, r, a) == !is_gap);
    }
  }
  CHECK(sg::multiplicity_single(3, 2) == 2);
  CHECK(sg::multiplicity_single(4, 3) == 3);
  CHECK(sg::multiplicity_single(5, 3) == 4);
  CHECK(sg::multiplicity_single(7, 4) == 6);
  CHECK(sg::multiplicity_single(3, 5) == 3);
  CHECK(sg::multiplicity_single(1, 7) == 1);
  CHECK(sg::multiplicity_single(2, 1) == 1);

  CHECK_THROWS_AS(sg::pole_number_single(4, 3, -1), precondition_error);
}

TEST_CASE("semigroup closure under addition") {
  std::mt19937 rng(424243u);
  for (auto [m, r] : {std::pair<int64_t, int64_t>{4, 3}, {3, 5}, {7, 4}}) {
    std::uniform_int_distribution<int64_t> draw(0, 40 * m);
    int pairs = 0;
    while (pairs < 200) {
      int64_t a = draw(rng), b = draw(rng);
      if (!sg::pole_number_single(m, r, a) ||
          !sg::pole_number_single(m, r, b))
        continue;
      ++pairs;
      CHECK(sg::pole_number_single(m, r, a + b));
    }
  }
}

TEST_CASE("multi-place generating vectors satisfy the sum constraint") {
  auto g432 = sg::gamma_plus_multi(4, 3, 2);
  CHECK(g432.vectors ==
        std::vector<std::vector<int64_t>>{{1, 5}, {2, 2}, {5, 1}});
  auto g433 = sg::gamma_plus_multi(4, 3, 3);
  CHECK(g433.vectors == std::vector<std::vector<int64_t>>{{1, 1, 1}});
  auto g322 = sg::gamma_plus_multi(3, 2, 2);
  CHECK(g322.vectors == std::vector<std::vector<int64_t>>{{1, 1}});
  auto g532 = sg::gamma_plus_multi(5, 3, 2);
  CHECK(g532.vectors ==
        std::vector<std::vector<int64_t>>{{1, 6}, {2, 2}, {3, 3}, {6, 1}});
  auto g742 = sg::gamma_plus_multi(7, 4, 2);
  CHECK(g742.vectors == std::vector<std::vector<int64_t>>{{1, 15},
                                                          {2, 9},
                                                          {3, 10},
                                                          {4, 4},
                                                          {5, 5},
                                                          {8, 8},
                                                          {9, 2},
                                                          {10, 3},
                                                          {15, 1}});
  auto g744 = sg::gamma_plus_multi(7, 4, 4);
  CHECK(g744.vectors == std::vector<std::vector<int64_t>>{{1, 1, 1, 1}});

  // every vector is strictly positive, has the right arity, and realises
  // the sum constraint for its residue class j
  for (auto [m, r] : {std::pair<int64_t, int64_t>{7, 4}, {4, 3}, {8, 5}}) {
    for (int l = 2; l <= r - r / m; ++l) {
      auto gs = sg::gamma_plus_multi(m, r, l);
      CHECK(gs.m == m);
      CHECK(gs.r == r);
      CHECK(gs.l == l);
      for (const auto& vec : gs.vectors) {
        REQUIRE(vec.size() == size_t(l));
        int64_t j = vec[0] % m;
        CHECK(j >= 1);
        CHECK(j <= m - 1 - m / r);
        int64_t ssum = 0;
        for (int64_t comp : vec) {
          CHECK(comp >= 1);
          CHECK(comp % m == j);
          ssum += comp / m;
        }
        CHECK(ssum == r - l - (r * j) / m);
      }
    }
  }

  CHECK_THROWS_WITH_AS(sg::gamma_plus_multi(4, 3, 1),
                       doctest::Contains("tuple length"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::gamma_plus_multi(4, 3, 4),
                       doctest::Contains("tuple length"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::gamma_plus_multi(3, 5, 5),
                       doctest::Contains("tuple length"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::gamma_plus_multi(6, 3, 2),
                       doctest::Contains("coprime"), precondition_error);
}

TEST_CASE("tuple membership follows the least-upper-bound description") {
  // single place: membership is exactly pole-number membership
  CHECK_FALSE(sg::semigroup_member(v64({1}), 3, 2, 4));
  CHECK(sg::semigroup_member(v64({0}), 3, 2, 4));
  CHECK(sg::semigroup_member(v64({3}), 4, 3, 9));

  // two places of the quartic cover: generators are (1,5), (2,2), (5,1)
  CHECK_FALSE(sg::semigroup_member(v64({1, 1}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({2, 2}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({5, 1}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({1, 5}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({5, 2}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({3, 0}), 4, 3, 9));
  CHECK(sg::semigroup_member(v64({3, 4}), 4, 3, 9));
  CHECK_FALSE(sg::semigroup_member(v64({1, 0}), 4, 3, 9));
  CHECK_FALSE(sg::semigroup_member(v64({1, 2}), 4, 3, 9));

  CHECK_THROWS_WITH_AS(sg::semigroup_member(v64({1, 1}), 3, 2, 2),
                       doctest::Contains("below the field size"),
                       precondition_error);
  CHECK_THROWS_WITH_AS(sg::semigroup_member(v64({-1}), 4, 3, 9),
                       doctest::Contains("nonnegative"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::semigroup_member(v64({}), 4, 3, 9),
                       doctest::Contains("at least one"), precondition_error);
}

TEST_CASE("tuple membership agrees with the dimension oracle") {
  // quartic cover over F_9: all pairs up to twice the genus
  Curve h3 = curves::builtin_curve("hermitian_q3");
  std::vector<Place> pts3 = {ramified_place(0), ramified_place(3)};
  for (int64_t a = 0; a <= 6; ++a)
    for (int64_t b = 0; b <= 6; ++b) {
      bool fast = sg::semigroup_member(v64({a, b}), 4, 3, 9);
      bool slow = member_by_dims(h3, pts3, {a, b});
      CHECK(fast == slow);
    }

  // cubic cover over F_4 (two ramified places, q = 4 keeps l < q valid)
  Curve h2 = curves::builtin_curve("hermitian_q2");
  std::vector<Place> pts2 = {ramified_place(0), ramified_place(1)};
  for (int64_t a = 0; a <= 4; ++a)
    for (int64_t b = 0; b <= 4; ++b) {
      bool fast = sg::semigroup_member(v64({a, b}), 3, 2, 4);
      bool slow = member_by_dims(h2, pts2, {a, b});
      CHECK(fast == slow);
    }

  // quintic cover over F_11, larger single-place range plus pairs
  Curve k53 = curves::builtin_curve("kummer_5_3_f11");
  std::vector<Place> ptsk = {ramified_place(0), ramified_place(1)};
  for (int64_t a = 0; a <= 8; ++a) {
    CHECK(sg::semigroup_member(v64({a}), 5, 3, 11) ==
          member_by_dims(k53, {ptsk[0]}, {a}));
    for (int64_t b = 0; b <= 8; ++b)
      CHECK(sg::semigroup_member(v64({a, b}), 5, 3, 11) ==
            member_by_dims(k53, ptsk, {a, b}));
  }
}

TEST_CASE("degree-g certificates agree with the dimension oracle") {
  // quartic cover, genus 3, three ramified places: the non-special branch
  // divisors are exactly the (1, 2) patterns
  Curve h3 = curves::builtin_curve("hermitian_q3");
  std::vector<Place> pts3 = {ramified_place(0), ramified_place(3),
                             ramified_place(6)};
  std::vector<std::vector<int64_t>> alphas;
  std::vector<int64_t> cur;
  compositions(3, 3, cur, alphas);
  int certified = 0;
  for (const auto& al : alphas) {
    Divisor A;
    for (size_t i = 0; i < al.size(); ++i)
      if (al[i] != 0) A.add(pts3[i], al[i]);
    bool cert = sg::nonspecial_by_semigroup(h3, A);
    CHECK(cert == rr::is_nonspecial(h3, A));
    certified += cert ? 1 : 0;
  }
  CHECK(certified == 6);

  // quintic cover, genus 4: non-special branch divisors are (1, 3) patterns
  Curve k53 = curves::builtin_curve("kummer_5_3_f11");
  alphas.clear();
  compositions(4, 3, cur, alphas);
  certified = 0;
  for (const auto& al : alphas) {
    Divisor A;
    for (size_t i = 0; i < al.size(); ++i)
      if (al[i] != 0) A.add(ramified_place(i), al[i]);
    bool cert = sg::nonspecial_by_semigroup(k53, A);
    CHECK(cert == rr::is_nonspecial(k53, A));
    certified += cert ? 1 : 0;
  }
  CHECK(certified == 6);

  // septic cover, genus 9, four ramified places over F_8: the non-special
  // branch divisors are the (1, 3, 5) patterns
  Curve nt = curves::builtin_curve("normtrace_q2_r3");
  std::vector<Place> ptsn;
  for (int64_t iy : {0, 3, 5, 6}) ptsn.push_back(ramified_place(iy));
  alphas.clear();
  compositions(9, 4, cur, alphas);
  certified = 0;
  for (const auto& al : alphas) {
    Divisor A;
    for (size_t i = 0; i < al.size(); ++i)
      if (al[i] != 0) A.add(ptsn[i], al[i]);
    bool cert = sg::nonspecial_by_semigroup(nt, A);
    CHECK(cert == rr::is_nonspecial(nt, A));
    certified += cert ? 1 : 0;
  }
  CHECK(certified == 24);

  // cubic cover, genus 1: the single-place divisors of degree one
  Curve h2 = curves::builtin_curve("hermitian_q2");
  CHECK(sg::nonspecial_by_semigroup(h2, single(ramified_place(0), 1)));
  CHECK(sg::nonspecial_by_semigroup(h2, single(ramified_place(1), 1)));
}

TEST_CASE("certificates enforce their preconditions") {
  Curve h3 = curves::builtin_curve("hermitian_q3");
  Place pinf;
  pinf.kind = Place::Kind::AtInfinity;
  pinf.degree = 1;

  CHECK_THROWS_WITH_AS(
      sg::nonspecial_by_semigroup(h3, single(ramified_place(0), 2)),
      doctest::Contains("degree g"), precondition_error);
  CHECK_THROWS_WITH_AS(sg::nonspecial_by_semigroup(h3, single(pinf, 3)),
                       doctest::Contains("ramified rational places"),
                       precondition_error);
  CHECK_THROWS_WITH_AS(
      sg::nonspecial_by_semigroup(
          h3, single(ramified_place(0), 4) - single(ramified_place(3), 1)),
      doctest::Contains("effective"), precondition_error);
  Place unram;
  unram.kind = Place::Kind::Affine;
  unram.degree = 1;
  unram.ix = 1;
  unram.iy = 2;
  CHECK_THROWS_WITH_AS(
      sg::nonspecial_by_semigroup(
          h3, single(ramified_place(0), 1) + single(unram, 2)),
      doctest::Contains("ramified rational places"), precondition_error);

  Curve ec = curves::builtin_curve("ec_q2");
  CHECK_THROWS_WITH_AS(sg::nonspecial_by_semigroup(ec, Divisor{}),
                       doctest::Contains("radical models"),
                       precondition_error);
  Curve fekes = curves::builtin_curve("fekes_q3");
  CHECK_THROWS_WITH_AS(sg::nonspecial_by_semigroup(fekes, Divisor{}),
                       doctest::Contains("not totally ramified"),
                       precondition_error);

  // support as large as the field breaks the lub description's validity
  Curve k45 = curves::curve_from_json_text(R"({
    "name": "k45_f5",
    "field": {"p": 5, "n": 1},
    "genus": 6,
    "model": {"type": "kummer", "m": 4, "roots": [0, 1, 2, 3, 4]}
  })");
  k45.validate();
  Divisor wide = single(ramified_place(0), 2);
  for (int64_t iy = 1; iy <= 4; ++iy) wide.add(ramified_place(iy), 1);
  CHECK(wide.degree() == 6);
  CHECK_THROWS_WITH_AS(sg::nonspecial_by_semigroup(k45, wide),
                       doctest::Contains("below the field size"),
                       precondition_error);
}

TEST_CASE("floor identities verified across coprime pairs") {
  auto rep53 = sg::floor_identities(5, 3);
  CHECK(rep53.t == 2);
  CHECK(rep53.gap_sum == 1);
  CHECK(rep53.jump_count == 1);

  auto rep35 = sg::floor_identities(3, 5);
  CHECK(rep35.t == 3);
  CHECK(rep35.gap_sum == 4);
  CHECK(rep35.jump_count == 2);

  auto rep47 = sg::floor_identities(4, 7);
  CHECK(rep47.t == 4);
  CHECK(rep47.gap_sum == 9);

  auto rep73 = sg::floor_identities(7, 3);
  CHECK(rep73.t == 1);
  CHECK(rep73.gap_sum == 0);
  CHECK(rep73.jump_count == 0);

  auto rep51 = sg::floor_identities(5, 1);
  CHECK(rep51.t == 0);
  CHECK(rep51.gap_sum == 0);

  // the identities hold for all coprime pairs in a wide range; violations
  // would raise internal errors
  for (int64_t r = 1; r <= 30; ++r)
    for (int64_t m = 1; m <= 30; ++m) {
      if (std::gcd(r, m) != 1) continue;
      auto rep = sg::floor_identities(r, m);
      CHECK(rep.t == r % m);
    }

  CHECK_THROWS_WITH_AS(sg::floor_identities(6, 3),
                       doctest::Contains("coprime"), precondition_error);
}
