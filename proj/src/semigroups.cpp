#include "divforge/semigroups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace divforge::semigroups {

namespace {

void check_pair(int64_t m, int64_t r) {
  require(m >= 1 && r >= 1, "pole parameters must be positive");
  require(m <= (1 << 12) && r <= (1 << 12),
          "pole parameters exceed the supported range");
  require(std::gcd(m, r) == 1, "pole parameters must be coprime");
}

// All ordered tuples of `parts` nonnegative integers summing to `total`.
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

// Largest value of sum_{k in K} floor((alpha_k - j) / m) over subsets K of
// size `take` drawn from the coordinates != skip with alpha_k >= j; returns
// false when fewer than `take` coordinates are eligible.
bool subset_capacity(const std::vector<int64_t>& alpha, int skip, int64_t j,
                     int64_t m, int take, int64_t needed) {
  std::vector<int64_t> caps;
  for (size_t k = 0; k < alpha.size(); ++k) {
    if (int(k) == skip) continue;
    if (alpha[k] >= j) caps.push_back((alpha[k] - j) / m);
  }
  if (int64_t(caps.size()) < take) return false;
  std::sort(caps.rbegin(), caps.rend());
  int64_t total = 0;
  for (int i = 0; i < take; ++i) total += caps[size_t(i)];
  return total >= needed;
}

// Is some minimal generating vector of H over a size-t subset (t >= 2)
// componentwise <= alpha?  Generators over a subset I are (m s_k + j) with
// sum s_k = r - t - floor(rj/m); one fits under alpha|_I exactly when the
// subset's capacity sum_{k in I} floor((alpha_k - j)/m) reaches that total.
bool multi_generator_below(const std::vector<int64_t>& alpha, int64_t m,
                           int64_t r) {
  int l = int(alpha.size());
  int64_t jmax = m - 1 - m / r;
  int64_t tmax = std::min<int64_t>(l, r - r / m);
  for (int64_t t = 2; t <= tmax; ++t)
    for (int64_t j = 1; j <= jmax; ++j) {
      int64_t total = r - t - (r * j) / m;
      if (total < 0) continue;
      if (subset_capacity(alpha, -1, j, m, int(t), total)) return true;
    }
  return false;
}

}  // namespace

std::vector<int64_t> gap_set_single(int64_t m, int64_t r) {
  check_pair(m, r);
  require(Int(m) * r <= (Int(1) << 22),
          "gap enumeration exceeds the supported size");
  std::vector<int64_t> gaps;
  const int64_t jmax = m - 1 - m / r;
  for (int64_t j = 1; j <= jmax; ++j) {
    const int64_t kmax = r - 2 - (r * j) / m;
    for (int64_t k = 0; k <= kmax; ++k) gaps.push_back(m * k + j);
  }
  std::sort(gaps.begin(), gaps.end());
  check(std::adjacent_find(gaps.begin(), gaps.end()) == gaps.end(),
        "gap numbers repeat");
  check(Int(gaps.size()) * 2 == Int(m - 1) * (r - 1),
        "gap count differs from the genus");
  return gaps;
}

bool pole_number_single(int64_t m, int64_t r, int64_t a) {
  check_pair(m, r);
  require(a >= 0, "pole numbers are nonnegative");
  const int64_t j = a % m;
  if (j == 0) return true;  // multiples of m are always pole numbers
  if (j > m - 1 - m / r) return true;
  return a / m > r - 2 - (r * j) / m;
}

int64_t multiplicity_single(int64_t m, int64_t r) {
  check_pair(m, r);
  // genus-zero covers (m = 1 or r = 1) have no gaps at all
  int64_t gamma = (m == 1 || r == 1) ? 1 : m - m / r;
  check(gamma >= 1 && pole_number_single(m, r, gamma),
        "multiplicity must be a pole number");
  for (int64_t a = 1; a < gamma; ++a)
    check(!pole_number_single(m, r, a), "multiplicity must be least");
  return gamma;
}

GammaSet gamma_plus_multi(int64_t m, int64_t r, int l) {
  check_pair(m, r);
  require(l >= 2 && int64_t(l) <= r - r / m,
          "tuple length outside the validity range");
  GammaSet gs;
  gs.m = m;
  gs.r = r;
  gs.l = l;
  const int64_t jmax = m - 1 - m / r;
  std::vector<std::vector<int64_t>> comps;
  std::vector<int64_t> cur;
  for (int64_t j = 1; j <= jmax; ++j) {
    const int64_t total = r - l - (r * j) / m;
    if (total < 0) continue;
    comps.clear();
    compositions(total, l, cur, comps);
    for (const auto& co : comps) {
      std::vector<int64_t> vec(co.size());
      for (size_t i = 0; i < co.size(); ++i) vec[i] = m * co[i] + j;
      gs.vectors.push_back(std::move(vec));
      require(gs.vectors.size() <= (size_t(1) << 20),
              "generator enumeration exceeds the supported size");
    }
  }
  std::sort(gs.vectors.begin(), gs.vectors.end());
  check(std::adjacent_find(gs.vectors.begin(), gs.vectors.end()) ==
            gs.vectors.end(),
        "generating vectors repeat");
  return gs;
}

bool semigroup_member(const std::vector<int64_t>& alpha, int64_t m, int64_t r,
                      int64_t q) {
  check_pair(m, r);
  const int l = int(alpha.size());
  require(l >= 1, "tuples must have at least one coordinate");
  require(int64_t(l) < q, "tuple length must stay below the field size");
  for (int64_t a : alpha) require(a >= 0, "tuple entries are nonnegative");

  // alpha is a least upper bound of generators inside the box [0, alpha]
  // exactly when every coordinate is hit by some boxed generator; zero
  // coordinates are hit by the zero pole number.
  const int64_t jmax = m - 1 - m / r;
  const int64_t tmax = std::min<int64_t>(l, r - r / m);
  for (int i = 0; i < l; ++i) {
    if (alpha[size_t(i)] == 0) continue;
    if (pole_number_single(m, r, alpha[size_t(i)])) continue;
    // a generator over a subset through coordinate i with exact value
    // alpha_i determines j = alpha_i mod m and its own share s_i.
    const int64_t j = alpha[size_t(i)] % m;
    bool witnessed = false;
    if (j >= 1 && j <= jmax) {
      const int64_t si = alpha[size_t(i)] / m;
      for (int64_t t = 2; t <= tmax && !witnessed; ++t) {
        const int64_t rest = r - t - (r * j) / m - si;
        if (rest < 0) continue;
        witnessed = subset_capacity(alpha, i, j, m, int(t) - 1, rest);
      }
    }
    if (!witnessed) return false;
  }
  return true;
}

bool nonspecial_by_semigroup(const curves::Curve& c,
                             const curves::Divisor& A) {
  const auto* km = std::get_if<curves::KummerModel>(&c.model());
  require(km != nullptr,
          "the semigroup certificate applies to radical models only");
  const int64_t m = km->m;
  const int64_t r = int64_t(km->roots.size());
  require(std::gcd(m, r) == 1,
          "radical model is not totally ramified at infinity");
  require(A.degree() == c.genus(),
          "the semigroup certificate applies to divisors of degree g");

  const auto& F = c.field();
  std::vector<int64_t> alpha;
  for (const auto& [P, mult] : A.coeffs) {
    require(mult > 0, "the semigroup certificate needs an effective divisor");
    require(P.kind == curves::Place::Kind::Affine && P.degree == 1 &&
                F->from_index(P.ix).is_zero(),
            "support must consist of ramified rational places");
    bool branch = false;
    for (const auto& root : km->roots)
      if (F->from_index(P.iy) == root) branch = true;
    require(branch, "support must consist of ramified rational places");
    alpha.push_back(int64_t(mult));
  }
  require(int64_t(alpha.size()) < F->q(),
          "support size must stay below the field size");

  const int64_t gamma = m - m / r;  // least nonzero single-place pole number
  for (int64_t a : alpha)
    if (a >= gamma) return false;
  return !multi_generator_below(alpha, m, r);
}

FloorReport floor_identities(int64_t r, int64_t m) {
  check_pair(m, r);
  FloorReport rep;
  rep.r = r;
  rep.m = m;
  rep.t = r % m;

  std::set<int64_t> jumps;
  for (int64_t k = 1; k <= rep.t - 1; ++k) jumps.insert(k * m / rep.t);
  check(int64_t(jumps.size()) == std::max<int64_t>(rep.t - 1, 0),
        "jump positions must be distinct");
  rep.jump_count = int(jumps.size());

  for (int64_t j = 1; j <= m - 2; ++j) {
    const int64_t diff = r * (j + 1) / m - r * j / m;
    const int64_t expect = r / m + (jumps.count(j) ? 1 : 0);
    check(diff == expect, "floor difference identity fails");
  }
  if (m >= 2) {
    // the last step always completes the floor to exactly r, so it carries
    // an extra jump regardless of the jump positions
    const int64_t diff = r - r * (m - 1) / m;
    check(diff == r / m + 1, "floor difference identity fails at the top");
  }

  int64_t sum = 0;
  for (int64_t k = 1; k <= rep.t - 1; ++k) sum += k * m / rep.t;
  rep.gap_sum = sum;
  // t = 0 forces m = 1 by coprimality, making both sides vanish
  check(sum * 2 == (m - 1) * (rep.t - 1), "floor sum identity fails");
  return rep;
}

}  // namespace divforge::semigroups
