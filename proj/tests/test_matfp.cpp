#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "revgrp/errors.hpp"
#include "revgrp/group.hpp"
#include "revgrp/matfp.hpp"

using namespace revgrp;

namespace {

// Independent characteristic polynomial oracle: cofactor expansion of
// det(xI - A) for n <= 3, written directly against the entries.
PolyFp charpoly_oracle(const MatFp& A) {
  const std::uint32_t p = A.p;
  auto mono = [&](std::uint32_t c0, bool with_x) {
    std::vector<std::uint32_t> c{c0};
    if (with_x) c.push_back(1);
    return PolyFp(p, std::move(c));
  };
  auto neg = [&](std::uint32_t v) { return (p - v % p) % p; };
  auto diag = [&](std::uint32_t i) { return mono(neg(A.at(i, i)), true); };  // x - a_ii
  auto entry = [&](std::uint32_t i, std::uint32_t j) { return mono(neg(A.at(i, j)), false); };

  if (A.n == 1) return diag(0);
  if (A.n == 2)
    return poly_sub(poly_mul(diag(0), diag(1)), poly_mul(entry(0, 1), entry(1, 0)));
  REQUIRE(A.n == 3);
  PolyFp m00 = poly_sub(poly_mul(diag(1), diag(2)), poly_mul(entry(1, 2), entry(2, 1)));
  PolyFp m01 = poly_sub(poly_mul(entry(1, 0), diag(2)), poly_mul(entry(1, 2), entry(2, 0)));
  PolyFp m02 = poly_sub(poly_mul(entry(1, 0), entry(2, 1)), poly_mul(diag(1), entry(2, 0)));
  PolyFp out = poly_mul(diag(0), m00);
  out = poly_sub(out, poly_mul(entry(0, 1), m01));
  return poly_add(out, poly_mul(entry(0, 2), m02));
}

MatFp companion(const PolyFp& f) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.degree());
  MatFp c(n, f.p);
  for (std::uint32_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
  for (std::uint32_t i = 0; i < n; ++i) c.at(i, n - 1) = (f.p - f.c[i]) % f.p;
  return c;
}

MatFp random_matrix(std::uint32_t n, std::uint32_t p, std::mt19937_64& rng) {
  MatFp m(n, p);
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  for (auto& e : m.a) e = dist(rng);
  return m;
}

MatFp random_invertible(std::uint32_t n, std::uint32_t p, std::mt19937_64& rng) {
  for (;;) {
    MatFp m = random_matrix(n, p, rng);
    if (mat_det(m) != 0) return m;
  }
}

// All invertible 2x2 matrices mod p by brute enumeration.
std::vector<MatFp> all_gl2(std::uint32_t p) {
  std::vector<MatFp> out;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          if ((a * d + p * p - b * c) % p == 0) continue;
          MatFp m(2, p);
          m.at(0, 0) = a;
          m.at(0, 1) = b;
          m.at(1, 0) = c;
          m.at(1, 1) = d;
          out.push_back(std::move(m));
        }
  return out;
}

bool brute_conjugate(const std::vector<MatFp>& group, const MatFp& a, const MatFp& b) {
  for (const MatFp& s : group)
    if (mat_mul(mat_mul(mat_inverse(s), a), s) == b) return true;
  return false;
}

MatFp diag2(std::uint32_t p, std::uint32_t x, std::uint32_t y) {
  MatFp m(2, p);
  m.at(0, 0) = x;
  m.at(1, 1) = y;
  return m;
}

}  // namespace

TEST_CASE("modular arithmetic") {
  CHECK(is_odd_prime(3));
  CHECK(is_odd_prime(251));
  CHECK(!is_odd_prime(2));
  CHECK(!is_odd_prime(9));
  CHECK(!is_odd_prime(1));
  for (std::uint32_t p : {3u, 7u, 11u})
    for (std::uint32_t a = 1; a < p; ++a)
      CHECK(a * mod_inverse(a, p) % p == 1);
  // Smallest generators, verified by brute force.
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    std::uint32_t g = primitive_root(p);
    for (std::uint32_t c = 2; c < g; ++c) {
      std::uint32_t x = c, ord = 1;
      while (x != 1) { x = x * c % p; ++ord; }
      CHECK(ord < p - 1);  // everything below g is non-primitive
    }
    std::uint32_t x = g, ord = 1;
    while (x != 1) { x = x * g % p; ++ord; }
    CHECK(ord == p - 1);
  }
}

TEST_CASE("polynomial arithmetic") {
  PolyFp f(7, {1, 3, 1});  // x^2+3x+1
  CHECK(f.str() == "x^2+3x+1");
  CHECK(PolyFp(7, {4, 1}).str() == "x+4");
  CHECK(PolyFp(7, {2}).str() == "2");
  CHECK(PolyFp(7, {}).str() == "0");
  CHECK(PolyFp(7, {3, 0, 0}).degree() == 0);  // trailing zeros trimmed

  PolyFp a(5, {1, 2, 3});
  PolyFp b(5, {4, 1});
  auto [q, r] = poly_divmod(a, b);
  CHECK(poly_add(poly_mul(q, b), r) == a);
  CHECK(r.degree() < b.degree());
  CHECK(poly_divides(b, poly_mul(b, a)));
  CHECK(!poly_divides(PolyFp(5, {1, 1}), PolyFp(5, {1, 0, 1})));  // x+1 | x^2+1 fails mod 5
  CHECK(poly_monic(PolyFp(5, {2, 4})).c == std::vector<std::uint32_t>{3, 1});
}

TEST_CASE("reciprocal polynomials") {
  CHECK(reciprocal_poly(PolyFp(7, {1, 1})) == PolyFp(7, {1, 1}));        // x+1
  CHECK(reciprocal_poly(PolyFp(7, {1, 3, 1})) == PolyFp(7, {1, 3, 1}));  // palindromic
  // x-2 over F7: roots invert to 2^{-1} = 4, so the reciprocal is x-4 = x+3.
  CHECK(reciprocal_poly(PolyFp(7, {5, 1})) == PolyFp(7, {3, 1}));
  CHECK_THROWS_AS(reciprocal_poly(PolyFp(7, {0, 1})), RangeError);
  CHECK_THROWS_AS(reciprocal_poly(PolyFp(7, {})), RangeError);

  // Involution on monic polynomials with nonzero constant term.
  std::mt19937_64 rng(99);
  for (int t = 0; t < 2000; ++t) {
    std::uint32_t p = t % 2 ? 5 : 11;
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    std::vector<std::uint32_t> c(1 + t % 5, 0);
    c[0] = 1 + dist(rng) % (p - 1);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = dist(rng);
    c.push_back(1);  // monic
    PolyFp f(p, std::move(c));
    CHECK(reciprocal_poly(reciprocal_poly(f)) == f);
  }
}

TEST_CASE("matrix arithmetic") {
  MatFp i2 = MatFp::identity(2, 5);
  CHECK(mat_det(i2) == 1);
  CHECK(mat_mul(i2, i2) == i2);
  CHECK(i2.str() == "[[1,0],[0,1]]");

  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    MatFp m = random_invertible(3, 7, rng);
    CHECK(mat_mul(m, mat_inverse(m)) == MatFp::identity(3, 7));
    CHECK(mat_mul(mat_inverse(m), m) == MatFp::identity(3, 7));
  }
  MatFp z(2, 5);
  CHECK(mat_det(z) == 0);
  CHECK_THROWS_AS(mat_inverse(z), SingularMatrix);
  // det is multiplicative.
  for (int t = 0; t < 500; ++t) {
    MatFp a = random_matrix(3, 5, rng), b = random_matrix(3, 5, rng);
    CHECK(mat_det(mat_mul(a, b)) == mat_det(a) * mat_det(b) % 5);
  }
}

TEST_CASE("matrix literal parsing") {
  MatFp m = parse_matrix_literal("p=7;[[2,0],[0,4]]");
  CHECK(m.p == 7);
  CHECK(m.n == 2);
  CHECK(m.at(0, 0) == 2);
  CHECK(m.at(1, 1) == 4);
  MatFp r = parse_matrix_literal(" p = 11 ; [[-1, 12], [22, 1]]");
  CHECK(r.at(0, 0) == 10);  // entries reduce mod p
  CHECK(r.at(0, 1) == 1);
  CHECK(r.at(1, 0) == 0);

  CHECK_THROWS_AS(parse_matrix_literal("p=4;[[1]]"), RangeError);
  CHECK_THROWS_AS(parse_matrix_literal("p=9;[[1]]"), RangeError);
  CHECK_THROWS_AS(parse_matrix_literal("p=7;[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(parse_matrix_literal("p=7;[[1,2]]junk"), ParseError);
  CHECK_THROWS_AS(parse_matrix_literal("[[1,2],[3,4]]"), ParseError);
  CHECK_THROWS_AS(parse_matrix_literal("p=7;[[1,1,1],[1,1,1],[1,1,1],[1,1,1]]"), ParseError);
}

TEST_CASE("invariant factors: pinned values") {
  // Scalar matrix: n copies of x-1.
  InvariantFactors f = invariant_factors(MatFp::identity(2, 3));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PolyFp(3, {2, 1}));  // x-1 = x+2 mod 3
  CHECK(f.factors[1] == PolyFp(3, {2, 1}));

  // Companion matrices are cyclic: a single factor equal to f.
  PolyFp g1(3, {1, 0, 1});  // x^2+1
  InvariantFactors fc = invariant_factors(companion(g1));
  REQUIRE(fc.factors.size() == 1);
  CHECK(fc.factors[0] == g1);
  PolyFp g2(5, {1, 2, 0, 1});  // x^3+2x+1
  fc = invariant_factors(companion(g2));
  REQUIRE(fc.factors.size() == 1);
  CHECK(fc.factors[0] == g2);

  // diag(1,2) over F5: distinct eigenvalues, one factor (x-1)(x-2) = x^2+2x+2.
  InvariantFactors fd = invariant_factors(diag2(5, 1, 2));
  REQUIRE(fd.factors.size() == 1);
  CHECK(fd.factors[0] == PolyFp(5, {2, 2, 1}));
}

TEST_CASE("invariant factors: class function with characteristic polynomial product") {
  const std::pair<std::uint32_t, std::uint32_t> cases[] = {{2, 3}, {2, 5}, {3, 3}};
  std::mt19937_64 rng(2024);
  for (auto [n, p] : cases) {
    for (int t = 0; t < 10'000; ++t) {
      MatFp a = random_matrix(n, p, rng);
      MatFp s = random_invertible(n, p, rng);
      MatFp conj = mat_mul(mat_mul(mat_inverse(s), a), s);
      InvariantFactors fa = invariant_factors(a);
      REQUIRE(fa == invariant_factors(conj));
      if (t < 500) {
        // Divisibility chain and product = characteristic polynomial.
        PolyFp prod(p, {1});
        for (std::size_t k = 0; k < fa.factors.size(); ++k) {
          CHECK(fa.factors[k].is_monic());
          if (k + 1 < fa.factors.size()) CHECK(poly_divides(fa.factors[k], fa.factors[k + 1]));
          prod = poly_mul(prod, fa.factors[k]);
        }
        CHECK(prod == charpoly_oracle(a));
      }
    }
  }
}

TEST_CASE("invariant factor equality decides conjugacy in GL(2,3)") {
  std::vector<MatFp> group = all_gl2(3);
  REQUIRE(group.size() == 48);
  std::vector<InvariantFactors> fs;
  fs.reserve(48);
  for (const auto& m : group) fs.push_back(invariant_factors(m));
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = 0; j < group.size(); ++j) {
      bool same_factors = fs[i] == fs[j];
      bool conjugate = brute_conjugate(group, group[i], group[j]);
      REQUIRE(same_factors == conjugate);
    }
}

TEST_CASE("matrix reversibility") {
  CHECK(is_reversible_matrix(MatFp::identity(3, 7)));
  // 2 and 4 are mutually inverse mod 7: eigenvalues pair up.
  CHECK(is_reversible_matrix(diag2(7, 2, 4)));
  // diag(2,2)^{-1} = diag(4,4) has a different characteristic polynomial.
  CHECK(!is_reversible_matrix(diag2(7, 2, 2)));
  CHECK_THROWS_AS(is_reversible_matrix(MatFp(2, 7)), SingularMatrix);

  // Brute-force conjugacy oracle over all of GL(2,7).
  std::vector<MatFp> gl27 = all_gl2(7);
  REQUIRE(gl27.size() == 2016);
  auto brute_reversible = [&](const MatFp& a) {
    return brute_conjugate(gl27, a, mat_inverse(a));
  };
  CHECK(brute_reversible(diag2(7, 2, 4)));
  CHECK(!brute_reversible(diag2(7, 2, 2)));
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> pick(0, gl27.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const MatFp& a = gl27[pick(rng)];
    CHECK(is_reversible_matrix(a) == brute_reversible(a));
  }

  // The two routes agree everywhere on GL(2,3).
  for (const MatFp& a : all_gl2(3))
    CHECK(reversible_by_factor_equality(a) == reversible_by_self_reciprocal(a));
}

TEST_CASE("gl and sl orders") {
  CHECK(gl_order(1, 5) == 4);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(2, 5) == 480);
  CHECK(gl_order(3, 3) == 11232);
  CHECK(sl_order(2, 3) == 24);
  CHECK(sl_order(2, 5) == 120);
  CHECK(sl_order(1, 7) == 1);
  CHECK(gl_order(6, 251) == UINT64_MAX);  // saturated

  // Enumeration oracles.
  std::uint32_t count_gl23 = 0, count_sl23 = 0;
  for (const auto& m : all_gl2(3)) {
    ++count_gl23;
    if (mat_det(m) == 1) ++count_sl23;
  }
  CHECK(count_gl23 == gl_order(2, 3));
  CHECK(count_sl23 == sl_order(2, 3));

  std::uint32_t count_sl25 = 0;
  for (const auto& m : all_gl2(5))
    if (mat_det(m) == 1) ++count_sl25;
  CHECK(count_sl25 == sl_order(2, 5));

  // 3x3 over F3: all 3^9 matrices.
  std::uint32_t count_gl33 = 0;
  for (std::uint32_t code = 0; code < 19683; ++code) {
    MatFp m(3, 3);
    std::uint32_t c = code;
    for (auto& e : m.a) {
      e = c % 3;
      c /= 3;
    }
    if (mat_det(m) != 0) ++count_gl33;
  }
  CHECK(count_gl33 == gl_order(3, 3));
}

TEST_CASE("gl and sl groups") {
  CHECK(gl_group(1, 5, 1000).order() == 4);
  CHECK(gl_group(2, 3, 1000).order() == 48);
  CHECK(sl_group(2, 3, 1000).order() == 24);
  CHECK(sl_group(1, 7, 1000).order() == 1);
  CHECK(sl_group(2, 5, 1000).order() == 120);
  CHECK_THROWS_AS(gl_group(3, 5, 1000), LimitExceeded);
}
