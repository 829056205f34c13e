#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revgrp/errors.hpp"

namespace revgrp {

class Group;  // group.hpp

// ---------------------------------------------------------------------------
// Arithmetic over odd prime fields F_p, 3 <= p <= 251.
// ---------------------------------------------------------------------------

bool is_prime(std::uint32_t n);
bool is_odd_prime(std::uint32_t n);

// Throws RangeError unless p is an odd prime in [3, 251].
void require_odd_prime(std::uint32_t p);

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

// Smallest generator of the multiplicative group of F_p.
std::uint32_t primitive_root(std::uint32_t p);

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients low-to-high, no trailing zeros.
// The zero polynomial has an empty coefficient vector.
// ---------------------------------------------------------------------------

struct PolyFp {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> c;  // c[i] is the coefficient of x^i

  PolyFp() = default;
  PolyFp(std::uint32_t p_, std::vector<std::uint32_t> coeffs);

  bool is_zero() const { return c.empty(); }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  std::uint32_t constant_term() const { return c.empty() ? 0 : c[0]; }

  bool operator==(const PolyFp& o) const { return p == o.p && c == o.c; }

  // Human form, highest degree first: "x^2+3x+1", "x+4", "2", "0".
  std::string str() const;
};

PolyFp poly_add(const PolyFp& a, const PolyFp& b);
PolyFp poly_sub(const PolyFp& a, const PolyFp& b);
PolyFp poly_mul(const PolyFp& a, const PolyFp& b);
PolyFp poly_scale(const PolyFp& a, std::uint32_t k);
// Quotient and remainder; b must be nonzero.
std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b);
// True when b divides a exactly.
bool poly_divides(const PolyFp& b, const PolyFp& a);
PolyFp poly_monic(const PolyFp& a);

// Monic normalization of x^deg(f) * f(1/x): the roots are inverted with
// multiplicity. Requires f(0) != 0 (throws RangeError otherwise).
PolyFp reciprocal_poly(const PolyFp& f);

// ---------------------------------------------------------------------------
// Square matrices over F_p, row-major, entries in [0, p).
// ---------------------------------------------------------------------------

struct MatFp {
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> a;  // n*n entries, a[i*n + j]

  MatFp() = default;
  MatFp(std::uint32_t n_, std::uint32_t p_);

  static MatFp identity(std::uint32_t n, std::uint32_t p);

  std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return a[i * n + j]; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return a[i * n + j]; }

  bool operator==(const MatFp& o) const { return n == o.n && p == o.p && a == o.a; }

  // Row-major literal without the modulus: "[[2,0],[0,4]]".
  std::string str() const;
};

MatFp mat_mul(const MatFp& x, const MatFp& y);
std::uint32_t mat_det(const MatFp& x);
// Throws SingularMatrix when det == 0.
MatFp mat_inverse(const MatFp& x);

// Parses "p=7;[[2,0],[0,4]]". Entries may be any integers (reduced mod p).
// Throws ParseError for malformed text, RangeError for a bad modulus or a
// dimension outside [1, 6].
MatFp parse_matrix_literal(std::string_view text);

// ---------------------------------------------------------------------------
// Invariant factors: the canonical conjugacy invariant. Two square matrices
// over F_p are conjugate in GL(n,p) iff their invariant factor lists are
// equal, so this replaces eigenvalue/Jordan data with exact arithmetic.
// ---------------------------------------------------------------------------

struct InvariantFactors {
  // Monic, nonconstant, f[0] | f[1] | ... | f[k-1]; degrees sum to n and the
  // product is the characteristic polynomial.
  std::vector<PolyFp> factors;

  bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
};

// Smith-form diagonalization of xI - A over F_p[x]. Pivot selection is the
// nonzero entry of minimal degree, ties broken row-major, so the elimination
// is deterministic. Accepts any square A (group use requires det != 0).
InvariantFactors invariant_factors(const MatFp& A);

// A conjugate to A^{-1}, decided as invariant_factors(A) == invariant_factors(A^{-1}).
bool reversible_by_factor_equality(const MatFp& A);
// A conjugate to A^{-1}, decided as "every invariant factor is self-reciprocal"
// (the root multiset of each factor is closed under inversion).
bool reversible_by_self_reciprocal(const MatFp& A);
// Computes both routes, insists they agree, and returns the verdict.
// Throws SingularMatrix when det A == 0.
bool is_reversible_matrix(const MatFp& A);

// ---------------------------------------------------------------------------
// GL(n,p) / SL(n,p) construction support.
// ---------------------------------------------------------------------------

// prod_{i<n} (p^n - p^i), saturated to UINT64_MAX on overflow.
std::uint64_t gl_order(std::uint32_t n, std::uint32_t p);
// gl_order / (p - 1), saturated.
std::uint64_t sl_order(std::uint32_t n, std::uint32_t p);

// Transvections I + E_ij (row-major over i != j) generate SL(n,p); adding
// diag(g,1,...,1) for a primitive root g extends them to GL(n,p).
std::vector<MatFp> gl_generators(std::uint32_t n, std::uint32_t p);
std::vector<MatFp> sl_generators(std::uint32_t n, std::uint32_t p);

// Fully enumerated groups with matrix carriers (see group.hpp).
Group gl_group(std::uint32_t n, std::uint32_t p, std::uint64_t limit);
Group sl_group(std::uint32_t n, std::uint32_t p, std::uint64_t limit);

}  // namespace revgrp
