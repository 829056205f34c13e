#include "revgrp/matfp.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "revgrp/group.hpp"

namespace revgrp {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_odd_prime(std::uint32_t n) { return n % 2 == 1 && is_prime(n); }

void require_odd_prime(std::uint32_t p) {
  if (!is_odd_prime(p) || p < 3 || p > 251)
    throw RangeError("modulus " + std::to_string(p) +
                     " is not an odd prime in [3, 251]");
}

static std::uint32_t mod_pow(std::uint32_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t acc = 1, base = b % p;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("no inverse of 0 mod p");
  return mod_pow(a, p - 2, p);
}

std::uint32_t primitive_root(std::uint32_t p) {
  // Order of g divides p-1; g is primitive iff g^((p-1)/q) != 1 for every
  // prime q dividing p-1.
  std::vector<std::uint32_t> prime_divs;
  std::uint32_t m = p - 1;
  for (std::uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_divs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_divs.push_back(m);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : prime_divs)
      if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// ---------------------------------------------------------------------------
// PolyFp
// ---------------------------------------------------------------------------

static void poly_trim(std::vector<std::uint32_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyFp::PolyFp(std::uint32_t p_, std::vector<std::uint32_t> coeffs) : p(p_), c(std::move(coeffs)) {
  for (auto& x : c) x %= p;
  poly_trim(c);
}

std::string PolyFp::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]);
      out += 'x';
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

PolyFp poly_add(const PolyFp& a, const PolyFp& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint32_t s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
    c[i] = s % a.p;
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp poly_sub(const PolyFp& a, const PolyFp& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint32_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint32_t y = i < b.c.size() ? b.c[i] : 0;
    c[i] = (x + a.p - y) % a.p;
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return PolyFp(a.p, {});
  std::vector<std::uint32_t> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>(
          (c[i + j] + static_cast<std::uint64_t>(a.c[i]) * b.c[j]) % a.p);
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp poly_scale(const PolyFp& a, std::uint32_t k) {
  std::vector<std::uint32_t> c(a.c);
  for (auto& x : c) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * k % a.p);
  return PolyFp(a.p, std::move(c));
}

std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const std::uint32_t p = a.p;
  std::vector<std::uint32_t> rem(a.c);
  int db = b.degree();
  std::uint32_t lead_inv = mod_inverse(b.c[db], p);
  std::vector<std::uint32_t> quot;
  if (static_cast<int>(rem.size()) - 1 >= db)
    quot.assign(rem.size() - db, 0);
  for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
    if (rem[d] == 0) continue;
    std::uint32_t q = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(rem[d]) * lead_inv % p);
    quot[d - db] = q;
    for (int j = 0; j <= db; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(q) * b.c[j] % p;
      rem[d - db + j] = static_cast<std::uint32_t>((rem[d - db + j] + p - sub) % p);
    }
  }
  poly_trim(rem);
  return {PolyFp(p, std::move(quot)), PolyFp(p, std::move(rem))};
}

bool poly_divides(const PolyFp& b, const PolyFp& a) {
  if (a.is_zero()) return true;
  if (b.is_zero()) return false;
  return poly_divmod(a, b).second.is_zero();
}

PolyFp poly_monic(const PolyFp& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return poly_scale(a, mod_inverse(a.c.back(), a.p));
}

PolyFp reciprocal_poly(const PolyFp& f) {
  if (f.constant_term() == 0)
    throw RangeError("reciprocal polynomial requires a nonzero constant term");
  std::vector<std::uint32_t> rev(f.c.rbegin(), f.c.rend());
  return poly_monic(PolyFp(f.p, std::move(rev)));
}

// ---------------------------------------------------------------------------
// MatFp
// ---------------------------------------------------------------------------

MatFp::MatFp(std::uint32_t n_, std::uint32_t p_) : n(n_), p(p_), a(static_cast<std::size_t>(n_) * n_, 0) {}

MatFp MatFp::identity(std::uint32_t n, std::uint32_t p) {
  MatFp m(n, p);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::string MatFp::str() const {
  std::string out = "[";
  for (std::uint32_t i = 0; i < n; ++i) {
    out += i ? ",[" : "[";
    for (std::uint32_t j = 0; j < n; ++j) {
      if (j) out += ',';
      out += std::to_string(at(i, j));
    }
    out += ']';
  }
  out += ']';
  return out;
}

MatFp mat_mul(const MatFp& x, const MatFp& y) {
  MatFp z(x.n, x.p);
  for (std::uint32_t i = 0; i < x.n; ++i)
    for (std::uint32_t k = 0; k < x.n; ++k) {
      std::uint64_t acc = 0;
      for (std::uint32_t j = 0; j < x.n; ++j)
        acc += static_cast<std::uint64_t>(x.at(i, j)) * y.at(j, k);
      z.at(i, k) = static_cast<std::uint32_t>(acc % x.p);
    }
  return z;
}

std::uint32_t mat_det(const MatFp& x) {
  MatFp m = x;
  const std::uint32_t n = m.n, p = m.p;
  std::uint64_t det = 1;
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && m.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::uint32_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = det * (p - 1) % p;
    }
    det = det * m.at(col, col) % p;
    std::uint32_t inv = mod_inverse(m.at(col, col), p);
    for (std::uint32_t i = col + 1; i < n; ++i) {
      if (m.at(i, col) == 0) continue;
      std::uint32_t f = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(m.at(i, col)) * inv % p);
      for (std::uint32_t j = col; j < n; ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(f) * m.at(col, j) % p;
        m.at(i, j) = static_cast<std::uint32_t>((m.at(i, j) + p - sub) % p);
      }
    }
  }
  return static_cast<std::uint32_t>(det);
}

MatFp mat_inverse(const MatFp& x) {
  const std::uint32_t n = x.n, p = x.p;
  MatFp m = x;
  MatFp inv = MatFp::identity(n, p);
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && m.at(piv, col) == 0) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular mod " + std::to_string(p));
    if (piv != col)
      for (std::uint32_t j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    std::uint32_t s = mod_inverse(m.at(col, col), p);
    for (std::uint32_t j = 0; j < n; ++j) {
      m.at(col, j) = static_cast<std::uint32_t>(static_cast<std::uint64_t>(m.at(col, j)) * s % p);
      inv.at(col, j) = static_cast<std::uint32_t>(static_cast<std::uint64_t>(inv.at(col, j)) * s % p);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == col || m.at(i, col) == 0) continue;
      std::uint32_t f = m.at(i, col);
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(f) * m.at(col, j) % p;
        m.at(i, j) = static_cast<std::uint32_t>((m.at(i, j) + p - sub) % p);
        sub = static_cast<std::uint64_t>(f) * inv.at(col, j) % p;
        inv.at(i, j) = static_cast<std::uint32_t>((inv.at(i, j) + p - sub) % p);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Matrix literal parsing: p=7;[[2,0],[0,4]]
// ---------------------------------------------------------------------------

namespace {

struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "' in " + what, pos);
  }
  long long integer(const char* what) {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) { neg = s[pos] == '-'; ++pos; }
    long long v = 0;
    bool any = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1'000'000'000'000LL) throw ParseError(std::string("integer too large in ") + what, start);
      ++pos;
      any = true;
    }
    if (!any) throw ParseError(std::string("expected integer in ") + what, start);
    return neg ? -v : v;
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }
};

}  // namespace

MatFp parse_matrix_literal(std::string_view text) {
  Scanner sc{text};
  sc.skip_ws();
  if (sc.pos + 1 >= text.size() || text[sc.pos] != 'p')
    throw ParseError("matrix literal must start with p=<modulus>", sc.pos);
  ++sc.pos;
  sc.expect('=', "matrix literal");
  long long pv = sc.integer("modulus");
  if (pv < 0) throw ParseError("negative modulus", 0);
  require_odd_prime(static_cast<std::uint32_t>(pv));
  const std::uint32_t p = static_cast<std::uint32_t>(pv);
  sc.expect(';', "matrix literal");
  sc.expect('[', "matrix literal");
  std::vector<std::vector<std::uint32_t>> rows;
  do {
    sc.expect('[', "matrix row");
    std::vector<std::uint32_t> row;
    do {
      long long v = sc.integer("matrix entry");
      row.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
    } while (sc.eat(','));
    sc.expect(']', "matrix row");
    rows.push_back(std::move(row));
  } while (sc.eat(','));
  sc.expect(']', "matrix literal");
  if (!sc.done()) throw ParseError("trailing characters after matrix literal", sc.pos);

  const std::size_t n = rows.size();
  if (n < 1 || n > 6)
    throw RangeError("matrix dimension " + std::to_string(n) + " outside [1, 6]");
  for (const auto& r : rows)
    if (r.size() != n)
      throw ParseError("matrix rows have unequal lengths", 0);

  MatFp m(static_cast<std::uint32_t>(n), p);
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// ---------------------------------------------------------------------------
// Invariant factors via Smith-form elimination of xI - A over F_p[x]
// ---------------------------------------------------------------------------

InvariantFactors invariant_factors(const MatFp& A) {
  const std::uint32_t n = A.n, p = A.p;
  std::vector<PolyFp> m(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> c{(p - A.at(i, j)) % p};
      if (i == j) c.push_back(1);
      m[i * n + j] = PolyFp(p, std::move(c));
    }
  auto at = [&](std::uint32_t i, std::uint32_t j) -> PolyFp& { return m[i * n + j]; };

  for (std::uint32_t t = 0; t < n; ++t) {
    for (;;) {
      // Pivot: minimal-degree nonzero entry of the trailing submatrix,
      // ties broken row-major.
      std::uint32_t pi = n, pj = n;
      int best = -1;
      for (std::uint32_t i = t; i < n; ++i)
        for (std::uint32_t j = t; j < n; ++j) {
          const PolyFp& e = at(i, j);
          if (e.is_zero()) continue;
          if (best < 0 || e.degree() < best) {
            best = e.degree();
            pi = i;
            pj = j;
          }
        }
      if (best < 0)
        throw std::logic_error("xI - A lost full rank during elimination");
      if (pi != t)
        for (std::uint32_t j = t; j < n; ++j) std::swap(at(t, j), at(pi, j));
      if (pj != t)
        for (std::uint32_t i = t; i < n; ++i) std::swap(at(i, t), at(i, pj));

      bool dirty = false;
      for (std::uint32_t i = t + 1; i < n; ++i) {
        if (at(i, t).is_zero()) continue;
        auto [q, r] = poly_divmod(at(i, t), at(t, t));
        for (std::uint32_t j = t; j < n; ++j)
          at(i, j) = poly_sub(at(i, j), poly_mul(q, at(t, j)));
        if (!r.is_zero()) dirty = true;
      }
      for (std::uint32_t j = t + 1; j < n; ++j) {
        if (at(t, j).is_zero()) continue;
        auto [q, r] = poly_divmod(at(t, j), at(t, t));
        for (std::uint32_t i = t; i < n; ++i)
          at(i, j) = poly_sub(at(i, j), poly_mul(q, at(i, t)));
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;

      // Pivot must divide the whole trailing submatrix; pull a bad row up
      // and re-eliminate if not.
      bool fixed = true;
      for (std::uint32_t i = t + 1; i < n && fixed; ++i)
        for (std::uint32_t j = t + 1; j < n && fixed; ++j) {
          if (poly_divides(at(t, t), at(i, j))) continue;
          for (std::uint32_t jj = t; jj < n; ++jj)
            at(t, jj) = poly_add(at(t, jj), at(i, jj));
          fixed = false;
        }
      if (fixed) break;
    }
    at(t, t) = poly_monic(at(t, t));
  }

  InvariantFactors out;
  for (std::uint32_t t = 0; t < n; ++t)
    if (at(t, t).degree() > 0) out.factors.push_back(at(t, t));

  std::uint32_t deg_sum = 0;
  for (std::size_t k = 0; k < out.factors.size(); ++k) {
    deg_sum += static_cast<std::uint32_t>(out.factors[k].degree());
    if (k + 1 < out.factors.size() && !poly_divides(out.factors[k], out.factors[k + 1]))
      throw std::logic_error("invariant factors do not form a divisibility chain");
  }
  if (deg_sum != n) throw std::logic_error("invariant factor degrees do not sum to n");
  return out;
}

bool reversible_by_factor_equality(const MatFp& A) {
  return invariant_factors(A) == invariant_factors(mat_inverse(A));
}

bool reversible_by_self_reciprocal(const MatFp& A) {
  InvariantFactors f = invariant_factors(A);
  for (const auto& fac : f.factors)
    if (reciprocal_poly(fac) != fac) return false;
  return true;
}

bool is_reversible_matrix(const MatFp& A) {
  if (mat_det(A) == 0)
    throw SingularMatrix("reversibility is defined for invertible matrices only");
  bool via_equality = reversible_by_factor_equality(A);
  bool via_reciprocal = reversible_by_self_reciprocal(A);
  if (via_equality != via_reciprocal)
    throw std::logic_error("reversibility routes disagree on " + A.str());
  return via_equality;
}

// ---------------------------------------------------------------------------
// GL / SL
// ---------------------------------------------------------------------------

std::uint64_t gl_order(std::uint32_t n, std::uint32_t p) {
  unsigned __int128 acc = 1;
  std::uint64_t pn = 1;
  for (std::uint32_t i = 0; i < n; ++i) pn *= p;  // p <= 251, n <= 6: fits
  std::uint64_t pi = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc *= (pn - pi);
    if (acc > UINT64_MAX) return UINT64_MAX;
    pi *= p;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t sl_order(std::uint32_t n, std::uint32_t p) {
  // (p^n - 1)/(p - 1) = 1 + p + ... + p^{n-1}, then the remaining factors.
  unsigned __int128 acc = 0;
  std::uint64_t pw = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc += pw;
    pw *= p;
  }
  std::uint64_t pn = pw;
  std::uint64_t pi = p;
  for (std::uint32_t i = 1; i < n; ++i) {
    acc *= (pn - pi);
    if (acc > UINT64_MAX) return UINT64_MAX;
    pi *= p;
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<MatFp> sl_generators(std::uint32_t n, std::uint32_t p) {
  std::vector<MatFp> gens;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      MatFp t = MatFp::identity(n, p);
      t.at(i, j) = 1;
      gens.push_back(std::move(t));
    }
  return gens;
}

std::vector<MatFp> gl_generators(std::uint32_t n, std::uint32_t p) {
  std::vector<MatFp> gens;
  MatFp d = MatFp::identity(n, p);
  d.at(0, 0) = primitive_root(p);
  gens.push_back(std::move(d));
  auto trans = sl_generators(n, p);
  gens.insert(gens.end(), trans.begin(), trans.end());
  return gens;
}

Group gl_group(std::uint32_t n, std::uint32_t p, std::uint64_t limit) {
  return build_group("GL(" + std::to_string(n) + "," + std::to_string(p) + ")", limit);
}

Group sl_group(std::uint32_t n, std::uint32_t p, std::uint64_t limit) {
  return build_group("SL(" + std::to_string(n) + "," + std::to_string(p) + ")", limit);
}

}  // namespace revgrp
