#include "revgrp/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <string>

#include "revgrp/matfp.hpp"

namespace revgrp {

// ---------------------------------------------------------------------------
// Permutation words
// ---------------------------------------------------------------------------

Perm perm_identity(std::uint32_t degree) {
  Perm p(degree);
  for (std::uint32_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

bool is_permutation_word(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  for (auto img : a) {
    if (img >= a.size() || seen[img]) return false;
    seen[img] = true;
  }
  return true;
}

std::string perm_cycle_string(const Perm& a, std::uint32_t degree) {
  std::string out;
  std::vector<bool> done(degree, false);
  for (std::uint32_t s = 0; s < degree; ++s) {
    if (done[s] || a[s] == s) continue;
    out += '(';
    std::uint32_t x = s;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      done[x] = true;
      x = a[x];
      first = false;
    } while (x != s);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

Perm parse_perm_text(std::string_view text, std::uint32_t degree) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_point = [&]() -> std::uint32_t {
    skip_ws();
    std::size_t start = i;
    std::uint32_t v = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      ++i;
      any = true;
      if (v > 100000) break;
    }
    if (!any) throw ParseError("expected a point number", start);
    if (v < 1 || v > degree)
      throw ParseError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree), start);
    return v - 1;
  };

  skip_ws();
  if (i < text.size() && text[i] == '[') {
    ++i;
    Perm img(degree);
    std::vector<bool> seen(degree, false);
    for (std::uint32_t k = 0; k < degree; ++k) {
      if (k) {
        skip_ws();
        if (i >= text.size() || text[i] != ',') throw ParseError("expected ','", i);
        ++i;
      }
      std::uint32_t v = read_point();
      if (seen[v]) throw ParseError("image list repeats a point", i);
      seen[v] = true;
      img[k] = static_cast<std::uint8_t>(v);
    }
    skip_ws();
    if (i >= text.size() || text[i] != ']') throw ParseError("expected ']'", i);
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError("trailing characters after image list", i);
    return img;
  }

  if (i < text.size() && text[i] == '(') {
    Perm perm = perm_identity(degree);
    std::vector<bool> used(degree, false);
    while (true) {
      skip_ws();
      if (i >= text.size()) break;
      if (text[i] != '(') throw ParseError("expected '('", i);
      ++i;
      std::vector<std::uint32_t> cycle;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        std::uint32_t v = read_point();
        if (used[v]) throw ParseError("cycles are not disjoint", i);
        used[v] = true;
        cycle.push_back(v);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
      }
      if (i >= text.size()) throw ParseError("unterminated cycle", i);
      ++i;  // ')'
      for (std::size_t k = 0; k < cycle.size(); ++k)
        perm[cycle[k]] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
    }
    skip_ws();
    if (i != text.size()) throw ParseError("trailing characters after cycles", i);
    return perm;
  }

  throw ParseError("expected cycle notation or an image list", i);
}

// ---------------------------------------------------------------------------
// Spec parsing
// ---------------------------------------------------------------------------

namespace {

std::uint64_t parse_uint(std::string_view s, std::size_t pos_base, std::size_t& pos) {
  std::size_t start = pos;
  std::uint64_t v = 0;
  bool any = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
    if (v > 1'000'000'000'000ULL) throw ParseError("number too large", pos_base + start);
    ++pos;
    any = true;
  }
  if (!any) throw ParseError("expected a number", pos_base + start);
  return v;
}

std::uint64_t factorial_sat(std::uint32_t n) {
  unsigned __int128 acc = 1;
  for (std::uint32_t i = 2; i <= n; ++i) {
    acc *= i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);
  if (s.empty()) throw ParseError("empty group spec", 0);

  GroupSpec spec;
  spec.text = std::string(s);

  if (s == "Q8") {
    spec.kind = SpecKind::NamedFamily;
    spec.family = Family::Q8;
    spec.n = 8;
    return spec;
  }

  if (s.substr(0, 5) == "perm:") {
    spec.kind = SpecKind::PermGenerators;
    spec.family = Family::None;
    std::size_t pos = 5;
    std::uint64_t deg = parse_uint(s, b, pos);
    if (deg < 1 || deg > 255)
      throw RangeError("permutation degree " + std::to_string(deg) + " outside [1, 255]");
    spec.degree = static_cast<std::uint32_t>(deg);
    if (pos >= s.size() || s[pos] != ':') throw ParseError("expected ':' after degree", b + pos);
    ++pos;
    while (true) {
      if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '[' to open a generator", b + pos);
      ++pos;
      Perm gen(spec.degree);
      for (std::uint32_t k = 0; k < spec.degree; ++k) {
        if (k) {
          if (pos >= s.size() || s[pos] != ',') throw ParseError("expected ','", b + pos);
          ++pos;
        }
        std::uint64_t img = parse_uint(s, b, pos);
        if (img < 1 || img > spec.degree)
          throw RangeError("generator image " + std::to_string(img) + " outside 1.." +
                           std::to_string(spec.degree));
        gen[k] = static_cast<std::uint8_t>(img - 1);
      }
      if (pos >= s.size() || s[pos] != ']') throw ParseError("expected ']'", b + pos);
      ++pos;
      if (!is_permutation_word(gen))
        throw RangeError("generator is not a bijection of 1.." + std::to_string(spec.degree));
      spec.generators.push_back(std::move(gen));
      if (pos == s.size()) break;
      if (s[pos] != ';') throw ParseError("expected ';' between generators", b + pos);
      ++pos;
    }
    return spec;
  }

  if (s.substr(0, 7) == "cayley:") {
    spec.kind = SpecKind::CayleyTable;
    spec.family = Family::None;
    spec.table_path = std::string(s.substr(7));
    if (spec.table_path.empty()) throw ParseError("empty cayley table path", b + 7);
    return spec;
  }

  std::size_t par = s.find('(');
  if (par == std::string_view::npos || s.back() != ')')
    throw ParseError("unrecognized group spec", b);
  std::string_view name = s.substr(0, par);
  std::string_view args = s.substr(par + 1, s.size() - par - 2);

  std::vector<std::uint64_t> vals;
  {
    std::size_t pos = 0;
    while (true) {
      vals.push_back(parse_uint(args, b + par + 1, pos));
      if (pos == args.size()) break;
      if (args[pos] != ',') throw ParseError("expected ',' between parameters", b + par + 1 + pos);
      ++pos;
    }
  }

  auto one_arg = [&](Family f, std::uint64_t lo, std::uint64_t hi, const char* what) {
    if (vals.size() != 1)
      throw ParseError(std::string(name) + " takes one parameter", b + par);
    if (vals[0] < lo || vals[0] > hi)
      throw RangeError(std::string(what) + " " + std::to_string(vals[0]) + " outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
    spec.kind = SpecKind::NamedFamily;
    spec.family = f;
    spec.n = static_cast<std::uint32_t>(vals[0]);
  };

  if (name == "Sym") {
    one_arg(Family::Sym, 1, 20, "symmetric degree");
  } else if (name == "Alt") {
    one_arg(Family::Alt, 1, 20, "alternating degree");
  } else if (name == "Dih") {
    one_arg(Family::Dih, 1, 255, "dihedral parameter");
  } else if (name == "Cyclic") {
    one_arg(Family::Cyclic, 1, 255, "cyclic order");
  } else if (name == "Hyperoct") {
    one_arg(Family::Hyperoct, 1, 12, "hyperoctahedral rank");
  } else if (name == "PSL") {
    if (vals.size() != 2) throw ParseError("PSL takes two parameters", b + par);
    if (vals[0] != 2) throw RangeError("only PSL(2,p) is supported");
    if (vals[1] > 251) throw RangeError("PSL modulus outside [3, 251]");
    require_odd_prime(static_cast<std::uint32_t>(vals[1]));
    spec.kind = SpecKind::NamedFamily;
    spec.family = Family::PSL2;
    spec.n = 2;
    spec.p = static_cast<std::uint32_t>(vals[1]);
  } else if (name == "GL" || name == "SL") {
    if (vals.size() != 2) throw ParseError(std::string(name) + " takes two parameters", b + par);
    if (vals[0] < 1 || vals[0] > 6)
      throw RangeError("matrix dimension " + std::to_string(vals[0]) + " outside [1, 6]");
    if (vals[1] > 251) throw RangeError("matrix group modulus outside [3, 251]");
    require_odd_prime(static_cast<std::uint32_t>(vals[1]));
    spec.kind = SpecKind::MatrixGroup;
    spec.family = name == "GL" ? Family::GL : Family::SL;
    spec.n = static_cast<std::uint32_t>(vals[0]);
    spec.p = static_cast<std::uint32_t>(vals[1]);
  } else {
    throw ParseError("unknown group family '" + std::string(name) + "'", b);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Cayley tables
// ---------------------------------------------------------------------------

CayleyTable load_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidTable("cannot open cayley table file: " + path);
  std::uint64_t n = 0;
  if (!(in >> n) || n < 1 || n > 1'000'000)
    throw InvalidTable("bad order on the first line of " + path);
  CayleyTable t;
  t.order = static_cast<std::uint32_t>(n);
  t.table.resize(n * n);
  for (std::uint64_t k = 0; k < n * n; ++k) {
    std::uint64_t v;
    if (!(in >> v)) throw InvalidTable("truncated cayley table in " + path);
    if (v >= n) throw InvalidTable("table entry " + std::to_string(v) + " out of range");
    t.table[k] = static_cast<std::uint32_t>(v);
  }
  validate_cayley_table(t);
  return t;
}

void validate_cayley_table(const CayleyTable& t) {
  const std::uint32_t n = t.order;
  auto at = [&](std::uint32_t i, std::uint32_t j) { return t.table[static_cast<std::size_t>(i) * n + j]; };

  for (std::uint32_t j = 0; j < n; ++j)
    if (at(0, j) != j) throw InvalidTable("row 0 is not the identity row");
  for (std::uint32_t i = 0; i < n; ++i)
    if (at(i, 0) != i) throw InvalidTable("column 0 is not the identity column");

  std::vector<bool> seen(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint32_t v = at(i, j);
      if (seen[v]) throw InvalidTable("row " + std::to_string(i) + " is not a permutation");
      seen[v] = true;
    }
  }
  for (std::uint32_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t v = at(i, j);
      if (seen[v]) throw InvalidTable("column " + std::to_string(j) + " is not a permutation");
      seen[v] = true;
    }
  }

  auto check_triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      throw InvalidTable("associativity fails at (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 512) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint32_t> dist(0, n - 1);
    for (int k = 0; k < 100'000; ++k) check_triple(dist(rng), dist(rng), dist(rng));
  }
}

// ---------------------------------------------------------------------------
// Named-family generators
// ---------------------------------------------------------------------------

namespace {

Perm cycle_perm(std::uint32_t degree, std::uint32_t first, std::uint32_t last) {
  // Cycle (first first+1 ... last), fixing everything else.
  Perm p = perm_identity(degree);
  for (std::uint32_t i = first; i < last; ++i) p[i] = static_cast<std::uint8_t>(i + 1);
  p[last] = static_cast<std::uint8_t>(first);
  return p;
}

Perm transposition(std::uint32_t degree, std::uint32_t a, std::uint32_t b) {
  Perm p = perm_identity(degree);
  p[a] = static_cast<std::uint8_t>(b);
  p[b] = static_cast<std::uint8_t>(a);
  return p;
}

struct FamilyPermData {
  std::uint32_t degree;
  std::vector<Perm> gens;
  std::uint64_t expected;
};

FamilyPermData family_perm_data(const GroupSpec& spec) {
  const std::uint32_t n = spec.n;
  switch (spec.family) {
    case Family::Sym: {
      FamilyPermData d{n, {}, factorial_sat(n)};
      if (n >= 2) d.gens.push_back(transposition(n, 0, 1));
      if (n >= 3) d.gens.push_back(cycle_perm(n, 0, n - 1));
      return d;
    }
    case Family::Alt: {
      FamilyPermData d{n, {}, n >= 2 ? factorial_sat(n) / 2 : 1};
      if (n >= 3) d.gens.push_back(cycle_perm(n, 0, 2));
      if (n >= 4) {
        // The long cycle must be even: n-cycle for odd n, (n-1)-cycle else.
        d.gens.push_back(n % 2 == 1 ? cycle_perm(n, 0, n - 1) : cycle_perm(n, 1, n - 1));
      }
      return d;
    }
    case Family::Dih: {
      if (n == 1) return {2, {transposition(2, 0, 1)}, 2};
      if (n == 2) return {4, {transposition(4, 0, 1), transposition(4, 2, 3)}, 4};
      Perm rot = cycle_perm(n, 0, n - 1);
      Perm refl = perm_identity(n);
      for (std::uint32_t i = 0; i < n; ++i) refl[i] = static_cast<std::uint8_t>((n - i) % n);
      return {n, {rot, refl}, 2ULL * n};
    }
    case Family::Cyclic: {
      FamilyPermData d{n, {}, n};
      if (n >= 2) d.gens.push_back(cycle_perm(n, 0, n - 1));
      return d;
    }
    case Family::Hyperoct: {
      // Signed permutations of n coordinates on 2n points: i and n+i are the
      // two signs of coordinate i.
      std::uint32_t deg = 2 * n;
      std::vector<Perm> gens;
      gens.push_back(transposition(deg, 0, n));
      for (std::uint32_t i = 1; i < n; ++i) {
        Perm s = perm_identity(deg);
        std::swap(s[i - 1], s[i]);
        std::swap(s[n + i - 1], s[n + i]);
        gens.push_back(std::move(s));
      }
      std::uint64_t expected = factorial_sat(n);
      for (std::uint32_t i = 0; i < n && expected != UINT64_MAX; ++i) {
        if (expected > UINT64_MAX / 2) { expected = UINT64_MAX; break; }
        expected *= 2;
      }
      return {deg, std::move(gens), expected};
    }
    case Family::PSL2: {
      // Action on the projective line: points 0..p-1 are field elements,
      // point p is the point at infinity.
      const std::uint32_t p = spec.p;
      const std::uint32_t deg = p + 1;
      Perm t(deg), s(deg);
      for (std::uint32_t x = 0; x < p; ++x) t[x] = static_cast<std::uint8_t>((x + 1) % p);
      t[p] = static_cast<std::uint8_t>(p);
      s[0] = static_cast<std::uint8_t>(p);
      s[p] = 0;
      for (std::uint32_t x = 1; x < p; ++x)
        s[x] = static_cast<std::uint8_t>(p - mod_inverse(x, p));
      std::uint64_t expected = static_cast<std::uint64_t>(p) * (p - 1) * (p + 1) / 2;
      return {deg, {t, s}, expected};
    }
    default:
      throw std::logic_error("not a permutation family");
  }
}

// ---------------------------------------------------------------------------
// Q8 multiplication table: elements (axis, sign) with axes 1, i, j, k.
// ---------------------------------------------------------------------------

CayleyTable q8_table() {
  // idx = axis*2 + sign, so 0:"1" 1:"-1" 2:"i" 3:"-i" 4:"j" 5:"-j" 6:"k" 7:"-k"
  static constexpr int ax[4][4] = {
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  };
  static constexpr int neg[4][4] = {
      {0, 0, 0, 0},
      {0, 1, 0, 1},
      {0, 1, 1, 0},
      {0, 0, 1, 1},
  };
  CayleyTable t;
  t.order = 8;
  t.table.resize(64);
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      std::uint32_t a1 = a / 2, s1 = a % 2, a2 = b / 2, s2 = b % 2;
      std::uint32_t axis = ax[a1][a2];
      std::uint32_t sign = s1 ^ s2 ^ static_cast<std::uint32_t>(neg[a1][a2]);
      t.table[a * 8 + b] = axis * 2 + sign;
    }
  return t;
}

// neg[a][b]: sign of axis_a * axis_b in the quaternion units
// i*j=k j*i=-k j*k=i k*j=-i k*i=j i*k=-j i*i=j*j=k*k=-1

std::vector<Elem> greedy_table_generators(const CayleyTable& t) {
  const std::uint32_t n = t.order;
  std::vector<Elem> gens;
  std::vector<bool> in(n, false);
  std::uint32_t covered = 1;
  in[0] = true;
  while (covered < n) {
    Elem g = 0;
    while (g < n && in[g]) ++g;
    gens.push_back(g);
    std::fill(in.begin(), in.end(), false);
    in[0] = true;
    covered = 1;
    std::vector<Elem> queue{0};
    while (!queue.empty()) {
      Elem x = queue.back();
      queue.pop_back();
      for (Elem h : gens) {
        Elem y = t.table[static_cast<std::size_t>(x) * n + h];
        if (!in[y]) {
          in[y] = true;
          ++covered;
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

void compose_carriers(CarrierKind kind, std::uint32_t degree, std::uint32_t modulus,
                      std::size_t len, const std::uint8_t* a, const std::uint8_t* b,
                      std::uint8_t* out) {
  if (kind == CarrierKind::Permutation) {
    for (std::size_t i = 0; i < len; ++i) out[i] = b[a[i]];
  } else {
    const std::uint32_t n = degree;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t k = 0; k < n; ++k) {
        std::uint32_t acc = 0;
        for (std::uint32_t j = 0; j < n; ++j)
          acc += static_cast<std::uint32_t>(a[i * n + j]) * b[j * n + k];
        out[i * n + k] = static_cast<std::uint8_t>(acc % modulus);
      }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Group construction
// ---------------------------------------------------------------------------

struct GroupBuilder {
  static Group from_table(CayleyTable table, std::vector<std::string> labels,
                          std::string spec_text, std::vector<Elem> gens) {
    Group g;
    g.kind_ = CarrierKind::Table;
    g.order_ = table.order;
    g.spec_text_ = std::move(spec_text);
    g.mult_table_ = std::move(table.table);
    g.labels_ = std::move(labels);
    g.generators_ = std::move(gens);
    g.inverse_.resize(g.order_);
    for (std::uint32_t i = 0; i < g.order_; ++i) {
      for (std::uint32_t j = 0; j < g.order_; ++j)
        if (g.mult_table_[static_cast<std::size_t>(i) * g.order_ + j] == 0) {
          g.inverse_[i] = j;
          break;
        }
    }
    return g;
  }

  static Group from_closure(CarrierKind kind, std::uint32_t degree, std::uint32_t modulus,
                            const std::vector<std::vector<std::uint8_t>>& gen_carriers,
                            std::string spec_text, std::uint64_t limit,
                            std::optional<std::uint64_t> expected) {
    if (expected && *expected > limit)
      throw LimitExceeded("group of order " + std::to_string(*expected) +
                              " exceeds the element limit " + std::to_string(limit),
                          limit);

    Group g;
    g.kind_ = kind;
    g.degree_ = degree;
    g.modulus_ = modulus;
    g.spec_text_ = std::move(spec_text);
    g.carrier_len_ =
        kind == CarrierKind::Permutation ? degree : static_cast<std::size_t>(degree) * degree;
    const std::size_t len = g.carrier_len_;

    std::vector<std::uint8_t> identity(len);
    if (kind == CarrierKind::Permutation) {
      for (std::size_t i = 0; i < len; ++i) identity[i] = static_cast<std::uint8_t>(i);
    } else {
      for (std::uint32_t i = 0; i < degree; ++i) identity[i * degree + i] = 1;
    }

    auto key_of = [len](const std::uint8_t* c) {
      return std::string(reinterpret_cast<const char*>(c), len);
    };

    g.carriers_.insert(g.carriers_.end(), identity.begin(), identity.end());
    g.index_.emplace(key_of(identity.data()), 0);
    std::uint32_t count = 1;

    // Breadth-first closure: frontier level by level, new carriers within a
    // level sorted lexicographically before ids are assigned.
    std::vector<Elem> frontier{0};
    std::vector<std::uint8_t> buf(len);
    while (!frontier.empty()) {
      std::vector<std::string> fresh;
      for (Elem e : frontier) {
        const std::uint8_t* ec = g.carriers_.data() + static_cast<std::size_t>(e) * len;
        for (const auto& gen : gen_carriers) {
          compose_carriers(kind, degree, modulus, len, ec, gen.data(), buf.data());
          std::string key = key_of(buf.data());
          if (!g.index_.contains(key)) fresh.push_back(std::move(key));
        }
      }
      std::sort(fresh.begin(), fresh.end());
      fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
      frontier.clear();
      for (auto& key : fresh) {
        if (count >= limit)
          throw LimitExceeded("generator closure grew past the element limit " +
                                  std::to_string(limit),
                              limit);
        g.carriers_.insert(g.carriers_.end(), key.begin(), key.end());
        g.index_.emplace(std::move(key), count);
        frontier.push_back(count);
        ++count;
      }
    }
    g.order_ = count;

    if (expected && g.order_ != *expected)
      throw std::logic_error("closure of " + g.spec_text_ + " has order " +
                             std::to_string(g.order_) + ", expected " +
                             std::to_string(*expected));

    for (const auto& gen : gen_carriers) {
      auto it = g.index_.find(key_of(gen.data()));
      if (it == g.index_.end()) throw std::logic_error("generator missing from closure");
      g.generators_.push_back(it->second);
    }

    g.inverse_.resize(g.order_);
    for (std::uint32_t i = 0; i < g.order_; ++i) {
      const std::uint8_t* c = g.carriers_.data() + static_cast<std::size_t>(i) * len;
      if (kind == CarrierKind::Permutation) {
        for (std::size_t k = 0; k < len; ++k) buf[c[k]] = static_cast<std::uint8_t>(k);
      } else {
        MatFp m(degree, modulus);
        for (std::size_t k = 0; k < len; ++k) m.a[k] = c[k];
        MatFp inv = mat_inverse(m);
        for (std::size_t k = 0; k < len; ++k) buf[k] = static_cast<std::uint8_t>(inv.a[k]);
      }
      auto it = g.index_.find(key_of(buf.data()));
      if (it == g.index_.end()) throw std::logic_error("inverse missing from closure");
      g.inverse_[i] = it->second;
    }

    if (g.order_ <= kMultTableCutoff) {
      g.mult_table_.resize(static_cast<std::size_t>(g.order_) * g.order_);
      for (std::uint32_t a = 0; a < g.order_; ++a) {
        const std::uint8_t* ac = g.carriers_.data() + static_cast<std::size_t>(a) * len;
        for (std::uint32_t b2 = 0; b2 < g.order_; ++b2) {
          compose_carriers(kind, degree, modulus, len, ac,
                           g.carriers_.data() + static_cast<std::size_t>(b2) * len, buf.data());
          auto it = g.index_.find(key_of(buf.data()));
          g.mult_table_[static_cast<std::size_t>(a) * g.order_ + b2] = it->second;
        }
      }
    }
    return g;
  }
};

Group build_group(const GroupSpec& spec, std::uint64_t limit) {
  switch (spec.kind) {
    case SpecKind::NamedFamily: {
      if (spec.family == Family::Q8) {
        if (8 > limit) throw LimitExceeded("Q8 exceeds the element limit", limit);
        return GroupBuilder::from_table(q8_table(),
                                        {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, spec.text,
                                        {2, 4});
      }
      FamilyPermData d = family_perm_data(spec);
      std::vector<std::vector<std::uint8_t>> gens(d.gens.begin(), d.gens.end());
      return GroupBuilder::from_closure(CarrierKind::Permutation, d.degree, 0, gens, spec.text,
                                        limit, d.expected);
    }
    case SpecKind::PermGenerators: {
      std::vector<std::vector<std::uint8_t>> gens(spec.generators.begin(), spec.generators.end());
      return GroupBuilder::from_closure(CarrierKind::Permutation, spec.degree, 0, gens, spec.text,
                                        limit, std::nullopt);
    }
    case SpecKind::MatrixGroup: {
      std::uint64_t expected =
          spec.family == Family::GL ? gl_order(spec.n, spec.p) : sl_order(spec.n, spec.p);
      auto mats = spec.family == Family::GL ? gl_generators(spec.n, spec.p)
                                            : sl_generators(spec.n, spec.p);
      std::vector<std::vector<std::uint8_t>> gens;
      gens.reserve(mats.size());
      for (const auto& m : mats) {
        std::vector<std::uint8_t> c(m.a.size());
        for (std::size_t k = 0; k < m.a.size(); ++k) c[k] = static_cast<std::uint8_t>(m.a[k]);
        gens.push_back(std::move(c));
      }
      return GroupBuilder::from_closure(CarrierKind::Matrix, spec.n, spec.p, gens, spec.text,
                                        limit, expected);
    }
    case SpecKind::CayleyTable: {
      CayleyTable t = load_cayley_table(spec.table_path);
      if (t.order > limit)
        throw LimitExceeded("cayley table order " + std::to_string(t.order) +
                                " exceeds the element limit " + std::to_string(limit),
                            limit);
      std::vector<std::string> labels(t.order);
      for (std::uint32_t i = 0; i < t.order; ++i) labels[i] = "g" + std::to_string(i);
      std::vector<Elem> gens = greedy_table_generators(t);
      return GroupBuilder::from_table(std::move(t), std::move(labels), spec.text,
                                      std::move(gens));
    }
  }
  throw std::logic_error("unhandled spec kind");
}

Group build_group(std::string_view spec_text, std::uint64_t limit) {
  return build_group(parse_group_spec(spec_text), limit);
}

std::optional<std::uint64_t> expected_order(const GroupSpec& spec) {
  switch (spec.kind) {
    case SpecKind::NamedFamily:
      if (spec.family == Family::Q8) return 8;
      return family_perm_data(spec).expected;
    case SpecKind::MatrixGroup:
      return spec.family == Family::GL ? gl_order(spec.n, spec.p) : sl_order(spec.n, spec.p);
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Group members
// ---------------------------------------------------------------------------

Elem Group::mult(Elem a, Elem b) const {
  if (!mult_table_.empty())
    return mult_table_[static_cast<std::size_t>(a) * order_ + b];
  std::array<std::uint8_t, 256> buf;
  compose(carrier(a), carrier(b), buf.data());
  return *find(buf.data());
}

std::uint32_t Group::order_of(Elem a) const {
  if (a == 0) return 1;
  if (!mult_table_.empty()) {
    std::uint32_t k = 1;
    Elem x = a;
    while (x != 0) {
      x = mult_table_[static_cast<std::size_t>(x) * order_ + a];
      ++k;
    }
    return k;
  }
  std::array<std::uint8_t, 256> cur, nxt;
  const std::uint8_t* ac = carrier(a);
  std::copy(ac, ac + carrier_len_, cur.data());
  const std::uint8_t* id = carrier(0);
  std::uint32_t k = 1;
  while (!std::equal(cur.data(), cur.data() + carrier_len_, id)) {
    compose(cur.data(), ac, nxt.data());
    std::swap(cur, nxt);
    ++k;
  }
  return k;
}

void Group::compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
  compose_carriers(kind_, degree_, modulus_, carrier_len_, a, b, out);
}

std::optional<Elem> Group::find(const std::uint8_t* c) const {
  auto it = index_.find(std::string(reinterpret_cast<const char*>(c), carrier_len_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Group::element_repr(Elem a) const {
  switch (kind_) {
    case CarrierKind::Permutation: {
      const std::uint8_t* c = carrier(a);
      Perm p(c, c + carrier_len_);
      return perm_cycle_string(p, degree_);
    }
    case CarrierKind::Matrix:
      return element_matrix(a).str();
    case CarrierKind::Table:
      return labels_[a];
  }
  return {};
}

std::optional<Elem> Group::element_from_text(std::string_view text) const {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);
  if (s.empty()) return std::nullopt;

  switch (kind_) {
    case CarrierKind::Permutation: {
      Perm p = parse_perm_text(s, degree_);
      return find(p.data());
    }
    case CarrierKind::Matrix: {
      std::string literal;
      if (s.substr(0, 2) == "p=") {
        literal = std::string(s);
      } else {
        literal = "p=" + std::to_string(modulus_) + ";" + std::string(s);
      }
      MatFp m = parse_matrix_literal(literal);
      if (m.p != modulus_)
        throw RangeError("matrix modulus " + std::to_string(m.p) +
                         " does not match the group's modulus " + std::to_string(modulus_));
      if (m.n != degree_)
        throw RangeError("matrix dimension " + std::to_string(m.n) +
                         " does not match the group's dimension " + std::to_string(degree_));
      std::vector<std::uint8_t> c(m.a.size());
      for (std::size_t k = 0; k < m.a.size(); ++k) c[k] = static_cast<std::uint8_t>(m.a[k]);
      return find(c.data());
    }
    case CarrierKind::Table: {
      for (std::uint32_t i = 0; i < order_; ++i)
        if (labels_[i] == s) return i;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

MatFp Group::element_matrix(Elem a) const {
  if (kind_ != CarrierKind::Matrix)
    throw std::logic_error("element_matrix on a non-matrix group");
  MatFp m(degree_, modulus_);
  const std::uint8_t* c = carrier(a);
  for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] = c[k];
  return m;
}

}  // namespace revgrp
