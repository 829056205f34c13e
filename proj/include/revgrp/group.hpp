#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revgrp/errors.hpp"
#include "revgrp/matfp.hpp"

namespace revgrp {

// Dense element id, valid relative to one Group.
using Elem = std::uint32_t;

// ---------------------------------------------------------------------------
// Permutations as 0-based image words: a[i] is the image of point i.
// The product a*b means "apply a first, then b": (a*b)[i] = b[a[i]].
// ---------------------------------------------------------------------------

using Perm = std::vector<std::uint8_t>;

Perm perm_identity(std::uint32_t degree);
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
bool is_permutation_word(const Perm& a);

// Cycle notation with 1-based points, cycles by least moved point: "(1 2)(3 4)".
// The identity renders as "()".
std::string perm_cycle_string(const Perm& a, std::uint32_t degree);

// Accepts cycle notation "(1 2 3)(4 5)", "()" or a 1-based image list "[2,3,1]".
Perm parse_perm_text(std::string_view text, std::uint32_t degree);

// ---------------------------------------------------------------------------
// Group specs
// ---------------------------------------------------------------------------

enum class SpecKind { NamedFamily, PermGenerators, CayleyTable, MatrixGroup };
enum class Family { None, Sym, Alt, Dih, Q8, Cyclic, Hyperoct, PSL2, GL, SL };

struct GroupSpec {
  SpecKind kind = SpecKind::NamedFamily;
  Family family = Family::None;
  std::uint32_t n = 0;               // degree / dimension / cyclic order
  std::uint32_t p = 0;               // field modulus (PSL2, GL, SL)
  std::uint32_t degree = 0;          // PermGenerators
  std::vector<Perm> generators;      // PermGenerators, 0-based words
  std::string table_path;            // CayleyTable
  std::string text;                  // canonical spec string
};

// Grammar:
//   Sym(n) | Alt(n) | Dih(n) | Q8 | Cyclic(n) | Hyperoct(n) | PSL(2,p)
//   | GL(n,p) | SL(n,p) | perm:<degree>:[img,...];[img,...]... | cayley:<path>
// Throws ParseError (with character position) for malformed text and
// RangeError for parameters outside the documented ranges.
GroupSpec parse_group_spec(std::string_view text);

// ---------------------------------------------------------------------------
// Cayley tables: first line is the order n, then n rows of n 0-based indices.
// Row/column 0 must be the identity, every row and column a permutation of
// 0..n-1, and the table associative (exhaustive up to order 512, 1e5 sampled
// triples above). Violations throw InvalidTable.
// ---------------------------------------------------------------------------

struct CayleyTable {
  std::uint32_t order = 0;
  std::vector<std::uint32_t> table;  // row-major
};

CayleyTable load_cayley_table(const std::string& path);
void validate_cayley_table(const CayleyTable& t);

// ---------------------------------------------------------------------------
// Fully enumerated finite group.
//
// Elements are dense ids 0..order-1 with the identity at 0. Enumeration is a
// breadth-first closure over the generators, ids within one BFS level ordered
// by carrier bytes, so rebuilding a spec reproduces the identical table.
// Groups are immutable after construction; every member function is
// read-only and safe for unsynchronized concurrent use.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultElementLimit = 2'000'000;
// Above this order the order^2 multiplication table is skipped and products
// are computed from carriers on demand.
inline constexpr std::uint32_t kMultTableCutoff = 4096;

enum class CarrierKind { Permutation, Matrix, Table };

class Group {
 public:
  CarrierKind carrier_kind() const { return kind_; }
  std::uint32_t order() const { return order_; }
  // Permutation points or matrix dimension; 0 for table-backed groups.
  std::uint32_t degree() const { return degree_; }
  // Field modulus for matrix carriers; 0 otherwise.
  std::uint32_t modulus() const { return modulus_; }
  const std::string& spec_text() const { return spec_text_; }
  const std::vector<Elem>& generator_indices() const { return generators_; }

  Elem mult(Elem a, Elem b) const;
  Elem inverse(Elem a) const { return inverse_[a]; }
  // h^{-1} f h
  Elem conjugate(Elem f, Elem h) const { return mult(mult(inverse(h), f), h); }
  // Least k >= 1 with a^k = identity.
  std::uint32_t order_of(Elem a) const;

  bool has_mult_table() const { return !mult_table_.empty(); }
  const std::uint32_t* mult_table() const {
    return mult_table_.empty() ? nullptr : mult_table_.data();
  }

  // Carrier access for kernels that stay off the index map in hot loops.
  std::size_t carrier_len() const { return carrier_len_; }
  const std::uint8_t* carrier(Elem a) const {
    return carriers_.data() + static_cast<std::size_t>(a) * carrier_len_;
  }
  // out = a * b on raw carriers; undefined for table-backed groups.
  void compose(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const;
  std::optional<Elem> find(const std::uint8_t* c) const;

  // Carrier form: cycle notation, matrix literal, or table label.
  std::string element_repr(Elem a) const;
  // Inverse of element_repr; also accepts image lists for permutations and
  // "p=..;[[..]]" literals for matrices.
  std::optional<Elem> element_from_text(std::string_view text) const;

  MatFp element_matrix(Elem a) const;

 private:
  friend struct GroupBuilder;

  CarrierKind kind_ = CarrierKind::Table;
  std::uint32_t order_ = 0;
  std::uint32_t degree_ = 0;
  std::uint32_t modulus_ = 0;
  std::string spec_text_;
  std::size_t carrier_len_ = 0;
  std::vector<std::uint8_t> carriers_;
  std::vector<Elem> inverse_;
  std::vector<std::uint32_t> mult_table_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<Elem> generators_;
  std::vector<std::string> labels_;
};

Group build_group(const GroupSpec& spec, std::uint64_t limit = kDefaultElementLimit);
Group build_group(std::string_view spec_text, std::uint64_t limit = kDefaultElementLimit);

// Exact order of a named-family spec (saturated to UINT64_MAX on overflow);
// nullopt for perm-generator and Cayley-table specs, whose order is only
// known after closure.
std::optional<std::uint64_t> expected_order(const GroupSpec& spec);

}  // namespace revgrp
