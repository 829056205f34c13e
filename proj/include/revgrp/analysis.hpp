#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revgrp/bitset.hpp"
#include "revgrp/group.hpp"

namespace revgrp {

inline constexpr std::uint32_t kDefaultChainCap = 12;

// ---------------------------------------------------------------------------
// Conjugacy classes as orbits of the conjugation action of the generators.
// Class ids are assigned in order of their least element, so the
// representative of class c is the least index it contains.
// ---------------------------------------------------------------------------

struct ConjugacyPartition {
  std::vector<std::uint32_t> class_of;  // element -> class id
  std::vector<Elem> reps;               // class id -> least element
  std::vector<std::uint32_t> class_sizes;

  std::uint32_t num_classes() const { return static_cast<std::uint32_t>(reps.size()); }
};

ConjugacyPartition conjugacy_classes(const Group& g);

// True when `s` is a union of conjugacy classes.
bool is_class_closed(const ConjugacyPartition& part, const DenseBitset& s);

// ---------------------------------------------------------------------------
// Product chains A^1 (= A), A^2, ... with A^{k+1} = A^k * A.
//
// Levels are computed until A^k = A^{k+1} (stabilization: the chain is
// constant from then on), until A^k is the whole group (which forces
// A^{k+1} = A^k), or until the exponent cap. When the base is a union of
// conjugacy classes and a partition is supplied, each product is computed
// from class representatives and closed back up under conjugacy, which is
// equivalent to the full product; otherwise all member products are formed.
// ---------------------------------------------------------------------------

struct ProductChain {
  std::vector<DenseBitset> levels;       // levels[k-1] = A^k, computed levels only
  std::vector<std::uint64_t> sizes;      // |A^k| per computed level
  std::optional<std::uint32_t> stabilization;  // least k with A^k = A^{k+1}
  bool cap_reached = false;              // cap hit before stabilization
  DenseBitset limit;                     // union of all A^n; valid when stabilized
  bool limit_is_subgroup = false;
  bool limit_is_normal = false;

  // A^k for 1-based k; nullptr when the chain was capped before A^k is known.
  const DenseBitset* level_set(std::uint32_t k) const;
  // A^infinity; nullptr unless stabilized.
  const DenseBitset* limit_set() const;
};

ProductChain product_chain(const Group& g, const DenseBitset& base, std::uint32_t cap,
                           const ConjugacyPartition* part = nullptr);

// Class-representative route for X * A with X and A unions of classes:
// conjugacy-closure of  U_{reps r of X} r*A. Exposed for cross-validation
// against kernels::set_product.
DenseBitset set_product_via_classes(const Group& g, const ConjugacyPartition& part,
                                    const DenseBitset& x, const DenseBitset& a);

// ---------------------------------------------------------------------------
// Reversibility
// ---------------------------------------------------------------------------

// { h : h^{-1} f h = f^{-1} }; empty, or a right coset of the centralizer
// of f (so its size equals the centralizer order).
struct ReverserSet {
  Elem target = 0;
  std::vector<Elem> reversers;  // ascending
};

ReverserSet reversers(const Group& g, Elem f);

// f and f^{-1} lie in the same conjugacy class.
bool is_reversible(const Group& g, const ConjugacyPartition& part, Elem f);
// Some involution reverses f; equivalently f is a product of two involutions.
bool is_strongly_reversible(const Group& g, const DenseBitset& involutions, Elem f);

// Union of the classes whose representative is reversible.
DenseBitset reversible_set(const Group& g, const ConjugacyPartition& part);

// Least element order over the reversers of f; nullopt when f is not
// reversible. Scans candidates in ascending element-order buckets.
std::optional<std::uint32_t> min_reverser_order(const Group& g, Elem f);

// ---------------------------------------------------------------------------
// Full per-group analysis
// ---------------------------------------------------------------------------

struct ClassRow {
  Elem rep = 0;
  std::uint32_t size = 0;
  std::uint32_t order = 0;
  bool reversible = false;
  bool strongly = false;
  std::optional<std::uint32_t> min_reverser_order;
};

struct Analysis {
  Group group;
  std::vector<std::uint32_t> orders;     // element -> order
  ConjugacyPartition classes;
  DenseBitset involution_set;            // I
  DenseBitset rset;                      // R
  ProductChain i_chain;
  ProductChain r_chain;
  std::vector<ClassRow> rows;            // one per class, in class-id order
  bool i2_eq_r = false;
  bool i2_eq_g = false;
  bool r_eq_g = false;
  std::optional<std::uint32_t> max_min_reverser_order;  // over reversible classes
  std::uint32_t chain_cap = kDefaultChainCap;
};

// Runs the whole analysis and verifies the structural invariants on the way
// out (I^2 within R, chain monotonicity, class-constant chain membership,
// stabilized limits normal subgroups, class sizes consistent). An invariant
// failure throws std::logic_error: it means a bug, not bad input.
Analysis analyze(Group g, std::uint32_t cap = kDefaultChainCap);

// Report JSON (schema 1, stable field names, deterministic bytes):
// {"schema":1,"group":...,"order":...,"i_size":...,"r_size":...,
//  "i_chain":[...],"i_stab":...,"r_chain":[...],"r_stab":...,
//  "i2_eq_r":...,"i2_eq_g":...,"r_eq_g":...,"classes":[
//    {"rep":...,"size":...,"order":...,"reversible":...,"strongly":...,
//     "min_rev_order":...}, ...]}
std::string report_json_string(const Analysis& a);

// Human-readable summary. `max_class_rows` caps the class table (0 = all).
std::string report_human(const Analysis& a, std::size_t max_class_rows = 64);

}  // namespace revgrp
