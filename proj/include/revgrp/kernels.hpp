#pragma once

#include <cstdint>
#include <vector>

#include "revgrp/bitset.hpp"
#include "revgrp/group.hpp"

// Data-parallel scans over a group's element table. Each kernel has an
// OpenMP-parallel entry point (falls back to the same loop serially when
// OpenMP is disabled) and a plain serial reference twin kept for testing
// and benchmarking. Results are identical regardless of thread count.
namespace revgrp::kernels {

// order_of for every element.
std::vector<std::uint32_t> element_orders(const Group& g);
std::vector<std::uint32_t> element_orders_serial(const Group& g);

// { f : f*f = id }, identity included.
DenseBitset involution_set(const Group& g);
DenseBitset involution_set_serial(const Group& g);

// t[f] = h^{-1} f h for every f.
std::vector<Elem> conjugation_table(const Group& g, Elem h);
std::vector<Elem> conjugation_table_serial(const Group& g, Elem h);

// { a*b : a in A, b in B } as a dense bitset.
DenseBitset set_product(const Group& g, const DenseBitset& a, const DenseBitset& b);
DenseBitset set_product_serial(const Group& g, const DenseBitset& a, const DenseBitset& b);

// Ascending ids h with h^{-1} f h = f^{-1}.
std::vector<Elem> reversers_of(const Group& g, Elem f);
std::vector<Elem> reversers_of_serial(const Group& g, Elem f);

// |{ h : h f = f h }|
std::uint64_t centralizer_order(const Group& g, Elem f);
std::uint64_t centralizer_order_serial(const Group& g, Elem f);

}  // namespace revgrp::kernels
