#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "revgrp/analysis.hpp"
#include "revgrp/bitset.hpp"
#include "revgrp/group.hpp"
#include "revgrp/kernels.hpp"

using namespace revgrp;

namespace {

DenseBitset random_subset(std::size_t n, double density, std::mt19937_64& rng) {
  DenseBitset b(n);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    if (dist(rng) < density) b.set(i);
  if (b.count() == 0) b.set(0);
  return b;
}

DenseBitset random_class_union(const ConjugacyPartition& part, std::size_t n,
                               std::mt19937_64& rng) {
  DenseBitset b(n);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<bool> take(part.num_classes());
  for (std::uint32_t c = 0; c < part.num_classes(); ++c) take[c] = coin(rng);
  take[part.class_of[0]] = true;  // keep the identity in
  for (std::size_t i = 0; i < n; ++i)
    if (take[part.class_of[i]]) b.set(i);
  return b;
}

// Independent double-loop product oracle.
DenseBitset product_oracle(const Group& g, const DenseBitset& a, const DenseBitset& b) {
  DenseBitset out(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    if (!a.test(x)) continue;
    for (Elem y = 0; y < g.order(); ++y)
      if (b.test(y)) out.set(g.mult(x, y));
  }
  return out;
}

const char* kGroups[] = {"Sym(5)", "Sym(7)", "Alt(5)", "Q8", "Dih(6)", "GL(2,3)", "PSL(2,7)"};

}  // namespace

TEST_CASE("dense bitset basics") {
  DenseBitset b(130);
  CHECK(b.size() == 130);
  CHECK(b.count() == 0);
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.test(64));
  CHECK(!b.test(63));
  b.reset(64);
  CHECK(!b.test(64));
  CHECK(b.to_indices() == std::vector<std::uint32_t>{0, 129});

  DenseBitset full = DenseBitset::full(130);
  CHECK(full.count() == 130);
  CHECK(b.is_subset_of(full));
  CHECK(!full.is_subset_of(b));
  CHECK(full.first_not_in(b) == 1);
  CHECK(b.first_not_in(full) == DenseBitset::npos);

  DenseBitset c(130);
  c.set(0);
  c.set(129);
  CHECK(b == c);
  c |= full;
  CHECK(c == full);

  std::size_t visited = 0;
  full.for_each([&](std::size_t) { ++visited; });
  CHECK(visited == 130);
}

TEST_CASE("parallel kernels match their serial references") {
  for (const char* spec : kGroups) {
    CAPTURE(spec);
    Group g = build_group(spec);

    CHECK(kernels::element_orders(g) == kernels::element_orders_serial(g));
    CHECK(kernels::involution_set(g) == kernels::involution_set_serial(g));

    for (Elem h : g.generator_indices())
      CHECK(kernels::conjugation_table(g, h) == kernels::conjugation_table_serial(g, h));

    std::mt19937_64 rng(31337);
    for (int t = 0; t < 4; ++t) {
      DenseBitset a = random_subset(g.order(), 0.2, rng);
      DenseBitset b = random_subset(g.order(), 0.1, rng);
      CHECK(kernels::set_product(g, a, b) == kernels::set_product_serial(g, a, b));
    }

    std::uniform_int_distribution<Elem> pick(0, g.order() - 1);
    for (int t = 0; t < 6; ++t) {
      Elem f = pick(rng);
      CHECK(kernels::reversers_of(g, f) == kernels::reversers_of_serial(g, f));
      CHECK(kernels::centralizer_order(g, f) == kernels::centralizer_order_serial(g, f));
    }
  }
}

TEST_CASE("set products match a brute-force oracle") {
  std::mt19937_64 rng(7);
  for (const char* spec : {"Sym(3)", "Q8", "Dih(5)"}) {
    Group g = build_group(spec);
    for (int t = 0; t < 8; ++t) {
      DenseBitset a = random_subset(g.order(), 0.4, rng);
      DenseBitset b = random_subset(g.order(), 0.4, rng);
      DenseBitset expect = product_oracle(g, a, b);
      CHECK(kernels::set_product(g, a, b) == expect);
      CHECK(kernels::set_product_serial(g, a, b) == expect);
    }
  }
}

TEST_CASE("class-representative products equal full products") {
  std::mt19937_64 rng(99);
  for (const char* spec : {"Sym(5)", "Sym(6)", "Alt(6)", "Q8", "GL(2,3)", "PSL(2,7)"}) {
    CAPTURE(spec);
    Group g = build_group(spec);
    ConjugacyPartition part = conjugacy_classes(g);

    DenseBitset invs = kernels::involution_set(g);
    DenseBitset rset = reversible_set(g, part);
    CHECK(set_product_via_classes(g, part, invs, invs) ==
          kernels::set_product(g, invs, invs));
    CHECK(set_product_via_classes(g, part, rset, rset) ==
          kernels::set_product(g, rset, rset));

    for (int t = 0; t < 6; ++t) {
      DenseBitset a = random_class_union(part, g.order(), rng);
      DenseBitset b = random_class_union(part, g.order(), rng);
      REQUIRE(is_class_closed(part, a));
      CHECK(set_product_via_classes(g, part, a, b) == kernels::set_product(g, a, b));
    }
  }
}

#ifdef _OPENMP
TEST_CASE("results are identical across thread counts") {
  Group g = build_group("Sym(7)");
  ConjugacyPartition part = conjugacy_classes(g);
  DenseBitset invs = kernels::involution_set(g);

  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto orders1 = kernels::element_orders(g);
  auto conj1 = kernels::conjugation_table(g, g.generator_indices()[0]);
  auto prod1 = kernels::set_product(g, invs, invs);
  auto rev1 = kernels::reversers_of(g, 1);

  omp_set_num_threads(3);
  CHECK(orders1 == kernels::element_orders(g));
  CHECK(conj1 == kernels::conjugation_table(g, g.generator_indices()[0]));
  CHECK(prod1 == kernels::set_product(g, invs, invs));
  CHECK(rev1 == kernels::reversers_of(g, 1));

  omp_set_num_threads(saved);
}
#endif
