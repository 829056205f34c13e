// Times the OpenMP kernels against their serial reference twins and checks
// that both produce identical results.
//
// Usage: revgrp-bench [group-spec ...]
// Default groups: Alt(7), Sym(7), GL(3,3)

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "revgrp/analysis.hpp"
#include "revgrp/group.hpp"
#include "revgrp/kernels.hpp"

using namespace revgrp;

namespace {

template <typename Fn>
double ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::cout << "  " << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial_ms << " ms" << std::setw(10)
            << parallel_ms << " ms   x" << std::setprecision(2)
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
            << (equal ? "" : "   RESULTS DIFFER") << "\n";
}

void bench_group(const std::string& spec) {
  Group g = build_group(spec);
  std::cout << spec << "  (order " << g.order() << ")\n";

  std::vector<std::uint32_t> orders_s, orders_p;
  double t_s = ms([&] { orders_s = kernels::element_orders_serial(g); });
  double t_p = ms([&] { orders_p = kernels::element_orders(g); });
  report("element_orders", t_s, t_p, orders_s == orders_p);

  DenseBitset inv_s, inv_p;
  t_s = ms([&] { inv_s = kernels::involution_set_serial(g); });
  t_p = ms([&] { inv_p = kernels::involution_set(g); });
  report("involution_set", t_s, t_p, inv_s == inv_p);

  const Elem gen = g.generator_indices().empty() ? 0 : g.generator_indices()[0];
  std::vector<Elem> conj_s, conj_p;
  t_s = ms([&] { conj_s = kernels::conjugation_table_serial(g, gen); });
  t_p = ms([&] { conj_p = kernels::conjugation_table(g, gen); });
  report("conjugation_table", t_s, t_p, conj_s == conj_p);

  ConjugacyPartition part = conjugacy_classes(g);
  DenseBitset r = reversible_set(g, part);
  DenseBitset rr_s, rr_p;
  t_s = ms([&] { rr_s = kernels::set_product_serial(g, r, r); });
  t_p = ms([&] { rr_p = kernels::set_product(g, r, r); });
  report("set_product (R*R)", t_s, t_p, rr_s == rr_p);

  DenseBitset rr_c;
  double t_c = ms([&] { rr_c = set_product_via_classes(g, part, r, r); });
  report("set_product via class reps", t_p, t_c, rr_c == rr_p);

  const Elem f = g.order() > 1 ? 1 : 0;
  std::vector<Elem> rev_s, rev_p;
  t_s = ms([&] { rev_s = kernels::reversers_of_serial(g, f); });
  t_p = ms([&] { rev_p = kernels::reversers_of(g, f); });
  report("reversers_of", t_s, t_p, rev_s == rev_p);

  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n\n";
#else
  std::cout << "OpenMP disabled; both columns run serially\n\n";
#endif
  std::cout << "  " << std::left << std::setw(34) << "kernel" << std::right << std::setw(13)
            << "serial" << std::setw(13) << "parallel" << "   speedup\n";

  std::vector<std::string> specs;
  for (int i = 1; i < argc; ++i) specs.emplace_back(argv[i]);
  if (specs.empty()) specs = {"Alt(7)", "Sym(7)", "GL(3,3)"};

  for (const auto& s : specs) bench_group(s);
  return 0;
}
