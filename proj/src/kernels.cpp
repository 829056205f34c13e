#include "revgrp/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace revgrp::kernels {

// ---------------------------------------------------------------------------
// Element orders
// ---------------------------------------------------------------------------

std::vector<std::uint32_t> element_orders_serial(const Group& g) {
  std::vector<std::uint32_t> out(g.order());
  for (Elem i = 0; i < g.order(); ++i) out[i] = g.order_of(i);
  return out;
}

std::vector<std::uint32_t> element_orders(const Group& g) {
  const std::int64_t n = g.order();
  std::vector<std::uint32_t> out(n);
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::int64_t i = 0; i < n; ++i) out[i] = g.order_of(static_cast<Elem>(i));
  return out;
}

// ---------------------------------------------------------------------------
// Involutions. The reference twin squares every element; the fast route uses
// f*f = id  <=>  f = f^{-1}.
// ---------------------------------------------------------------------------

DenseBitset involution_set_serial(const Group& g) {
  DenseBitset out(g.order());
  for (Elem i = 0; i < g.order(); ++i)
    if (g.mult(i, i) == 0) out.set(i);
  return out;
}

DenseBitset involution_set(const Group& g) {
  DenseBitset out(g.order());
  for (Elem i = 0; i < g.order(); ++i)
    if (g.inverse(i) == i) out.set(i);
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation tables
// ---------------------------------------------------------------------------

std::vector<Elem> conjugation_table_serial(const Group& g, Elem h) {
  std::vector<Elem> t(g.order());
  for (Elem f = 0; f < g.order(); ++f) t[f] = g.conjugate(f, h);
  return t;
}

std::vector<Elem> conjugation_table(const Group& g, Elem h) {
  const std::int64_t n = g.order();
  std::vector<Elem> t(n);
  if (g.has_mult_table()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t f = 0; f < n; ++f) t[f] = g.conjugate(static_cast<Elem>(f), h);
    return t;
  }
  const std::uint8_t* hc = g.carrier(h);
  const std::uint8_t* hinv = g.carrier(g.inverse(h));
  const std::size_t len = g.carrier_len();
#pragma omp parallel for schedule(static)
  for (std::int64_t f = 0; f < n; ++f) {
    std::array<std::uint8_t, 256> b1, b2;
    g.compose(hinv, g.carrier(static_cast<Elem>(f)), b1.data());
    g.compose(b1.data(), hc, b2.data());
    (void)len;
    t[f] = *g.find(b2.data());
  }
  return t;
}

// ---------------------------------------------------------------------------
// Set products
// ---------------------------------------------------------------------------

DenseBitset set_product_serial(const Group& g, const DenseBitset& a, const DenseBitset& b) {
  DenseBitset out(g.order());
  a.for_each([&](std::size_t x) {
    b.for_each([&](std::size_t y) {
      out.set(g.mult(static_cast<Elem>(x), static_cast<Elem>(y)));
    });
  });
  return out;
}

DenseBitset set_product(const Group& g, const DenseBitset& a, const DenseBitset& b) {
  const std::uint32_t n = g.order();
  std::vector<Elem> av = a.to_indices();
  std::vector<Elem> bv = b.to_indices();
  DenseBitset out(n);

  if (g.has_mult_table()) {
    const std::uint32_t* table = g.mult_table();
#pragma omp parallel
    {
      DenseBitset local(n);
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(av.size()); ++i) {
        const std::uint32_t* row = table + static_cast<std::size_t>(av[i]) * n;
        for (Elem y : bv) local.set(row[y]);
      }
#pragma omp critical
      out |= local;
    }
    return out;
  }

#pragma omp parallel
  {
    DenseBitset local(n);
    std::array<std::uint8_t, 256> buf;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(av.size()); ++i) {
      const std::uint8_t* xc = g.carrier(av[i]);
      for (Elem y : bv) {
        g.compose(xc, g.carrier(y), buf.data());
        local.set(*g.find(buf.data()));
      }
    }
#pragma omp critical
    out |= local;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reversers and centralizers: full scans testing h^{-1} f h against f^{-1}
// (or f) on raw carriers, so the hot loop never touches the index map.
// ---------------------------------------------------------------------------

std::vector<Elem> reversers_of_serial(const Group& g, Elem f) {
  std::vector<Elem> out;
  const Elem finv = g.inverse(f);
  for (Elem h = 0; h < g.order(); ++h)
    if (g.conjugate(f, h) == finv) out.push_back(h);
  return out;
}

namespace {

// Collects { h : h^{-1} f h = target } in ascending order.
std::vector<Elem> conjugation_scan(const Group& g, Elem f, Elem target) {
  const std::int64_t n = g.order();
  std::vector<std::uint8_t> hit(n, 0);

  if (g.has_mult_table()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t h = 0; h < n; ++h)
      hit[h] = g.conjugate(f, static_cast<Elem>(h)) == target;
  } else {
    const std::uint8_t* fc = g.carrier(f);
    const std::uint8_t* tc = g.carrier(target);
    const std::size_t len = g.carrier_len();
#pragma omp parallel for schedule(static, 2048)
    for (std::int64_t h = 0; h < n; ++h) {
      std::array<std::uint8_t, 256> b1, b2;
      const std::uint8_t* hc = g.carrier(static_cast<Elem>(h));
      const std::uint8_t* hinv = g.carrier(g.inverse(static_cast<Elem>(h)));
      g.compose(hinv, fc, b1.data());
      g.compose(b1.data(), hc, b2.data());
      hit[h] = std::memcmp(b2.data(), tc, len) == 0;
    }
  }

  std::vector<Elem> out;
  for (std::int64_t h = 0; h < n; ++h)
    if (hit[h]) out.push_back(static_cast<Elem>(h));
  return out;
}

}  // namespace

std::vector<Elem> reversers_of(const Group& g, Elem f) {
  return conjugation_scan(g, f, g.inverse(f));
}

std::uint64_t centralizer_order_serial(const Group& g, Elem f) {
  std::uint64_t c = 0;
  for (Elem h = 0; h < g.order(); ++h)
    if (g.conjugate(f, h) == f) ++c;
  return c;
}

std::uint64_t centralizer_order(const Group& g, Elem f) {
  return static_cast<std::uint64_t>(conjugation_scan(g, f, f).size());
}

}  // namespace revgrp::kernels
