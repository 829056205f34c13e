#include "revgrp/analysis.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "revgrp/kernels.hpp"

namespace revgrp {

// ---------------------------------------------------------------------------
// Conjugacy classes: orbits of conjugation by the generators, explored from
// the least unassigned element so class ids and representatives are canonical.
// ---------------------------------------------------------------------------

ConjugacyPartition conjugacy_classes(const Group& g) {
  const std::uint32_t n = g.order();
  std::vector<std::vector<Elem>> tables;
  tables.reserve(g.generator_indices().size());
  for (Elem h : g.generator_indices()) tables.push_back(kernels::conjugation_table(g, h));

  ConjugacyPartition part;
  part.class_of.assign(n, UINT32_MAX);
  std::vector<Elem> stack;
  for (Elem s = 0; s < n; ++s) {
    if (part.class_of[s] != UINT32_MAX) continue;
    const std::uint32_t cid = part.num_classes();
    part.reps.push_back(s);
    part.class_of[s] = cid;
    std::uint32_t size = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      Elem x = stack.back();
      stack.pop_back();
      for (const auto& t : tables) {
        Elem y = t[x];
        if (part.class_of[y] == UINT32_MAX) {
          part.class_of[y] = cid;
          ++size;
          stack.push_back(y);
        }
      }
    }
    part.class_sizes.push_back(size);
  }
  return part;
}

bool is_class_closed(const ConjugacyPartition& part, const DenseBitset& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i) != s.test(part.reps[part.class_of[i]])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Set products through class representatives.
//
// For X and A unions of conjugacy classes and x = s^{-1} r s,
//   x A = s^{-1} r (s A s^{-1}) s = (r A)^s,
// so the union of xA over the class of r is the conjugacy closure of rA and
//   X * A = closure( U_{class reps r of X} r A ).
// ---------------------------------------------------------------------------

DenseBitset set_product_via_classes(const Group& g, const ConjugacyPartition& part,
                                    const DenseBitset& x, const DenseBitset& a) {
  const std::uint32_t n = g.order();
  std::vector<Elem> av = a.to_indices();
  std::vector<Elem> reps_in_x;
  for (Elem rep : part.reps)
    if (x.test(rep)) reps_in_x.push_back(rep);

  DenseBitset prod(n);
  if (g.has_mult_table()) {
    const std::uint32_t* table = g.mult_table();
#pragma omp parallel
    {
      DenseBitset local(n);
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps_in_x.size()); ++i) {
        const std::uint32_t* row = table + static_cast<std::size_t>(reps_in_x[i]) * n;
        for (Elem y : av) local.set(row[y]);
      }
#pragma omp critical
      prod |= local;
    }
  } else {
#pragma omp parallel
    {
      DenseBitset local(n);
      std::array<std::uint8_t, 256> buf;
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps_in_x.size()); ++i) {
        const std::uint8_t* rc = g.carrier(reps_in_x[i]);
        for (Elem y : av) {
          g.compose(rc, g.carrier(y), buf.data());
          local.set(*g.find(buf.data()));
        }
      }
#pragma omp critical
      prod |= local;
    }
  }

  // Conjugacy closure.
  std::vector<std::uint8_t> class_hit(part.num_classes(), 0);
  prod.for_each([&](std::size_t i) { class_hit[part.class_of[i]] = 1; });
  DenseBitset out(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (class_hit[part.class_of[i]]) out.set(i);
  return out;
}

// ---------------------------------------------------------------------------
// Product chains
// ---------------------------------------------------------------------------

const DenseBitset* ProductChain::level_set(std::uint32_t k) const {
  if (k == 0) return nullptr;
  if (k <= levels.size()) return &levels[k - 1];
  if (stabilization) return &levels[*stabilization - 1];
  return nullptr;
}

const DenseBitset* ProductChain::limit_set() const {
  return stabilization ? &limit : nullptr;
}

namespace {

bool subgroup_check(const Group& g, const ConjugacyPartition* part, const DenseBitset& l) {
  if (!l.test(0)) return false;
  bool inv_closed = true;
  l.for_each([&](std::size_t i) {
    if (!l.test(g.inverse(static_cast<Elem>(i)))) inv_closed = false;
  });
  if (!inv_closed) return false;
  if (l.count() == g.order()) return true;
  DenseBitset sq = (part && is_class_closed(*part, l))
                       ? set_product_via_classes(g, *part, l, l)
                       : kernels::set_product(g, l, l);
  return sq.is_subset_of(l);
}

bool normality_check(const Group& g, const DenseBitset& l) {
  if (l.count() == g.order()) return true;
  for (Elem h : g.generator_indices()) {
    bool ok = true;
    l.for_each([&](std::size_t i) {
      if (!l.test(g.conjugate(static_cast<Elem>(i), h))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ProductChain product_chain(const Group& g, const DenseBitset& base, std::uint32_t cap,
                           const ConjugacyPartition* part) {
  if (base.count() == 0) throw std::invalid_argument("product chain needs a nonempty base");
  if (cap < 1) throw std::invalid_argument("product chain cap must be at least 1");

  const std::uint32_t n = g.order();
  const bool classwise = part != nullptr && is_class_closed(*part, base);

  ProductChain ch;
  ch.levels.push_back(base);
  ch.sizes.push_back(base.count());

  if (ch.sizes[0] == n) {
    ch.stabilization = 1;  // A = G forces A^2 = G
  } else {
    while (ch.levels.size() < cap) {
      DenseBitset next = classwise
                             ? set_product_via_classes(g, *part, ch.levels.back(), base)
                             : kernels::set_product(g, ch.levels.back(), base);
      ch.levels.push_back(std::move(next));
      ch.sizes.push_back(ch.levels.back().count());
      const std::uint32_t m = static_cast<std::uint32_t>(ch.levels.size());
      if (ch.levels[m - 1] == ch.levels[m - 2]) {
        ch.stabilization = m - 1;
        break;
      }
      if (ch.sizes[m - 1] == n) {
        ch.stabilization = m;  // A^m = G forces A^{m+1} = G
        break;
      }
    }
    if (!ch.stabilization) ch.cap_reached = true;
  }

  if (ch.stabilization) {
    ch.limit = DenseBitset(n);
    for (const auto& lvl : ch.levels) ch.limit |= lvl;
    ch.limit_is_subgroup = subgroup_check(g, part, ch.limit);
    ch.limit_is_normal = ch.limit_is_subgroup && normality_check(g, ch.limit);
  }
  return ch;
}

// ---------------------------------------------------------------------------
// Reversibility primitives
// ---------------------------------------------------------------------------

ReverserSet reversers(const Group& g, Elem f) {
  return ReverserSet{f, kernels::reversers_of(g, f)};
}

bool is_reversible(const Group& g, const ConjugacyPartition& part, Elem f) {
  return part.class_of[f] == part.class_of[g.inverse(f)];
}

namespace {

bool involution_reverses(const Group& g, const std::vector<Elem>& involutions, Elem f) {
  const Elem finv = g.inverse(f);
  if (g.has_mult_table()) {
    for (Elem t : involutions)
      if (g.conjugate(f, t) == finv) return true;
    return false;
  }
  const std::uint8_t* fc = g.carrier(f);
  const std::uint8_t* target = g.carrier(finv);
  const std::size_t len = g.carrier_len();
  std::array<std::uint8_t, 256> b1, b2;
  for (Elem t : involutions) {
    const std::uint8_t* tc = g.carrier(t);  // t = t^{-1}
    g.compose(tc, fc, b1.data());
    g.compose(b1.data(), tc, b2.data());
    if (std::memcmp(b2.data(), target, len) == 0) return true;
  }
  return false;
}

struct OrderBuckets {
  std::vector<Elem> sorted;  // ids sorted by (element order, id)
  std::vector<std::pair<std::uint32_t, std::pair<std::size_t, std::size_t>>> ranges;
};

OrderBuckets make_order_buckets(const std::vector<std::uint32_t>& orders) {
  OrderBuckets b;
  b.sorted.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) b.sorted[i] = static_cast<Elem>(i);
  std::stable_sort(b.sorted.begin(), b.sorted.end(),
                   [&](Elem x, Elem y) { return orders[x] < orders[y]; });
  std::size_t i = 0;
  while (i < b.sorted.size()) {
    std::size_t j = i;
    const std::uint32_t o = orders[b.sorted[i]];
    while (j < b.sorted.size() && orders[b.sorted[j]] == o) ++j;
    b.ranges.push_back({o, {i, j}});
    i = j;
  }
  return b;
}

// Least element order over the reversers of f, scanning order buckets
// ascending and stopping at the first hit.
std::optional<std::uint32_t> min_rev_order_scan(const Group& g, const OrderBuckets& buckets,
                                                Elem f) {
  const Elem finv = g.inverse(f);
  if (g.has_mult_table()) {
    for (const auto& [o, range] : buckets.ranges)
      for (std::size_t k = range.first; k < range.second; ++k)
        if (g.conjugate(f, buckets.sorted[k]) == finv) return o;
    return std::nullopt;
  }
  const std::uint8_t* fc = g.carrier(f);
  const std::uint8_t* target = g.carrier(finv);
  const std::size_t len = g.carrier_len();
  std::array<std::uint8_t, 256> b1, b2;
  for (const auto& [o, range] : buckets.ranges) {
    for (std::size_t k = range.first; k < range.second; ++k) {
      const Elem h = buckets.sorted[k];
      g.compose(g.carrier(g.inverse(h)), fc, b1.data());
      g.compose(b1.data(), g.carrier(h), b2.data());
      if (std::memcmp(b2.data(), target, len) == 0) return o;
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_strongly_reversible(const Group& g, const DenseBitset& involutions, Elem f) {
  return involution_reverses(g, involutions.to_indices(), f);
}

DenseBitset reversible_set(const Group& g, const ConjugacyPartition& part) {
  DenseBitset r(g.order());
  std::vector<std::uint8_t> class_rev(part.num_classes());
  for (std::uint32_t c = 0; c < part.num_classes(); ++c)
    class_rev[c] = is_reversible(g, part, part.reps[c]);
  for (std::uint32_t i = 0; i < g.order(); ++i)
    if (class_rev[part.class_of[i]]) r.set(i);
  return r;
}

std::optional<std::uint32_t> min_reverser_order(const Group& g, Elem f) {
  auto orders = kernels::element_orders(g);
  return min_rev_order_scan(g, make_order_buckets(orders), f);
}

// ---------------------------------------------------------------------------
// Full analysis
// ---------------------------------------------------------------------------

namespace {

void verify_analysis(const Analysis& a) {
  const Group& g = a.group;
  const std::uint32_t n = g.order();

  auto fail = [](const std::string& what) {
    throw std::logic_error("analysis invariant violated: " + what);
  };

  // Involutions are exactly the elements of order 1 or 2.
  for (std::uint32_t i = 0; i < n; ++i)
    if (a.involution_set.test(i) != (a.orders[i] <= 2)) fail("involution set vs orders");

  std::uint64_t rev_size = 0;
  for (const auto& row : a.rows) {
    if (row.strongly && !row.reversible) fail("strongly reversible implies reversible");
    if (row.reversible != row.min_reverser_order.has_value())
      fail("min reverser order defined exactly on reversible classes");
    if (row.reversible) rev_size += row.size;
  }
  if (rev_size != a.rset.count()) fail("|R| equals the reversible class mass");

  const DenseBitset* i2 = a.i_chain.level_set(2);
  if (i2 == nullptr) fail("I^2 unavailable");
  if (!i2->is_subset_of(a.rset)) fail("I^2 within R");
  for (const auto& row : a.rows)
    if (row.strongly != i2->test(row.rep))
      fail("involution-reverser scan vs I^2 membership");

  for (const ProductChain* ch : {&a.i_chain, &a.r_chain}) {
    for (std::size_t k = 0; k + 1 < ch->levels.size(); ++k)
      if (!ch->levels[k].is_subset_of(ch->levels[k + 1])) fail("chain monotonicity");
    for (const auto& lvl : ch->levels)
      for (std::uint32_t i = 0; i < n; ++i)
        if (lvl.test(i) != lvl.test(a.classes.reps[a.classes.class_of[i]]))
          fail("chain membership constant on classes");
    if (ch->stabilization) {
      if (!ch->limit_is_subgroup) fail("stabilized limit is a subgroup");
      if (!ch->limit_is_normal) fail("stabilized limit is normal");
    }
  }
}

}  // namespace

Analysis analyze(Group g, std::uint32_t cap) {
  if (cap < 2) throw std::invalid_argument("chain cap must be at least 2");

  Analysis a;
  a.group = std::move(g);
  a.chain_cap = cap;
  const Group& G = a.group;
  const std::uint32_t n = G.order();

  a.orders = kernels::element_orders(G);
  a.involution_set = kernels::involution_set(G);
  a.classes = conjugacy_classes(G);

  const std::uint32_t nc = a.classes.num_classes();
  a.rows.resize(nc);
  for (std::uint32_t c = 0; c < nc; ++c) {
    ClassRow& row = a.rows[c];
    row.rep = a.classes.reps[c];
    row.size = a.classes.class_sizes[c];
    row.order = a.orders[row.rep];
    row.reversible = is_reversible(G, a.classes, row.rep);
  }

  a.rset = DenseBitset(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (a.rows[a.classes.class_of[i]].reversible) a.rset.set(i);

  a.i_chain = product_chain(G, a.involution_set, cap, &a.classes);
  a.r_chain = product_chain(G, a.rset, cap, &a.classes);

  const std::vector<Elem> involutions = a.involution_set.to_indices();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nc); ++c) {
    ClassRow& row = a.rows[c];
    row.strongly = row.reversible && involution_reverses(G, involutions, row.rep);
  }

  const OrderBuckets buckets = make_order_buckets(a.orders);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nc); ++c) {
    ClassRow& row = a.rows[c];
    if (row.reversible) row.min_reverser_order = min_rev_order_scan(G, buckets, row.rep);
  }

  for (const auto& row : a.rows)
    if (row.min_reverser_order)
      a.max_min_reverser_order =
          std::max(a.max_min_reverser_order.value_or(0), *row.min_reverser_order);

  const DenseBitset* i2 = a.i_chain.level_set(2);
  a.i2_eq_r = i2 != nullptr && *i2 == a.rset;
  a.i2_eq_g = i2 != nullptr && i2->count() == n;
  a.r_eq_g = a.rset.count() == n;

  verify_analysis(a);
  return a;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

std::string report_json_string(const Analysis& a) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["group"] = a.group.spec_text();
  j["order"] = a.group.order();
  j["i_size"] = a.involution_set.count();
  j["r_size"] = a.rset.count();
  j["i_chain"] = a.i_chain.sizes;
  j["i_stab"] = a.i_chain.stabilization ? nlohmann::ordered_json(*a.i_chain.stabilization)
                                        : nlohmann::ordered_json(nullptr);
  j["r_chain"] = a.r_chain.sizes;
  j["r_stab"] = a.r_chain.stabilization ? nlohmann::ordered_json(*a.r_chain.stabilization)
                                        : nlohmann::ordered_json(nullptr);
  j["i2_eq_r"] = a.i2_eq_r;
  j["i2_eq_g"] = a.i2_eq_g;
  j["r_eq_g"] = a.r_eq_g;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : a.rows) {
    nlohmann::ordered_json r;
    r["rep"] = a.group.element_repr(row.rep);
    r["size"] = row.size;
    r["order"] = row.order;
    r["reversible"] = row.reversible;
    r["strongly"] = row.strongly;
    r["min_rev_order"] = row.min_reverser_order
                             ? nlohmann::ordered_json(*row.min_reverser_order)
                             : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(r));
  }
  j["classes"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

std::string chain_line(const char* name, const ProductChain& ch) {
  std::ostringstream os;
  os << name << " chain sizes: [";
  for (std::size_t i = 0; i < ch.sizes.size(); ++i) os << (i ? ", " : "") << ch.sizes[i];
  os << "]";
  if (ch.stabilization)
    os << "  stabilizes at n=" << *ch.stabilization << "  limit order " << ch.limit.count()
       << (ch.limit_is_normal ? " (normal subgroup)" : " (NOT normal)");
  else
    os << "  cap reached before stabilization";
  os << "\n";
  return os.str();
}

}  // namespace

std::string report_human(const Analysis& a, std::size_t max_class_rows) {
  std::ostringstream os;
  os << "group: " << a.group.spec_text() << "\n";
  os << "order: " << a.group.order() << "\n";
  os << "|I| = " << a.involution_set.count() << "   |R| = " << a.rset.count() << "\n";
  os << chain_line("I", a.i_chain);
  os << chain_line("R", a.r_chain);
  os << "I^2 = R: " << (a.i2_eq_r ? "yes" : "no") << "   I^2 = G: " << (a.i2_eq_g ? "yes" : "no")
     << "   R = G: " << (a.r_eq_g ? "yes" : "no") << "\n";
  if (a.max_min_reverser_order)
    os << "max min-reverser-order over reversible classes: " << *a.max_min_reverser_order
       << "\n";
  os << "classes (" << a.rows.size() << "):\n";
  os << "  rep                          size      order  rev  strong  min-rev-order\n";
  std::size_t shown = 0;
  for (const auto& row : a.rows) {
    if (max_class_rows && shown == max_class_rows) {
      os << "  ... (" << a.rows.size() - shown << " more classes; use --json for all)\n";
      break;
    }
    std::string rep = a.group.element_repr(row.rep);
    if (rep.size() > 28) rep = rep.substr(0, 25) + "...";
    os << "  " << rep << std::string(rep.size() < 28 ? 28 - rep.size() : 1, ' ');
    std::string size = std::to_string(row.size);
    os << size << std::string(size.size() < 9 ? 9 - size.size() : 1, ' ');
    std::string ord = std::to_string(row.order);
    os << ord << std::string(ord.size() < 6 ? 6 - ord.size() : 1, ' ');
    os << (row.reversible ? " yes " : " no  ");
    os << (row.strongly ? " yes    " : " no     ");
    os << (row.min_reverser_order ? std::to_string(*row.min_reverser_order) : "-") << "\n";
    ++shown;
  }
  return os.str();
}

}  // namespace revgrp
