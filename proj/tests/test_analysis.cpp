#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <json.hpp>

#include "revgrp/analysis.hpp"
#include "revgrp/group.hpp"
#include "revgrp/kernels.hpp"

using namespace revgrp;

namespace {

constexpr const char* kOrder21 = "perm:7:[2,3,4,5,6,7,1];[2,4,6,1,3,5,7]";
constexpr const char* kC2xC4 = "perm:6:[2,1,3,4,5,6];[1,2,4,5,6,3]";

// All-pairs conjugacy oracle: b is conjugate to a iff some h moves a to b.
bool brute_same_class(const Group& g, Elem a, Elem b) {
  for (Elem h = 0; h < g.order(); ++h)
    if (g.conjugate(a, h) == b) return true;
  return false;
}

std::multiset<std::uint32_t> class_size_multiset(const ConjugacyPartition& p) {
  return {p.class_sizes.begin(), p.class_sizes.end()};
}

}  // namespace

TEST_CASE("conjugacy classes against the all-pairs oracle") {
  CHECK(conjugacy_classes(build_group("Sym(1)")).num_classes() == 1);

  for (const char* spec : {"Sym(3)", "Q8", "Alt(4)", "Dih(4)"}) {
    CAPTURE(spec);
    Group g = build_group(spec);
    ConjugacyPartition part = conjugacy_classes(g);
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = a; b < g.order(); ++b)
        REQUIRE((part.class_of[a] == part.class_of[b]) == brute_same_class(g, a, b));
    // Representatives are the least index of their class.
    for (std::uint32_t c = 0; c < part.num_classes(); ++c) {
      Elem rep = part.reps[c];
      for (Elem e = 0; e < rep; ++e) REQUIRE(part.class_of[e] != c);
      REQUIRE(part.class_of[rep] == c);
    }
  }

  CHECK(class_size_multiset(conjugacy_classes(build_group("Sym(3)"))) ==
        std::multiset<std::uint32_t>{1, 2, 3});
  CHECK(class_size_multiset(conjugacy_classes(build_group("Q8"))) ==
        std::multiset<std::uint32_t>{1, 1, 2, 2, 2});
}

TEST_CASE("involution counts") {
  // Squaring oracle.
  auto brute_involutions = [](const Group& g) {
    std::uint32_t c = 0;
    for (Elem e = 0; e < g.order(); ++e)
      if (g.mult(e, e) == 0) ++c;
    return c;
  };
  Group c3 = build_group("Cyclic(3)");
  Group q8 = build_group("Q8");
  Group s3 = build_group("Sym(3)");
  CHECK(kernels::involution_set(c3).count() == 1);
  CHECK(kernels::involution_set(q8).count() == 2);
  CHECK(kernels::involution_set(s3).count() == 4);
  CHECK(brute_involutions(c3) == 1);
  CHECK(brute_involutions(q8) == 2);
  CHECK(brute_involutions(s3) == 4);
}

TEST_CASE("reverser sets") {
  Group s4 = build_group("Sym(4)");
  ReverserSet all = reversers(s4, 0);
  CHECK(all.reversers.size() == s4.order());

  Group s3 = build_group("Sym(3)");
  Elem f = *s3.element_from_text("(1 2 3)");
  ReverserSet rs = reversers(s3, f);
  std::set<std::string> reprs;
  for (Elem h : rs.reversers) reprs.insert(s3.element_repr(h));
  CHECK(reprs == std::set<std::string>{"(1 2)", "(1 3)", "(2 3)"});

  Group a4 = build_group("Alt(4)");
  Elem f4 = *a4.element_from_text("(1 2 3)");
  CHECK(reversers(a4, f4).reversers.empty());
}

TEST_CASE("reverser coset law and the (hf)^2 = h^2 identity") {
  for (const char* spec :
       {"Sym(3)", "Sym(4)", "Sym(5)", "Dih(6)", "Q8", "Cyclic(8)", "Alt(4)", "PSL(2,3)",
        "GL(2,3)"}) {
    CAPTURE(spec);
    Group g = build_group(spec);
    REQUIRE(g.order() <= 500);
    for (Elem f = 0; f < g.order(); ++f) {
      auto rs = kernels::reversers_of(g, f);
      if (rs.empty()) continue;
      std::uint64_t cf = kernels::centralizer_order(g, f);
      REQUIRE(rs.size() == cf);
      // R_f is exactly the centralizer coset C(f) * h0.
      Elem h0 = rs[0];
      std::set<Elem> coset;
      for (Elem c = 0; c < g.order(); ++c)
        if (g.conjugate(f, c) == f) coset.insert(g.mult(c, h0));
      REQUIRE(coset == std::set<Elem>(rs.begin(), rs.end()));
      for (Elem h : rs) {
        Elem hf = g.mult(h, f);
        REQUIRE(g.mult(hf, hf) == g.mult(h, h));
      }
    }
  }
}

TEST_CASE("reversibility and strong reversibility") {
  Group s5 = build_group("Sym(5)");
  ConjugacyPartition part5 = conjugacy_classes(s5);
  DenseBitset inv5 = kernels::involution_set(s5);
  for (Elem f = 0; f < s5.order(); ++f) {
    CHECK(is_reversible(s5, part5, f));
    CHECK(is_strongly_reversible(s5, inv5, f));
  }

  Group q8 = build_group("Q8");
  ConjugacyPartition part8 = conjugacy_classes(q8);
  DenseBitset inv8 = kernels::involution_set(q8);
  Elem i = *q8.element_from_text("i");
  CHECK(is_reversible(q8, part8, i));
  CHECK(!is_strongly_reversible(q8, inv8, i));
  CHECK(is_reversible(q8, part8, 0));
  CHECK(is_strongly_reversible(q8, inv8, 0));
}

TEST_CASE("reversible sets") {
  // Abelian: R = I.
  Group ab = build_group(kC2xC4);
  REQUIRE(ab.order() == 8);
  ConjugacyPartition part = conjugacy_classes(ab);
  CHECK(reversible_set(ab, part) == kernels::involution_set(ab));

  // Alt(4): the Klein four-subgroup, verified per element by reverser search.
  Group a4 = build_group("Alt(4)");
  ConjugacyPartition part4 = conjugacy_classes(a4);
  DenseBitset r4 = reversible_set(a4, part4);
  CHECK(r4.count() == 4);
  for (Elem f = 0; f < a4.order(); ++f) {
    bool has_reverser = !kernels::reversers_of(a4, f).empty();
    CHECK(r4.test(f) == has_reverser);
    CHECK(has_reverser == (a4.order_of(f) <= 2));  // id + the three double transpositions
  }

  Group q8 = build_group("Q8");
  CHECK(reversible_set(q8, conjugacy_classes(q8)).count() == 8);
}

TEST_CASE("product chains") {
  Group s4 = build_group("Sym(4)");
  ConjugacyPartition part = conjugacy_classes(s4);
  DenseBitset invs = kernels::involution_set(s4);
  // Involutions of Sym(4): id + 6 transpositions + 3 double transpositions.
  std::uint32_t brute = 0;
  for (Elem e = 0; e < s4.order(); ++e)
    if (s4.mult(e, e) == 0) ++brute;
  REQUIRE(brute == 10);

  ProductChain ch = product_chain(s4, invs, 12, &part);
  CHECK(ch.sizes == std::vector<std::uint64_t>{10, 24});
  CHECK(ch.stabilization == 2);
  CHECK(!ch.cap_reached);
  CHECK(ch.limit.count() == 24);
  CHECK(ch.limit_is_subgroup);
  CHECK(ch.limit_is_normal);
  CHECK(ch.level_set(5) != nullptr);
  CHECK(ch.level_set(5)->count() == 24);

  Group q8 = build_group("Q8");
  ConjugacyPartition part8 = conjugacy_classes(q8);
  ProductChain ch8 = product_chain(q8, kernels::involution_set(q8), 12, &part8);
  CHECK(ch8.sizes == std::vector<std::uint64_t>{2, 2});
  CHECK(ch8.stabilization == 1);
  CHECK(ch8.limit.count() == 2);
  CHECK(ch8.limit.test(0));
  CHECK(ch8.limit.test(*q8.element_from_text("-1")));
  CHECK(ch8.limit_is_normal);

  // base = {id}: constant chain.
  DenseBitset only_id(s4.order());
  only_id.set(0);
  ProductChain chid = product_chain(s4, only_id, 12, &part);
  CHECK(chid.sizes == std::vector<std::uint64_t>{1, 1});
  CHECK(chid.stabilization == 1);

  // Cap reached before stabilization.
  ProductChain capped = product_chain(s4, invs, 1, &part);
  CHECK(capped.cap_reached);
  CHECK(!capped.stabilization);
  CHECK(capped.sizes == std::vector<std::uint64_t>{10});
  CHECK(capped.level_set(2) == nullptr);

  // A base without the identity need not stabilize: powers of a transposition
  // alternate {t}, {id}, {t}, ...
  Group s3 = build_group("Sym(3)");
  ConjugacyPartition part3 = conjugacy_classes(s3);
  DenseBitset t_only(s3.order());
  t_only.set(*s3.element_from_text("(1 2)"));
  ProductChain alt = product_chain(s3, t_only, 6, &part3);
  CHECK(alt.cap_reached);
  CHECK(!alt.stabilization);
  for (std::size_t k = 0; k < alt.sizes.size(); ++k) CHECK(alt.sizes[k] == 1);

  CHECK_THROWS_AS(product_chain(s3, DenseBitset(s3.order()), 4, &part3),
                  std::invalid_argument);
}

TEST_CASE("minimum reverser orders") {
  Group s3 = build_group("Sym(3)");
  CHECK(min_reverser_order(s3, 0) == 1);
  CHECK(min_reverser_order(s3, *s3.element_from_text("(1 2 3)")) == 2);

  Group q8 = build_group("Q8");
  Elem i = *q8.element_from_text("i");
  // Oracle: the reversers of i are exactly {j, -j, k, -k}, all of order 4.
  auto rs = kernels::reversers_of(q8, i);
  std::set<std::string> reprs;
  for (Elem h : rs) {
    reprs.insert(q8.element_repr(h));
    CHECK(q8.order_of(h) == 4);
  }
  CHECK(reprs == std::set<std::string>{"j", "-j", "k", "-k"});
  CHECK(min_reverser_order(q8, i) == 4);

  Group a4 = build_group("Alt(4)");
  CHECK(!min_reverser_order(a4, *a4.element_from_text("(1 2 3)")).has_value());
}

TEST_CASE("full analysis: Alt(4)") {
  Analysis a = analyze(build_group("Alt(4)"));
  CHECK(a.group.order() == 12);
  CHECK(a.involution_set.count() == 4);
  CHECK(a.rset.count() == 4);
  CHECK(a.i2_eq_r);
  CHECK(!a.r_eq_g);
  REQUIRE(a.i_chain.stabilization.has_value());
  CHECK(a.i_chain.limit.count() == 4);  // the Klein four-subgroup
  CHECK(a.i_chain.limit_is_normal);
  // Class rows: sizes 1+3+4+4, orders 1,2,3,3.
  REQUIRE(a.rows.size() == 4);
  CHECK(a.rows[0].min_reverser_order == 1);
}

TEST_CASE("full analysis: Sym(5)") {
  Analysis a = analyze(build_group("Sym(5)"));
  CHECK(a.i2_eq_r);
  CHECK(a.i2_eq_g);
  CHECK(a.r_eq_g);
  CHECK(a.i_chain.stabilization == 2);
  for (const auto& row : a.rows) {
    CHECK(row.reversible);
    CHECK(row.strongly);
    CHECK(row.min_reverser_order.value() <= 2);
  }
  CHECK(a.max_min_reverser_order == 2);
}

TEST_CASE("full analysis: odd order means R = {id}") {
  for (const char* spec : {"Cyclic(5)", "Cyclic(9)", "Cyclic(15)", kOrder21}) {
    CAPTURE(spec);
    Analysis a = analyze(build_group(spec));
    CHECK(a.group.order() % 2 == 1);
    CHECK(a.rset.count() == 1);
    CHECK(a.rset.test(0));
    CHECK(a.involution_set.count() == 1);
  }
  Analysis f21 = analyze(build_group(kOrder21));
  CHECK(f21.group.order() == 21);
}

TEST_CASE("full analysis: abelian C2 x C4") {
  Analysis a = analyze(build_group(kC2xC4));
  CHECK(a.group.order() == 8);
  CHECK(a.rset == a.involution_set);
  REQUIRE(a.i_chain.stabilization.has_value());
  CHECK(a.i_chain.limit == a.involution_set);
  CHECK(a.rset.count() == 4);
}

TEST_CASE("trivial group report") {
  Analysis a = analyze(build_group("Sym(1)"));
  CHECK(a.group.order() == 1);
  CHECK(a.involution_set.count() == 1);
  CHECK(a.rset.count() == 1);
  CHECK(a.i_chain.stabilization == 1);
  CHECK(a.i_chain.sizes == std::vector<std::uint64_t>{1});
  CHECK(a.r_chain.stabilization == 1);
}

TEST_CASE("report json: schema and determinism") {
  Analysis a1 = analyze(build_group("Q8"));
  Analysis a2 = analyze(build_group("Q8"));
  std::string s1 = report_json_string(a1);
  std::string s2 = report_json_string(a2);
  CHECK(s1 == s2);

  nlohmann::json j = nlohmann::json::parse(s1);
  CHECK(j["schema"] == 1);
  CHECK(j["group"] == "Q8");
  CHECK(j["order"] == 8);
  CHECK(j["i_size"] == 2);
  CHECK(j["r_size"] == 8);
  CHECK(j["i_chain"] == nlohmann::json::array({2, 2}));
  CHECK(j["i_stab"] == 1);
  CHECK(j["i2_eq_r"] == false);
  CHECK(j["i2_eq_g"] == false);
  CHECK(j["r_eq_g"] == true);
  REQUIRE(j["classes"].is_array());
  REQUIRE(j["classes"].size() == 5);
  const auto& row0 = j["classes"][0];
  CHECK(row0["rep"] == "1");
  CHECK(row0["size"] == 1);
  CHECK(row0["order"] == 1);
  CHECK(row0["reversible"] == true);
  CHECK(row0["strongly"] == true);
  CHECK(row0["min_rev_order"] == 1);
  // The class of i: reversible but not strongly, least reverser order 4.
  bool saw_i = false;
  for (const auto& row : j["classes"]) {
    if (row["rep"] == "i") {
      saw_i = true;
      CHECK(row["reversible"] == true);
      CHECK(row["strongly"] == false);
      CHECK(row["min_rev_order"] == 4);
    }
  }
  CHECK(saw_i);

  std::string human = report_human(a1);
  CHECK(human.find("group: Q8") != std::string::npos);
  CHECK(human.find("R = G: yes") != std::string::npos);
}

TEST_CASE("analyze validates its chain cap") {
  CHECK_THROWS_AS(analyze(build_group("Sym(3)"), 1), std::invalid_argument);
}
