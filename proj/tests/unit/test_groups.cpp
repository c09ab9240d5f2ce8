#include <random>

#include "coho3/groups.hpp"
#include "doctest.h"

using namespace coho3;
using Element = FiniteGroup::Element;

namespace {

PcGroup G(int n, int eps) { return PcGroup(make_group(Family::G, n, eps)); }

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void check_associative_all(const FiniteGroup& g) {
  const auto n = static_cast<Element>(g.order());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          FAIL("associativity fails");
          return;
        }
}

bool contains_elementary_abelian_27(const FiniteGroup& g) {
  // Any (C3)^3 inside a group of order 81 is a maximal subgroup.
  std::vector<Element> order3;
  for (Element x = 1; x < g.order(); ++x)
    if (g.element_order(x) == 3) order3.push_back(x);
  for (Element a : order3)
    for (Element b : order3)
      for (Element c : order3) {
        if (a >= b || b >= c) continue;
        std::vector<Element> gens{a, b, c};
        auto sub = g.closure(gens);
        if (sub.size() != 27) continue;
        bool good = true;
        for (Element x : sub)
          for (Element y : sub)
            if (g.mul(x, y) != g.mul(y, x) || g.element_order(x) > 3) good = false;
        if (good) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("collection in G(4,1)") {
  PcPresentation p = make_group(Family::G, 4, 1);
  const Exponents A{1, 0, 0}, B{0, 1, 0}, C{0, 0, 1};
  CHECK(multiply(B, A, p) == Exponents{1, 1, 1});  // BA = ABC
  CHECK(multiply(C, A, p) == Exponents{1, 3, 1});  // CA = AB^3C
  CHECK(multiply(Exponents{2, 5, 1}, p.identity(), p) == Exponents{2, 5, 1});
  CHECK(multiply(p.identity(), Exponents{1, 8, 2}, p) == Exponents{1, 8, 2});

  // The collector and the materialized table agree.
  PcGroup g(p);
  Collector col(p);
  for (Element x = 0; x < g.order(); x += 7)
    for (Element y = 0; y < g.order(); y += 5) CHECK(col.mul(x, y) == g.group().mul(x, y));
}

TEST_CASE("collected groups are associative") {
  for (auto p : {make_group(Family::G, 4, 1), make_group(Family::G, 4, -1), make_group(Family::GPrime, 4),
                 make_group(Family::Wreath), make_group(Family::E), make_group(Family::P, 5, -1)}) {
    CAPTURE(p.name());
    check_associative_all(PcGroup(p).group());
  }
  std::mt19937 rng(17);
  for (int n : {5, 6})
    for (int eps : {1, -1}) {
      PcGroup g = G(n, eps);
      std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
      for (int trial = 0; trial < 4000; ++trial) {
        Element a = pick(rng), b = pick(rng), c = pick(rng);
        CHECK(g.group().mul(g.group().mul(a, b), c) == g.group().mul(a, g.group().mul(b, c)));
      }
    }
}

TEST_CASE("builtin orders") {
  for (int n = 4; n <= 7; ++n)
    for (int eps : {1, -1}) {
      CHECK(PcGroup(make_group(Family::G, n, eps)).order() == static_cast<std::size_t>(ipow(3, n)));
      CHECK(PcGroup(make_group(Family::P, n, eps)).order() == static_cast<std::size_t>(ipow(3, n - 1)));
      CHECK(PcGroup(make_group(Family::M, n, eps)).order() == static_cast<std::size_t>(ipow(3, n - 1)));
      CHECK(PcGroup(make_group(Family::N, n, eps)).order() == static_cast<std::size_t>(ipow(3, n - 2)));
    }
  PcGroup e(make_group(Family::E));
  CHECK(e.order() == 27);
  CHECK(exponent(e) == 3);
  CHECK(!e.group().is_abelian());
  CHECK(PcGroup(make_group(Family::GPrime, 4)).order() == 81);
  CHECK(PcGroup(make_group(Family::Wreath)).order() == 81);

  PcGroup m(make_group(Family::M, 5, 1));
  CHECK(m.group().is_abelian());
  CHECK(center(m).to_string() == "C3 + C27");

  CHECK_THROWS_AS(make_group(Family::G, 3, 1), BadParameter);
  CHECK_THROWS_AS(make_group(Family::G, 4, 2), BadParameter);
  CHECK_THROWS_AS(make_group(Family::GPrime, 5), BadParameter);
  CHECK_THROWS_AS(PcGroup(make_group(Family::G, 8, 1)), TooLarge);
}

TEST_CASE("inconsistent presentations are rejected") {
  // A of order 3 cannot act on C3 by inversion-like squaring.
  PcPresentation p("bad", {{"A", 3}, {"B", 3}});
  p.set_commutator(1, 0, {0, 1});  // B^A = B^2
  CHECK_THROWS_AS(PcGroup{p}, InconsistentPresentation);
}

TEST_CASE("structural invariants of G(n,eps)") {
  CHECK(center(G(5, 1)).to_string() == "C9");
  for (int eps : {1, -1}) CHECK(abelianization(G(4, eps)).to_string() == "C3^2");

  PcGroup e(make_group(Family::E));
  for (int n = 4; n <= 6; ++n)
    for (int eps : {1, -1}) {
      CAPTURE(n);
      CAPTURE(eps);
      PcGroup g = G(n, eps);
      const FiniteGroup& fg = g.group();
      auto z = fg.center();
      CHECK(z.size() == static_cast<std::size_t>(ipow(3, n - 3)));
      CHECK(center(g).torsion().size() == 1);  // cyclic
      CHECK(g.order() / derived_subgroup(g).size() == static_cast<std::size_t>(ipow(3, n - 2)));
      CHECK(*abelianization(g).order() == ipow(3, n - 2));
      // Abelianization from the exponent-sum presentation matches the quotient by G'.
      CHECK(fingerprint(fg).abelianization == abelianization(g).torsion());
      PcGroup q(quotient_presentation(g, z, "G/Z"));
      CHECK(isomorphic(q, e).isomorphic);
    }

  CHECK(conjugacy_class_sizes(G(4, 1)) == conjugacy_class_sizes(G(4, -1)));
  CHECK(conjugacy_class_sizes(G(5, 1)) == conjugacy_class_sizes(G(5, -1)));
}

TEST_CASE("isomorphism testing") {
  auto r = isomorphic(G(4, 1), G(4, -1));
  CHECK(!r.isomorphic);
  CHECK(!isomorphic(G(5, 1), G(5, -1)).isomorphic);

  PcGroup g = G(4, 1);
  auto self = isomorphic(g, g);
  REQUIRE(self.isomorphic);
  CHECK(verify_witness(g, g, self.generator_images));
  // A wrong witness is rejected.
  std::vector<Exponents> bad{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  CHECK(!verify_witness(g, g, bad));

  for (int n : {4, 5, 6}) {
    PcGroup gp = G(n, 1), gm = G(n, -1);
    // The unique order-3 normal subgroup is generated by B^{3^{n-3}}.
    const Exponents b3{0, ipow(3, n - 3), 0};
    std::vector<Element> np{gp.element(b3)}, nm{gm.element(b3)};
    PcGroup qp(quotient_presentation(gp, np, "qp")), qm(quotient_presentation(gm, nm, "qm"));
    CHECK(qp.order() == static_cast<std::size_t>(ipow(3, n - 1)));
    auto iso = isomorphic(qp, qm);
    CHECK(iso.isomorphic);
    CHECK(verify_witness(qp, qm, iso.generator_images));
  }

  // Equivalence relation on a corpus of order-81 groups.
  std::vector<PcGroup> corpus;
  corpus.emplace_back(make_group(Family::G, 4, 1));
  corpus.emplace_back(make_group(Family::G, 4, -1));
  corpus.emplace_back(make_group(Family::GPrime, 4));
  corpus.emplace_back(make_group(Family::Wreath));
  corpus.emplace_back(kernel_of_circle_hom({1, 0, -1}).presentation);
  corpus.emplace_back(kernel_of_circle_hom({-1, 0, 1}).presentation);
  const std::size_t k = corpus.size();
  std::vector<std::vector<bool>> iso(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto res = isomorphic(corpus[i], corpus[j]);
      iso[i][j] = res.isomorphic;
      if (res.isomorphic) CHECK(verify_witness(corpus[i], corpus[j], res.generator_images));
    }
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(iso[i][i]);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(iso[i][j] == iso[j][i]);
      for (std::size_t l = 0; l < k; ++l)
        if (iso[i][j] && iso[j][l]) CHECK(iso[i][l]);
    }
  }
  CHECK(iso[0][4]);
  CHECK(iso[0][5]);
  CHECK(!iso[0][1]);
  CHECK(!iso[2][3]);
}

TEST_CASE("kernels of circle-valued homomorphisms") {
  auto check_iso = [](const CircleHom& h, const PcPresentation& target) {
    CircleKernel ker = kernel_of_circle_hom(h);
    PcGroup kg(ker.presentation), tg(target);
    CHECK(kg.order() == tg.order());
    auto r = isomorphic(kg, tg);
    CHECK(r.isomorphic);
    if (r.isomorphic) CHECK(verify_witness(kg, tg, r.generator_images));
  };
  check_iso({1, 0, -1}, make_group(Family::G, 4, 1));   // delta1 - beta
  check_iso({1, 0, 1}, make_group(Family::G, 4, -1));   // delta1 + beta
  check_iso({1, 1, 1}, make_group(Family::GPrime, 4));  // delta1 + beta + alpha
  check_iso({1, 0, 0}, make_group(Family::Wreath));     // delta1
  check_iso({3, 0, -1}, make_group(Family::G, 5, 1));
  check_iso({3, 0, 1}, make_group(Family::G, 5, -1));
  check_iso({-3, 0, 1}, make_group(Family::G, 5, 1));

  CHECK(contains_elementary_abelian_27(kernel_of_circle_hom({1, 0, 0}).group));
  CHECK(!contains_elementary_abelian_27(kernel_of_circle_hom({1, 0, -1}).group));

  for (long c : {1, 3, 9, 27})
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(kernel_of_circle_hom({c, a, b}).group.order() == static_cast<std::size_t>(81 * c));

  CHECK_THROWS_AS(kernel_of_circle_hom({0, 1, 1}), InfiniteKernel);
  CHECK_THROWS_AS(kernel_of_circle_hom({2, 0, 0}), BadParameter);
  CHECK_THROWS_AS(kernel_of_circle_hom({81, 0, 0}), TooLarge);

  // Every listed element lies in the kernel.
  CircleHom h{3, 0, -1};
  for (const auto& x : kernel_of_circle_hom(h).elements) CHECK(h.evaluate(x).first == 0);
}

TEST_CASE("explicit embedding of G(n,eps) in the Lie group") {
  for (int n = 4; n <= 6; ++n)
    for (int eps : {1, -1}) {
      const Integer q = ipow(3, n - 2);
      const LieElement X{1, 0, 0, 0, 1}, Yeta{0, 1, 0, eps, q}, Z{0, 0, 1, 0, 1}, one{};
      auto pw = [](LieElement x, long k) {
        LieElement r;
        for (long t = 0; t < k; ++t) r = r * x;
        return r;
      };
      auto inv = [&](const LieElement& x) {
        LieElement r = x, prev;
        while (!(r == one)) {
          prev = r;
          r = r * x;
        }
        return prev;
      };
      auto comm = [&](const LieElement& x, const LieElement& y) { return inv(x) * inv(y) * x * y; };
      CHECK(pw(X, 3) == one);
      CHECK(pw(Z, 3) == one);
      CHECK(pw(Yeta, ipow(3, n - 2)) == one);
      CHECK(!(pw(Yeta, ipow(3, n - 3)) == one));
      CHECK(comm(Yeta, X) == Z);
      CHECK(comm(Z, X) == pw(Yeta, eps > 0 ? ipow(3, n - 3) : 2 * ipow(3, n - 3)));
      CHECK(comm(Yeta, Z) == one);
      // The generators lie in the kernel of 3^{n-4} delta1 - eps beta.
      CircleHom h{ipow(3, n - 4), 0, -eps};
      for (const auto& g : {X, Yeta, Z}) CHECK(h.evaluate(g).first == 0);
    }
}

TEST_CASE("maximal subgroups") {
  auto ms = maximal_subgroups(G(4, 1));
  REQUIRE(ms.size() == 4);
  CHECK(ms[0].contains == "B");
  CHECK(ms[0].abelian);
  CHECK(ms[0].abelian_invariants == IntVector{3, 9});
  CHECK(ms[1].contains == "A");
  CHECK(!ms[1].abelian);

  auto mm = maximal_subgroups(G(4, -1));
  REQUIRE(mm.size() == 4);
  PcGroup p4(make_group(Family::P, 4, -1));
  CHECK(exponent(p4) == 3);
  for (std::size_t i : {2, 3}) {
    CAPTURE(mm[i].contains);
    CHECK(isomorphic(PcGroup(mm[i].presentation), p4).isomorphic);
  }
  // In G(4,1) those two subgroups have exponent 9 instead.
  for (std::size_t i : {2, 3}) CHECK(exponent(PcGroup(ms[i].presentation)) == 9);

  for (int n : {4, 5, 6})
    for (int eps : {1, -1}) {
      PcGroup g = G(n, eps);
      auto subs = maximal_subgroups(g);
      REQUIRE(subs.size() == 4);
      std::vector<Element> common = subs[0].elements;
      for (const auto& s : subs) {
        std::vector<Element> next;
        std::set_intersection(common.begin(), common.end(), s.elements.begin(), s.elements.end(),
                              std::back_inserter(next));
        common = next;
      }
      CHECK(g.group().abelian_invariants(common) == IntVector{3, ipow(3, n - 3)});
      CHECK(isomorphic(PcGroup(subs[1].presentation), PcGroup(make_group(Family::P, n, eps))).isomorphic);
      CHECK(subs[0].abelian_invariants == IntVector{3, ipow(3, n - 2)});
    }
}

TEST_CASE("conversion to a pc presentation") {
  PcGroup g(make_group(Family::GPrime, 4));
  PcConversion conv = to_pc_presentation(g.group(), "copy");
  PcGroup h(conv.presentation);
  CHECK(h.order() == 81);
  for (Element x = 0; x < g.order(); x += 3)
    for (Element y = 0; y < g.order(); y += 4)
      CHECK(h.element(conv.normal_forms[g.group().mul(x, y)]) ==
            h.group().mul(h.element(conv.normal_forms[x]), h.element(conv.normal_forms[y])));
  CHECK(isomorphic(g, h).isomorphic);
}

TEST_CASE("fingerprint json") {
  nlohmann::json j;
  to_json(j, fingerprint(G(4, 1).group()));
  CHECK(j["order"] == 81);
  CHECK(j["center"] == nlohmann::json::array({3}));
}
