#include <cmath>
#include <random>

#include "coho3/dsl.hpp"
#include "doctest.h"

using namespace coho3;

namespace {

Polynomial P(const GradedRing& r, const std::string& s) { return parse_polynomial(r.presentation(), s); }

// Columns m*r for every relation r and complementary monomial m, written in
// the monomial basis of degree d. Built independently of graded_piece so the
// rank oracles below do not share its code path.
std::vector<IntVector> relation_columns(const RingPresentation& r, int d, const std::vector<Monomial>& basis) {
  std::vector<IntVector> cols;
  for (const auto& rel : r.relations()) {
    int rd = *r.degree(rel);
    if (rd > d) continue;
    for (const auto& m : r.monomials(d - rd)) {
      Polynomial mono;
      mono.add(m, 1);
      Polynomial prod = r.multiply(mono, rel);
      IntVector col(basis.size(), 0);
      for (const auto& [mon, c] : prod.terms) {
        auto it = std::find(basis.begin(), basis.end(), mon);
        REQUIRE(it != basis.end());
        col[it - basis.begin()] = c;
      }
      cols.push_back(col);
    }
  }
  return cols;
}

// Rank over F_p (p > 0) or over Q (p == 0).
std::size_t rank_mod(std::vector<IntVector> cols, long p) {
  if (cols.empty()) return 0;
  const std::size_t n = cols[0].size();
  std::vector<std::vector<mpq_class>> a(cols.size(), std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = cols[i][j];
      if (p) {
        v %= p;
        if (v < 0) v += p;
      }
      a[i][j] = v;
    }
  auto normalize = [&](mpq_class& x) {
    if (!p) return;
    // x is an integer residue; keep it in [0, p).
    Integer z = x.get_num();
    z %= p;
    if (z < 0) z += p;
    x = z;
  };
  auto inverse = [&](const mpq_class& x) -> mpq_class {
    if (!p) return 1 / x;
    for (long k = 1; k < p; ++k)
      if ((Integer(x.get_num()) * k) % p == 1) return mpq_class(k);
    return 0;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    mpq_class inv = inverse(a[rank][c]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      mpq_class f = a[i][c] * inv;
      normalize(f);
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[rank][j];
        normalize(a[i][j]);
      }
    }
    ++rank;
  }
  return rank;
}

// Coefficient of t^d in (t^6 - t^4 + t^2) / ((1 - t^6)(1 - t^2)).
long poincare_coefficient(int d) {
  if (d % 2) return 0;
  auto c = [](int m) { return m < 0 ? 0 : m / 3 + 1; };  // t^2-degree m of 1/((1-t^6)(1-t^2))
  const int k = d / 2;
  return c(k - 1) - c(k - 2) + c(k - 3);
}

Integer total_torsion(const FgAbGroup& g) {
  Integer o = 1;
  for (const auto& t : g.torsion()) o *= t;
  return o;
}

}  // namespace

TEST_CASE("Lie group ring: low-degree pieces") {
  auto g = shared_ring("thm10.G");
  CHECK(g->presentation().size() == 7);

  const GradedPiece& d3 = g->piece(3);
  CHECK(d3.structure.free_rank() == 0);
  CHECK(d3.structure.torsion() == IntVector{3});
  CHECK(!d3.is_zero(P(*g, "mu")));

  const GradedPiece& d5 = g->piece(5);
  CHECK(d5.structure.torsion() == IntVector{3});
  CHECK(!d5.is_zero(P(*g, "beta*mu")));
  CHECK(d5.is_zero(P(*g, "alpha*mu")));
  CHECK(d5.is_zero(P(*g, "delta1*mu")));

  const GradedPiece& d4 = g->piece(4);
  CHECK(d4.structure.free_rank() == 1);
  CHECK(d4.structure.torsion() == IntVector{3, 3, 3, 3});
  // Oracle: ranks of the relation matrix over Q and F_3. The cokernel has
  // rank (#monomials - rank_Q) and dimension (#monomials - rank_F3) mod 3.
  auto cols = relation_columns(g->presentation(), 4, d4.basis);
  const std::size_t nmon = d4.basis.size();
  CHECK(nmon - rank_mod(cols, 0) == 1);
  CHECK(nmon - rank_mod(cols, 3) == 5);
  // The five listed classes are independent mod 3 and the four torsion ones
  // are killed by 3, so no C_9 can hide in the torsion.
  for (const char* m : {"alpha^2", "delta1*beta", "alpha*beta", "beta^2"}) {
    CHECK(!d4.is_zero(P(*g, m)));
    CHECK(d4.is_zero(P(*g, std::string("3*") + m)));
  }
  std::vector<IntVector> listed;
  for (const char* m : {"delta2", "alpha^2", "delta1*beta", "alpha*beta", "beta^2"})
    listed.push_back(d4.ambient(P(*g, m)));
  auto with_listed = cols;
  with_listed.insert(with_listed.end(), listed.begin(), listed.end());
  CHECK(rank_mod(with_listed, 3) == nmon);
}

TEST_CASE("reduce") {
  auto g = shared_ring("thm13.G(5,1)");
  for (const auto& c : g->reduce(P(*g, "3*delta2 - 4*delta1^2"))) CHECK(c == 0);
  CHECK(g->is_zero(P(*g, "3*delta2 - 4*delta1^2")));
  CHECK(g->reduce(Polynomial{}).empty());
  CHECK(!g->is_zero(P(*g, "delta2")));
  CHECK_THROWS_AS(g->reduce(P(*g, "alpha + mu")), NotHomogeneous);

  auto p = shared_ring("thm6.P");
  CHECK(p->is_zero(P(*p, "alpha*delta1")));
  CHECK(p->is_zero(P(*p, "gamma*delta1")));

  for (const auto& rel : g->presentation().relations()) CHECK(g->is_zero(rel));
  CHECK_THROWS_AS(g->piece(degree_bound() + 1), DegreeBoundExceeded);
}

TEST_CASE("hilbert reports") {
  auto m = shared_ring("prop4.M");
  auto h = hilbert_report(*m, 4);
  REQUIRE(h.size() == 5);
  CHECK(h[0].free_rank == 1);
  CHECK(h[0].torsion.empty());
  CHECK(h[1].free_rank == 0);
  CHECK(h[2].free_rank == 1);
  CHECK(h[2].torsion == IntVector{3, 3});

  auto t = shared_ring("thm13.G(5,1)");
  auto ht = hilbert_report(*t, 12);
  CHECK(ht[0].free_rank == 1);
  for (int d = 1; d <= 12; ++d) CHECK(ht[d].free_rank == 0);
  // 3^{n-3} delta1 = 0.
  CHECK(t->piece(2).structure.torsion() == IntVector{3, 9});

  for (const auto& name : {"thm10.G", "lemma8.gr", "thm6.P", "thm6.Pfin(5)"}) {
    auto r = shared_ring(name);
    CHECK(r->piece(0).structure.free_rank() == 1);
    CHECK(r->piece(0).structure.torsion().empty());
  }
}

TEST_CASE("ring maps") {
  for (const char* name : {"prop7.resM", "prop7.resP", "cor14(5)", "cor14(6)", "prop4.X", "thm6.Y"}) {
    CAPTURE(name);
    MapReport r = verify_map(builtin_map(name));
    for (const auto& c : r.checks) {
      CAPTURE(c.relation);
      CHECK(c.zero);
    }
    CHECK(r.passes);
  }
  CHECK(verify_map(identity_map(shared_ring("thm10.G"))).passes);

  // A map that ignores the relation 3*beta = 0 fails.
  auto g = shared_ring("thm10.G");
  auto m = shared_ring("prop4.M");
  auto bad = builtin_map("prop7.resM");
  bad.images[1] = P(*m, "tau");
  CHECK(!verify_map(bad).passes);
  CHECK_THROWS_AS(make_ring_map(g, m, std::vector<Polynomial>(7, P(*m, "tau"))), NotHomogeneous);
}

TEST_CASE("bijectivity of the twisted comparison map") {
  for (int n : {5, 6}) {
    CAPTURE(n);
    auto flags = map_bijective(builtin_map("cor14(" + std::to_string(n) + ")"), 12);
    REQUIRE(flags.size() == 13);
    for (int d = 0; d <= 12; ++d) {
      CAPTURE(d);
      CHECK(flags[d]);
    }
  }
  auto id = map_bijective(identity_map(shared_ring("thm10.G")), 8);
  for (bool b : id) CHECK(b);

  // delta1 -> 3 delta1, extended to a ring map by scaling each even
  // generator of degree 2k by 3^k (odd generators and alpha, zeta are
  // 3-torsion and go to 0). delta1 has order 9, so degree 2 is not onto.
  auto t = shared_ring("thm13.G(5,1)");
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < t->presentation().size(); ++i) {
    const int d = t->presentation().generators()[i].degree;
    imgs.push_back(d % 2 ? Polynomial{} : Integer(pow(3, d / 2)) * t->presentation().generator(i));
  }
  RingMap triple = make_ring_map(t, t, imgs, "triple");
  REQUIRE(verify_map(triple).passes);
  auto f = map_bijective(triple, 4);
  CHECK(f[0]);
  CHECK(!f[2]);
}

TEST_CASE("order-3 actions") {
  Order3Action y = make_action(builtin_map("thm6.Y"), 12);
  for (int d = 0; d <= 12; ++d) {
    CAPTURE(d);
    FgAbGroup h = h1_c3(y, d);
    CHECK(h.free_rank() == 0);
    CHECK(h.exponent() <= 3);
    CHECK(static_cast<long>(h.torsion().size()) == poincare_coefficient(d));
  }
  CHECK(poincare_coefficient(2) == 1);
  CHECK(poincare_coefficient(4) == 0);
  CHECK(poincare_coefficient(8) == 2);

  // zeta restricts to alpha^2*gamma - gamma^3, which the action fixes.
  auto p = shared_ring("thm6.P");
  const GradedPiece& d6 = p->piece(6);
  Polynomial z = P(*p, "gamma^3 - gamma*alpha^2");
  CHECK(d6.is_zero(y.map.apply(z) - z));
  CHECK(!d6.is_zero(y.map.apply(P(*p, "gamma^3")) - P(*p, "gamma^3")));
  // The next fixed element in the gamma tower, gamma^5 - gamma^3*alpha^2.
  Polynomial z5 = P(*p, "gamma^5 - gamma^3*alpha^2");
  CHECK(p->is_zero(y.map.apply(z5) - z5));

  // Trivial action: everything is fixed.
  Order3Action triv = make_action(identity_map(p), 6);
  for (int d = 0; d <= 6; ++d) CHECK(fixed_subgroup(triv, d) == p->piece(d).structure);

  Order3Action x = make_action(builtin_map("prop4.X"), 8);
  auto m = shared_ring("prop4.M");
  CHECK(m->piece(2).is_zero(x.map.apply(P(*m, "beta")) - P(*m, "beta")));

  // tau -> -tau has order 2.
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < m->presentation().size(); ++i) imgs.push_back(m->presentation().generator(i));
  imgs[*m->presentation().find("tau")] = P(*m, "-tau");
  CHECK_THROWS_AS(make_action(make_ring_map(m, m, imgs), 4), NotAnAction);
}

TEST_CASE("multiplication kernels") {
  auto g = shared_ring("thm10.G");
  FgAbGroup k = mult_kernel(*g, P(*g, "delta1 - beta"), 4);
  CHECK(k.order() == Integer(3));
  CHECK(kernel_spanned_by(*g, P(*g, "delta1 - beta"), 4, {P(*g, "delta1*beta + alpha^2")}));
  CHECK(!kernel_spanned_by(*g, P(*g, "delta1 - beta"), 4, {P(*g, "alpha^2")}));
  CHECK(mult_kernel(*g, P(*g, "delta1 + beta + alpha"), 4).is_trivial());
  CHECK(mult_kernel(*g, P(*g, "1"), 4).is_trivial());
  // beta is a zero divisor on the subgroup ring.
  auto m = shared_ring("prop4.M");
  CHECK(!mult_kernel(*m, P(*m, "beta"), 2).is_trivial());
}

TEST_CASE("closure of the quotient construction") {
  for (const char* name : {"prop4.M", "thm6.P", "thm6.P(5)", "thm6.Pfin(4)", "thm6.Pfin(5)", "thm10.G",
                           "thm10.G-stated", "lemma8.gr", "thm13.G(5,1)", "thm13.G(5,-1)", "thm13.G(6,1)"}) {
    CAPTURE(name);
    auto r = shared_ring(name);
    const auto& pres = r->presentation();
    for (const auto& rel : pres.relations()) {
      const int rd = *pres.degree(rel);
      for (int d = rd; d <= 12; ++d)
        for (const auto& mono : pres.monomials(d - rd)) {
          Polynomial m;
          m.add(mono, 1);
          CHECK(r->is_zero(pres.multiply(m, rel)));
          CHECK(r->is_zero(pres.multiply(rel, m)));
        }
    }
  }
}

TEST_CASE("graded commutativity") {
  std::mt19937 rng(7);
  for (const char* name : {"thm13.G(5,-1)", "thm6.Pfin(5)", "thm10.G"}) {
    auto r = shared_ring(name);
    const auto& pres = r->presentation();
    auto random_elt = [&](int d) {
      Polynomial p;
      for (const auto& m : pres.monomials(d))
        if (rng() % 2) p.add(m, static_cast<long>(rng() % 7) - 3);
      return p;
    };
    for (int trial = 0; trial < 30; ++trial) {
      const int dx = 2 + rng() % 5, dy = 2 + rng() % 5;
      Polynomial x = random_elt(dx), y = random_elt(dy);
      Polynomial xy = pres.multiply(x, y), yx = pres.multiply(y, x);
      Polynomial diff = (dx * dy) % 2 ? xy + yx : xy - yx;
      CHECK(r->is_zero(diff));
    }
    // Odd generators anticommute and square to zero.
    for (std::size_t i = 0; i < pres.size(); ++i)
      if (pres.is_odd(i)) CHECK(pres.multiply(pres.generator(i), pres.generator(i)).is_zero());
  }
}

TEST_CASE("associated graded has the same orders") {
  auto g = shared_ring("thm10.G");
  auto gr = shared_ring("lemma8.gr");
  for (int d = 0; d <= 12; ++d) {
    CAPTURE(d);
    CHECK(g->piece(d).structure.free_rank() == gr->piece(d).structure.free_rank());
    CHECK(total_torsion(g->piece(d).structure) == total_torsion(gr->piece(d).structure));
  }
}

TEST_CASE("quotient by 3^(n-4) delta1") {
  auto q = shared_ring("thm6.P(5)");
  CHECK(q->piece(4).structure.exponent() == 9);
  CHECK(q->piece(4).structure.is_finite());
  auto q4 = shared_ring("thm6.P(4)");
  CHECK(q4->is_zero(P(*q4, "delta1")));
  auto f4 = shared_ring("thm6.Pfin(4)");
  CHECK(!f4->is_zero(P(*f4, "mu1*mu2")));
  auto f5 = shared_ring("thm6.Pfin(5)");
  CHECK(f5->is_zero(P(*f5, "mu1*mu2")));
}

TEST_CASE("stated and derived Lie group relations differ") {
  auto a = shared_ring("thm10.G");
  auto b = shared_ring("thm10.G-stated");
  CHECK(a->is_zero(P(*a, "delta1^2 - 3*delta2 + delta1*beta")));
  CHECK(!b->is_zero(P(*b, "delta1^2 - 3*delta2 + delta1*beta")));
  CHECK(b->is_zero(P(*b, "delta1^2 - 3*delta2")));
  CHECK(a->presentation().provenance() != b->presentation().provenance());
}

TEST_CASE("piece json") {
  auto m = shared_ring("prop4.M");
  nlohmann::json j = piece_json(m->presentation(), m->piece(2));
  CHECK(j["degree"] == 2);
  CHECK(j["free_rank"] == 1);
  CHECK(j["torsion"].size() == 2);
  CHECK(j["basis"].size() == 3);
}
