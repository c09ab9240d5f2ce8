#include <algorithm>
#include <functional>
#include <unordered_set>

#include "coho3/chars.hpp"

namespace coho3 {

using Element = PcGroup::Element;

namespace {

long pow3(int e) {
  long r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

struct Symbols {
  ClassFunction theta, psi, chi, chibar, xi, xibar;
};

struct Relation {
  std::string name;
  bool needs_xi;
  std::function<std::pair<ClassFunction, ClassFunction>(const Symbols&)> sides;
};

// The ring and exterior-power relations for G(n,eps).
std::vector<Relation> relations(const CharacterTable& t, int n, int eps, bool with_lambda, bool with_duals) {
  const long e4 = pow3(n - 4), e3 = pow3(n - 3);
  const long twist = eps * e4;
  const std::string e4s = "3^" + std::to_string(n - 4), e3s = "3^" + std::to_string(n - 3);
  const std::string tw = eps > 0 ? e4s : "-" + e4s;
  auto one = t.constant(1);
  auto sum3 = [one](const ClassFunction& x) { return one + x + x * x; };
  auto psi_triple = [one, e4](const ClassFunction& psi) { return one + psi.pow(e4) + psi.pow(-e4); };

  std::vector<Relation> r;
  r.push_back({"theta^3 = 1", false, [one](const Symbols& s) { return std::pair{s.theta.pow(3), one}; }});
  r.push_back({"psi^(" + e3s + ") = 1", false, [one, e3](const Symbols& s) { return std::pair{s.psi.pow(e3), one}; }});
  r.push_back({"theta*chi = chi", false, [](const Symbols& s) { return std::pair{s.theta * s.chi, s.chi}; }});
  r.push_back({"psi^(" + e4s + ")*chi = chi", false,
               [e4](const Symbols& s) { return std::pair{s.psi.pow(e4) * s.chi, s.chi}; }});
  r.push_back({"chi^2 = 3*chibar", false, [](const Symbols& s) { return std::pair{s.chi * s.chi, 3 * s.chibar}; }});
  r.push_back({"chi*chibar = (1+theta+theta^2)(1+psi^(" + e4s + ")+psi^(-" + e4s + "))", false,
               [sum3, psi_triple](const Symbols& s) {
                 return std::pair{s.chi * s.chibar, sum3(s.theta) * psi_triple(s.psi)};
               }});
  r.push_back({"xi*chi = xi*(1+psi^(" + e4s + ")+psi^(-" + e4s + "))", true,
               [psi_triple](const Symbols& s) { return std::pair{s.xi * s.chi, s.xi * psi_triple(s.psi)}; }});
  r.push_back({"xi*chibar = xi*(1+psi^(" + e4s + ")+psi^(-" + e4s + "))", true,
               [psi_triple](const Symbols& s) { return std::pair{s.xi * s.chibar, s.xi * psi_triple(s.psi)}; }});
  r.push_back({"theta*xi = xi", true, [](const Symbols& s) { return std::pair{s.theta * s.xi, s.xi}; }});
  r.push_back({"xi*xibar = chi+chibar+1+theta+theta^2", true,
               [sum3](const Symbols& s) { return std::pair{s.xi * s.xibar, s.chi + s.chibar + sum3(s.theta)}; }});
  r.push_back({"xi^2 = xibar*psi*(1+2*psi^(" + tw + "))", true, [one, twist](const Symbols& s) {
                 return std::pair{s.xi * s.xi, s.xibar * s.psi * (one + 2 * s.psi.pow(twist))};
               }});
  if (with_duals) {
    r.push_back({"thetabar*chibar = chibar", false,
                 [](const Symbols& s) { return std::pair{s.theta.conj() * s.chibar, s.chibar}; }});
    r.push_back({"chibar^2 = 3*chi", false,
                 [](const Symbols& s) { return std::pair{s.chibar * s.chibar, 3 * s.chi}; }});
    r.push_back({"xibar*chibar = xibar*(1+psi^(" + e4s + ")+psi^(-" + e4s + "))", true,
                 [psi_triple](const Symbols& s) { return std::pair{s.xibar * s.chibar, s.xibar * psi_triple(s.psi)}; }});
    r.push_back({"xibar*chi = xibar*(1+psi^(" + e4s + ")+psi^(-" + e4s + "))", true,
                 [psi_triple](const Symbols& s) { return std::pair{s.xibar * s.chi, s.xibar * psi_triple(s.psi)}; }});
    r.push_back({"thetabar*xibar = xibar", true,
                 [](const Symbols& s) { return std::pair{s.theta.conj() * s.xibar, s.xibar}; }});
    r.push_back({"xibar^2 = xi*psibar*(1+2*psibar^(" + tw + "))", true, [one, twist](const Symbols& s) {
                   return std::pair{s.xibar * s.xibar, s.xi * s.psi.conj() * (one + 2 * s.psi.conj().pow(twist))};
                 }});
  }
  if (with_lambda) {
    const std::string lt = "1" + std::string(eps > 0 ? "+" : "-") + e4s;
    r.push_back({"Lambda2(chi) = chibar*psi^3", false,
                 [&t](const Symbols& s) { return std::pair{t.lambda2(s.chi), s.chibar * s.psi.pow(3)}; }});
    r.push_back({"Lambda3(chi) = psi^3", false,
                 [&t](const Symbols& s) { return std::pair{t.lambda3(s.chi), s.psi.pow(3)}; }});
    r.push_back({"Lambda2(xi) = xibar*psi^(" + lt + ")", true, [&t, twist](const Symbols& s) {
                   return std::pair{t.lambda2(s.xi), s.xibar * s.psi.pow(1 + twist)};
                 }});
    r.push_back({"Lambda3(xi) = psi^(" + lt + ")", true,
                 [&t, twist](const Symbols& s) { return std::pair{t.lambda3(s.xi), s.psi.pow(1 + twist)}; }});
  }
  return r;
}

struct Candidates {
  std::vector<ClassFunction> theta, psi, chi, xi;
};

// Every choice of table rows compatible with the descriptions of theta, psi,
// chi and xi.
Candidates candidates(const CharacterTable& t, const PcGroup& g, int n) {
  const Element a = g.generator(0), b = g.generator(1), c = g.generator(2);
  const long N = t.conductor;
  const Cyclotomic one(1L);
  Candidates out;
  for (std::size_t row = 0; row < t.characters.size(); ++row) {
    if (t.degree(row) != 1) continue;
    const ClassFunction& f = t.characters[row];
    const Cyclotomic& fa = t.at(f, a);
    const Cyclotomic& fb = t.at(f, b);
    if (fb == one && (fa == Cyclotomic::root(N, N / 3) || fa == Cyclotomic::root(N, 2 * N / 3))) out.theta.push_back(f);
    if (fa == one) {
      // psi(B) of order exactly 3^{n-3}.
      const long q = pow3(n - 3);
      if (fb.pow(q) == one && !(fb.pow(q / 3) == one)) out.psi.push_back(f);
    }
  }

  const MaximalSubgroup* m = nullptr;
  auto subs = maximal_subgroups(g);
  for (const auto& s : subs)
    if (s.contains == "B") m = &s;
  if (!m || !m->abelian) throw GeneratorMatchFailed("no abelian maximal subgroup containing B");
  auto pos = [&](Element x) {
    return static_cast<std::size_t>(std::lower_bound(m->elements.begin(), m->elements.end(), x) - m->elements.begin());
  };
  const std::size_t pb = pos(b), pc = pos(c);
  std::unordered_set<std::string> seen;
  auto key = [](const ClassFunction& f) {
    std::string k;
    for (const auto& v : f.values) k += v.to_string() + "|";
    return k;
  };
  for (const auto& lam : abelian_subgroup_characters(g, m->elements, N)) {
    // chi: trivial on the central subgroup of order 3 (generated by
    // B^{3^{n-3}}) and nontrivial on C; xi: faithful on <B>.
    const bool chi_like = (lam[pb] * pow3(n - 3)) % N == 0 && (lam[pc] == N / 3 || lam[pc] == 2 * N / 3);
    const bool xi_like = lam[pb] % 3 != 0;  // faithful on <B>
    if (!chi_like && !xi_like) continue;
    ClassFunction f = induce(t, g, m->elements, lam);
    if (!seen.insert(key(f)).second) continue;
    (chi_like ? out.chi : out.xi).push_back(std::move(f));
  }
  return out;
}

std::size_t row_of(const CharacterTable& t, const ClassFunction& f) {
  for (std::size_t r = 0; r < t.characters.size(); ++r)
    if (t.characters[r] == f) return r;
  return static_cast<std::size_t>(-1);
}

bool holds(const Relation& rel, const Symbols& s) {
  auto [lhs, rhs] = rel.sides(s);
  return lhs == rhs;
}

// Assignments satisfying every relation, in search order; relations without
// xi are checked once per (theta, psi, chi). When none matches, best receives
// the assignment satisfying the most relations.
std::vector<Symbols> matching_assignments(const Candidates& cand, const std::vector<Relation>& rels,
                                          std::size_t* tried, Symbols* best, std::size_t limit) {
  std::vector<Symbols> out;
  for (const auto& theta : cand.theta)
    for (const auto& psi : cand.psi)
      for (const auto& chi : cand.chi) {
        Symbols s{theta, psi, chi, chi.conj(), {}, {}};
        bool ok = true;
        for (const auto& rel : rels)
          if (!rel.needs_xi && !holds(rel, s)) {
            ok = false;
            break;
          }
        for (const auto& xi : cand.xi) {
          if (tried) ++*tried;
          if (!ok) continue;
          s.xi = xi;
          s.xibar = xi.conj();
          bool all = true;
          for (const auto& rel : rels)
            if (rel.needs_xi && !holds(rel, s)) {
              all = false;
              break;
            }
          if (all) {
            out.push_back(s);
            if (out.size() >= limit) return out;
          }
        }
      }
  if (out.empty() && best) {
    std::size_t best_score = 0;
    bool have = false;
    for (const auto& theta : cand.theta)
      for (const auto& psi : cand.psi)
        for (const auto& chi : cand.chi)
          for (const auto& xi : cand.xi) {
            Symbols s{theta, psi, chi, chi.conj(), xi, xi.conj()};
            std::size_t score = 0;
            for (const auto& rel : rels) score += holds(rel, s);
            if (!have || score > best_score) {
              *best = s;
              best_score = score;
              have = true;
            }
          }
  }
  return out;
}

}  // namespace

RepRingReport verify_rep_ring_relations(int n, int eps) {
  if (n < 4 || n > 6) throw BadParameter("representation ring checks cover 4 <= n <= 6");
  if (eps != 1 && eps != -1) throw BadParameter("eps must be +1 or -1");
  PcGroup g(make_group(Family::G, n, eps));
  auto table = cached_character_table(g.presentation());
  const CharacterTable& t = *table;

  Candidates cand = candidates(t, g, n);
  if (cand.theta.empty() || cand.psi.empty() || cand.chi.empty() || cand.xi.empty())
    throw GeneratorMatchFailed("no table rows fit the descriptions of theta, psi, chi and xi");

  auto rels = relations(t, n, eps, true, false);
  RepRingReport report;
  report.n = n;
  report.eps = eps;
  Symbols best;
  auto found = matching_assignments(cand, rels, &report.assignments_tried, &best, 1);
  const Symbols& s = found.empty() ? best : found.front();
  report.all_hold = !found.empty();
  for (const auto& rel : rels) report.relations.push_back({rel.name, holds(rel, s)});
  report.rows = {{"theta", row_of(t, s.theta)}, {"psi", row_of(t, s.psi)}, {"chi", row_of(t, s.chi)},
                 {"chibar", row_of(t, s.chibar)}, {"xi", row_of(t, s.xi)}, {"xibar", row_of(t, s.xibar)}};
  return report;
}

Mod3MapReport verify_mod3_map(int n) {
  if (n < 5 || n > 6) throw BadParameter("the mod-3 map is stated for n >= 5 (checked up to 6)");
  // The map runs from R(G(n,-1)) to R(G(n,1)): the images of the source
  // relations are computed in the target.
  PcGroup dst(make_group(Family::G, n, 1));
  auto td = cached_character_table(dst.presentation());

  // Target generators: any assignment satisfying the target's own relations.
  auto target_rels = relations(*td, n, 1, false, false);
  auto targets = matching_assignments(candidates(*td, dst, n), target_rels, nullptr, nullptr, 1000);
  if (targets.empty()) throw GeneratorMatchFailed("no generator assignment for G(n,1)");

  const long s1 = 2 * pow3(n - 5), s2 = 7 * pow3(n - 5);
  auto source_rels = relations(*td, n, -1, false, true);
  Mod3MapReport report;
  report.n = n;
  std::vector<RelationCheck> best;
  std::size_t best_score = 0;
  for (const auto& tgt : targets) {
    Symbols img = tgt;
    img.xi = -1 * (tgt.xi * tgt.psi.pow(s1));
    img.xibar = -1 * (tgt.xibar * tgt.psi.pow(s2));
    std::vector<RelationCheck> checks;
    std::size_t score = 0;
    for (const auto& rel : source_rels) {
      auto [lhs, rhs] = rel.sides(img);
      bool ok = true;
      for (const auto& m : td->decompose(lhs - rhs))
        if (m % 3 != 0) ok = false;
      checks.push_back({rel.name, ok});
      score += ok;
    }
    if (best.empty() || score > best_score) {
      best = checks;
      best_score = score;
    }
    if (score == source_rels.size()) break;
  }
  report.relations = best;
  report.well_defined = best_score == source_rels.size();
  return report;
}

}  // namespace coho3
