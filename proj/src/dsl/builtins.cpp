#include <map>
#include <mutex>

#include "coho3/dsl.hpp"

namespace coho3 {

namespace {

Integer pow3(int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

std::string str(const Integer& z) { return z.get_str(); }

void require_params(const BuiltinSpec& s, std::size_t lo, std::size_t hi) {
  if (s.params.size() < lo || s.params.size() > hi)
    throw UnknownBuiltin("builtin '" + s.name + "' takes " + std::to_string(lo) +
                         (lo == hi ? "" : ".." + std::to_string(hi)) + " parameter(s)");
}

void require_n(const BuiltinSpec& s, int lo) {
  if (s.params[0] < lo || s.params[0] > 12)
    throw BadParameter("builtin '" + s.name + "' needs " + std::to_string(lo) + " <= n <= 12");
}

void require_eps(const BuiltinSpec& s, std::size_t i) {
  if (s.params.size() > i && s.params[i] != 1 && s.params[i] != -1)
    throw BadParameter("builtin '" + s.name + "' needs eps = 1 or -1");
}

const char* kProp4 = R"(ring "prop4.M" {
  gen beta deg 2, mu deg 3, tau deg 2, gamma deg 2;
  rel 3*beta = 0, 3*gamma = 0, 3*mu = 0;
})";

const char* kThm6Relations = R"(
  rel 3*gamma = 0, 3*alpha = 0, alpha^3*gamma = gamma^3*alpha,
      alpha*delta1 = 0, gamma*delta1 = 0, alpha*delta2 = 0,
      gamma*delta2 = -gamma^3 + alpha^2*gamma,
      delta1^2 = 3*delta2, delta1*delta2 = 9*delta3,
      delta2^2 = 3*delta3*delta1 + gamma^4 - alpha^2*gamma^2;
)";

std::string thm6(const std::string& name, int n, bool odd) {
  std::string s = "ring \"" + name + "\" {\n  gen alpha deg 2, delta1 deg 2, delta2 deg 4, delta3 deg 6, gamma deg 2";
  if (odd) s += ", mu1 deg 3, mu2 deg 3";
  s += ";";
  s += kThm6Relations;
  if (n > 0) s += "  rel " + str(pow3(n - 4)) + "*delta1 = 0;\n";
  if (odd) {
    s += R"(  rel 3*mu1 = 0, 3*mu2 = 0, mu1*delta1 = 0, mu2*delta1 = 0, mu1*gamma = mu2*alpha,
      mu1*delta2 = 0, mu2*delta2 = -gamma^2*mu2 - alpha^2*mu2, alpha^3*mu2 = gamma^3*mu1,
)";
    s += std::string("      mu1*mu2 = ") + (n == 4 ? "3*delta3" : "0") + ";\n";
  }
  return s + "}";
}

const char* kThm10Gens = "  gen alpha deg 2, beta deg 2, delta1 deg 2, mu deg 3, delta2 deg 4, delta3 deg 6, zeta deg 6;\n";

std::string thm10(bool stated) {
  std::string s = std::string("ring \"") + (stated ? "thm10.G-stated" : "thm10.G") + "\" {\n" + kThm10Gens;
  s += R"(  rel 3*alpha = 0, 3*beta = 0, 3*mu = 0, 3*zeta = 0,
      alpha*delta1 = -alpha*beta,
)";
  s += stated ? "      delta1^2 = 3*delta2,\n" : "      delta1^2 = 3*delta2 - delta1*beta,\n";
  s += R"(      alpha*delta2 = 0, delta1*delta2 = 9*delta3,
      alpha*zeta = 0, delta1*zeta = 0, alpha^2*beta = -delta1*beta^2,
      alpha*mu = 0, delta1*mu = 0,
      delta2^3 - 27*delta3^2 + zeta^2 = -delta3*(delta1*beta^2 + beta^3) + delta2^2*beta^2 + delta2*beta^4
                                        - delta1*beta^5 - beta^6;
})";
  return s;
}

std::string lemma8() {
  return std::string("ring \"lemma8.gr\" {\n") + kThm10Gens + R"(  rel 3*alpha = 0, 3*beta = 0, 3*mu = 0, 3*zeta = 0,
      alpha*delta1 = 0, delta1^2 = 3*delta2, alpha*delta2 = 0, delta1*delta2 = 9*delta3,
      alpha*zeta = 0, delta1*zeta = 0, alpha^2*beta = 0, alpha*mu = 0, delta1*mu = 0,
      27*delta3^2 - delta2^3 = zeta^2;
})";
}

std::string thm13(int n, int eps) {
  const Integer k = 1 + eps * pow3(n - 4);
  std::string s = "ring \"thm13.G(" + std::to_string(n) + "," + std::to_string(eps) + ")\" {\n";
  s += "  gen alpha deg 2, delta1 deg 2, mu deg 3, delta2 deg 4, nu deg 5, delta3 deg 6, zeta deg 6;\n";
  s += "  rel 3*alpha = 0, 3*mu = 0, 3*nu = 0, 3*zeta = 0,\n";
  s += "      " + str(pow3(n - 3)) + "*delta1 = 0, " + str(pow3(n - 2)) + "*delta2 = 0, " + str(pow3(n - 1)) +
       "*delta3 = 0,\n";
  s += "      3*delta2 = (" + str(k) + ")*delta1^2,\n";
  s += R"(      delta1*alpha = 0, alpha*mu = 0, 9*delta3 = delta1*delta2, delta1*mu = 0, delta2*alpha = 0,
      zeta*delta1 = 0, zeta*alpha = 0, delta2^3 = 27*delta3^2 - zeta^2,
      delta1*nu = 0, delta2*nu = zeta*mu, zeta*nu = -delta2^2*mu, mu*nu = 0;
})";
  return s;
}

RingPresentation with_provenance(RingPresentation r, std::string p) {
  r.set_provenance(std::move(p));
  return r;
}

}  // namespace

RingPresentation builtin_ring(std::string_view spec_text) {
  const BuiltinSpec s = parse_builtin_spec(spec_text);
  if (s.name == "prop4.M") {
    require_params(s, 0, 0);
    return with_provenance(parse_ring(kProp4), "prop4.M: cohomology of the abelian subgroup M~ of G~");
  }
  if (s.name == "thm6.P") {
    require_params(s, 0, 1);
    if (s.params.empty())
      return with_provenance(parse_ring(thm6("thm6.P", 0, false)), "thm6.P: cohomology of P~");
    require_n(s, 4);
    return with_provenance(parse_ring(thm6(std::string(spec_text), s.params[0], false)),
                           "thm6.P(n): cohomology of P~ modulo 3^(n-4)*delta1, the even part for P(n,eps)");
  }
  if (s.name == "thm6.Pfin") {
    require_params(s, 1, 2);
    require_n(s, 4);
    require_eps(s, 1);
    return with_provenance(parse_ring(thm6(std::string(spec_text), s.params[0], true)),
                           "thm6.Pfin(n): cohomology of P(n,eps) with odd generators mu1, mu2 as ring generators; "
                           "mu1*mu2 = 3*delta3 for n = 4 and 0 otherwise; independent of eps");
  }
  if (s.name == "thm10.G") {
    require_params(s, 0, 0);
    return with_provenance(parse_ring(thm10(false)),
                           "thm10.G: cohomology of G~; variant delta1^2 = 3*delta2 - delta1*beta (proof form)");
  }
  if (s.name == "thm10.G-stated") {
    require_params(s, 0, 0);
    return with_provenance(parse_ring(thm10(true)),
                           "thm10.G-stated: cohomology of G~; variant delta1^2 = 3*delta2 (stated form, "
                           "read homogeneously)");
  }
  if (s.name == "lemma8.gr") {
    require_params(s, 0, 0);
    return with_provenance(parse_ring(lemma8()), "lemma8.gr: associated graded of thm10.G for the beta filtration");
  }
  if (s.name == "thm13.G") {
    require_params(s, 2, 2);
    require_n(s, 5);
    require_eps(s, 1);
    return with_provenance(parse_ring(thm13(s.params[0], s.params[1])), "thm13.G(n,eps): cohomology of G(n,eps)");
  }
  throw UnknownBuiltin("unknown builtin ring '" + std::string(spec_text) + "'");
}

std::vector<std::string> builtin_ring_names() {
  return {"prop4.M", "thm6.P", "thm6.P(n)", "thm6.Pfin(n)", "thm10.G", "thm10.G-stated", "lemma8.gr",
          "thm13.G(n,eps)"};
}

PcPresentation builtin_group(std::string_view spec_text) {
  const BuiltinSpec s = parse_builtin_spec(spec_text);
  Family f;
  try {
    f = parse_family(s.name);
  } catch (const BadParameter&) {
    throw UnknownBuiltin("unknown builtin group '" + std::string(spec_text) + "'");
  }
  switch (f) {
    case Family::E:
    case Family::Wreath:
      require_params(s, 0, 0);
      return make_group(f);
    case Family::GPrime:
      require_params(s, 0, 1);
      return make_group(f, s.params.empty() ? 4 : s.params[0]);
    default:
      require_params(s, 2, 2);
      return make_group(f, s.params[0], s.params[1]);
  }
}

std::vector<std::string> builtin_group_names() {
  return {"G(n,eps)", "G'(4)", "E", "M(n,eps)", "N(n,eps)", "P(n,eps)", "wreath"};
}

std::shared_ptr<const GradedRing> shared_ring(std::string_view spec) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const GradedRing>, std::less<>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(spec);
  if (it != cache.end()) return it->second;
  auto r = std::make_shared<const GradedRing>(builtin_ring(spec));
  cache.emplace(std::string(spec), r);
  return r;
}

namespace {

RingMap map_from_text(std::shared_ptr<const GradedRing> src, std::shared_ptr<const GradedRing> dst,
                      const std::map<std::string, std::string>& images, std::string name) {
  const RingPresentation& sp = src->presentation();
  std::vector<Polynomial> imgs;
  for (const auto& g : sp.generators()) {
    auto it = images.find(g.name);
    imgs.push_back(it == images.end() ? dst->presentation().variable(g.name)
                                      : parse_polynomial(dst->presentation(), it->second));
  }
  return make_ring_map(std::move(src), std::move(dst), std::move(imgs), std::move(name));
}

}  // namespace

RingMap builtin_map(std::string_view spec_text) {
  const BuiltinSpec s = parse_builtin_spec(spec_text);
  const std::string name(spec_text);
  if (s.name == "prop7.resM") {
    require_params(s, 0, 0);
    return map_from_text(shared_ring("thm10.G"), shared_ring("prop4.M"),
                         {{"alpha", "0"},
                          {"delta1", "3*tau"},
                          {"delta2", "3*tau^2 - tau*beta - gamma^2 + gamma*beta + beta^2"},
                          {"delta3", "tau^3 + tau^2*beta - tau*gamma^2 + tau*gamma*beta"},
                          {"zeta", "beta^2*gamma - gamma^3"}},
                         name);
  }
  if (s.name == "prop7.resP") {
    require_params(s, 0, 0);
    return map_from_text(shared_ring("thm10.G"), shared_ring("thm6.P"),
                         {{"beta", "0"}, {"mu", "0"}, {"zeta", "alpha^2*gamma - gamma^3"}}, name);
  }
  if (s.name == "cor14") {
    require_params(s, 1, 1);
    require_n(s, 5);
    const int n = s.params[0];
    const std::string k = "(" + str(1 + pow3(n - 4)) + ")";
    const std::string tag = "thm13.G(" + std::to_string(n) + ",";
    return map_from_text(shared_ring(tag + "-1)"), shared_ring(tag + "1)"),
                         {{"delta2", k + "*delta2"}, {"delta3", k + "*delta3"}}, name);
  }
  if (s.name == "prop4.X") {
    require_params(s, 0, 0);
    auto r = shared_ring("prop4.M");
    return map_from_text(r, r, {{"tau", "tau + gamma"}, {"gamma", "gamma + beta"}}, name);
  }
  if (s.name == "thm6.Y") {
    require_params(s, 0, 0);
    auto r = shared_ring("thm6.P");
    return map_from_text(r, r, {{"gamma", "gamma - alpha"}}, name);
  }
  throw UnknownBuiltin("unknown builtin map '" + name + "'");
}

std::vector<std::string> builtin_map_names() { return {"prop7.resM", "prop7.resP", "cor14(n)", "prop4.X", "thm6.Y"}; }

}  // namespace coho3
