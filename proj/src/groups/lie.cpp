#include "coho3/groups.hpp"

namespace coho3 {

using Element = FiniteGroup::Element;

namespace {

void normalize(Integer& numer, Integer& denom) {
  numer %= denom;
  if (numer < 0) numer += denom;
  Integer g = gcd(numer, denom);
  if (g > 1) {
    numer /= g;
    denom /= g;
  }
}

int mod3(long v) { return static_cast<int>(((v % 3) + 3) % 3); }

}  // namespace

LieElement LieElement::operator*(const LieElement& o) const {
  // (X^i Y^j Z^k t)(X^a Y^b Z^c s): moving X^a left past Y^j Z^k gives
  // Y^j Z^{k+aj} omega^{ak + j a(a-1)/2}.
  LieElement r;
  r.i = mod3(i + o.i);
  r.j = mod3(j + o.j);
  r.k = mod3(k + o.i * j + o.k);
  const long w = mod3(static_cast<long>(o.i) * k + static_cast<long>(j) * o.i * (o.i - 1) / 2);
  Integer d = lcm(lcm(denom, o.denom), Integer(3));
  r.numer = numer * (d / denom) + o.numer * (d / o.denom) + w * (d / 3);
  r.denom = d;
  normalize(r.numer, r.denom);
  return r;
}

bool operator==(const LieElement& a, const LieElement& b) {
  Integer an = a.numer, ad = a.denom, bn = b.numer, bd = b.denom;
  normalize(an, ad);
  normalize(bn, bd);
  return a.i == b.i && a.j == b.j && a.k == b.k && an == bn && ad == bd;
}

std::pair<Integer, Integer> CircleHom::evaluate(const LieElement& x) const {
  Integer d = lcm(x.denom, Integer(3));
  Integer n = c_delta1 * 3 * x.numer * (d / x.denom) + (c_alpha * x.i + c_beta * x.j) * (d / 3);
  normalize(n, d);
  return {n, d};
}

namespace {

std::string describe(const CircleHom& h) {
  std::string out;
  auto term = [&](const Integer& c, const char* name) {
    if (c == 0) return;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (abs(c) != 1) out += Integer(abs(c)).get_str() + "*";
    out += name;
  };
  term(h.c_delta1, "delta1");
  auto signed3 = [](int c) { return c % 3 == 2 || c % 3 == -1 ? -1 : (c % 3 == 0 ? 0 : 1); };
  term(signed3(h.c_alpha), "alpha");
  term(signed3(h.c_beta), "beta");
  return out.empty() ? "0" : out;
}

}  // namespace

CircleKernel kernel_of_circle_hom(const CircleHom& h) {
  if (h.c_delta1 == 0) throw InfiniteKernel("kernel is infinite when the delta1 coefficient vanishes");
  Integer c = abs(h.c_delta1);
  Integer rest = c;
  while (rest % 3 == 0) rest /= 3;
  if (rest != 1) throw BadParameter("delta1 coefficient must be plus or minus a power of 3");
  if (81 * c > kEnumerationBound) throw TooLarge("kernel exceeds the enumeration bound");

  // t = u / D with D = 9|c|; h(X^iY^jZ^k t) = (sign(c) u + a i + b j) / 3.
  const long cl = c.get_si();
  const long D = 9 * cl;
  const int sign = h.c_delta1 > 0 ? 1 : -1;
  const int a = mod3(h.c_alpha), b = mod3(h.c_beta);

  struct Raw {
    int i, j, k;
    long u;
  };
  std::vector<Raw> raw;
  std::vector<std::int64_t> pos(27 * D, -1);
  auto key = [D](int i, int j, int k, long u) { return ((i * 3 + j) * 3 + k) * D + u; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (long u = 0; u < D; ++u)
          if (mod3(sign * u + a * i + b * j) == 0) {
            pos[key(i, j, k, u)] = static_cast<std::int64_t>(raw.size());
            raw.push_back({i, j, k, u});
          }
  const std::size_t n = raw.size();

  std::vector<std::uint16_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Raw& p = raw[x];
      const Raw& q = raw[y];
      const long w = mod3(static_cast<long>(q.i) * p.k + static_cast<long>(p.j) * q.i * (q.i - 1) / 2);
      const long u = (p.u + q.u + w * (D / 3)) % D;
      table[x * n + y] = static_cast<std::uint16_t>(pos[key(mod3(p.i + q.i), mod3(p.j + q.j), mod3(p.k + q.i * p.j + q.k), u)]);
    }

  // Greedy generating set.
  std::vector<Element> gens;
  std::vector<char> covered(n, 0);
  covered[0] = 1;
  for (Element x = 1; x < n; ++x) {
    if (covered[x]) continue;
    gens.push_back(x);
    std::vector<Element> reach{0};
    std::fill(covered.begin(), covered.end(), 0);
    covered[0] = 1;
    for (std::size_t q = 0; q < reach.size(); ++q)
      for (Element g : gens) {
        Element y = table[reach[q] * n + g];
        if (!covered[y]) {
          covered[y] = 1;
          reach.push_back(y);
        }
      }
  }

  FiniteGroup group(n, std::move(table), std::move(gens));
  CircleKernel out{to_pc_presentation(group, "ker(" + describe(h) + ")").presentation, {}, std::move(group)};
  for (const Raw& r : raw) {
    LieElement e{r.i, r.j, r.k, r.u, D};
    normalize(e.numer, e.denom);
    out.elements.push_back(e);
  }
  return out;
}

}  // namespace coho3
