#include "coho3/rings.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

namespace coho3 {

int degree_bound() {
  if (const char* env = std::getenv("COHO3_DEGREE_BOUND")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 64) return static_cast<int>(v);
  }
  return kDefaultDegreeBound;
}

// --- polynomials ---

void Polynomial::add(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [m, c] : b.terms) r.add(m, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [m, c] : b.terms) r.add(m, -c);
  return r;
}

Polynomial operator*(const Integer& k, const Polynomial& a) {
  Polynomial r;
  if (k == 0) return r;
  for (const auto& [m, c] : a.terms) r.terms.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::operator-() const { return Integer(-1) * *this; }

// --- presentations ---

RingPresentation::RingPresentation(std::string name, std::vector<RingGenerator> gens)
    : name_(std::move(name)), gens_(std::move(gens)) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.degree < 1) throw std::invalid_argument("generator " + g.name + " must have positive degree");
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator " + g.name);
  }
}

std::optional<std::size_t> RingPresentation::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

void RingPresentation::add_relation(const Polynomial& r, std::string label) {
  if (r.is_zero()) return;
  degree(r);  // homogeneity check
  relations_.push_back(r);
  labels_.push_back(label.empty() ? format(r) + " = 0" : std::move(label));
}

std::vector<int> RingPresentation::relation_degrees() const {
  std::vector<int> out;
  for (const auto& r : relations_) out.push_back(*degree(r));
  return out;
}

Polynomial RingPresentation::generator(std::size_t i) const {
  Monomial m(gens_.size(), 0);
  m[i] = 1;
  Polynomial p;
  p.add(m, 1);
  return p;
}

Polynomial RingPresentation::variable(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::invalid_argument("unknown generator " + name);
  return generator(*i);
}

Polynomial RingPresentation::constant(const Integer& c) const {
  Polynomial p;
  p.add(Monomial(gens_.size(), 0), c);
  return p;
}

int RingPresentation::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
  return d;
}

std::optional<int> RingPresentation::degree(const Polynomial& p) const {
  std::optional<int> d;
  for (const auto& [m, c] : p.terms) {
    int e = degree(m);
    if (d && *d != e)
      throw NotHomogeneous(format(p) + " mixes degrees " + std::to_string(*d) + " and " + std::to_string(e));
    d = e;
  }
  return d;
}

int RingPresentation::multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) const {
  out.assign(gens_.size(), 0);
  int sign = 1;
  // Odd factors of a standing to the right of position j, accumulated from
  // the right.
  int odd_after = 0;
  for (std::size_t k = gens_.size(); k-- > 0;) {
    if (is_odd(k)) {
      if (a[k] + b[k] > 1) return 0;
      if (b[k] && odd_after % 2) sign = -sign;
      odd_after += a[k];
    }
    out[k] = a[k] + b[k];
  }
  return sign;
}

Polynomial RingPresentation::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial r;
  Monomial m;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      int s = multiply_monomials(ma, mb, m);
      if (s) r.add(m, s > 0 ? Integer(ca * cb) : Integer(-ca * cb));
    }
  return r;
}

Polynomial RingPresentation::power(const Polynomial& a, int k) const {
  Polynomial r = constant(1);
  for (int i = 0; i < k; ++i) r = multiply(r, a);
  return r;
}

std::vector<Monomial> RingPresentation::monomials(int d) const {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(gens_.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == gens_.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int deg = gens_[i].degree;
    int hi = left / deg;
    if (is_odd(i)) hi = std::min(hi, 1);
    for (int e = hi; e >= 0; --e) {
      cur[i] = e;
      self(self, i + 1, left - e * deg);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

std::string RingPresentation::format(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens_[i].name;
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string RingPresentation::format(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::string s;
  // Highest monomials first, matching the basis order.
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [m, c] = *it;
    Integer mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    const std::string ms = format(m);
    if (ms == "1") s += mag.get_str();
    else if (mag == 1) s += ms;
    else s += mag.get_str() + "*" + ms;
  }
  return s;
}

// --- graded pieces ---

IntVector GradedPiece::ambient(const Polynomial& p) const {
  IntVector v(basis.size(), 0);
  for (const auto& [m, c] : p.terms) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m, std::greater<>());
    if (it == basis.end() || *it != m) throw NotHomogeneous("monomial outside degree " + std::to_string(degree));
    v[static_cast<std::size_t>(it - basis.begin())] += c;
  }
  return v;
}

std::vector<Polynomial> GradedPiece::generator_polynomials() const {
  std::vector<Polynomial> out;
  const IntMatrix& s = structure.section();
  for (std::size_t j = 0; j < s.cols(); ++j) {
    Polynomial p;
    for (std::size_t i = 0; i < s.rows(); ++i) p.add(basis[i], s(i, j));
    out.push_back(std::move(p));
  }
  return out;
}

GradedPiece graded_piece(const RingPresentation& r, int d) {
  if (d > degree_bound())
    throw DegreeBoundExceeded("degree " + std::to_string(d) + " exceeds the bound " + std::to_string(degree_bound()));
  if (d < 0) throw std::invalid_argument("negative degree");
  GradedPiece piece;
  piece.degree = d;
  piece.basis = r.monomials(d);
  const std::size_t n = piece.basis.size();

  // Columns m * rel for every relation and complementary monomial; repeated
  // columns are dropped.
  std::set<IntVector> columns;
  const auto degs = r.relation_degrees();
  Monomial prod;
  for (std::size_t k = 0; k < r.relations().size(); ++k) {
    if (degs[k] > d) continue;
    for (const auto& m : r.monomials(d - degs[k])) {
      IntVector col(n, 0);
      bool nonzero = false;
      for (const auto& [rm, c] : r.relations()[k].terms) {
        int s = r.multiply_monomials(m, rm, prod);
        if (!s) continue;
        auto it = std::lower_bound(piece.basis.begin(), piece.basis.end(), prod, std::greater<>());
        col[static_cast<std::size_t>(it - piece.basis.begin())] += s > 0 ? c : Integer(-c);
        nonzero = true;
      }
      if (!nonzero) continue;
      // Normalize the sign so a column and its negative coincide.
      for (const auto& x : col)
        if (x != 0) {
          if (x < 0)
            for (auto& y : col) y = -y;
          break;
        }
      bool all_zero = true;
      for (const auto& x : col) all_zero = all_zero && x == 0;
      if (!all_zero) columns.insert(std::move(col));
    }
  }
  std::vector<IntVector> cols(columns.begin(), columns.end());
  piece.structure = cols.empty() ? cokernel(IntMatrix(n, 0)) : cokernel(IntMatrix::from_columns(cols, n));
  return piece;
}

const GradedPiece& GradedRing::piece(int d) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return *it->second;
  }
  auto computed = std::make_shared<const GradedPiece>(graded_piece(*p_, d));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(d, std::move(computed));
  return *it->second;
}

IntVector GradedRing::reduce(const Polynomial& p) const {
  auto d = p_->degree(p);
  if (!d) return {};
  return piece(*d).coordinates(p);
}

bool GradedRing::is_zero(const Polynomial& p) const {
  auto d = p_->degree(p);
  return !d || piece(*d).is_zero(p);
}

std::vector<HilbertEntry> hilbert_report(const GradedRing& r, int max_degree) {
  std::vector<HilbertEntry> out;
  for (int d = 0; d <= max_degree; ++d) {
    const auto& s = r.piece(d).structure;
    out.push_back({d, s.free_rank(), s.torsion()});
  }
  return out;
}

// --- ring maps ---

Polynomial RingMap::apply(const Polynomial& p) const {
  const RingPresentation& t = target->presentation();
  std::map<std::pair<std::size_t, int>, Polynomial> powers;
  auto pw = [&](std::size_t g, int e) -> const Polynomial& {
    auto key = std::pair{g, e};
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, t.power(images[g], e)).first;
    return it->second;
  };
  Polynomial out;
  for (const auto& [m, c] : p.terms) {
    Polynomial term = t.constant(c);
    for (std::size_t g = 0; g < m.size(); ++g)
      if (m[g]) term = t.multiply(term, pw(g, m[g]));
    out = out + term;
  }
  return out;
}

RingMap make_ring_map(std::shared_ptr<const GradedRing> source, std::shared_ptr<const GradedRing> target,
                      std::vector<Polynomial> images, std::string name) {
  const auto& s = source->presentation();
  const auto& t = target->presentation();
  if (images.size() != s.size()) throw std::invalid_argument("one image per source generator is required");
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto d = t.degree(images[i]);
    if (d && *d != s.generators()[i].degree)
      throw NotHomogeneous("image of " + s.generators()[i].name + " has degree " + std::to_string(*d));
  }
  return RingMap{std::move(source), std::move(target), std::move(images), std::move(name)};
}

RingMap identity_map(std::shared_ptr<const GradedRing> r) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < r->presentation().size(); ++i) images.push_back(r->presentation().generator(i));
  return make_ring_map(r, r, std::move(images), "identity");
}

MapReport verify_map(const RingMap& m) {
  MapReport rep;
  rep.name = m.name;
  const auto& s = m.source->presentation();
  const auto& t = m.target->presentation();
  rep.passes = true;
  for (std::size_t k = 0; k < s.relations().size(); ++k) {
    Polynomial img = m.apply(s.relations()[k]);
    bool zero = m.target->is_zero(img);
    rep.checks.push_back({s.relation_labels()[k], t.format(img), zero});
    rep.passes = rep.passes && zero;
  }
  return rep;
}

IntMatrix map_matrix(const RingMap& m, int d) {
  const GradedPiece& src = m.source->piece(d);
  const GradedPiece& dst = m.target->piece(d);
  IntMatrix f(dst.basis.size(), src.basis.size());
  for (std::size_t j = 0; j < src.basis.size(); ++j) {
    Polynomial mono;
    mono.add(src.basis[j], 1);
    IntVector col = dst.ambient(m.apply(mono));
    for (std::size_t i = 0; i < col.size(); ++i) f(i, j) = col[i];
  }
  return f;
}

InducedMap induced_on_degree(const RingMap& m, int d) {
  return induced_map(map_matrix(m, d), m.source->piece(d).structure, m.target->piece(d).structure);
}

std::vector<bool> map_bijective(const RingMap& m, int max_degree) {
  std::vector<bool> out;
  for (int d = 0; d <= max_degree; ++d) out.push_back(induced_on_degree(m, d).is_iso);
  return out;
}

// --- order-3 actions ---

namespace {

IntMatrix minus_identity(IntMatrix g) {
  for (std::size_t i = 0; i < std::min(g.rows(), g.cols()); ++i) g(i, i) -= 1;
  return g;
}

IntMatrix norm_matrix(const IntMatrix& g) {
  IntMatrix g2 = g * g;
  IntMatrix n = g2;
  for (std::size_t i = 0; i < n.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) n(i, j) += g(i, j) + (i == j ? 1 : 0);
  return n;
}

}  // namespace

Order3Action make_action(RingMap m, int max_degree) {
  if (m.source->shared_presentation() != m.target->shared_presentation() && m.source != m.target)
    throw NotAnAction("an action must map a ring to itself");
  if (!verify_map(m).passes) throw NotAnAction("the map does not respect the relations");
  for (int d = 0; d <= max_degree; ++d) {
    IntMatrix g = map_matrix(m, d);
    IntMatrix c = minus_identity(g * g * g);
    const auto& s = m.source->piece(d).structure;
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (!s.is_zero(c.column(j))) throw NotAnAction("cube is not the identity in degree " + std::to_string(d));
  }
  return Order3Action{std::move(m)};
}

FgAbGroup fixed_subgroup(const Order3Action& a, int d) {
  const auto& s = a.map.source->piece(d).structure;
  return induced_map(minus_identity(map_matrix(a.map, d)), s, s).kernel;
}

FgAbGroup h1_c3(const Order3Action& a, int d) {
  const auto& s = a.map.source->piece(d).structure;
  IntMatrix g = map_matrix(a.map, d);
  InducedMap norm = induced_map(norm_matrix(g), s, s);
  IntMatrix rels = s.relations().cols() ? hconcat(minus_identity(g), s.relations()) : minus_identity(g);
  return subquotient(norm.kernel_generators, rels).structure;
}

// --- multiplication ---

InducedMap mult_map(const GradedRing& r, const Polynomial& elt, int d) {
  const auto& p = r.presentation();
  const int e = p.degree(elt).value_or(0);
  const GradedPiece& src = r.piece(d);
  const GradedPiece& dst = r.piece(d + e);
  IntMatrix f(dst.basis.size(), src.basis.size());
  for (std::size_t j = 0; j < src.basis.size(); ++j) {
    Polynomial mono;
    mono.add(src.basis[j], 1);
    IntVector col = dst.ambient(p.multiply(mono, elt));
    for (std::size_t i = 0; i < col.size(); ++i) f(i, j) = col[i];
  }
  return induced_map(f, src.structure, dst.structure);
}

FgAbGroup mult_kernel(const GradedRing& r, const Polynomial& elt, int d) { return mult_map(r, elt, d).kernel; }

bool kernel_spanned_by(const GradedRing& r, const Polynomial& elt, int d, const std::vector<Polynomial>& gens) {
  const GradedPiece& src = r.piece(d);
  const auto& p = r.presentation();
  for (const auto& g : gens)
    if (!r.is_zero(p.multiply(g, elt))) return false;
  InducedMap km = mult_map(r, elt, d);
  if (km.kernel.is_trivial()) return true;
  std::vector<IntVector> cols;
  for (const auto& g : gens) cols.push_back(src.ambient(g));
  const std::size_t n = src.basis.size();
  IntMatrix rels = src.structure.relations();
  if (!cols.empty()) rels = rels.cols() ? hconcat(IntMatrix::from_columns(cols, n), rels) : IntMatrix::from_columns(cols, n);
  return subquotient(km.kernel_generators, rels).structure.is_trivial();
}

std::vector<Polynomial> ideal_span(const RingPresentation& r, const std::vector<Polynomial>& gens, int d) {
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    auto e = r.degree(g);
    if (!e || *e > d) continue;
    for (const auto& m : r.monomials(d - *e)) {
      Polynomial mono;
      mono.add(m, 1);
      Polynomial prod = r.multiply(mono, g);
      if (!prod.is_zero()) out.push_back(std::move(prod));
    }
  }
  return out;
}

RingPresentation with_relations(const RingPresentation& r, const std::vector<Polynomial>& extra,
                                const std::string& name) {
  RingPresentation out = r;
  out.set_name(name);
  for (const auto& e : extra) out.add_relation(e);
  return out;
}

void to_json(nlohmann::json& j, const HilbertEntry& e) {
  nlohmann::json tors = nlohmann::json::array();
  for (const auto& t : e.torsion) {
    nlohmann::json v;
    to_json(v, t);
    tors.push_back(v);
  }
  j = nlohmann::json{{"degree", e.degree}, {"free_rank", e.free_rank}, {"torsion", tors}};
}

nlohmann::json piece_json(const RingPresentation& r, const GradedPiece& p) {
  nlohmann::json tors = nlohmann::json::array();
  for (const auto& t : p.structure.torsion()) {
    nlohmann::json v;
    to_json(v, t);
    tors.push_back(v);
  }
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& m : p.basis) basis.push_back(r.format(m));
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : p.generator_polynomials()) gens.push_back(r.format(g));
  return nlohmann::json{{"degree", p.degree},
                        {"free_rank", p.structure.free_rank()},
                        {"torsion", tors},
                        {"basis", basis},
                        {"generators", gens}};
}

}  // namespace coho3
