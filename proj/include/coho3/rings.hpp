#pragma once

// Finitely presented graded-commutative rings over Z, computed one degree at
// a time as cokernels of integer relation matrices.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coho3/linalg.hpp"

namespace coho3 {

class DegreeBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotHomogeneous : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotAnAction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default largest degree for graded pieces; COHO3_DEGREE_BOUND overrides it.
inline constexpr int kDefaultDegreeBound = 16;
int degree_bound();

// Exponent per generator. Odd-degree generators appear with exponent 0 or 1:
// their squares are 2-torsion and every odd generator here is 3-torsion, so
// x^2 = 0 is imposed while multiplying.
using Monomial = std::vector<int>;

struct Polynomial {
  std::map<Monomial, Integer> terms;  // no zero coefficients

  bool is_zero() const { return terms.empty(); }
  void add(const Monomial& m, const Integer& c);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Integer& k, const Polynomial& a);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
};

struct RingGenerator {
  std::string name;
  int degree;
};

class RingPresentation {
 public:
  RingPresentation() = default;
  RingPresentation(std::string name, std::vector<RingGenerator> gens);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<RingGenerator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  std::optional<std::size_t> find(const std::string& name) const;

  // Throws NotHomogeneous. Zero relations are accepted and ignored.
  void add_relation(const Polynomial& r, std::string label = "");
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<std::string>& relation_labels() const { return labels_; }
  std::vector<int> relation_degrees() const;

  // Free text naming where the presentation comes from and which variant it is.
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  Polynomial generator(std::size_t i) const;
  Polynomial variable(const std::string& name) const;
  Polynomial constant(const Integer& c) const;

  int degree(const Monomial& m) const;
  // Degree of a nonzero homogeneous polynomial, nullopt for zero.
  std::optional<int> degree(const Polynomial& p) const;
  bool is_odd(std::size_t gen) const { return gens_[gen].degree % 2 != 0; }

  // Graded-commutative product; odd squares vanish.
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  Polynomial power(const Polynomial& a, int k) const;
  // Sign and result of m1 * m2 in canonical generator order; sign 0 when the
  // product vanishes.
  int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) const;

  // Monomials of degree d in graded-lex order: lexicographically larger
  // exponent vectors (earlier generators first) come first.
  std::vector<Monomial> monomials(int d) const;

  std::string format(const Monomial& m) const;  // "alpha^2*beta", "1"
  std::string format(const Polynomial& p) const;  // "3*delta2 - delta1^2", "0"

 private:
  std::string name_;
  std::vector<RingGenerator> gens_;
  std::vector<Polynomial> relations_;
  std::vector<std::string> labels_;
  std::string provenance_;
};

struct GradedPiece {
  int degree = 0;
  std::vector<Monomial> basis;  // spanning monomials, ambient coordinates
  FgAbGroup structure;          // Z^basis / span(m * r)

  // Ambient coefficient vector of a homogeneous polynomial of this degree.
  IntVector ambient(const Polynomial& p) const;
  IntVector coordinates(const Polynomial& p) const { return structure.project(ambient(p)); }
  bool is_zero(const Polynomial& p) const { return structure.is_zero(ambient(p)); }
  // Ambient polynomial for each structure generator.
  std::vector<Polynomial> generator_polynomials() const;
};

// Throws DegreeBoundExceeded above degree_bound().
GradedPiece graded_piece(const RingPresentation& r, int d);

// Memoizing wrapper; pieces are computed once and shared between threads.
class GradedRing {
 public:
  explicit GradedRing(RingPresentation p) : p_(std::make_shared<const RingPresentation>(std::move(p))) {}
  explicit GradedRing(std::shared_ptr<const RingPresentation> p) : p_(std::move(p)) {}

  const RingPresentation& presentation() const { return *p_; }
  std::shared_ptr<const RingPresentation> shared_presentation() const { return p_; }
  const GradedPiece& piece(int d) const;
  // Coordinates in piece(deg p); throws NotHomogeneous. Zero maps to the
  // empty vector.
  IntVector reduce(const Polynomial& p) const;
  bool is_zero(const Polynomial& p) const;

 private:
  std::shared_ptr<const RingPresentation> p_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const GradedPiece>> cache_;
};

struct HilbertEntry {
  int degree;
  std::size_t free_rank;
  IntVector torsion;
};
std::vector<HilbertEntry> hilbert_report(const GradedRing& r, int max_degree);

// Degree-preserving map sending each source generator to a homogeneous
// element of the target.
struct RingMap {
  std::shared_ptr<const GradedRing> source;
  std::shared_ptr<const GradedRing> target;
  std::vector<Polynomial> images;
  std::string name;

  Polynomial apply(const Polynomial& p) const;
};

// Throws NotHomogeneous when an image has the wrong degree.
RingMap make_ring_map(std::shared_ptr<const GradedRing> source, std::shared_ptr<const GradedRing> target,
                      std::vector<Polynomial> images, std::string name = "");
RingMap identity_map(std::shared_ptr<const GradedRing> r);

struct MapCheck {
  std::string relation;
  std::string image;  // image before reduction
  bool zero = false;
};
struct MapReport {
  std::string name;
  std::vector<MapCheck> checks;
  bool passes = false;
};
MapReport verify_map(const RingMap& m);

// Integer matrix of m on degree d: ambient source monomials to ambient target
// monomials.
IntMatrix map_matrix(const RingMap& m, int d);
InducedMap induced_on_degree(const RingMap& m, int d);
// Per degree 0..max_degree: is the induced map an isomorphism?
std::vector<bool> map_bijective(const RingMap& m, int max_degree);

// A ring endomorphism of order dividing 3.
struct Order3Action {
  RingMap map;
};
// Verifies the map and that its cube is the identity on every piece up to
// max_degree; throws NotAnAction otherwise.
Order3Action make_action(RingMap m, int max_degree);
FgAbGroup fixed_subgroup(const Order3Action& a, int d);
// ker(1 + g + g^2) / im(g - 1) on degree d.
FgAbGroup h1_c3(const Order3Action& a, int d);

// Kernel of multiplication by elt from degree d to d + deg(elt).
InducedMap mult_map(const GradedRing& r, const Polynomial& elt, int d);
FgAbGroup mult_kernel(const GradedRing& r, const Polynomial& elt, int d);
// Does the subgroup of piece(d) generated by the given polynomials equal the
// kernel of multiplication by elt?
bool kernel_spanned_by(const GradedRing& r, const Polynomial& elt, int d, const std::vector<Polynomial>& gens);
// Degree-d part of the ideal generated by the given homogeneous elements, as
// polynomials spanning it.
std::vector<Polynomial> ideal_span(const RingPresentation& r, const std::vector<Polynomial>& gens, int d);

// r with extra relations appended (quotient by the ideal they generate).
RingPresentation with_relations(const RingPresentation& r, const std::vector<Polynomial>& extra,
                                const std::string& name);

void to_json(nlohmann::json& j, const HilbertEntry& e);
nlohmann::json piece_json(const RingPresentation& r, const GradedPiece& p);

}  // namespace coho3
