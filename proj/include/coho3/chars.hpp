#pragma once

// Exact character tables of 3-groups with an abelian subgroup of index 3,
// representation-ring arithmetic and the exterior-power operations.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "coho3/groups.hpp"

namespace coho3 {

class NoAbelianIndex3 : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotGenuine : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class GeneratorMatchFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

// Element of Q(zeta_N), N a power of 3, stored in the basis
// 1, zeta, ..., zeta^{phi(N)-1} (reduction modulo the cyclotomic polynomial
// x^{2N/3} + x^{N/3} + 1).
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long v);  // NOLINT: implicit rational embedding
  explicit Cyclotomic(const Rational& v);
  static Cyclotomic root(long conductor, long k);  // zeta_N^k

  long conductor() const { return conductor_; }
  const std::map<long, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // The value when it is rational.
  std::optional<Rational> rational() const;
  // Same number inside Q(zeta_M), M a multiple of the conductor.
  Cyclotomic lift(long m) const;
  Cyclotomic conj() const;
  Cyclotomic pow(long e) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Rational& q, const Cyclotomic& a);
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  // e.g. "2 + z9^4 - 1/2*z9^5"; "0" for zero.
  std::string to_string() const;

 private:
  static Cyclotomic from_raw(long conductor, std::map<long, Rational> raw);

  long conductor_ = 1;
  std::map<long, Rational> coeffs_;
};

struct ClassFunction {
  std::vector<Cyclotomic> values;  // one per class, in table order

  ClassFunction conj() const;
  ClassFunction pow(long e) const;
  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator*(long k, const ClassFunction& a);
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.values == b.values; }
};

struct CharacterClass {
  PcGroup::Element representative;
  std::string word;
  std::size_t size;
  int element_order;
  std::size_t square;  // class of g^2
  std::size_t cube;    // class of g^3
};

class CharacterTable {
 public:
  std::string group_name;
  std::size_t group_order = 1;
  long conductor = 1;
  std::vector<CharacterClass> classes;
  std::vector<ClassFunction> characters;  // irreducible, linear ones first
  std::vector<std::size_t> class_of;      // class index of every group element

  std::size_t degree(std::size_t row) const;
  ClassFunction constant(long v) const;
  Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) const;
  // Multiplicities of the irreducibles; throws NotGenuine unless integral.
  IntVector decompose(const ClassFunction& f) const;
  ClassFunction from_coefficients(const IntVector& coeffs) const;
  // Pointwise exterior powers (chi(g)^2 - chi(g^2))/2 and
  // (chi(g)^3 - 3 chi(g) chi(g^2) + 2 chi(g^3))/6.
  ClassFunction lambda2(const ClassFunction& f) const;
  ClassFunction lambda3(const ClassFunction& f) const;
  // Value of f at a group element.
  const Cyclotomic& at(const ClassFunction& f, PcGroup::Element x) const { return f.values[class_of[x]]; }
};

CharacterTable irreducible_characters(const PcGroup& g);
// Memoized variant keyed by the presentation; safe to call concurrently.
std::shared_ptr<const CharacterTable> cached_character_table(const PcPresentation& p);

// Row and column bijection matching every value exactly, with columns
// preserving class sizes and the square map.
bool tables_equivalent(const CharacterTable& a, const CharacterTable& b);
bool has_value(const CharacterTable& t, const Cyclotomic& v);
// Does the table contain eta (2 + eta^{eps 3^{n-3}}) for a primitive
// 3^{n-2}-th root of unity eta?
bool has_entry(const CharacterTable& t, int n, int eps);

// Virtual character as multiplicities of the irreducibles of a table.
struct RepRingElement {
  IntVector coefficients;
};
RepRingElement lambda2(const CharacterTable& t, const RepRingElement& x);
RepRingElement lambda3(const CharacterTable& t, const RepRingElement& x);

// Linear characters of an abelian subgroup (sorted element list of g), each
// given by exponents: the value at elements[i] is zeta_N^{exps[i]}.
std::vector<std::vector<long>> abelian_subgroup_characters(const PcGroup& g, std::span<const PcGroup::Element> elements,
                                                           long conductor);
// Induction from a normal subgroup given by its sorted element list.
ClassFunction induce(const CharacterTable& t, const PcGroup& g, std::span<const PcGroup::Element> elements,
                     const std::vector<long>& lambda);

struct RelationCheck {
  std::string relation;
  bool holds = false;
};

struct RepRingReport {
  int n = 4;
  int eps = 1;
  std::size_t assignments_tried = 0;
  bool all_hold = false;
  // Row of the table matched to theta, psi, chi, chibar, xi, xibar.
  std::map<std::string, std::size_t> rows;
  std::vector<RelationCheck> relations;
};

// Matches table rows to the generators theta, psi, chi, xi of the
// representation ring of G(n,eps) (trying every Galois-conjugate choice) and
// checks the ring and exterior-power relations as class-function identities.
RepRingReport verify_rep_ring_relations(int n, int eps);

// The map R(G(n,-1)) -> R(G(n,1)) sending xi to -xi psi^{2*3^{n-5}}, xibar to
// -xibar psi^{7*3^{n-5}} and fixing theta, psi, chi: checks that every
// relation of the source (and its dual) maps into 3 R(G(n,1)). n >= 5.
struct Mod3MapReport {
  int n = 5;
  bool well_defined = false;
  std::vector<RelationCheck> relations;
};
Mod3MapReport verify_mod3_map(int n);

void to_json(nlohmann::json& j, const Cyclotomic& c);
void to_json(nlohmann::json& j, const CharacterTable& t);

}  // namespace coho3
