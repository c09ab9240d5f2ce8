#pragma once

// Exact integer matrices, Smith normal form and finitely generated abelian
// groups. Everything is arbitrary precision; nothing here touches floating
// point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace coho3 {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class NotWellDefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> d);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Integer> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  IntVector column(std::size_t c) const;
  IntMatrix transposed() const;
  IntMatrix select_columns(std::span<const std::size_t> idx) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  IntMatrix top_rows(std::size_t n) const;
  IntVector apply(std::span<const Integer> v) const;
  bool is_zero() const;

  // Determinant by fraction-free (Bareiss) elimination.
  Integer determinant() const;

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q);  // row dst += q*row src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q);  // col dst += q*col src
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);

// U * A * V == S with S diagonal, d1 | d2 | ... and U, V unimodular.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;

  IntVector diagonal() const;
};

// Pivot rule: smallest nonzero absolute value, leftmost column on ties,
// topmost row after that.
SmithForm smith_normal_form(const IntMatrix& a);

// Columns of the result form a lattice basis of ker(A : Z^cols -> Z^rows).
IntMatrix kernel_basis(const IntMatrix& a);

// Columns of the result form a lattice basis of the column span of A.
IntMatrix lattice_basis(const IntMatrix& a);

// A finitely generated abelian group Z^f + C_{d1} + ... + C_{dk}, d_i | d_{i+1},
// presented as a quotient of an ambient lattice Z^n. Group coordinates list
// the torsion factors first, then the free summands.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  // Sum of cyclic groups with the given orders; 0 stands for Z. The ambient
  // lattice has one coordinate per listed order.
  static FgAbGroup from_cyclic_orders(std::span<const Integer> orders);
  static FgAbGroup from_cyclic_orders(std::initializer_list<long> orders);
  static FgAbGroup trivial(std::size_t ambient_dim = 0);

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t ngens() const { return torsion_.size() + free_rank_; }
  std::size_t ambient_dim() const { return projection_.cols(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return ngens() == 0; }
  std::optional<Integer> order() const;
  // Exponent of the torsion subgroup (1 for torsion-free groups).
  Integer exponent() const;
  // Order of generator i, 0 for free generators.
  Integer modulus(std::size_t i) const;

  const IntMatrix& projection() const { return projection_; }
  const IntMatrix& section() const { return section_; }
  // Generating set (not necessarily a basis) of the kernel of projection.
  const IntMatrix& relations() const { return relations_; }

  // Group coordinates of an ambient vector, torsion coordinates reduced.
  IntVector project(std::span<const Integer> x) const;
  bool is_zero(std::span<const Integer> x) const;
  IntVector reduce_coords(IntVector coords) const;

  // Elementary divisors (prime powers), sorted; free part reported separately.
  IntVector primary_decomposition() const;
  std::string to_string() const;

  bool same_structure(const FgAbGroup& other) const {
    return free_rank_ == other.free_rank_ && torsion_ == other.torsion_;
  }
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) { return a.same_structure(b); }

 private:
  friend FgAbGroup cokernel(const IntMatrix& a);
  friend FgAbGroup make_group(IntVector torsion, std::size_t free_rank, IntMatrix projection,
                              IntMatrix section, IntMatrix relations);

  std::size_t free_rank_ = 0;
  IntVector torsion_;
  IntMatrix projection_;
  IntMatrix section_;
  IntMatrix relations_;
};

// Z^rows / colspan(A).
FgAbGroup cokernel(const IntMatrix& a);

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b);

// (span(gens) + span(rels)) / span(rels) inside Z^n. The structure's ambient
// lattice is Z^{gens.cols()}; generators() gives ambient representatives in Z^n.
struct Subquotient {
  FgAbGroup structure;
  IntMatrix generators;
};
Subquotient subquotient(const IntMatrix& gens, const IntMatrix& rels);

// Subgroup of g generated by the given ambient vectors (columns).
Subquotient subgroup_generated(const FgAbGroup& g, const IntMatrix& gens);
// g / <gens>.
FgAbGroup quotient(const FgAbGroup& g, const IntMatrix& gens);

struct InducedMap {
  FgAbGroup kernel;
  IntMatrix kernel_generators;  // src ambient coordinates, one column per kernel generator
  FgAbGroup image;
  FgAbGroup cokernel;
  bool is_iso = false;
};

// Homomorphism src -> dst induced by f : Z^{src ambient} -> Z^{dst ambient}.
// Throws NotWellDefined when f does not carry src relations into dst relations.
InducedMap induced_map(const IntMatrix& f, const FgAbGroup& src, const FgAbGroup& dst);

std::string to_string(const Integer& x);

void to_json(nlohmann::json& j, const Integer& x);
void to_json(nlohmann::json& j, const IntMatrix& m);
void from_json(const nlohmann::json& j, IntMatrix& m);
void to_json(nlohmann::json& j, const FgAbGroup& g);

}  // namespace coho3
