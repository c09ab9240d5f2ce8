#include "coho3/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace coho3 {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t ncols = rows.size() ? rows.begin()->size() : 0;
  IntMatrix m(rows.size(), ncols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw std::invalid_argument("ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < idx.size(); ++k) m(r, k) = (*this)(r, idx[k]);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t c = 0; c < cols_; ++c) m(k, c) = (*this)(idx[k], c);
  return m;
}

IntMatrix IntMatrix::top_rows(std::size_t n) const {
  IntMatrix m(n, cols_);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
  return m;
}

IntVector IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (sgn((*this)(src, c)) != 0) (*this)(dst, c) += q * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& q) {
  if (sgn(q) == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (sgn((*this)(r, src)) != 0) (*this)(r, dst) += q * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() == 0 && a.rows() == 0) return b;
  if (b.cols() == 0 && b.rows() == 0) return a;
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

std::string to_string(const Integer& x) { return x.get_str(); }

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Applies every row operation to S, U and the inverse column operation to
// Uinv; every column operation to S and V. Null trackers are skipped.
struct SnfState {
  IntMatrix& S;
  IntMatrix* U;
  IntMatrix* Uinv;
  IntMatrix* V;

  void swap_rows(std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    if (U) U->swap_rows(a, b);
    if (Uinv) Uinv->swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    S.add_row_multiple(dst, src, q);
    if (U) U->add_row_multiple(dst, src, q);
    if (Uinv) Uinv->add_col_multiple(src, dst, -q);
  }
  void negate_row(std::size_t r) {
    S.negate_row(r);
    if (U) U->negate_row(r);
    if (Uinv) Uinv->negate_col(r);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    if (V) V->swap_cols(a, b);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    S.add_col_multiple(dst, src, q);
    if (V) V->add_col_multiple(dst, src, q);
  }
};

std::size_t snf_in_place(SnfState st) {
  IntMatrix& S = st.S;
  const std::size_t r = S.rows(), c = S.cols();
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Smallest |entry| in the trailing block; scan column-major so the
    // leftmost column wins ties, then the topmost row.
    std::size_t pi = r, pj = c;
    Integer best;
    for (std::size_t j = t; j < c; ++j)
      for (std::size_t i = t; i < r; ++i) {
        const Integer& v = S(i, j);
        if (sgn(v) == 0) continue;
        if (pi == r || mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) < 0) {
          best = abs(v);
          pi = i;
          pj = j;
        }
      }
    if (pi == r) break;
    st.swap_rows(t, pi);
    st.swap_cols(t, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(S(i, t)) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        st.add_row(i, t, -q);
        if (sgn(S(i, t)) != 0) {
          st.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(S(t, j)) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        st.add_col(j, t, -q);
        if (sgn(S(t, j)) != 0) {
          st.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            st.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (sgn(S(t, t)) < 0) st.negate_row(t);
  }
  return t;
}

// Incremental integer echelon form: one vector per pivot row.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  void insert(IntVector v) {
    std::size_t p = first_nonzero(v, 0);
    while (p < dim_) {
      auto it = vecs_.find(p);
      if (it == vecs_.end()) {
        if (sgn(v[p]) < 0)
          for (auto& x : v) x = -x;
        vecs_.emplace(p, std::move(v));
        return;
      }
      IntVector& b = it->second;
      if (mpz_divisible_p(v[p].get_mpz_t(), b[p].get_mpz_t())) {
        Integer q = v[p] / b[p];
        axpy(v, -q, b, p);
      } else {
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[p].get_mpz_t(), v[p].get_mpz_t());
        Integer bp = b[p] / g, vp = v[p] / g;
        IntVector nb(dim_), nv(dim_);
        for (std::size_t k = p; k < dim_; ++k) {
          nb[k] = s * b[k] + t * v[k];
          nv[k] = bp * v[k] - vp * b[k];
        }
        b = std::move(nb);
        v = std::move(nv);
      }
      p = first_nonzero(v, p);
    }
  }

  IntMatrix to_matrix() const {
    IntMatrix m(dim_, vecs_.size());
    std::size_t c = 0;
    for (const auto& [p, v] : vecs_) {
      for (std::size_t r = 0; r < dim_; ++r) m(r, c) = v[r];
      ++c;
    }
    return m;
  }

 private:
  std::size_t first_nonzero(const IntVector& v, std::size_t from) const {
    for (std::size_t k = from; k < dim_; ++k)
      if (sgn(v[k]) != 0) return k;
    return dim_;
  }
  void axpy(IntVector& v, const Integer& q, const IntVector& b, std::size_t from) const {
    for (std::size_t k = from; k < dim_; ++k)
      if (sgn(b[k]) != 0) v[k] += q * b[k];
  }

  std::size_t dim_;
  std::map<std::size_t, IntVector> vecs_;
};

}  // namespace

IntVector SmithForm::diagonal() const {
  IntVector d(std::min(S.rows(), S.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm f{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols()), 0};
  f.rank = snf_in_place({f.S, &f.U, nullptr, &f.V});
  return f;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  std::vector<std::size_t> idx;
  for (std::size_t j = f.rank; j < a.cols(); ++j) idx.push_back(j);
  return f.V.select_columns(idx);
}

IntMatrix lattice_basis(const IntMatrix& a) {
  EchelonBasis eb(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    IntVector v = a.column(c);
    if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; }))
      eb.insert(std::move(v));
  }
  return eb.to_matrix();
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup make_group(IntVector torsion, std::size_t free_rank, IntMatrix projection,
                     IntMatrix section, IntMatrix relations) {
  FgAbGroup g;
  g.torsion_ = std::move(torsion);
  g.free_rank_ = free_rank;
  g.projection_ = std::move(projection);
  g.section_ = std::move(section);
  g.relations_ = std::move(relations);
  return g;
}

FgAbGroup cokernel(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix basis = lattice_basis(a);
  IntMatrix S = basis;
  IntMatrix U = IntMatrix::identity(n);
  IntMatrix Uinv = IntMatrix::identity(n);
  std::size_t rank = snf_in_place({S, &U, &Uinv, nullptr});
  assert(rank == basis.cols());

  std::vector<std::size_t> keep;
  IntVector torsion;
  for (std::size_t i = 0; i < rank; ++i)
    if (S(i, i) != 1) {
      keep.push_back(i);
      torsion.push_back(S(i, i));
    }
  for (std::size_t i = rank; i < n; ++i) keep.push_back(i);
  FgAbGroup g = make_group(std::move(torsion), n - rank, U.select_rows(keep),
                           Uinv.select_columns(keep), std::move(basis));
  if (g.projection_.rows() == 0) g.projection_ = IntMatrix(0, n);
  if (g.section_.cols() == 0) g.section_ = IntMatrix(n, 0);
  return g;
}

FgAbGroup FgAbGroup::from_cyclic_orders(std::span<const Integer> orders) {
  return cokernel(IntMatrix::diagonal(orders));
}

FgAbGroup FgAbGroup::from_cyclic_orders(std::initializer_list<long> orders) {
  IntVector v(orders.begin(), orders.end());
  return from_cyclic_orders(std::span<const Integer>(v));
}

FgAbGroup FgAbGroup::trivial(std::size_t ambient_dim) {
  return cokernel(IntMatrix::identity(ambient_dim));
}

std::optional<Integer> FgAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

Integer FgAbGroup::exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

Integer FgAbGroup::modulus(std::size_t i) const {
  return i < torsion_.size() ? torsion_[i] : Integer(0);
}

IntVector FgAbGroup::reduce_coords(IntVector coords) const {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(), torsion_[i].get_mpz_t());
  }
  return coords;
}

IntVector FgAbGroup::project(std::span<const Integer> x) const {
  return reduce_coords(projection_.apply(x));
}

bool FgAbGroup::is_zero(std::span<const Integer> x) const {
  IntVector p = project(x);
  return std::all_of(p.begin(), p.end(), [](const Integer& v) { return sgn(v) == 0; });
}

IntVector FgAbGroup::primary_decomposition() const {
  IntVector out;
  for (Integer d : torsion_) {
    for (Integer p = 2; p * p <= d; ++p) {
      if (!mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) continue;
      Integer q = 1;
      while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
        d /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  std::size_t i = 0;
  while (i < torsion_.size()) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    os << (first ? "" : " + ") << 'C' << torsion_[i];
    if (j - i > 1) os << '^' << (j - i);
    first = false;
    i = j;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << 'Z';
    if (free_rank_ > 1) os << '^' << free_rank_;
  }
  return os.str();
}

namespace {

IntVector cyclic_orders(const FgAbGroup& g) {
  IntVector v = g.torsion();
  for (std::size_t i = 0; i < g.free_rank(); ++i) v.push_back(0);
  return v;
}

Integer gcd_or(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

IntMatrix torsion_relations(const FgAbGroup& g) {
  IntMatrix d(g.ngens(), g.torsion().size());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) d(i, i) = g.torsion()[i];
  return d;
}

}  // namespace

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  IntVector v = cyclic_orders(a);
  IntVector w = cyclic_orders(b);
  v.insert(v.end(), w.begin(), w.end());
  return FgAbGroup::from_cyclic_orders(v);
}

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
  // gcd(m, 0) = m and gcd(0, 0) = 0 make Z behave as the unit for tensor.
  IntVector out;
  for (const auto& x : cyclic_orders(a))
    for (const auto& y : cyclic_orders(b)) out.push_back(gcd_or(x, y));
  return FgAbGroup::from_cyclic_orders(out);
}

FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b) {
  IntVector out;
  for (const auto& x : a.torsion())
    for (const auto& y : b.torsion()) out.push_back(gcd_or(x, y));
  return FgAbGroup::from_cyclic_orders(out);
}

Subquotient subquotient(const IntMatrix& gens, const IntMatrix& rels) {
  const std::size_t m = gens.cols();
  if (m == 0) return {FgAbGroup::trivial(0), IntMatrix(gens.rows(), 0)};
  IntMatrix joint = rels.cols() ? hconcat(gens, rels) : gens;
  IntMatrix k = kernel_basis(joint).top_rows(m);
  FgAbGroup s = cokernel(k);
  IntMatrix g = gens * s.section();
  return {std::move(s), std::move(g)};
}

Subquotient subgroup_generated(const FgAbGroup& g, const IntMatrix& gens) {
  if (gens.rows() != g.ambient_dim()) throw std::invalid_argument("subgroup_generated: dimension mismatch");
  IntMatrix coords = g.projection() * gens;
  Subquotient sq = subquotient(coords, torsion_relations(g));
  IntMatrix amb = gens * sq.structure.section();
  return {std::move(sq.structure), std::move(amb)};
}

FgAbGroup quotient(const FgAbGroup& g, const IntMatrix& gens) {
  if (gens.rows() != g.ambient_dim()) throw std::invalid_argument("quotient: dimension mismatch");
  IntMatrix coords = g.projection() * gens;
  FgAbGroup q = cokernel(hconcat(coords, torsion_relations(g)));
  return make_group(q.torsion(), q.free_rank(), q.projection() * g.projection(),
                    g.section() * q.section(), hconcat(g.relations(), gens));
}

InducedMap induced_map(const IntMatrix& f, const FgAbGroup& src, const FgAbGroup& dst) {
  if (f.rows() != dst.ambient_dim() || f.cols() != src.ambient_dim())
    throw std::invalid_argument("induced_map: dimension mismatch");
  for (std::size_t c = 0; c < src.relations().cols(); ++c) {
    IntVector r = src.relations().column(c);
    if (!dst.is_zero(f.apply(r))) throw NotWellDefined("map does not descend to the quotient groups");
  }

  IntMatrix fs = dst.projection() * f * src.section();
  for (std::size_t i = 0; i < dst.torsion().size(); ++i)
    for (std::size_t j = 0; j < fs.cols(); ++j)
      mpz_fdiv_r(fs(i, j).get_mpz_t(), fs(i, j).get_mpz_t(), dst.torsion()[i].get_mpz_t());
  IntMatrix db = torsion_relations(dst);
  IntMatrix da = torsion_relations(src);

  InducedMap out;
  out.image = subquotient(fs, db).structure;

  FgAbGroup q = cokernel(hconcat(fs, db));
  out.cokernel = make_group(q.torsion(), q.free_rank(), q.projection() * dst.projection(),
                            dst.section() * q.section(), hconcat(f, dst.relations()));

  const std::size_t ks = src.ngens();
  if (ks == 0) {
    out.kernel = FgAbGroup::trivial(0);
    out.kernel_generators = IntMatrix(src.ambient_dim(), 0);
  } else {
    IntMatrix k = kernel_basis(hconcat(fs, db)).top_rows(ks);
    Subquotient sq = subquotient(k, da);
    out.kernel = std::move(sq.structure);
    out.kernel_generators = src.section() * sq.generators;
  }
  out.is_iso = out.kernel.is_trivial() && out.cokernel.is_trivial();
  return out;
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const Integer& x) {
  if (x.fits_slong_p())
    j = x.get_si();
  else
    j = x.get_str();
}

void to_json(nlohmann::json& j, const IntMatrix& m) {
  j = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      nlohmann::json e;
      to_json(e, m(r, c));
      row.push_back(e);
    }
    j.push_back(row);
  }
}

void from_json(const nlohmann::json& j, IntMatrix& m) {
  std::vector<IntVector> rows;
  for (const auto& row : j) {
    IntVector v;
    for (const auto& e : row) v.emplace_back(e.is_string() ? Integer(e.get<std::string>()) : Integer(e.get<long>()));
    rows.push_back(std::move(v));
  }
  m = IntMatrix::from_rows(rows);
}

void to_json(nlohmann::json& j, const FgAbGroup& g) {
  nlohmann::json tors = nlohmann::json::array();
  for (const auto& d : g.torsion()) {
    nlohmann::json e;
    to_json(e, d);
    tors.push_back(e);
  }
  j = nlohmann::json{{"free_rank", g.free_rank()}, {"torsion", tors}};
}

}  // namespace coho3
