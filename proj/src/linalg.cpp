#include "hesspair/linalg.hpp"

#include <sstream>
#include <utility>

namespace hesspair {

namespace {

struct Echelon {
  std::vector<Vector> rows;  // nonzero rows only, reduced
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination on the given rows (each of length `cols`).
Echelon reduce_rows(std::vector<Vector> rows, std::size_t cols) {
  Echelon out;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[next], rows[pivot]);
    Vector& prow = rows[next];
    if (!prow[c].is_one()) {
      FieldElement scale = prow[c].inv();
      for (std::size_t k = c; k < cols; ++k) prow[k] *= scale;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][c].is_zero()) continue;
      FieldElement factor = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (!prow[k].is_zero()) rows[r][k] -= factor * prow[k];
      }
    }
    out.pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.spec() != b.spec() || a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::AmbientMismatch,
                "subspaces of " + a.spec().to_string() + "^" + std::to_string(a.ambient_dim()) +
                    " and " + b.spec().to_string() + "^" + std::to_string(b.ambient_dim()));
  }
}

}  // namespace

Vector zero_vector(FieldSpec spec, std::size_t n) { return Vector(n, FieldElement::zero(spec)); }

Vector unit_vector(FieldSpec spec, std::size_t n, std::size_t index) {
  Vector v = zero_vector(spec, n);
  v.at(index) = FieldElement::one(spec);
  return v;
}

bool is_zero(std::span<const FieldElement> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix::Matrix(FieldSpec spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), entries_(rows * cols, FieldElement::zero(spec)) {}

Matrix Matrix::identity(FieldSpec spec, std::size_t n) {
  return scalar(spec, n, FieldElement::one(spec));
}

Matrix Matrix::scalar(FieldSpec spec, std::size_t n, const FieldElement& value) {
  Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

Matrix Matrix::from_rows(FieldSpec spec, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(spec, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::SizeMismatch, "row " + std::to_string(r) + " has length " +
                                               std::to_string(rows[r].size()) + ", expected " +
                                               std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].spec() != spec) throw Error(ErrorCode::MixedFields, "matrix entry field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_ints(FieldSpec spec, std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  std::vector<Vector> data;
  for (const auto& row : rows) {
    Vector v;
    for (long x : row) v.emplace_back(spec, x);
    data.push_back(std::move(v));
  }
  return from_rows(spec, cols, data);
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rw = row(r);
    out.emplace_back(rw.begin(), rw.end());
  }
  return out;
}

bool Matrix::is_zero() const { return hesspair::is_zero(entries_); }

Matrix Matrix::transpose() const {
  Matrix t(spec_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vector Matrix::apply(std::span<const FieldElement> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::SizeMismatch, "vector length mismatch");
  Vector out = zero_vector(spec_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const FieldElement& a = (*this)(r, c);
      if (!a.is_zero()) out[r] += a * v[c];
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::SizeMismatch, "matrix sum shape mismatch");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::SizeMismatch, "matrix difference shape mismatch");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::SizeMismatch, "matrix product shape mismatch");
  if (a.spec_ != b.spec_) throw Error(ErrorCode::MixedFields, "matrix product fields differ");
  Matrix out(a.spec_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const FieldElement& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  }
  return out;
}

Matrix operator*(const FieldElement& s, Matrix m) {
  for (auto& x : m.entries_) x *= s;
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix shifted(const Matrix& m, const FieldElement& value) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "shift of a non-square matrix");
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= value;
  return out;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    Vector v(m.row(r).begin(), m.row(r).end());
    Vector e = unit_vector(m.spec(), n, r);
    v.insert(v.end(), e.begin(), e.end());
    rows.push_back(std::move(v));
  }
  Echelon e = reduce_rows(std::move(rows), 2 * n);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  }
  Matrix inv(m.spec(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.rows[r][n + c];
  }
  return inv;
}

RrefResult rref(const Matrix& m) {
  Echelon e = reduce_rows(m.row_vectors(), m.cols());
  std::size_t rank = e.rows.size();
  Subspace s(Matrix::from_rows(m.spec(), m.cols(), e.rows), std::move(e.pivots));
  return RrefResult{std::move(s), rank};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace Subspace::zero(FieldSpec spec, std::size_t ambient_dim) {
  return Subspace(Matrix(spec, 0, ambient_dim), {});
}

Subspace Subspace::full(FieldSpec spec, std::size_t ambient_dim) {
  std::vector<std::size_t> pivots(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
  return Subspace(Matrix::identity(spec, ambient_dim), std::move(pivots));
}

Subspace Subspace::span(FieldSpec spec, std::size_t ambient_dim,
                        const std::vector<Vector>& vectors) {
  return rref(Matrix::from_rows(spec, ambient_dim, vectors)).space;
}

Subspace Subspace::row_space(const Matrix& m) { return rref(m).space; }

bool Subspace::contains(std::span<const FieldElement> v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "vector length");
  // With a reduced basis, v is in the span iff v equals the combination
  // read off at the pivot columns.
  Vector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < dim(); ++r) {
    FieldElement coeff = residual[pivots_[r]];
    if (coeff.is_zero()) continue;
    for (std::size_t c = pivots_[r]; c < ambient_dim(); ++c) {
      if (!basis_(r, c).is_zero()) residual[c] -= coeff * basis_(r, c);
    }
  }
  return hesspair::is_zero(residual);
}

std::string Subspace::to_string() const { return "span" + basis_.to_string(); }

Subspace kernel(const Matrix& m) {
  Echelon e = reduce_rows(m.row_vectors(), m.cols());
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = unit_vector(m.spec(), n, f);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.spec(), n, basis);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.is_zero() || a.is_full()) return a;
  if (a.is_zero() || b.is_full()) return b;
  std::vector<Vector> rows = a.vectors();
  for (auto& v : b.vectors()) rows.push_back(std::move(v));
  return Subspace::span(a.spec(), a.ambient_dim(), rows);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_full()) return a;
  if (b.is_zero() || a.is_full()) return b;
  std::vector<Vector> rows;
  for (const auto& v : a.vectors()) {
    Vector w = v;
    w.insert(w.end(), v.begin(), v.end());
    rows.push_back(std::move(w));
  }
  for (const auto& v : b.vectors()) {
    Vector w = v;
    Vector z = zero_vector(a.spec(), n);
    w.insert(w.end(), z.begin(), z.end());
    rows.push_back(std::move(w));
  }
  Echelon e = reduce_rows(std::move(rows), 2 * n);
  std::vector<Vector> common;
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] < n) continue;
    common.emplace_back(e.rows[r].begin() + static_cast<std::ptrdiff_t>(n), e.rows[r].end());
  }
  return Subspace::span(a.spec(), n, common);
}

bool subspace_contains(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.dim() > a.dim()) return false;
  for (std::size_t r = 0; r < b.dim(); ++r) {
    if (!a.contains(b.basis().row(r))) return false;
  }
  return true;
}

Subspace apply(const Matrix& m, const Subspace& s) {
  if (!m.is_square() || m.cols() != s.ambient_dim() || m.spec() != s.spec()) {
    throw Error(ErrorCode::AmbientMismatch, "operator does not act on the subspace's ambient space");
  }
  std::vector<Vector> image;
  image.reserve(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r) image.push_back(m.apply(s.basis().row(r)));
  return Subspace::span(s.spec(), s.ambient_dim(), image);
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

Subspace sum_all(FieldSpec spec, std::size_t ambient_dim, std::span<const Subspace> parts) {
  std::vector<Vector> rows;
  for (const auto& p : parts) {
    if (p.spec() != spec || p.ambient_dim() != ambient_dim) {
      throw Error(ErrorCode::AmbientMismatch, "summand lives in a different space");
    }
    for (auto& v : p.vectors()) rows.push_back(std::move(v));
  }
  return Subspace::span(spec, ambient_dim, rows);
}

bool is_decomposition(std::span<const Subspace> parts, std::size_t ambient_dim) {
  if (parts.empty()) return false;
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim) return false;
    if (p.is_zero()) return false;
    total += p.dim();
  }
  if (total != ambient_dim) return false;
  return sum_all(parts.front().spec(), ambient_dim, parts).is_full();
}

EchelonBuilder::EchelonBuilder(FieldSpec spec, std::size_t ambient_dim)
    : spec_(spec), ambient_dim_(ambient_dim) {}

void EchelonBuilder::reduce(Vector& v) const {
  // Rows are stored in insertion order; each has zeros at the pivots of the
  // rows inserted before it, so one pass in that order clears every pivot.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].is_zero()) continue;
    FieldElement coeff = v[p];
    for (std::size_t c = 0; c < ambient_dim_; ++c) {
      if (!rows_[r][c].is_zero()) v[c] -= coeff * rows_[r][c];
    }
  }
}

bool EchelonBuilder::contains(std::span<const FieldElement> v) const {
  Vector w(v.begin(), v.end());
  reduce(w);
  return hesspair::is_zero(w);
}

bool EchelonBuilder::insert(Vector v) {
  if (v.size() != ambient_dim_) throw Error(ErrorCode::AmbientMismatch, "vector length");
  reduce(v);
  std::size_t p = 0;
  while (p < ambient_dim_ && v[p].is_zero()) ++p;
  if (p == ambient_dim_) return false;
  FieldElement scale = v[p].inv();
  for (auto& x : v) x *= scale;
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

Subspace EchelonBuilder::to_subspace() const { return Subspace::span(spec_, ambient_dim_, rows_); }

}  // namespace hesspair
