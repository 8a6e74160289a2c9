#include "weightforge/matrix.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace weightforge {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  RatMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::column(const std::vector<Rat>& entries) {
  RatMatrix m(static_cast<int>(entries.size()), 1);
  for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), 0) = entries[i];
  return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  assert(cols_ == o.rows_);
  RatMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.at(i, j) += a * o.at(k, j);
      }
    }
  return r;
}

RatMatrix RatMatrix::operator*(const Rat& s) const {
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
  return r;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : e_)
    if (x != 0) return false;
  return true;
}

bool RatMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

RatMatrix RatMatrix::col(int j) const {
  RatMatrix c(rows_, 1);
  for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
  return c;
}

void RatMatrix::set_col(int j, const RatMatrix& column) {
  assert(column.rows() == rows_ && column.cols() == 1);
  for (int i = 0; i < rows_; ++i) at(i, j) = column.at(i, 0);
}

RatMatrix RatMatrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  RatMatrix m(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

RatMatrix RatMatrix::hstack(const RatMatrix& a, const RatMatrix& b) {
  assert(a.rows() == b.rows());
  RatMatrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& a, const RatMatrix& b) {
  assert(a.cols() == b.cols());
  RatMatrix m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

RatMatrix RatMatrix::block_diag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << rat_str(at(i, j));
  }
  os << "]";
  return os.str();
}

RrefResult rref(const RatMatrix& m) {
  RrefResult out{m, {}};
  RatMatrix& a = out.mat;
  int lead = 0;
  for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
    int piv = -1;
    for (int r = lead; r < a.rows(); ++r)
      if (a.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(lead, j));
    Rat inv = 1 / a.at(lead, col);
    for (int j = col; j < a.cols(); ++j) a.at(lead, j) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == lead || a.at(r, col) == 0) continue;
      Rat f = a.at(r, col);
      for (int j = col; j < a.cols(); ++j) a.at(r, j) -= f * a.at(lead, j);
    }
    out.pivots.push_back(col);
    ++lead;
  }
  return out;
}

int rank(const RatMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Subspace Subspace::from_spanning_columns(int ambient, const RatMatrix& cols) {
  assert(cols.rows() == ambient);
  return image_basis(cols);
}

Subspace kernel_basis(const RatMatrix& m) {
  RrefResult r = rref(m);
  int n = m.cols();
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < n; ++c) {
      if (pi < r.pivots.size() && r.pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  RatMatrix basis(n, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int f = free_cols[k];
    basis.at(f, static_cast<int>(k)) = 1;
    for (size_t pi = 0; pi < r.pivots.size(); ++pi)
      basis.at(r.pivots[pi], static_cast<int>(k)) = -r.mat.at(static_cast<int>(pi), f);
  }
  return Subspace(n, basis);
}

Subspace image_basis(const RatMatrix& m) {
  RrefResult r = rref(m);
  RatMatrix basis(m.rows(), static_cast<int>(r.pivots.size()));
  for (size_t k = 0; k < r.pivots.size(); ++k)
    for (int i = 0; i < m.rows(); ++i) basis.at(i, static_cast<int>(k)) = m.at(i, r.pivots[k]);
  return Subspace(m.rows(), basis);
}

std::optional<RatMatrix> solve(const RatMatrix& m, const RatMatrix& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  RrefResult r = rref(RatMatrix::hstack(m, b));
  // Inconsistent iff some pivot falls in the b block.
  for (int p : r.pivots)
    if (p >= m.cols()) return std::nullopt;
  RatMatrix x(m.cols(), b.cols());
  for (size_t pi = 0; pi < r.pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.at(r.pivots[pi], j) = r.mat.at(static_cast<int>(pi), m.cols() + j);
  return x;
}

RatMatrix solve_or_throw(const RatMatrix& m, const RatMatrix& b, const char* who) {
  auto x = solve(m, b);
  if (!x) throw std::logic_error(std::string(who) + ": expected a solvable system");
  return *x;
}

std::pair<RatMatrix, int> quotient_map(int ambient_dim, const Subspace& sub) {
  if (sub.ambient_dim != ambient_dim) throw std::invalid_argument("quotient_map: ambient mismatch");
  RatMatrix canon = subspace_canonical(sub);  // k x ambient, rref rows
  int k = canon.rows();
  if (rank(sub.basis) != sub.dim()) throw std::invalid_argument("quotient_map: basis not independent");
  std::vector<int> pivots = rref(canon).pivots;
  assert(static_cast<int>(pivots.size()) == k);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMatrix proj(ambient_dim - k, ambient_dim);
  int row = 0;
  for (int c = 0; c < ambient_dim; ++c) {
    if (is_pivot[c]) continue;
    proj.at(row, c) = 1;
    for (int i = 0; i < k; ++i) proj.at(row, pivots[i]) = -canon.at(i, c);
    ++row;
  }
  return {proj, ambient_dim - k};
}

RatMatrix subspace_canonical(const Subspace& s) {
  RrefResult r = rref(s.basis.transpose());
  return r.mat.submatrix(0, 0, static_cast<int>(r.pivots.size()), s.ambient_dim);
}

bool subspaces_equal(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  return subspace_canonical(a) == subspace_canonical(b);
}

bool subspace_contains(const Subspace& outer, const Subspace& inner) {
  if (outer.ambient_dim != inner.ambient_dim) return false;
  if (inner.dim() == 0) return true;
  return solve(outer.basis, inner.basis).has_value();
}

bool subspace_contains_vector(const Subspace& s, const RatMatrix& v) {
  return solve(s.basis, v).has_value();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  assert(a.ambient_dim == b.ambient_dim);
  return image_basis(RatMatrix::hstack(a.basis, b.basis));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  assert(a.ambient_dim == b.ambient_dim);
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim);
  // v = a.basis x = b.basis y; parametrize by the kernel of [a.basis | -b.basis].
  Subspace k = kernel_basis(RatMatrix::hstack(a.basis, -b.basis));
  RatMatrix xs = k.basis.submatrix(0, 0, a.dim(), k.dim());
  return image_basis(a.basis * xs);
}

Subspace map_subspace(const RatMatrix& m, const Subspace& s) {
  assert(m.cols() == s.ambient_dim);
  return image_basis(m * s.basis);
}

Subspace preimage_subspace(const RatMatrix& m, const Subspace& s) {
  assert(m.rows() == s.ambient_dim);
  auto [proj, qdim] = quotient_map(s.ambient_dim, s);
  (void)qdim;
  return kernel_basis(proj * m);
}

RatMatrix restrict_matrix(const RatMatrix& f, const Subspace& src, const Subspace& tgt) {
  auto x = solve(tgt.basis, f * src.basis);
  if (!x) throw std::invalid_argument("restrict_matrix: map does not preserve the subspaces");
  return *x;
}

RatMatrix right_inverse(const RatMatrix& m) {
  auto s = solve(m, RatMatrix::identity(m.rows()));
  if (!s) throw std::invalid_argument("right_inverse: matrix is not surjective");
  return *s;
}

RatMatrix induced_on_quotients(const RatMatrix& f, const RatMatrix& q_src, const RatMatrix& q_tgt) {
  // result * q_src = q_tgt * f; q_src is surjective, so compose with a section.
  RatMatrix section = right_inverse(q_src);
  RatMatrix result = q_tgt * f * section;
  assert((result * q_src) == (q_tgt * f));
  return result;
}

}  // namespace weightforge
