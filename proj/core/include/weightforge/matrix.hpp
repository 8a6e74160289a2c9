#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "weightforge/rational.hpp"

namespace weightforge {

// Dense matrix of exact rationals, row-major. Dimensions are desk-scale, so
// no attempt at sparsity; every operation is exact.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Rat(0)) {}

  static RatMatrix identity(int n);
  static RatMatrix zero(int rows, int cols) { return RatMatrix(rows, cols); }
  static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
  static RatMatrix column(const std::vector<Rat>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator*(const Rat& s) const;
  RatMatrix operator-() const { return *this * Rat(-1); }

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  RatMatrix col(int j) const;
  void set_col(int j, const RatMatrix& column);
  RatMatrix submatrix(int r0, int c0, int nrows, int ncols) const;

  // Stacks columns of b to the right of a / rows of b below a.
  static RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
  static RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
  static RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b);

  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> e_;
};

struct RrefResult {
  RatMatrix mat;
  std::vector<int> pivots;  // strictly increasing pivot column indices
};

// Reduced row echelon form.
RrefResult rref(const RatMatrix& m);
int rank(const RatMatrix& m);

// A linear subspace of Q^ambient_dim given by a basis whose columns are
// linearly independent.
struct Subspace {
  int ambient_dim = 0;
  RatMatrix basis;  // ambient_dim x dim

  Subspace() = default;
  Subspace(int ambient, RatMatrix b) : ambient_dim(ambient), basis(std::move(b)) {}

  static Subspace zero(int ambient) { return Subspace(ambient, RatMatrix(ambient, 0)); }
  static Subspace full(int ambient) { return Subspace(ambient, RatMatrix::identity(ambient)); }
  // Reduces an arbitrary spanning set of columns to an independent basis.
  static Subspace from_spanning_columns(int ambient, const RatMatrix& cols);

  int dim() const { return basis.cols(); }
};

// Basis of {v : m v = 0}. Uses the standard free-variable parametrization,
// so e.g. kernel of [[1,2]] is spanned by (-2, 1).
Subspace kernel_basis(const RatMatrix& m);

// Basis of the column space (the pivot columns of m).
Subspace image_basis(const RatMatrix& m);

// Some x with m x = b (b may have several columns; solves all at once).
// Empty when inconsistent. Throws on a row-count mismatch.
std::optional<RatMatrix> solve(const RatMatrix& m, const RatMatrix& b);
// For systems that are solvable by construction; throws std::logic_error
// naming the caller when that invariant is broken.
RatMatrix solve_or_throw(const RatMatrix& m, const RatMatrix& b, const char* who);

// Surjection Q^ambient -> Q^(ambient-dim sub) whose kernel is exactly sub.
// The projection restricted to the non-pivot coordinates of sub is the
// identity, so sub = 0 yields the identity matrix.
std::pair<RatMatrix, int> quotient_map(int ambient_dim, const Subspace& sub);

// Canonical representative of a subspace: the nonzero rows of rref(basis^T).
// Two subspaces are equal iff their canonical forms are equal matrices.
RatMatrix subspace_canonical(const Subspace& s);
bool subspaces_equal(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& outer, const Subspace& inner);
bool subspace_contains_vector(const Subspace& s, const RatMatrix& v);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

// Image m(S) and preimage {v : m v in S}.
Subspace map_subspace(const RatMatrix& m, const Subspace& s);
Subspace preimage_subspace(const RatMatrix& m, const Subspace& s);

// Matrix of f restricted to src in the given bases; throws when f does not
// map src into tgt.
RatMatrix restrict_matrix(const RatMatrix& f, const Subspace& src, const Subspace& tgt);

// Right inverse of a surjective matrix (m * section = identity).
RatMatrix right_inverse(const RatMatrix& m);

// The map induced by f on quotients: solves q_tgt * f = result * q_src where
// the q's are surjections and f maps ker(q_src) into ker(q_tgt).
RatMatrix induced_on_quotients(const RatMatrix& f, const RatMatrix& q_src, const RatMatrix& q_tgt);

}  // namespace weightforge
