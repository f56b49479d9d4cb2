#pragma once
#include "superspin/grassmann.hpp"

#include <Eigen/Dense>

#include <vector>

namespace superspin {

// Dense rows x cols matrix with entries in the Grassmann algebra of one order.
class GrassmannMatrix {
public:
  GrassmannMatrix() = default;
  GrassmannMatrix(int rows, int cols, int order);

  static GrassmannMatrix identity(int n, int order);
  static GrassmannMatrix from_body(const Eigen::MatrixXcd &m, int order);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int order() const { return order_; }

  const GrassmannNumber &operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  GrassmannNumber &operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  GrassmannMatrix transpose() const;
  Eigen::MatrixXcd body() const;
  double norm() const;
  bool all_even() const;
  bool all_odd() const;

  GrassmannMatrix operator-() const;
  GrassmannMatrix &operator+=(const GrassmannMatrix &o);
  GrassmannMatrix &operator-=(const GrassmannMatrix &o);
  GrassmannMatrix &operator*=(Scalar s);

private:
  int rows_ = 0, cols_ = 0, order_ = 0;
  std::vector<GrassmannNumber> data_;
};

GrassmannMatrix operator+(GrassmannMatrix a, const GrassmannMatrix &b);
GrassmannMatrix operator-(GrassmannMatrix a, const GrassmannMatrix &b);
GrassmannMatrix operator*(const GrassmannMatrix &a, const GrassmannMatrix &b);
GrassmannMatrix operator*(GrassmannMatrix a, Scalar s);
GrassmannMatrix operator*(const GrassmannNumber &s, const GrassmannMatrix &a);

// Determinant of a matrix with even entries.
GrassmannNumber gm_det(const GrassmannMatrix &m);
// Inverse by Gauss-Jordan with pivots chosen on body modulus.
GrassmannMatrix gm_inverse(const GrassmannMatrix &m);

// (p|q) supermatrix: even blocks A (p x p), D (q x q); odd blocks B (p x q),
// C (q x p).
class Supermatrix {
public:
  Supermatrix() = default;
  Supermatrix(int p, int q, int order);
  // Validates the parity pattern; throws FormatError on violation.
  Supermatrix(int p, int q, GrassmannMatrix entries);

  static Supermatrix identity(int p, int q, int order);
  static Supermatrix from_blocks(const GrassmannMatrix &a,
                                 const GrassmannMatrix &b,
                                 const GrassmannMatrix &c,
                                 const GrassmannMatrix &d);
  // Body-only supermatrix; off-diagonal blocks of m must vanish.
  static Supermatrix from_body(int p, int q, int order,
                               const Eigen::MatrixXcd &m);
  static Supermatrix block_diag(int order, const Eigen::MatrixXcd &a,
                                const Eigen::MatrixXcd &d);

  int p() const { return p_; }
  int q() const { return q_; }
  int size() const { return p_ + q_; }
  int order() const { return entries_.order(); }

  const GrassmannNumber &operator()(int r, int c) const { return entries_(r, c); }
  void set(int r, int c, GrassmannNumber v);
  bool is_odd_position(int r, int c) const { return (r < p_) != (c < p_); }

  const GrassmannMatrix &entries() const { return entries_; }
  GrassmannMatrix block_a() const;
  GrassmannMatrix block_b() const;
  GrassmannMatrix block_c() const;
  GrassmannMatrix block_d() const;

  Supermatrix body() const;
  Supermatrix nilpotent_part() const;
  Supermatrix grade(int k) const;
  Eigen::MatrixXcd body_matrix() const { return entries_.body(); }
  bool is_body_only() const;
  bool is_nilpotent() const;
  double norm() const { return entries_.norm(); }
  double max_entry_norm() const;

  Supermatrix operator-() const;
  Supermatrix &operator+=(const Supermatrix &o);
  Supermatrix &operator-=(const Supermatrix &o);
  Supermatrix &operator*=(Scalar s);

private:
  void validate() const;
  int p_ = 0, q_ = 0;
  GrassmannMatrix entries_;
};

Supermatrix operator+(Supermatrix a, const Supermatrix &b);
Supermatrix operator-(Supermatrix a, const Supermatrix &b);
Supermatrix operator*(const Supermatrix &a, const Supermatrix &b);
Supermatrix operator*(Supermatrix a, Scalar s);
Supermatrix operator*(Scalar s, Supermatrix a);

Supermatrix sm_mul(const Supermatrix &m, const Supermatrix &l);
Supermatrix sm_commutator(const Supermatrix &m, const Supermatrix &l);
Supermatrix sm_supertranspose(const Supermatrix &m);
GrassmannNumber sm_supertrace(const Supermatrix &m);
Supermatrix sm_inverse(const Supermatrix &m);
GrassmannNumber sm_sdet(const Supermatrix &m);
// Second Berezinian formula det(A) / det(D - C A^{-1} B).
GrassmannNumber sm_sdet_alt(const Supermatrix &m);
Supermatrix sm_exp(const Supermatrix &m);
Supermatrix sm_ln(const Supermatrix &m);
Supermatrix sm_body(const Supermatrix &m);
Supermatrix sm_grade(const Supermatrix &m, int k);

// ||a - b|| <= tol * max(1, ||a||, ||b||) in the entry-sum norm.
bool approx_equal(const Supermatrix &a, const Supermatrix &b, double tol = 1e-9);

// Block-diagonal symplectic form with 2x2 blocks [[0,1],[-1,0]].
Eigen::MatrixXd omega(int n);
// diag(I_m, -Omega_{2n} / 2).
Supermatrix block_q(int m, int n, int order);

} // namespace superspin
