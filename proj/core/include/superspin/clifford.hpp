#pragma once
#include "superspin/grassmann.hpp"
#include "superspin/supermatrix.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace superspin {

// Normal-ordered monomial e_J e`_1^{a_1} ... e`_{2n}^{a_{2n}}.
struct Monomial {
  static constexpr int kMaxFermions = 16;
  std::uint32_t blade = 0;
  std::array<std::uint8_t, kMaxFermions> alpha{};

  int degree() const;
  friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

struct MulOptions {
  int cap = -1; // -1: min of the operands' caps
  bool strict = false;
};

// Element of Lambda_N (x) C_{m,2n} truncated at a fermionic degree cap.
// Relations: e_j e_k + e_k e_j = -2 delta_jk, e_j e`_k = -e`_k e_j,
// e`_j e`_k - e`_k e`_j = g_jk with g_{2j-1,2j} = 1 = -g_{2j,2j-1}.
class CliffordElement {
public:
  static constexpr int kDefaultCap = 8;
  static constexpr int kMaxBosons = 16;

  CliffordElement() = default;
  CliffordElement(int m, int n, int order, int cap = kDefaultCap);

  static CliffordElement scalar(int m, int n, int order, const GrassmannNumber &c,
                                int cap = kDefaultCap);
  static CliffordElement scalar(int m, int n, int order, Scalar c,
                                int cap = kDefaultCap);
  // e_j, 1-based.
  static CliffordElement e(int m, int n, int order, int j, int cap = kDefaultCap);
  // e`_j, 1-based.
  static CliffordElement ep(int m, int n, int order, int j, int cap = kDefaultCap);

  int m() const { return m_; }
  int n() const { return n_; }
  int order() const { return order_; }
  int cap() const { return cap_; }
  bool truncated() const { return truncated_; }
  const std::map<Monomial, GrassmannNumber> &terms() const { return terms_; }

  GrassmannNumber coefficient(const Monomial &mono) const;
  GrassmannNumber scalar_part() const;
  void add_term(const Monomial &mono, const GrassmannNumber &c);
  CliffordElement degree_at_most(int d) const;
  CliffordElement with_cap(int cap) const;
  bool is_zero() const { return terms_.empty(); }
  double norm() const;
  int max_degree() const;

  CliffordElement operator-() const;
  CliffordElement &operator+=(const CliffordElement &o);
  CliffordElement &operator-=(const CliffordElement &o);
  CliffordElement &operator*=(Scalar s);

private:
  friend CliffordElement cl_mul(const CliffordElement &, const CliffordElement &,
                                MulOptions);
  void check_compatible(const CliffordElement &o) const;

  int m_ = 0, n_ = 0, order_ = 0, cap_ = kDefaultCap;
  bool truncated_ = false;
  std::map<Monomial, GrassmannNumber> terms_;
};

CliffordElement cl_mul(const CliffordElement &x, const CliffordElement &y,
                       MulOptions opts);
CliffordElement cl_mul(const CliffordElement &x, const CliffordElement &y);
CliffordElement cl_commutator(const CliffordElement &x, const CliffordElement &y);
CliffordElement cl_scale(const GrassmannNumber &c, const CliffordElement &x);
CliffordElement operator+(CliffordElement a, const CliffordElement &b);
CliffordElement operator-(CliffordElement a, const CliffordElement &b);
CliffordElement operator*(const CliffordElement &a, const CliffordElement &b);
CliffordElement operator*(CliffordElement a, Scalar s);
CliffordElement operator*(Scalar s, CliffordElement a);
bool approx_equal(const CliffordElement &a, const CliffordElement &b,
                  double tol = 1e-9);

// w = sum w_j e_j + sum w`_k e`_k with even w_j and odd w`_k.
class Supervector {
public:
  Supervector() = default;
  Supervector(int m, int n, int order);
  Supervector(std::vector<GrassmannNumber> even, std::vector<GrassmannNumber> odd,
              int order);

  static Supervector unit_even(int m, int n, int order, int j);

  int m() const { return m_; }
  int n() const { return n_; }
  int order() const { return order_; }
  const GrassmannNumber &even(int j) const { return even_[j]; }
  const GrassmannNumber &odd(int k) const { return odd_[k]; }
  const std::vector<GrassmannNumber> &even() const { return even_; }
  const std::vector<GrassmannNumber> &odd() const { return odd_; }
  void set_even(int j, GrassmannNumber v);
  void set_odd(int k, GrassmannNumber v);

  CliffordElement to_clifford(int cap = CliffordElement::kDefaultCap) const;
  // Throws DomainError when non-vector terms exceed tol.
  static Supervector from_clifford(const CliffordElement &x, double tol = 1e-10);

  Supervector operator-() const;
  Supervector &operator+=(const Supervector &o);
  Supervector &operator-=(const Supervector &o);
  Supervector &operator*=(const GrassmannNumber &s);
  double norm() const;

private:
  void validate() const;
  int m_ = 0, n_ = 0, order_ = 0;
  std::vector<GrassmannNumber> even_, odd_;
};

Supervector operator+(Supervector a, const Supervector &b);
Supervector operator-(Supervector a, const Supervector &b);
// Entries act by left multiplication.
Supervector operator*(const Supermatrix &mat, const Supervector &x);
bool approx_equal(const Supervector &a, const Supervector &b, double tol = 1e-9);

// <x, y> = sum x_j y_j - 1/2 sum (x`_{2j-1} y`_{2j} - x`_{2j} y`_{2j-1}).
GrassmannNumber inner_product(const Supervector &x, const Supervector &y);
// w^2 = -<w, w>.
bool on_supersphere(const Supervector &w, double tol = 1e-9);

// Coefficients of sum b_jk e_j e_k + sum bq_jk e_j e`_k + sum B_jk e`_j (.) e`_k
// with (.) the symmetric product. Indices are 0-based here.
class ExtendedSuperbivector {
public:
  ExtendedSuperbivector() = default;
  ExtendedSuperbivector(int m, int n, int order);

  int m() const { return m_; }
  int n() const { return n_; }
  int order() const { return order_; }

  // j < k < m
  const GrassmannNumber &b(int j, int k) const { return b_[b_index(j, k)]; }
  // j < m, k < 2n
  const GrassmannNumber &bq(int j, int k) const { return bq_[j * 2 * n_ + k]; }
  // j <= k < 2n
  const GrassmannNumber &B(int j, int k) const { return B_[B_index(j, k)]; }
  void set_b(int j, int k, GrassmannNumber v);
  void set_bq(int j, int k, GrassmannNumber v);
  void set_B(int j, int k, GrassmannNumber v);

  // All B_jk have zero body (a plain superbivector).
  bool is_strict() const;
  bool is_zero() const;
  double norm() const;
  ExtendedSuperbivector body() const;
  ExtendedSuperbivector nilpotent_part() const;

  CliffordElement to_clifford(int cap = CliffordElement::kDefaultCap) const;
  // Throws DomainError when x is not an extended superbivector.
  static ExtendedSuperbivector from_clifford(const CliffordElement &x,
                                             double tol = 1e-10);

  ExtendedSuperbivector operator-() const;
  ExtendedSuperbivector &operator+=(const ExtendedSuperbivector &o);
  ExtendedSuperbivector &operator-=(const ExtendedSuperbivector &o);
  ExtendedSuperbivector &operator*=(Scalar s);

  // Every coefficient slot in a fixed order: b, then bq, then B.
  std::vector<GrassmannNumber *> slots();
  std::vector<const GrassmannNumber *> slots() const;

private:
  int b_index(int j, int k) const;
  int B_index(int j, int k) const;
  void check_compatible(const ExtendedSuperbivector &o) const;

  int m_ = 0, n_ = 0, order_ = 0;
  std::vector<GrassmannNumber> b_, bq_, B_;
};

ExtendedSuperbivector operator+(ExtendedSuperbivector a,
                                const ExtendedSuperbivector &b);
ExtendedSuperbivector operator-(ExtendedSuperbivector a,
                                const ExtendedSuperbivector &b);
ExtendedSuperbivector operator*(ExtendedSuperbivector a, Scalar s);
ExtendedSuperbivector operator*(Scalar s, ExtendedSuperbivector a);
bool approx_equal(const ExtendedSuperbivector &a, const ExtendedSuperbivector &b,
                  double tol = 1e-9);

// 1/2 [x, y] as an extended superbivector.
ExtendedSuperbivector wedge(const Supervector &x, const Supervector &y);

// Matrix of x -> [B, x] on supervectors, built from the basis images.
Supermatrix phi(const ExtendedSuperbivector &B);
// Inverse of phi on so0; throws DomainError when X is not in so0.
ExtendedSuperbivector phi_inv(const Supermatrix &X, double tol = 1e-9);
// [B, x] from the closed-form commutator table.
Supervector cl_commutator_action(const ExtendedSuperbivector &B,
                                 const Supervector &x);

// Matrix of x -> w x w for w on the supersphere.
Supermatrix reflect_matrix(const Supervector &w, double tol = 1e-9);
// w x w evaluated both through the Clifford product and the matrix; throws if
// the two disagree.
Supervector reflect_apply(const Supervector &w, const Supervector &x,
                          double tol = 1e-9);

} // namespace superspin
