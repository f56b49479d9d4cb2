#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace superspin {

using Scalar = std::complex<double>;

enum class Parity { even, odd, mixed };

// Element of the Grassmann algebra on N generators f_1..f_N (N <= 16).
// Bit i of a mask stands for f_{i+1}; terms are kept sorted by mask.
class GrassmannNumber {
public:
  struct Term {
    std::uint32_t mask;
    Scalar coef;
  };

  static constexpr int kMaxOrder = 16;
  static constexpr double kCanonEps = 1e-14;

  GrassmannNumber() = default;
  explicit GrassmannNumber(int order);
  GrassmannNumber(int order, Scalar body);

  static GrassmannNumber generator(int order, int j);
  static GrassmannNumber blade(int order, std::uint32_t mask, Scalar coef = 1.0);
  static GrassmannNumber from_terms(int order, std::vector<Term> terms);

  int order() const { return order_; }
  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(std::uint32_t mask) const;
  Scalar body() const { return coefficient(0); }
  GrassmannNumber nilpotent_part() const;
  GrassmannNumber grade(int k) const;
  GrassmannNumber even_part() const;
  GrassmannNumber odd_part() const;
  Parity parity() const;
  bool is_even() const { return parity() == Parity::even; }
  bool is_odd() const;
  bool is_real(double tol = 0.0) const;
  GrassmannNumber conj() const;
  double norm() const;

  GrassmannNumber operator-() const;
  GrassmannNumber &operator+=(const GrassmannNumber &o);
  GrassmannNumber &operator-=(const GrassmannNumber &o);
  GrassmannNumber &operator*=(Scalar s);

  std::string to_string() const;

  friend bool operator==(const GrassmannNumber &a, const GrassmannNumber &b);

private:
  void canonicalize();

  int order_ = 0;
  std::vector<Term> terms_;
};

// Sign of f_A f_B relative to f_{A|B} for disjoint masks.
int blade_sign(std::uint32_t a, std::uint32_t b);

GrassmannNumber gr_mul(const GrassmannNumber &x, const GrassmannNumber &y);
GrassmannNumber gr_grade(const GrassmannNumber &x, int k);
Parity gr_parity(const GrassmannNumber &x);
double gr_norm(const GrassmannNumber &x);
GrassmannNumber gr_exp(const GrassmannNumber &x);
GrassmannNumber gr_ln(const GrassmannNumber &x);
GrassmannNumber gr_inverse(const GrassmannNumber &x);
GrassmannNumber gr_sqrt(const GrassmannNumber &x);
GrassmannNumber gr_pow(const GrassmannNumber &x, int k);

// ||a - b|| <= tol * max(1, ||a||, ||b||)
bool approx_equal(const GrassmannNumber &a, const GrassmannNumber &b,
                  double tol = 1e-9);

GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber &b);
GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber &b);
GrassmannNumber operator*(const GrassmannNumber &a, const GrassmannNumber &b);
GrassmannNumber operator*(GrassmannNumber a, Scalar s);
GrassmannNumber operator*(Scalar s, GrassmannNumber a);

void check_same_order(const GrassmannNumber &a, const GrassmannNumber &b);

} // namespace superspin
