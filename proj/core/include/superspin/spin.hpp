#pragma once
#include "superspin/clifford.hpp"
#include "superspin/supermatrix.hpp"

#include <vector>

namespace superspin {

// Formal product e^{B_1} ... e^{B_k}; no factors means the identity.
struct SpinElement {
  int m = 0, n = 0, order = 0;
  std::vector<ExtendedSuperbivector> factors;

  SpinElement() = default;
  SpinElement(int m, int n, int order) : m(m), n(n), order(order) {}
  SpinElement(int m, int n, int order, std::vector<ExtendedSuperbivector> f);

  bool is_identity() const;
};

// Concatenation of factor lists.
SpinElement operator*(const SpinElement &a, const SpinElement &b);

// prod_j exp(phi(B_j)).
Supermatrix h_action(const SpinElement &s);
// e^B x e^{-B} through the Clifford product; B must have zero bodies.
Supervector conjugate_nilpotent(const ExtendedSuperbivector &B,
                                const Supervector &x);

struct XiSplit {
  ExtendedSuperbivector xi1; // so(m) x (sp cap so)(2n) bodies
  ExtendedSuperbivector xi2; // symmetric sp(2n) bodies
  ExtendedSuperbivector xi3; // nilpotent even and all odd coefficients
};
XiSplit xi_split(const ExtendedSuperbivector &B);
bool in_xi1(const ExtendedSuperbivector &B, double tol = 1e-9);
bool in_xi2(const ExtendedSuperbivector &B, double tol = 1e-9);
bool in_xi3(const ExtendedSuperbivector &B, double tol = 1e-9);

// Three factors [phi^{-1}(X), phi^{-1}(Y), phi^{-1}(Z)] of the SO0 decomposition.
SpinElement lift(const Supermatrix &M, double tol = 1e-9);

struct WeylContext {
  int m = 0;
  int n = 1;
  int order = 0;
  int cap = CliffordElement::kDefaultCap;
};

// a = e`_{2j-1} - i e`_{2j}, b = e`_{2j-1} + i e`_{2j} for plane j (1-based).
CliffordElement oscillator_a(int plane, const WeylContext &ctx);
CliffordElement oscillator_b(int plane, const WeylContext &ctx);
double stirling2(int k, int j);
// (ab)^k = sum_j (-2i)^{k-j} S(k,j) a^j b^j.
CliffordElement weyl_stirling_pow(int k, int plane, const WeylContext &ctx);

struct OscillatorExp {
  CliffordElement value;
  // c_l in value = sum_l c_l a^l b^l
  std::vector<Scalar> ab_coefficients;
  bool exact = false;
  double truncation_bound = 0.0;
};
// exp(theta (e`_{2j-1}^2 + e`_{2j}^2)) with a^l b^l kept for 2l <= cap.
OscillatorExp oscillator_exp(double theta, int plane, const WeylContext &ctx);

// exp of an element of the classical Clifford algebra (n = 0).
CliffordElement classical_exp(const CliffordElement &x);

// +1 or -1 for B in Xi_1 with exp(phi(B)) = I. Throws DomainError when B is
// not in Xi_1 and NotInKernelError when exp(phi(B)) != I.
int kernel_sign(const ExtendedSuperbivector &B, double tol = 1e-9);
int kernel_sign(const SpinElement &s, double tol = 1e-9);

// One factor sum_j (theta_j pi / 2)(e`_{2j-1}^2 + e`_{2j}^2).
SpinElement frft_element(const std::vector<double> &thetas, int m = 0,
                         int order = 0);

} // namespace superspin
