#pragma once
#include "superspin/clifford.hpp"
#include "superspin/grassmann.hpp"
#include "superspin/supermatrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace superspin {

// Seeded generator whose outputs are identical across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // uniform on [a, b)
  double uniform(double a = -1.0, double b = 1.0);
  double normal();
  int index(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
  std::mt19937_64 engine_;
};

// Even: body in [-body, body) plus even nilpotent terms; odd: odd terms only.
GrassmannNumber random_grassmann(Rng &rng, int order, Parity parity,
                                 double body = 1.0, double nil = 0.5);
Supermatrix random_supermatrix(Rng &rng, int p, int q, int order,
                               double body = 1.0, double nil = 0.5);
Supervector random_supervector(Rng &rng, int m, int n, int order,
                               double body = 1.0, double nil = 0.5);
// w with <w, w> = 1 exactly up to rounding; needs m >= 1.
Supervector random_supersphere(Rng &rng, int m, int n, int order,
                               double nil = 0.3);
ExtendedSuperbivector random_bivector(Rng &rng, int m, int n, int order,
                                      double body = 1.0, double nil = 0.5);
// Haar-like rotation in SO(m) from the QR factorisation of a Gaussian matrix.
Eigen::MatrixXd random_rotation(Rng &rng, int m);
// Element of SO(2n) and Sp(2n).
Eigen::MatrixXd random_compact_symplectic(Rng &rng, int n);

} // namespace superspin
