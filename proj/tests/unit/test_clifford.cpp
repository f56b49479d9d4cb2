#include "helpers.hpp"

#include <Eigen/LU>

using namespace superspin;
using superspin::test::near;

namespace {

constexpr int M = 2, N1 = 1, ORD = 2;

CliffordElement e(int j) { return CliffordElement::e(M, N1, ORD, j); }
CliffordElement ep(int j) { return CliffordElement::ep(M, N1, ORD, j); }
CliffordElement scalar(double c) { return CliffordElement::scalar(M, N1, ORD, c); }

Supervector unit_odd(int m, int n, int order, int k, const GrassmannNumber &c) {
  Supervector v(m, n, order);
  v.set_odd(k, c);
  return v;
}

CliffordElement random_element(Rng &rng, int m, int n, int order, int cap) {
  CliffordElement x(m, n, order, cap);
  for (int t = 0; t < 6; ++t) {
    Monomial mono;
    mono.blade = static_cast<std::uint32_t>(rng.index(1 << m));
    int budget = 3;
    for (int k = 0; k < 2 * n && budget > 0; ++k) {
      const int a = rng.index(budget + 1);
      mono.alpha[k] = static_cast<std::uint8_t>(a);
      budget -= a;
    }
    x.add_term(mono, random_grassmann(rng, order, Parity::mixed));
  }
  return x;
}

std::vector<ExtendedSuperbivector> iso_basis(int m, int n, int order) {
  std::vector<std::uint32_t> even, odd;
  for (std::uint32_t mask = 0; mask < (1u << order); ++mask)
    (std::popcount(mask) % 2 == 0 ? even : odd).push_back(mask);
  std::vector<ExtendedSuperbivector> out;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      for (auto mask : even) {
        ExtendedSuperbivector B(m, n, order);
        B.set_b(j, k, GrassmannNumber::blade(order, mask));
        out.push_back(B);
      }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < 2 * n; ++k)
      for (auto mask : odd) {
        ExtendedSuperbivector B(m, n, order);
        B.set_bq(j, k, GrassmannNumber::blade(order, mask));
        out.push_back(B);
      }
  for (int j = 0; j < 2 * n; ++j)
    for (int k = j; k < 2 * n; ++k)
      for (auto mask : even) {
        ExtendedSuperbivector B(m, n, order);
        B.set_B(j, k, GrassmannNumber::blade(order, mask));
        out.push_back(B);
      }
  return out;
}

} // namespace

TEST(Clifford, BosonicGeneratorsSquareToMinusOne) {
  EXPECT_TRUE(near(e(1) * e(1), scalar(-1.0), 0.0));
  EXPECT_TRUE(near(e(1) * e(2) + e(2) * e(1), scalar(0.0), 0.0));
}

TEST(Clifford, FermionicGeneratorsCommuteUpToForm) {
  Monomial m12;
  m12.alpha[0] = 1;
  m12.alpha[1] = 1;
  CliffordElement expect = scalar(-1.0);
  expect.add_term(m12, GrassmannNumber(ORD, 1.0));
  EXPECT_TRUE(near(ep(2) * ep(1), expect, 0.0));
  EXPECT_TRUE(near(ep(1) * ep(2) - ep(2) * ep(1), scalar(1.0), 0.0));
}

TEST(Clifford, MixedGeneratorsAnticommute) {
  EXPECT_TRUE((e(1) * ep(1) + ep(1) * e(1)).is_zero());
}

TEST(Clifford, Associativity) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const CliffordElement a = random_element(rng, 2, 1, 3, 12);
    const CliffordElement b = random_element(rng, 2, 1, 3, 12);
    const CliffordElement c = random_element(rng, 2, 1, 3, 12);
    const CliffordElement l = (a * b) * c;
    EXPECT_FALSE(l.truncated());
    EXPECT_TRUE(near(l, a * (b * c), 1e-11 * std::max(1.0, l.norm())));
  }
}

TEST(Clifford, CapTruncatesOrThrows) {
  const CliffordElement x = CliffordElement::ep(0, 1, 0, 1, 2);
  const CliffordElement x3 = cl_mul(cl_mul(x, x), x);
  EXPECT_TRUE(x3.truncated());
  EXPECT_THROW(cl_mul(cl_mul(x, x), x, MulOptions{2, true}), CapExceededError);
}

TEST(Clifford, AnticommutatorOfVectorsIsCentral) {
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const Supervector v = random_supervector(rng, 3, 2, 2);
    const Supervector w = random_supervector(rng, 3, 2, 2);
    const CliffordElement a = v.to_clifford() * w.to_clifford() + w.to_clifford() * v.to_clifford();
    for (const auto &[mono, c] : a.terms())
      EXPECT_EQ(mono.degree(), 0);
    const GrassmannNumber expect = inner_product(v, w) * -2.0;
    EXPECT_TRUE(near(a.scalar_part(), expect, 1e-13));
  }
}

TEST(Supervector, InnerProductExamples) {
  const Supervector u = Supervector::unit_even(2, 1, 2, 0);
  EXPECT_EQ(inner_product(u, u), GrassmannNumber(2, 1.0));
  const Supervector x = unit_odd(2, 1, 2, 0, GrassmannNumber::generator(2, 1));
  const Supervector y = unit_odd(2, 1, 2, 1, GrassmannNumber::generator(2, 2));
  EXPECT_TRUE(near(inner_product(x, y), GrassmannNumber::blade(2, 3u, -0.5), 0.0));
}

TEST(Supervector, InnerProductInvariantUnderO0) {
  Rng rng(33);
  for (int i = 0; i < 20; ++i) {
    const Supermatrix R = random_SO0(rng, 3, 1, 4, 2);
    const Supervector x = random_supervector(rng, 3, 1, 4);
    const Supervector y = random_supervector(rng, 3, 1, 4);
    EXPECT_TRUE(near(inner_product(R * x, R * y), inner_product(x, y), 1e-9));
  }
}

TEST(Supervector, CliffordRoundtrip) {
  Rng rng(34);
  const Supervector x = random_supervector(rng, 3, 2, 3);
  EXPECT_TRUE(near(Supervector::from_clifford(x.to_clifford()), x, 0.0));
  EXPECT_THROW(Supervector::from_clifford(e(1) * e(2)), DomainError);
}

TEST(Wedge, Examples) {
  Supervector x(3, 0, 0);
  x.set_even(0, GrassmannNumber(0, 1.5));
  x.set_even(2, GrassmannNumber(0, -0.5));
  EXPECT_TRUE(wedge(x, x).is_zero());
  const ExtendedSuperbivector w =
      wedge(Supervector::unit_even(2, 1, 2, 0), Supervector::unit_even(2, 1, 2, 1));
  ExtendedSuperbivector expect(2, 1, 2);
  expect.set_b(0, 1, GrassmannNumber(2, 1.0));
  EXPECT_TRUE(approx_equal(w, expect, 0.0));
}

TEST(Wedge, MatchesHalfCommutatorAndHasNilpotentB) {
  Rng rng(35);
  for (int i = 0; i < 20; ++i) {
    const Supervector x = random_supervector(rng, 2, 1, 4);
    const Supervector y = random_supervector(rng, 2, 1, 4);
    const ExtendedSuperbivector w = wedge(x, y);
    for (int j = 0; j < 2; ++j)
      for (int k = j; k < 2; ++k)
        EXPECT_EQ(w.B(j, k).body(), Scalar(0.0));
    const CliffordElement half =
        cl_commutator(x.to_clifford(), y.to_clifford()) * Scalar(0.5);
    EXPECT_TRUE(near(w.to_clifford(), half, 1e-12));
  }
}

TEST(Phi, BosonicBivector) {
  ExtendedSuperbivector B(2, 1, 2);
  B.set_b(0, 1, GrassmannNumber(2, 1.0));
  const Supermatrix X = phi(B);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(1, 0) = 2.0;
  expect(0, 1) = -2.0;
  EXPECT_TRUE(X.body_matrix().isApprox(expect));
  EXPECT_TRUE(X.is_body_only());
}

TEST(Phi, SymmetricProductRow) {
  ExtendedSuperbivector B(2, 1, 2);
  B.set_B(0, 1, GrassmannNumber(2, 1.0));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(3, 3) = 1.0;
  expect(2, 2) = -1.0;
  EXPECT_TRUE(phi(B).body_matrix().isApprox(expect));
}

TEST(Phi, MixedRow) {
  const GrassmannNumber f1 = GrassmannNumber::generator(2, 1);
  ExtendedSuperbivector B(2, 1, 2);
  B.set_bq(0, 0, f1);
  const Supermatrix X = phi(B);
  Supermatrix expect(2, 2, 2);
  expect.set(0, 3, f1);
  expect.set(2, 0, f1 * 2.0);
  EXPECT_TRUE(near(X, expect, 0.0));
}

TEST(Phi, ValuesInSo0AndInverse) {
  Rng rng(36);
  for (int i = 0; i < 30; ++i) {
    const ExtendedSuperbivector B = random_bivector(rng, 3, 2, 3);
    const Supermatrix X = phi(B);
    EXPECT_TRUE(is_so0(X).ok);
    EXPECT_TRUE(approx_equal(phi_inv(X), B, 1e-10));
  }
  EXPECT_TRUE(phi_inv(Supermatrix(2, 2, 1)).is_zero());
}

TEST(Phi, InverseOnSymplecticRotation) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 1) = 2.0;
  d(1, 0) = -2.0;
  const ExtendedSuperbivector B =
      phi_inv(Supermatrix::block_diag(0, Eigen::MatrixXcd::Zero(2, 2), d));
  ExtendedSuperbivector expect(2, 1, 0);
  expect.set_B(0, 0, GrassmannNumber(0, 1.0));
  expect.set_B(1, 1, GrassmannNumber(0, 1.0));
  EXPECT_TRUE(approx_equal(B, expect, 1e-14));
}

TEST(Phi, InverseRejectsNonAlgebraElements) {
  EXPECT_THROW(phi_inv(Supermatrix::identity(2, 2, 1)), DomainError);
}

TEST(Phi, BasisIsIndependentWithExpectedDimension) {
  for (auto [m, n, order] : {std::tuple{2, 1, 2}, std::tuple{3, 1, 2}, std::tuple{2, 2, 2}}) {
    const auto basis = iso_basis(m, n, order);
    const std::size_t dim =
        (1u << (order - 1)) * (m * (m - 1) / 2 + 2 * m * n + n * (2 * n + 1));
    ASSERT_EQ(basis.size(), dim);
    const int size = m + 2 * n;
    Eigen::MatrixXd flat(2 * size * size * (1 << order), basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Supermatrix X = phi(basis[b]);
      int row = 0;
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
          for (std::uint32_t mask = 0; mask < (1u << order); ++mask) {
            flat(row++, b) = X(r, c).coefficient(mask).real();
            flat(row++, b) = X(r, c).coefficient(mask).imag();
          }
    }
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(flat).rank(), static_cast<Eigen::Index>(dim));
  }
}

TEST(Phi, LieMorphismOnBasis) {
  const auto basis = iso_basis(2, 1, 2);
  for (const auto &b1 : basis)
    for (const auto &b2 : basis) {
      const CliffordElement c = cl_commutator(b1.to_clifford(), b2.to_clifford());
      const Supermatrix lhs = phi(ExtendedSuperbivector::from_clifford(c));
      EXPECT_TRUE(near(lhs, sm_commutator(phi(b1), phi(b2)), 1e-12));
    }
}

TEST(Phi, ExtendedBivectorRequiresConsistentConstant) {
  CliffordElement x = ep(1) * ep(2);
  EXPECT_NO_THROW(ExtendedSuperbivector::from_clifford(x - scalar(0.5)));
  Monomial m12;
  m12.alpha[0] = 1;
  m12.alpha[1] = 1;
  CliffordElement bare(M, N1, ORD);
  bare.add_term(m12, GrassmannNumber(ORD, 1.0));
  EXPECT_THROW(ExtendedSuperbivector::from_clifford(bare), DomainError);
}

TEST(CommutatorAction, Examples) {
  ExtendedSuperbivector B(2, 1, 2);
  B.set_b(0, 1, GrassmannNumber(2, 1.0));
  const Supervector e1 = Supervector::unit_even(2, 1, 2, 0);
  const Supervector e2 = Supervector::unit_even(2, 1, 2, 1);
  Supervector two_e2 = e2;
  two_e2 *= GrassmannNumber(2, 2.0);
  EXPECT_TRUE(near(cl_commutator_action(B, e1), two_e2, 0.0));
  EXPECT_TRUE(near(cl_commutator_action(B, Supervector(2, 1, 2)), Supervector(2, 1, 2), 0.0));
}

TEST(CommutatorAction, AgreesWithCliffordProductAndMatrix) {
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const ExtendedSuperbivector B = random_bivector(rng, 2, 2, 3);
    const Supervector x = random_supervector(rng, 2, 2, 3);
    const Supervector table = cl_commutator_action(B, x);
    const Supervector clifford = Supervector::from_clifford(
        cl_commutator(B.to_clifford(), x.to_clifford()));
    EXPECT_TRUE(near(table, clifford, 1e-12));
    EXPECT_TRUE(near(phi(B) * x, table, 1e-12));
  }
}

TEST(Reflection, BasisAxis) {
  const Supervector w = Supervector::unit_even(2, 1, 0, 0);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(4, 4);
  expect(0, 0) = -1.0;
  EXPECT_TRUE(reflect_matrix(w).body_matrix().isApprox(expect));
  const Supervector e2 = Supervector::unit_even(2, 1, 0, 1);
  EXPECT_TRUE(near(reflect_apply(w, e2), e2, 0.0));
  EXPECT_TRUE(near(reflect_apply(w, w), -w, 0.0));
}

TEST(Reflection, InvolutionAndBody) {
  Rng rng(38);
  for (int i = 0; i < 20; ++i) {
    const Supervector w = random_supersphere(rng, 3, 1, 4);
    EXPECT_TRUE(on_supersphere(w));
    const Supervector x = random_supervector(rng, 3, 1, 4);
    EXPECT_TRUE(near(reflect_apply(w, reflect_apply(w, x)), x, 1e-10));
    const Supermatrix P = reflect_matrix(w);
    const Eigen::MatrixXcd body = P.body_matrix();
    EXPECT_TRUE(body.bottomRightCorner(2, 2).isApprox(Eigen::MatrixXcd::Identity(2, 2)));
    EXPECT_LE(body.topRightCorner(3, 2).norm(), 1e-15);
    EXPECT_LE(is_O0(P).block_residual, 1e-10);
  }
}

TEST(Reflection, RejectsPointsOffTheSphere) {
  Supervector w = Supervector::unit_even(2, 1, 0, 0);
  w *= GrassmannNumber(0, 2.0);
  EXPECT_THROW(reflect_matrix(w), DomainError);
}
