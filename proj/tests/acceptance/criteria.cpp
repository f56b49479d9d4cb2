#include "criteria.hpp"

#include <superspin/superspin.hpp>

#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>

namespace superspin::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

CriterionResult guard(int id, const char *name,
                      const std::function<void(CriterionResult &)> &body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception &e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

Eigen::MatrixXcd omega_plane(int n, int plane, double theta) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  d(2 * plane, 2 * plane + 1) = theta;
  d(2 * plane + 1, 2 * plane) = -theta;
  return d;
}

std::vector<Supermatrix> so0_samples(std::uint64_t seed) {
  Rng rng(seed ^ 0x5a5a5a5aULL);
  std::vector<Supermatrix> out;
  for (int i = 0; i < 50; ++i)
    out.push_back(random_SO0(rng, 3, 1 + i % 2, 4, 3));
  return out;
}

double rel(const Supermatrix &a, const Supermatrix &b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

} // namespace

CriterionResult berezinian_exponential(std::uint64_t seed) {
  return guard(1, "Berezinian-exponential identity", [&](CriterionResult &r) {
    Rng rng(seed ^ 0x1ULL);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Supermatrix M = random_supermatrix(rng, 3, 4, 4, 1.0, 0.5);
      const GrassmannNumber lhs = sm_sdet(sm_exp(M));
      const GrassmannNumber rhs = gr_exp(sm_supertrace(M));
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
    r.pass = worst <= 1e-8;
    r.detail = "100 samples (3|4), N=4, max rel err " + sci(worst);
  });
}

CriterionResult o0_relation_equivalence(std::uint64_t seed) {
  return guard(2, "O0 defining-relation equivalence", [&](CriterionResult &r) {
    Rng rng(seed ^ 0x2ULL);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      const Supermatrix M = i % 2 == 0 ? random_supermatrix(rng, 3, 4, 4)
                                       : random_SO0(rng, 3, 2, 4, 3);
      const O0Check c = is_O0(M);
      const double d = std::abs(c.residual - c.block_residual);
      worst = std::max(worst, d / std::max(1.0, c.residual));
      ok = ok && d <= 1e-12 * std::max(1.0, c.residual);
    }
    r.pass = ok;
    r.detail = "100 samples, max residual gap " + sci(worst);
  });
}

CriterionResult phi_lie_isomorphism(std::uint64_t) {
  return guard(3, "phi Lie isomorphism on the full basis", [&](CriterionResult &r) {
    const int m = 2, n = 1, order = 2;
    const std::vector<std::uint32_t> even{0u, 3u}, odd{1u, 2u};
    std::vector<ExtendedSuperbivector> basis;
    for (auto mask : even) {
      ExtendedSuperbivector B(m, n, order);
      B.set_b(0, 1, GrassmannNumber::blade(order, mask));
      basis.push_back(B);
    }
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < 2 * n; ++k)
        for (auto mask : odd) {
          ExtendedSuperbivector B(m, n, order);
          B.set_bq(j, k, GrassmannNumber::blade(order, mask));
          basis.push_back(B);
        }
    for (int j = 0; j < 2 * n; ++j)
      for (int k = j; k < 2 * n; ++k)
        for (auto mask : even) {
          ExtendedSuperbivector B(m, n, order);
          B.set_B(j, k, GrassmannNumber::blade(order, mask));
          basis.push_back(B);
        }
    const std::size_t expected =
        (1u << (order - 1)) * (m * (m - 1) / 2 + 2 * m * n + n * (2 * n + 1));
    double worst = 0.0;
    bool truncated = false;
    for (const auto &b1 : basis)
      for (const auto &b2 : basis) {
        const CliffordElement c = cl_commutator(b1.to_clifford(), b2.to_clifford());
        truncated = truncated || c.truncated();
        const Supermatrix lhs = phi(ExtendedSuperbivector::from_clifford(c));
        const Supermatrix rhs = sm_commutator(phi(b1), phi(b2));
        worst = std::max(worst, (lhs - rhs).norm());
      }
    r.pass = basis.size() == expected && expected == 16 && worst <= 1e-11 && !truncated;
    r.detail = "basis size " + std::to_string(basis.size()) + ", " +
               std::to_string(basis.size() * basis.size()) + " pairs, max err " +
               sci(worst);
  });
}

CriterionResult reflection_suite(std::uint64_t seed) {
  return guard(4, "Reflection suite", [&](CriterionResult &r) {
    Rng rng(seed ^ 0x4ULL);
    const int m = 3, n = 2, order = 4;
    double o0 = 0, sd = 0, da = 0, dd = 0, sq = 0;
    for (int i = 0; i < 50; ++i) {
      const Supervector w = random_supersphere(rng, m, n, order);
      const Supermatrix P = reflect_matrix(w);
      o0 = std::max(o0, is_O0(P).residual);
      sd = std::max(sd, (sm_sdet(P) + GrassmannNumber(order, 1.0)).norm());
      GrassmannNumber sum_even(order), sum_odd(order);
      for (int j = 0; j < m; ++j)
        sum_even += w.even(j) * w.even(j);
      for (int j = 0; j < n; ++j)
        sum_odd += w.odd(2 * j) * w.odd(2 * j + 1);
      const GrassmannNumber one(order, 1.0);
      da = std::max(da, (gm_det(P.block_a()) - (one - sum_even * 2.0)).norm());
      dd = std::max(dd, (gm_det(P.block_d()) * (one + sum_odd * 2.0) - one).norm());
      sq = std::max(sq, (P * P - Supermatrix::identity(m, 2 * n, order)).max_entry_norm());
      reflect_apply(w, random_supervector(rng, m, n, order));
    }
    r.pass = o0 <= 1e-9 && sd <= 1e-9 && da <= 1e-9 && dd <= 1e-9 && sq <= 1e-10;
    r.detail = "50 samples: O0 " + sci(o0) + ", sdet+1 " + sci(sd) + ", detA " +
               sci(da) + ", detD " + sci(dd) + ", psi^2-I " + sci(sq);
  });
}

CriterionResult decomposition_roundtrip(std::uint64_t seed) {
  return guard(5, "SO0 decomposition roundtrip", [&](CriterionResult &r) {
    double back = 0.0, stab = 0.0;
    for (const auto &M : so0_samples(seed)) {
      const So0Decomposition d = decompose_SO0(M);
      const Supermatrix M2 = recompose(d);
      back = std::max(back, (M2 - M).norm() / M.norm());
      const So0Decomposition d2 = decompose_SO0(M2);
      stab = std::max({stab, rel(d2.symmetric, d.symmetric),
                       rel(d2.nilpotent, d.nilpotent)});
    }
    r.pass = back <= 1e-8 && stab <= 1e-8;
    r.detail = "50 samples: roundtrip " + sci(back) + ", Y/Z drift " + sci(stab);
  });
}

CriterionResult spin_surjectivity(std::uint64_t seed) {
  return guard(6, "Spin surjectivity", [&](CriterionResult &r) {
    double worst = 0.0;
    int bad_xi = 0;
    for (const auto &M : so0_samples(seed)) {
      const SpinElement s = lift(M);
      worst = std::max(worst, (h_action(s) - M).norm() / M.norm());
      if (s.factors.size() != 3 || !in_xi1(s.factors[0], 1e-8) ||
          !in_xi2(s.factors[1], 1e-8) || !in_xi3(s.factors[2], 1e-8))
        ++bad_xi;
    }
    r.pass = worst <= 1e-8 && bad_xi == 0;
    r.detail = "50 samples: h(lift M) err " + sci(worst) + ", Xi violations " +
               std::to_string(bad_xi);
  });
}

CriterionResult oscillator_exactness(std::uint64_t) {
  return guard(7, "Oscillator exactness and Stirling powers", [&](CriterionResult &r) {
    bool exact = true;
    for (int k : {-3, -1, 1, 2, 3}) {
      const WeylContext ctx{0, 1, 0, 8};
      const OscillatorExp o = oscillator_exp(k * kPi, 1, ctx);
      const double expect = k % 2 == 0 ? 1.0 : -1.0;
      exact = exact && o.exact && o.truncation_bound == 0.0 &&
              o.value.terms().size() == 1 &&
              o.value.scalar_part() == GrassmannNumber(0, expect);
    }
    double worst = 0.0;
    for (int n : {1, 2}) {
      const WeylContext ctx{1, n, 2, 8};
      const CliffordElement ab =
          cl_mul(oscillator_a(n, ctx), oscillator_b(n, ctx));
      CliffordElement brute = ab;
      for (int k = 1; k <= 4; ++k) {
        if (k > 1)
          brute = cl_mul(brute, ab, MulOptions{8, true});
        worst = std::max(worst, (weyl_stirling_pow(k, n, ctx) - brute).norm());
      }
    }
    r.pass = exact && worst <= 1e-12;
    r.detail = std::string("theta in pi Z exact: ") + (exact ? "yes" : "no") +
               ", (ab)^k vs brute force max err " + sci(worst);
  });
}

CriterionResult double_cover(std::uint64_t seed) {
  return guard(8, "Double cover kernel signs", [&](CriterionResult &r) {
    const int m = 3, n = 2;
    std::vector<std::string> fails;
    ExtendedSuperbivector sigma = phi_inv(Supermatrix::block_diag(
        0, Eigen::MatrixXcd::Zero(m, m), omega_plane(n, 0, 2 * kPi)));
    if (kernel_sign(sigma) != -1)
      fails.push_back("Sigma(2pi)");
    ExtendedSuperbivector rot(m, n, 0);
    rot.set_b(0, 1, GrassmannNumber(0, kPi));
    if (kernel_sign(rot) != -1)
      fails.push_back("pi e1e2");
    if (kernel_sign(ExtendedSuperbivector(m, n, 0)) != 1)
      fails.push_back("zero");
    ExtendedSuperbivector rot2(m, n, 0);
    rot2.set_b(0, 1, GrassmannNumber(0, 2 * kPi));
    if (kernel_sign(SpinElement(m, n, 0, {rot2, rot2})) != 1)
      fails.push_back("2pi e1e2 twice");

    Rng rng(seed ^ 0x8ULL);
    int plus = 0, minus = 0, mismatched = 0;
    for (int i = 0; i < 20; ++i) {
      const int l = rng.index(3);
      Eigen::Vector3d u(rng.normal(), rng.normal(), rng.normal());
      u.normalize();
      ExtendedSuperbivector B(m, n, 0);
      B.set_b(0, 1, GrassmannNumber(0, kPi * l * u(0)));
      B.set_b(0, 2, GrassmannNumber(0, kPi * l * u(1)));
      B.set_b(1, 2, GrassmannNumber(0, kPi * l * u(2)));
      int total = l;
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      for (int j = 0; j < n; ++j) {
        const int k = rng.index(3);
        total += k;
        S += omega_plane(n, j, 2 * kPi * k);
      }
      const Eigen::MatrixXd R = random_compact_symplectic(rng, n);
      const Eigen::MatrixXcd D = R.cast<Scalar>() * S * R.transpose().cast<Scalar>();
      B += phi_inv(Supermatrix::block_diag(0, Eigen::MatrixXcd::Zero(m, m), D));
      const int s = kernel_sign(B);
      (s == 1 ? plus : minus)++;
      if (s != (total % 2 == 0 ? 1 : -1))
        ++mismatched;
    }
    r.pass = fails.empty() && mismatched == 0 && plus > 0 && minus > 0;
    r.detail = "named cases failed: " + std::to_string(fails.size()) +
               ", 20 kernel elements: +1 x" + std::to_string(plus) + ", -1 x" +
               std::to_string(minus) + ", mismatches " + std::to_string(mismatched);
  });
}

CriterionResult fractional_fourier(std::uint64_t) {
  return guard(9, "Fractional Fourier F^4 sign", [&](CriterionResult &r) {
    bool ok = true;
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const SpinElement s = frft_element(std::vector<double>(n, 2.0));
      const Supermatrix h = h_action(s);
      worst = std::max(worst, (h - Supermatrix::identity(0, 2 * n, 0)).max_entry_norm());
      ok = ok && kernel_sign(s) == (n % 2 == 0 ? 1 : -1);
    }
    r.pass = ok && worst <= 1e-10;
    r.detail = "n=1..3: |h-I| " + sci(worst) + ", signs " + (ok ? "(-1)^n" : "wrong");
  });
}

CriterionResult classical_degeneration(std::uint64_t seed) {
  return guard(10, "Classical degeneration n=0", [&](CriterionResult &r) {
    const int m = 3;
    Rng rng(seed ^ 0xaULL);
    double refl = 0, ph = 0, so3 = 0, cover = 0;
    for (int i = 0; i < 20; ++i) {
      const Supervector w = random_supersphere(rng, m, 0, 0);
      Eigen::VectorXd wv(m);
      for (int j = 0; j < m; ++j)
        wv(j) = w.even(j).body().real();
      const Eigen::MatrixXd house = Eigen::MatrixXd::Identity(m, m) - 2 * wv * wv.transpose();
      refl = std::max(refl, (reflect_matrix(w).body_matrix() - house.cast<Scalar>())
                                .cwiseAbs().maxCoeff());

      const ExtendedSuperbivector B = random_bivector(rng, m, 0, 0, 1.0, 0.0);
      Eigen::MatrixXd X = Eigen::MatrixXd::Zero(m, m);
      double len2 = 0.0;
      for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          const double b = B.b(j, k).body().real();
          X(k, j) = 2 * b;
          X(j, k) = -2 * b;
          len2 += b * b;
        }
      const Supermatrix P = phi(B);
      ph = std::max(ph, (P.body_matrix() - X.cast<Scalar>()).cwiseAbs().maxCoeff());

      const Supermatrix h = sm_exp(P);
      const Eigen::MatrixXd H = h.body_matrix().real();
      so3 = std::max({so3, (H.transpose() * H - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff(),
                      std::abs(H.determinant() - 1.0)});

      const CliffordElement s = classical_exp(B.to_clifford());
      const CliffordElement sinv = classical_exp((-B).to_clifford());
      for (int j = 0; j < m; ++j) {
        const Supervector y = Supervector::from_clifford(
            cl_mul(cl_mul(s, CliffordElement::e(m, 0, 0, j + 1)), sinv));
        for (int k = 0; k < m; ++k)
          cover = std::max(cover, std::abs(y.even(k).body() - h(k, j).body()));
      }
      const ExtendedSuperbivector B2 = B * Scalar(1.0 + kPi / std::sqrt(len2));
      cover = std::max(cover, (classical_exp(B2.to_clifford()) + s).norm());
      cover = std::max(cover, (sm_exp(phi(B2)) - h).max_entry_norm());
    }
    r.pass = refl <= 1e-12 && ph <= 1e-12 && so3 <= 1e-10 && cover <= 1e-10;
    r.detail = "20 samples m=3: Householder " + sci(refl) + ", phi " + sci(ph) +
               ", SO(3) " + sci(so3) + ", double cover " + sci(cover);
  });
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  return {berezinian_exponential(seed), o0_relation_equivalence(seed),
          phi_lie_isomorphism(seed),    reflection_suite(seed),
          decomposition_roundtrip(seed), spin_surjectivity(seed),
          oscillator_exactness(seed),   double_cover(seed),
          fractional_fourier(seed),     classical_degeneration(seed)};
}

std::string format_line(const CriterionResult &r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " +
         r.name + ": " + r.detail;
}

} // namespace superspin::acceptance
