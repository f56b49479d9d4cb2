#pragma once
#include <superspin/superspin.hpp>

#include <gtest/gtest.h>

#include <initializer_list>
#include <utility>

namespace superspin::test {

inline GrassmannNumber gn(int order,
                          std::initializer_list<std::pair<std::uint32_t, Scalar>> terms) {
  std::vector<GrassmannNumber::Term> t;
  for (const auto &[mask, c] : terms)
    t.push_back({mask, c});
  return GrassmannNumber::from_terms(order, std::move(t));
}

inline ::testing::AssertionResult near(const GrassmannNumber &a, const GrassmannNumber &b,
                                       double tol) {
  const double d = (a - b).norm();
  if (d <= tol)
    return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << a.to_string() << " vs " << b.to_string() << " differ by " << d;
}

inline ::testing::AssertionResult near(const Supermatrix &a, const Supermatrix &b,
                                       double tol) {
  const double d = (a - b).max_entry_norm();
  if (d <= tol)
    return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max entry difference " << d;
}

inline ::testing::AssertionResult near(const Supervector &a, const Supervector &b,
                                       double tol) {
  const double d = (a - b).norm();
  if (d <= tol)
    return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "supervector difference " << d;
}

inline ::testing::AssertionResult near(const CliffordElement &a, const CliffordElement &b,
                                       double tol) {
  const double d = (a - b).norm();
  if (d <= tol)
    return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "Clifford difference " << d;
}

} // namespace superspin::test
