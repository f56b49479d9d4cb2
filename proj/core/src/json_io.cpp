#include "superspin/json_io.hpp"

#include "superspin/errors.hpp"

#include <cmath>

namespace superspin {

namespace {

const Json &field(const Json &j, const char *key) {
  if (!j.is_object())
    throw FormatError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end())
    throw FormatError(std::string("missing key '") + key + "'");
  return *it;
}

int int_field(const Json &j, const char *key, int lo, int hi) {
  const Json &v = field(j, key);
  if (!v.is_number_integer())
    throw FormatError(std::string("key '") + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw FormatError(std::string("key '") + key + "' out of range");
  return static_cast<int>(x);
}

double number(const Json &v, const char *what) {
  if (!v.is_number())
    throw FormatError(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw FormatError(std::string(what) + " must be finite");
  return x;
}

const Json &array_field(const Json &j, const char *key, std::size_t size) {
  const Json &v = field(j, key);
  if (!v.is_array() || v.size() != size)
    throw FormatError(std::string("key '") + key + "' must be an array of length " +
                      std::to_string(size));
  return v;
}

template <class F> auto guarded(F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception &e) {
    throw FormatError(e.what());
  } catch (const std::invalid_argument &e) {
    throw FormatError(e.what());
  } catch (const std::out_of_range &e) {
    throw FormatError(e.what());
  }
}

constexpr int kMaxOrder = 16;

} // namespace

Json to_json(const GrassmannNumber &g) {
  Json terms = Json::array();
  for (const auto &t : g.terms())
    terms.push_back({{"mask", t.mask}, {"re", t.coef.real()}, {"im", t.coef.imag()}});
  return {{"N", g.order()}, {"terms", terms}};
}

GrassmannNumber grassmann_from_json(const Json &j, int order) {
  return guarded([&] {
    if (j.is_number())
      return GrassmannNumber(std::max(order, 0), number(j, "value"));
    const int n = int_field(j, "N", 0, kMaxOrder);
    if (order >= 0 && n != order)
      throw FormatError("Grassmann order mismatch");
    const Json &terms = field(j, "terms");
    if (!terms.is_array())
      throw FormatError("'terms' must be an array");
    std::vector<GrassmannNumber::Term> out;
    for (const auto &t : terms) {
      const Json &mk = field(t, "mask");
      if (!mk.is_number_unsigned() && !mk.is_number_integer())
        throw FormatError("mask must be an integer");
      const auto mask = mk.get<long long>();
      if (mask < 0 || mask >= (1LL << n))
        throw FormatError("mask outside the algebra");
      const double re = number(field(t, "re"), "re");
      const double im = t.contains("im") ? number(t["im"], "im") : 0.0;
      out.push_back({static_cast<std::uint32_t>(mask), Scalar(re, im)});
    }
    return GrassmannNumber::from_terms(n, std::move(out));
  });
}

Json to_json(const Supermatrix &M) {
  Json rows = Json::array();
  for (int r = 0; r < M.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < M.size(); ++c)
      row.push_back(to_json(M(r, c)));
    rows.push_back(row);
  }
  return {{"p", M.p()}, {"q", M.q()}, {"N", M.order()}, {"rows", rows}};
}

Supermatrix supermatrix_from_json(const Json &j) {
  return guarded([&] {
    const int p = int_field(j, "p", 0, 64);
    const int q = int_field(j, "q", 0, 64);
    const int n = int_field(j, "N", 0, kMaxOrder);
    const Json &rows = array_field(j, "rows", p + q);
    GrassmannMatrix e(p + q, p + q, n);
    for (int r = 0; r < p + q; ++r) {
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(p + q))
        throw FormatError("supermatrix row has the wrong length");
      for (int c = 0; c < p + q; ++c)
        e(r, c) = grassmann_from_json(rows[r][c], n);
    }
    return Supermatrix(p, q, std::move(e));
  });
}

Json to_json(const Supervector &v) {
  Json even = Json::array(), odd = Json::array();
  for (const auto &g : v.even())
    even.push_back(to_json(g));
  for (const auto &g : v.odd())
    odd.push_back(to_json(g));
  return {{"m", v.m()}, {"n", v.n()}, {"N", v.order()}, {"even", even}, {"odd", odd}};
}

Supervector supervector_from_json(const Json &j) {
  return guarded([&] {
    const int m = int_field(j, "m", 0, CliffordElement::kMaxBosons);
    const int n = int_field(j, "n", 0, Monomial::kMaxFermions / 2);
    const int order = int_field(j, "N", 0, kMaxOrder);
    const Json &even = array_field(j, "even", m);
    const Json &odd = array_field(j, "odd", 2 * n);
    Supervector v(m, n, order);
    for (int k = 0; k < m; ++k) {
      GrassmannNumber g = grassmann_from_json(even[k], order);
      if (!g.is_even())
        throw FormatError("even supervector component is not even");
      v.set_even(k, std::move(g));
    }
    for (int k = 0; k < 2 * n; ++k) {
      GrassmannNumber g = grassmann_from_json(odd[k], order);
      if (!g.is_odd())
        throw FormatError("odd supervector component is not odd");
      v.set_odd(k, std::move(g));
    }
    return v;
  });
}

Json to_json(const ExtendedSuperbivector &B) {
  Json b = Json::array(), bq = Json::array(), BB = Json::array();
  auto entry = [](int j, int k, const GrassmannNumber &g) {
    return Json{{"j", j + 1}, {"k", k + 1}, {"value", to_json(g)}};
  };
  for (int j = 0; j < B.m(); ++j)
    for (int k = j + 1; k < B.m(); ++k)
      if (!B.b(j, k).is_zero())
        b.push_back(entry(j, k, B.b(j, k)));
  for (int j = 0; j < B.m(); ++j)
    for (int k = 0; k < 2 * B.n(); ++k)
      if (!B.bq(j, k).is_zero())
        bq.push_back(entry(j, k, B.bq(j, k)));
  for (int j = 0; j < 2 * B.n(); ++j)
    for (int k = j; k < 2 * B.n(); ++k)
      if (!B.B(j, k).is_zero())
        BB.push_back(entry(j, k, B.B(j, k)));
  return {{"m", B.m()}, {"n", B.n()}, {"N", B.order()},
          {"b", b},     {"bq", bq},   {"B", BB}};
}

ExtendedSuperbivector bivector_from_json(const Json &j) {
  return guarded([&] {
    const int m = int_field(j, "m", 0, CliffordElement::kMaxBosons);
    const int n = int_field(j, "n", 0, Monomial::kMaxFermions / 2);
    const int order = int_field(j, "N", 0, kMaxOrder);
    ExtendedSuperbivector B(m, n, order);
    auto each = [&](const char *key, int jmax, int kmax, bool strict_lt,
                    bool lower_k, auto setter, bool odd) {
      if (!j.contains(key))
        return;
      const Json &list = j[key];
      if (!list.is_array())
        throw FormatError(std::string("'") + key + "' must be an array");
      for (const auto &e : list) {
        const int a = int_field(e, "j", 1, jmax) - 1;
        const int c = int_field(e, "k", 1, kmax) - 1;
        if (lower_k && (strict_lt ? a >= c : a > c))
          throw FormatError(std::string("index order violated in '") + key + "'");
        GrassmannNumber g = grassmann_from_json(field(e, "value"), order);
        if (odd ? !g.is_odd() : !g.is_even())
          throw FormatError(std::string("wrong parity in '") + key + "'");
        setter(a, c, std::move(g));
      }
    };
    each("b", m, m, true, true,
         [&](int a, int c, GrassmannNumber g) { B.set_b(a, c, std::move(g)); }, false);
    each("bq", m, 2 * n, false, false,
         [&](int a, int c, GrassmannNumber g) { B.set_bq(a, c, std::move(g)); }, true);
    each("B", 2 * n, 2 * n, false, true,
         [&](int a, int c, GrassmannNumber g) { B.set_B(a, c, std::move(g)); }, false);
    return B;
  });
}

Json to_json(const SpinElement &s) {
  Json f = Json::array();
  for (const auto &B : s.factors)
    f.push_back(to_json(B));
  return {{"m", s.m}, {"n", s.n}, {"N", s.order}, {"factors", f}};
}

SpinElement spin_from_json(const Json &j) {
  return guarded([&] {
    const Json &f = field(j, "factors");
    if (!f.is_array())
      throw FormatError("'factors' must be an array");
    std::vector<ExtendedSuperbivector> factors;
    for (const auto &e : f)
      factors.push_back(bivector_from_json(e));
    int m, n, order;
    if (j.contains("m")) {
      m = int_field(j, "m", 0, CliffordElement::kMaxBosons);
      n = int_field(j, "n", 0, Monomial::kMaxFermions / 2);
      order = int_field(j, "N", 0, kMaxOrder);
    } else if (!factors.empty()) {
      m = factors[0].m();
      n = factors[0].n();
      order = factors[0].order();
    } else {
      throw FormatError("empty spin element needs m, n and N");
    }
    return SpinElement(m, n, order, std::move(factors));
  });
}

Json to_json(const CliffordElement &x) {
  Json terms = Json::array();
  for (const auto &[mono, c] : x.terms()) {
    Json alpha = Json::array();
    for (int k = 0; k < 2 * x.n(); ++k)
      alpha.push_back(mono.alpha[k]);
    terms.push_back({{"blade", mono.blade}, {"alpha", alpha}, {"coef", to_json(c)}});
  }
  return {{"m", x.m()},     {"n", x.n()},         {"N", x.order()},
          {"cap", x.cap()}, {"truncated", x.truncated()}, {"terms", terms}};
}

CliffordElement clifford_from_json(const Json &j) {
  return guarded([&] {
    const int m = int_field(j, "m", 0, CliffordElement::kMaxBosons);
    const int n = int_field(j, "n", 0, Monomial::kMaxFermions / 2);
    const int order = int_field(j, "N", 0, kMaxOrder);
    const int cap = j.contains("cap") ? int_field(j, "cap", 0, 255)
                                      : CliffordElement::kDefaultCap;
    CliffordElement x(m, n, order, cap);
    const Json &terms = field(j, "terms");
    if (!terms.is_array())
      throw FormatError("'terms' must be an array");
    for (const auto &t : terms) {
      Monomial mono;
      const Json &bl = field(t, "blade");
      if (!bl.is_number_integer() || bl.get<long long>() < 0 ||
          bl.get<long long>() >= (1LL << m))
        throw FormatError("blade outside the algebra");
      mono.blade = static_cast<std::uint32_t>(bl.get<long long>());
      const Json &alpha = array_field(t, "alpha", 2 * n);
      for (int k = 0; k < 2 * n; ++k) {
        if (!alpha[k].is_number_integer() || alpha[k].get<int>() < 0 ||
            alpha[k].get<int>() > 255)
          throw FormatError("alpha entries must be small non-negative integers");
        mono.alpha[k] = static_cast<std::uint8_t>(alpha[k].get<int>());
      }
      x.add_term(mono, grassmann_from_json(field(t, "coef"), order));
    }
    return x;
  });
}

Json to_json(const So0Decomposition &d) {
  return {{"X", to_json(d.compact)},
          {"Y", to_json(d.symmetric)},
          {"Z", to_json(d.nilpotent)},
          {"residual", d.residual}};
}

So0Decomposition decomposition_from_json(const Json &j) {
  return guarded([&] {
    So0Decomposition d;
    d.compact = supermatrix_from_json(field(j, "X"));
    d.symmetric = supermatrix_from_json(field(j, "Y"));
    d.nilpotent = supermatrix_from_json(field(j, "Z"));
    d.residual = number(field(j, "residual"), "residual");
    return d;
  });
}

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw FormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                      e.what());
  }
}

} // namespace superspin
