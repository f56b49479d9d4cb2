#include "cli.hpp"

#include "criteria.hpp"

#include <superspin/superspin.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace superspin::cli {

namespace {

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = acceptance::kDefaultSeed;
  int cap = CliffordElement::kDefaultCap;
  int m = 3;
  int n = 1;
  int order = 4;
  bool strict = false;
  bool random = false;
  std::string input = "-";
  double theta = std::numbers::pi;
  int plane = 1;
  std::vector<double> thetas;
};

class Context {
public:
  Context(const Options &o, std::istream &in, std::ostream &out, std::ostream &err)
      : o(o), in_(in), out_(out), err_(err) {}

  const Options &o;

  Json input() {
    std::string text;
    if (o.input == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      text = ss.str();
    } else {
      std::ifstream f(o.input);
      if (!f)
        throw FormatError("cannot open input file " + o.input);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    return parse_json(text);
  }

  Supermatrix matrix() {
    if (o.random)
      return random_SO0(o.m, o.n, o.order, o.seed, 3);
    return supermatrix_from_json(input());
  }

  void emit(const Json &j) { out_ << j.dump(2) << '\n'; }
  std::ostream &diag() { return err_; }

private:
  std::istream &in_;
  std::ostream &out_;
  std::ostream &err_;
};

bool is_matrix_json(const Json &j) { return j.is_object() && j.contains("rows"); }

int check_report(Context &c, const char *what, bool ok, double residual) {
  if (!ok) {
    c.diag() << what << " check failed: residual " << residual << " exceeds tolerance "
             << c.o.tol << '\n';
    return 1;
  }
  return 0;
}

int cmd_check_o0(Context &c) {
  const O0Check r = is_O0(c.matrix(), c.o.tol);
  c.emit({{"ok", r.ok},
          {"residual", r.residual},
          {"block_residual", r.block_residual},
          {"sdet", r.sdet ? to_json(*r.sdet) : Json(nullptr)}});
  return check_report(c, "O0", r.ok, r.residual);
}

int cmd_check_so0(Context &c) {
  const MembershipCheck r = is_SO0(c.matrix(), c.o.tol);
  c.emit({{"ok", r.ok}, {"residual", r.residual}});
  return check_report(c, "SO0", r.ok, r.residual);
}

int cmd_check_so0_algebra(Context &c) {
  Supermatrix X = c.o.random ? random_so0(c.o.m, c.o.n, c.o.order, c.o.seed)
                             : supermatrix_from_json(c.input());
  const MembershipCheck r = is_so0(X, c.o.tol);
  c.emit({{"ok", r.ok}, {"residual", r.residual}});
  return check_report(c, "so0", r.ok, r.residual);
}

int cmd_sdet(Context &c) {
  c.emit(to_json(sm_sdet(c.matrix())));
  return 0;
}

int cmd_exp_ln(Context &c, bool is_exp) {
  if (c.o.random) {
    const Supermatrix X = random_so0(c.o.m, c.o.n, c.o.order, c.o.seed);
    c.emit(to_json(is_exp ? sm_exp(X) : sm_ln(sm_exp(X))));
    return 0;
  }
  const Json j = c.input();
  if (is_matrix_json(j)) {
    const Supermatrix M = supermatrix_from_json(j);
    c.emit(to_json(is_exp ? sm_exp(M) : sm_ln(M)));
  } else {
    const GrassmannNumber g = grassmann_from_json(j);
    c.emit(to_json(is_exp ? gr_exp(g) : gr_ln(g)));
  }
  return 0;
}

int cmd_decompose(Context &c) {
  c.emit(to_json(decompose_SO0(c.matrix(), c.o.tol)));
  return 0;
}

int cmd_lift(Context &c) {
  c.emit(to_json(lift(c.matrix(), c.o.tol)));
  return 0;
}

int cmd_act(Context &c) {
  if (c.o.random) {
    Rng rng(c.o.seed);
    const SpinElement s = lift(random_SO0(rng, c.o.m, c.o.n, c.o.order, 3), c.o.tol);
    const Supervector x = random_supervector(rng, c.o.m, c.o.n, c.o.order);
    c.emit(to_json(h_action(s) * x));
    return 0;
  }
  const Json j = c.input();
  if (j.is_object() && j.contains("spin")) {
    const SpinElement s = spin_from_json(j.at("spin"));
    if (j.contains("x")) {
      c.emit(to_json(h_action(s) * supervector_from_json(j.at("x"))));
      return 0;
    }
    c.emit(to_json(h_action(s)));
    return 0;
  }
  c.emit(to_json(h_action(spin_from_json(j))));
  return 0;
}

int cmd_reflect(Context &c) {
  if (c.o.random) {
    Rng rng(c.o.seed);
    c.emit(to_json(reflect_matrix(random_supersphere(rng, c.o.m, c.o.n, c.o.order),
                                  c.o.tol)));
    return 0;
  }
  const Json j = c.input();
  if (j.is_object() && j.contains("w")) {
    const Supervector w = supervector_from_json(j.at("w"));
    if (j.contains("x")) {
      c.emit(to_json(reflect_apply(w, supervector_from_json(j.at("x")), c.o.tol)));
      return 0;
    }
    c.emit(to_json(reflect_matrix(w, c.o.tol)));
    return 0;
  }
  c.emit(to_json(reflect_matrix(supervector_from_json(j), c.o.tol)));
  return 0;
}

int cmd_inner(Context &c) {
  if (c.o.random) {
    Rng rng(c.o.seed);
    const Supervector x = random_supervector(rng, c.o.m, c.o.n, c.o.order);
    const Supervector y = random_supervector(rng, c.o.m, c.o.n, c.o.order);
    c.emit(to_json(inner_product(x, y)));
    return 0;
  }
  const Json j = c.input();
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw FormatError("inner expects {\"x\": supervector, \"y\": supervector}");
  c.emit(to_json(inner_product(supervector_from_json(j.at("x")),
                               supervector_from_json(j.at("y")))));
  return 0;
}

int cmd_phi(Context &c) {
  if (c.o.random) {
    Rng rng(c.o.seed);
    c.emit(to_json(phi(random_bivector(rng, c.o.m, c.o.n, c.o.order))));
    return 0;
  }
  c.emit(to_json(phi(bivector_from_json(c.input()))));
  return 0;
}

int cmd_phi_inv(Context &c) {
  Supermatrix X = c.o.random ? random_so0(c.o.m, c.o.n, c.o.order, c.o.seed)
                             : supermatrix_from_json(c.input());
  c.emit(to_json(phi_inv(X, c.o.tol)));
  return 0;
}

int cmd_osc_exp(Context &c) {
  const WeylContext ctx{c.o.m, c.o.n, c.o.order, c.o.cap};
  const OscillatorExp r = oscillator_exp(c.o.theta, c.o.plane, ctx);
  Json coefs = Json::array();
  for (const auto &z : r.ab_coefficients)
    coefs.push_back({{"re", z.real()}, {"im", z.imag()}});
  c.emit({{"value", to_json(r.value)},
          {"ab_coefficients", coefs},
          {"exact", r.exact},
          {"truncation_bound", r.truncation_bound}});
  if (c.o.strict && r.truncation_bound > c.o.tol) {
    c.diag() << "truncation bound " << r.truncation_bound << " exceeds tolerance "
             << c.o.tol << '\n';
    return 1;
  }
  return 0;
}

int cmd_frft(Context &c) {
  if (c.o.thetas.empty())
    throw FormatError("frft needs at least one --theta value");
  const SpinElement s = frft_element(c.o.thetas, c.o.m, c.o.order);
  const Supermatrix h = h_action(s);
  Json sign = nullptr;
  try {
    sign = kernel_sign(s, c.o.tol);
  } catch (const DomainError &) {
  }
  c.emit({{"element", to_json(s)}, {"h", to_json(h)}, {"kernel_sign", sign}});
  return 0;
}

int cmd_selftest(Context &c, std::ostream &out) {
  int failed = 0;
  for (const auto &r : acceptance::run_all(c.o.seed)) {
    out << acceptance::format_line(r) << '\n';
    failed += r.pass ? 0 : 1;
  }
  out << (failed == 0 ? "all 10 criteria passed" : std::to_string(failed) + " criteria failed")
      << '\n';
  return failed == 0 ? 0 : 1;
}

void check_options(const Options &o) {
  if (!std::isfinite(o.tol) || o.tol <= 0)
    throw FormatError("--tol must be a positive finite number");
  if (!std::isfinite(o.theta))
    throw FormatError("--theta must be finite");
  for (double t : o.thetas)
    if (!std::isfinite(t))
      throw FormatError("--theta values must be finite");
  if (o.cap < 0 || o.m < 0 || o.n < 0 || o.order < 0)
    throw FormatError("size flags must be non-negative");
}

} // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  Options o;
  CLI::App app{"Grassmann, supermatrix and spin-group calculator"};
  app.name("superspin");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--tol", o.tol, "Tolerance for membership checks");
  app.add_option("--seed", o.seed, "Seed for --random inputs and selftest");
  app.add_option("--cap", o.cap, "Fermionic degree cap of the Clifford engine");
  app.add_option("--m", o.m, "Number of even directions");
  app.add_option("--n", o.n, "Number of fermionic planes");
  app.add_option("--N", o.order, "Number of Grassmann generators");
  app.add_flag("--strict", o.strict, "Fail when a truncation bound exceeds --tol");
  app.add_flag("--random", o.random, "Use a seeded random input instead of JSON");
  app.add_option("-i,--input", o.input, "Input JSON file, '-' for stdin");

  struct Sub {
    const char *name;
    const char *help;
  };
  const std::vector<Sub> subs{
      {"check-o0", "Test membership of a supermatrix in O0"},
      {"check-so0", "Test membership of a supermatrix in SO0"},
      {"check-so0-algebra", "Test membership of a supermatrix in so0"},
      {"sdet", "Berezinian of a supermatrix"},
      {"exp", "Exponential of a supermatrix or Grassmann number"},
      {"ln", "Logarithm of a supermatrix or Grassmann number"},
      {"decompose", "Split M in SO0 into e^X e^Y e^Z"},
      {"lift", "Spin element s with h(s) = M"},
      {"act", "Supermatrix h(s), or h(s) x for {\"spin\", \"x\"}"},
      {"reflect", "Reflection matrix of w, or w x w for {\"w\", \"x\"}"},
      {"inner", "Inner product of {\"x\", \"y\"}"},
      {"phi", "Supermatrix of an extended superbivector"},
      {"phi-inv", "Extended superbivector of an so0 element"},
      {"osc-exp", "Oscillator exponential in one fermionic plane"},
      {"frft", "Fractional Fourier spin element"},
      {"selftest", "Run the acceptance suite"}};
  for (const auto &s : subs)
    app.add_subcommand(s.name, s.help);
  app.get_subcommand("osc-exp")->add_option("--theta", o.theta, "Angle");
  app.get_subcommand("osc-exp")->add_option("--plane", o.plane, "Plane index, 1-based");
  app.get_subcommand("frft")
      ->add_option("--theta", o.thetas, "One angle per fermionic plane")
      ->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Context c(o, in, out, err);
  try {
    check_options(o);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "check-o0")
      return cmd_check_o0(c);
    if (cmd == "check-so0")
      return cmd_check_so0(c);
    if (cmd == "check-so0-algebra")
      return cmd_check_so0_algebra(c);
    if (cmd == "sdet")
      return cmd_sdet(c);
    if (cmd == "exp")
      return cmd_exp_ln(c, true);
    if (cmd == "ln")
      return cmd_exp_ln(c, false);
    if (cmd == "decompose")
      return cmd_decompose(c);
    if (cmd == "lift")
      return cmd_lift(c);
    if (cmd == "act")
      return cmd_act(c);
    if (cmd == "reflect")
      return cmd_reflect(c);
    if (cmd == "inner")
      return cmd_inner(c);
    if (cmd == "phi")
      return cmd_phi(c);
    if (cmd == "phi-inv")
      return cmd_phi_inv(c);
    if (cmd == "osc-exp")
      return cmd_osc_exp(c);
    if (cmd == "frft")
      return cmd_frft(c);
    return cmd_selftest(c, out);
  } catch (const FormatError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace superspin::cli
