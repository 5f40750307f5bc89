// nevtool: build, transform, iterate, verify and export from the command
// line. Exit codes: 0 success, 1 assertion failure, 2 parse, 3 precondition,
// 4 unsupported.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nev/canonical.hpp"
#include "nev/format.hpp"
#include "nev/herglotz.hpp"
#include "nev/io.hpp"
#include "nev/jacobi.hpp"
#include "nev/kac.hpp"
#include "nev/linalg.hpp"
#include "nev/realize.hpp"
#include "nev/specialfn.hpp"
#include "nev/suites.hpp"
#include "nev/transforms.hpp"

namespace {

using nev::Complex;
using nev::Index;

enum Exit { kOk = 0, kAssertion = 1, kParse = 2, kPrecondition = 3, kUnsupported = 4 };

struct Failure {
  int code;
  std::string message;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Failure{kParse, "not a number: \"" + s + "\""};
  }
  if (used != s.size()) throw Failure{kParse, "not a number: \"" + s + "\""};
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Complex parse_lambda(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw Failure{kParse, "--lambda expects RE,IM"};
  return {parse_number(parts[0]), parse_number(parts[1])};
}

struct GridSpec {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  Index n_re = 1, n_im = 1;

  std::vector<Complex> points() const {
    std::vector<Complex> out;
    for (Index i = 0; i < n_re; ++i)
      for (Index k = 0; k < n_im; ++k) {
        const double re = n_re == 1 ? re_min : re_min + (re_max - re_min) * i / (n_re - 1.0);
        const double im = n_im == 1 ? im_min : im_min + (im_max - im_min) * k / (n_im - 1.0);
        out.emplace_back(re, im);
      }
    return out;
  }
};

GridSpec parse_grid(const std::string& s) {
  const auto axes = split(s, ',');
  if (axes.size() != 2) throw Failure{kParse, "--grid expects re0:re1:n,im0:im1:n"};
  GridSpec g;
  double* lo[2] = {&g.re_min, &g.im_min};
  double* hi[2] = {&g.re_max, &g.im_max};
  Index* n[2] = {&g.n_re, &g.n_im};
  for (int a = 0; a < 2; ++a) {
    const auto f = split(axes[static_cast<std::size_t>(a)], ':');
    if (f.size() != 3) throw Failure{kParse, "--grid expects re0:re1:n,im0:im1:n"};
    *lo[a] = parse_number(f[0]);
    *hi[a] = parse_number(f[1]);
    const double count = parse_number(f[2]);
    if (count < 1 || count != std::floor(count)) throw Failure{kParse, "grid counts must be positive integers"};
    *n[a] = static_cast<Index>(count);
  }
  return g;
}

std::vector<Complex> sample_points(const std::string& lambda, const std::string& grid, double floor) {
  std::vector<Complex> pts;
  if (!grid.empty()) pts = parse_grid(grid).points();
  if (!lambda.empty()) pts.push_back(parse_lambda(lambda));
  if (pts.empty()) throw Failure{kParse, "one of --lambda or --grid is required"};
  for (Complex z : pts)
    if (!(std::abs(z.imag()) >= floor)) throw Failure{kPrecondition, "grid violates half-plane floor"};
  return pts;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Failure{kPrecondition, "cannot write " + path};
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_file() const { return static_cast<bool>(file_); }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double x) { return nev::format_double(x); }

int cmd_mfun(const std::string& file, const std::string& lambda, const std::string& grid,
             double floor, const std::string& out) {
  const nev::BlockJacobi j = nev::jacobi_from_json(nev::read_json_file(file));
  const auto pts = sample_points(lambda, grid, floor);
  Output o(out);
  auto& os = o.stream();
  const Index d = j.block_dim();
  os << "re_lambda,im_lambda";
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) os << ",re_m" << r << c << ",im_m" << r << c;
  os << "\n";
  double gap = 0.0;
  for (Complex z : pts) {
    const nev::CMatrix m = nev::m_resolvent(j, z);
    gap = std::max(gap, nev::op_norm(m - nev::m_cf(j, z)));
    os << fmt(z.real()) << "," << fmt(z.imag());
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) os << "," << fmt(m(r, c).real()) << "," << fmt(m(r, c).imag());
    os << "\n";
  }
  std::cerr << "max |m_resolvent - m_cf| = " << fmt(gap) << "\n";
  return kOk;
}

int cmd_iterate(const std::string& start, Index dim, const std::string& lambda, Index steps,
                const std::string& out) {
  const Complex z = parse_lambda(lambda);
  if (z.imag() == 0.0) throw Failure{kPrecondition, "lambda must be non-real"};
  std::optional<nev::RealizedFunction> f;
  if (start == "zero") {
    f = nev::RealizedFunction::zero(dim);
  } else {
    f = nev::realized_from_json(nev::read_json_file(start), false);
    for (const auto& v : f->violations())
      std::cerr << "warning: start is not a Nevanlinna function: " << v << "\n";
  }
  const nev::IterationTrace tr = nev::iterate_gamma_hat(*f, z, steps);
  Output o(out);
  nev::write_trace_csv(o.stream(), tr);
  std::cerr << "final residual " << fmt(tr.residuals.back()) << ", max contraction ratio "
            << fmt(tr.max_ratio()) << " (bound " << fmt(tr.contraction_bound()) << ")\n";
  return kOk;
}

int cmd_kac(const std::string& file, Index m, const std::string& out) {
  const nev::BlockJacobi j = nev::jacobi_from_json(nev::read_json_file(file));
  if (j.block_dim() != 1) throw Failure{kUnsupported, "kac: block Jacobi input (d > 1) is unsupported"};
  if (m > j.length()) throw Failure{kPrecondition, "kac: " + std::to_string(m) + " intervals need " +
                                                      std::to_string(m - 1) + " coefficient pairs"};
  const nev::StepHamiltonian h = nev::kac_algorithm(j, m);
  Output o(out);
  o.stream() << nev::dump(nev::to_json(h));
  const Eigen::Matrix2d h0 = nev::evaluate_H(h, 0.0);
  std::cerr << "H on [0,1): [[" << fmt(std::abs(h0(0, 0)) < 1e-15 ? 0.0 : h0(0, 0)) << ","
            << fmt(std::abs(h0(0, 1)) < 1e-15 ? 0.0 : h0(0, 1)) << "],[" << fmt(std::abs(h0(1, 0)) < 1e-15 ? 0.0 : h0(1, 0))
            << "," << fmt(h0(1, 1)) << "]]\n";
  return kOk;
}

int cmd_verify(const std::string& suite, bool all) {
  std::vector<std::string> names;
  if (all) {
    names = nev::suite_names();
  } else {
    const auto known = nev::suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
      std::cerr << "unknown suite \"" << suite << "\"; available suites:\n";
      for (const auto& n : known) std::cerr << "  " << n << "\n";
      return kParse;
    }
    names.push_back(suite);
  }
  bool ok = true;
  for (const auto& n : names) {
    const auto r = nev::run_suite(n);
    nev::print_report(std::cout, r);
    ok = ok && r.passed();
  }
  return ok ? kOk : kAssertion;
}

int cmd_build(const std::string& kind, Index d, Index n, const std::string& out) {
  Output o(out);
  if (kind == "J0") o.stream() << nev::dump(nev::to_json(nev::build_J0(d, n)));
  else if (kind == "Jhat0") o.stream() << nev::dump(nev::to_json(nev::build_Jhat0(d, n)));
  else if (kind == "H0") o.stream() << nev::dump(nev::to_json(nev::hamiltonian_H0(n)));
  else throw Failure{kParse, "unknown kind " + kind};
  return kOk;
}

int cmd_random(std::uint64_t seed, Index d, Index n, bool isometric, const std::string& out) {
  Output o(out);
  o.stream() << nev::dump(nev::to_json(nev::random_nevanlinna(seed, d, n, {.contraction = true, .isometric = isometric})));
  return kOk;
}

int cmd_weyl(const std::string& file, const std::string& lambda, double tol, double t,
             const std::string& out) {
  const nev::StepHamiltonian h = nev::hamiltonian_from_json(nev::read_json_file(file));
  const Complex z = parse_lambda(lambda);
  if (z.imag() == 0.0) throw Failure{kPrecondition, "lambda must be non-real"};
  const nev::WeylDiskEstimate e = t > 0.0 ? nev::weyl_disk(h, z, t) : nev::m_canonical(h, z, tol);
  Output o(out);
  o.stream() << nev::dump(nev::to_json(e));
  if (t <= 0.0 && !e.converged) std::cerr << "warning: radius " << fmt(e.radius) << " above tol; Hamiltonian range exhausted\n";
  return kOk;
}

int cmd_transform(const std::string& file, const std::string& kind, const std::string& out) {
  const nev::RealizedFunction f = nev::realized_from_json(nev::read_json_file(file));
  Output o(out);
  if (kind == "gammahat") {
    o.stream() << nev::dump(nev::to_json(nev::realize_gamma_hat(f)));
  } else if (kind == "gamma") {
    // Needs an isometric K (class N0[-1,1] normalization).
    o.stream() << nev::dump(nev::to_json(nev::bold_T(nev::as_subspace(f))));
  } else {
    throw Failure{kParse, "unknown transform " + kind};
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nevanlinna functions, Gamma transforms, Jacobi matrices and canonical systems"};
  app.require_subcommand(1);

  std::string file, lambda, grid, out, start = "zero", kind, suite;
  Index n = 0, d = 1, dim = 1;
  double tol = 1e-6, floor = 1e-6, t = 0.0;
  std::uint64_t seed = 1;
  bool all = false, isometric = false;

  auto* mfun = app.add_subcommand("mfun", "m-function of a Jacobi matrix on a grid (CSV)");
  mfun->add_option("jacobi", file, "Jacobi JSON file")->required();
  mfun->add_option("--lambda", lambda, "single point RE,IM");
  mfun->add_option("--grid", grid, "re0:re1:n,im0:im1:n");
  mfun->add_option("--floor", floor, "minimum |Im lambda|")->check(CLI::PositiveNumber);
  mfun->add_option("--out", out, "CSV output path");

  auto* iterate = app.add_subcommand("iterate", "Gammahat iteration trace (CSV)");
  iterate->add_option("start", start, "realized-function JSON file or \"zero\"");
  iterate->add_option("--dim", dim, "block dimension of the zero start")->check(CLI::PositiveNumber);
  iterate->add_option("--lambda", lambda, "RE,IM")->required();
  iterate->add_option("--n", n, "number of steps")->required()->check(CLI::PositiveNumber);
  iterate->add_option("--out", out, "CSV output path");

  auto* kac = app.add_subcommand("kac", "Kac Hamiltonian of a scalar Jacobi matrix (JSON)");
  kac->add_option("jacobi", file, "Jacobi JSON file")->required();
  kac->add_option("--n", n, "number of intervals")->required()->check(CLI::PositiveNumber);
  kac->add_option("--out", out, "JSON output path");

  auto* verify = app.add_subcommand("verify", "run a named acceptance suite");
  verify->add_option("suite", suite, "suite name");
  verify->add_flag("--all", all, "run every suite");

  auto* build = app.add_subcommand("build", "J0, Jhat0 (Jacobi JSON) or H0 (Hamiltonian JSON)");
  build->add_option("kind", kind, "J0 | Jhat0 | H0")->required()->check(CLI::IsMember({"J0", "Jhat0", "H0"}));
  build->add_option("--d", d, "block dimension")->check(CLI::PositiveNumber);
  build->add_option("--n", n, "blocks / intervals")->required()->check(CLI::PositiveNumber);
  build->add_option("--out", out, "JSON output path");

  auto* random = app.add_subcommand("random", "seeded random realization (JSON)");
  random->add_option("--seed", seed, "seed");
  random->add_option("--d", d, "block dimension")->check(CLI::PositiveNumber);
  random->add_option("--n", n, "state dimension")->required()->check(CLI::PositiveNumber);
  random->add_flag("--isometric", isometric, "K*K = I");
  random->add_option("--out", out, "JSON output path");

  auto* weyl = app.add_subcommand("weyl", "Weyl-disk m-function of a step Hamiltonian (JSON)");
  weyl->add_option("hamiltonian", file, "Hamiltonian JSON file")->required();
  weyl->add_option("--lambda", lambda, "RE,IM")->required();
  weyl->add_option("--tol", tol, "target radius")->check(CLI::PositiveNumber);
  weyl->add_option("--T", t, "fixed truncation instead of doubling")->check(CLI::PositiveNumber);
  weyl->add_option("--out", out, "JSON output path");

  auto* transform = app.add_subcommand("transform", "realize Gamma or Gammahat of a function (JSON)");
  transform->add_option("function", file, "realized-function JSON file")->required();
  transform->add_option("--kind", kind, "gamma | gammahat")->required()->check(CLI::IsMember({"gamma", "gammahat"}));
  transform->add_option("--out", out, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*mfun) return cmd_mfun(file, lambda, grid, floor, out);
    if (*iterate) return cmd_iterate(start, dim, lambda, n, out);
    if (*kac) return cmd_kac(file, n, out);
    if (*verify) {
      if (!all && suite.empty()) throw Failure{kParse, "verify: give a suite name or --all"};
      return cmd_verify(suite, all);
    }
    if (*build) return cmd_build(kind, d, n, out);
    if (*random) return cmd_random(seed, d, n, isometric, out);
    if (*weyl) return cmd_weyl(file, lambda, tol, t, out);
    if (*transform) return cmd_transform(file, kind, out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const nev::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nev::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const nev::InvalidInput& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const nev::DomainError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const nev::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertion;
  }
  return kOk;
}
