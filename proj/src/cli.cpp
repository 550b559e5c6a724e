#include "lpm/cli.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpm/ferrers.hpp"
#include "lpm/hypergeometric.hpp"
#include "lpm/legendre.hpp"
#include "lpm/verifier.hpp"

namespace lpm::cli {
namespace {

using nlohmann::ordered_json;
using verifier::format_complex;
using verifier::format_real;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  if (text.empty() || text.front() == '+' || text.front() == '-' ||
      text.front() == 'i' || text.front() == 'n') {
    if (text.empty() || text.front() != '-') return std::nullopt;
  }
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

void write_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << ordered_json{{"kind", kind}, {"message", message}}.dump() << '\n';
}

Method parse_method(const std::string& name) {
  if (name == "closed") return Method::Closed;
  if (name == "integral") return Method::Integral;
  throw UsageError("method must be 'closed' or 'integral'");
}

Complex require_complex(const std::string& text, const char* flag) {
  const auto value = parse_complex(text);
  if (!value) throw UsageError(std::string("cannot parse ") + flag + " '" + text + "'");
  return *value;
}

double require_real(const std::string& text, const char* flag) {
  const auto value = parse_real(text);
  if (!value) throw UsageError(std::string("cannot parse ") + flag + " '" + text + "'");
  return *value;
}

Selector require_selector(const std::string& name) {
  const auto selector = parse_selector(name);
  if (!selector) throw UsageError("unknown function '" + name + "'");
  return *selector;
}

// Fails with the library's domain errors before anything is computed.
void check_domain(Selector selector, Complex point) {
  if (is_ferrers(selector)) {
    ferrers::CutInterval{point.real()};
  } else {
    legendre::CutPlanePoint{point};
  }
}

ordered_json complex_json(Complex value) {
  return ordered_json{{"re", format_real(value.real())}, {"im", format_real(value.imag())}};
}

EvalResult legendre_value(Selector selector, Complex nu, Complex point, Method method) {
  using namespace legendre;
  const CutPlanePoint z(point);
  switch (selector) {
    case Selector::Qnn:
      return method == Method::Closed ? q_nu_nu(nu, z) : integrate_q_rep(nu, z);
    case Selector::Qnmn:
      return q_nu_neg_nu(nu, z, method);
    case Selector::Pnn:
      return p_nu_nu(nu, z, method);
    case Selector::Pnmn: {
      if (method == Method::Closed) return p_nu_neg_nu(nu, z);
      // Negative-order relation with both P_nu^nu and Q_nu^nu from their
      // ray integrals.
      const EvalResult p = p_nu_nu(nu, z, Method::Integral);
      const EvalResult q = integrate_q_rep(nu, z);
      const Complex inv = 1.0 / gamma(2.0 * nu + 1.0);
      const Complex q_factor = 2.0 / std::numbers::pi *
                               std::exp(Complex(0.0, -std::numbers::pi) * nu) *
                               std::sin(std::numbers::pi * nu);
      EvalResult out;
      out.value = inv * (p.value - q_factor * q.value);
      out.abs_err = std::abs(inv) * (p.abs_err + std::abs(q_factor) * q.abs_err);
      out.terms_used = p.terms_used + q.terms_used;
      out.converged = p.converged && q.converged;
      return out;
    }
    default:
      break;
  }
  throw UsageError("not a Legendre selector");
}

EvalResult ferrers_value(Selector selector, Complex nu, double x, Method method) {
  using namespace ferrers;
  switch (selector) {
    case Selector::FQnn:
      return ferrers_q_nu(nu, x, method);
    case Selector::FQnmn:
      return method == Method::Closed ? ferrers_q_neg_nu(nu, x)
                                      : ferrers_q_neg_nu_integral(nu, x);
    case Selector::FPnn:
      return ferrers_p_nu(nu, x, method);
    case Selector::FPnmn:
      if (method == Method::Integral) {
        throw DomainError("FPnmn has no integral representation; use --method closed");
      }
      return ferrers_p_neg_nu(nu, x);
    default:
      break;
  }
  throw UsageError("not a Ferrers selector");
}

void emit_evaluation(std::ostream& out, const std::string& format, Selector selector,
                     Complex nu, Complex point, const Evaluation& e) {
  const std::string point_text =
      is_ferrers(selector) ? format_real(point.real()) : format_complex(point);
  const char* domain = is_ferrers(selector) ? "ferrers" : "legendre";
  if (format == "csv") {
    out << "function,nu,point,domain,method,fallback,re,im,abs_err,converged\n"
        << to_string(selector) << ',' << format_complex(nu) << ',' << point_text << ','
        << domain << ',' << to_string(e.method) << ',' << (e.fallback ? "true" : "false")
        << ',' << format_real(e.result.value.real()) << ','
        << format_real(e.result.value.imag()) << ',' << format_real(e.result.abs_err)
        << ',' << (e.result.converged ? "true" : "false") << '\n';
    return;
  }
  ordered_json j{{"function", to_string(selector)},
                 {"nu", format_complex(nu)},
                 {"point", point_text},
                 {"domain", domain},
                 {"method", to_string(e.method)},
                 {"fallback", e.fallback},
                 {"value", complex_json(e.result.value)},
                 {"abs_err", format_real(e.result.abs_err)},
                 {"converged", e.result.converged}};
  out << j.dump() << '\n';
}

struct EvalArgs {
  std::string selector, nu, z, x, method = "closed", format = "json";
};

struct TableArgs {
  std::string selector, nu, start, stop, method = "closed", format = "json";
  long steps = 0;
};

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::int64_t samples = 100;
  std::vector<std::string> tolerances;
  std::string format = "json";
};

struct IntegrateArgs {
  std::string kind, nu, format = "json";
};

int run_eval(const EvalArgs& a, std::ostream& out) {
  const Selector selector = require_selector(a.selector);
  const Complex nu = require_complex(a.nu, "--nu");
  const Method method = parse_method(a.method);
  Complex point;
  if (is_ferrers(selector)) {
    if (a.x.empty() || !a.z.empty()) throw UsageError("Ferrers functions take --x");
    point = require_real(a.x, "--x");
  } else {
    if (a.z.empty() || !a.x.empty()) throw UsageError("Legendre functions take --z");
    point = require_complex(a.z, "--z");
  }
  check_domain(selector, point);
  emit_evaluation(out, a.format, selector, nu, point, evaluate(selector, nu, point, method));
  return kExitOk;
}

int run_table(const TableArgs& a, std::ostream& out) {
  const Selector selector = require_selector(a.selector);
  const Complex nu = require_complex(a.nu, "--nu");
  const Method method = parse_method(a.method);
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  Complex start, stop;
  if (is_ferrers(selector)) {
    start = require_real(a.start, "--start");
    stop = require_real(a.stop, "--stop");
  } else {
    start = require_complex(a.start, "--start");
    stop = require_complex(a.stop, "--stop");
  }
  std::vector<Complex> grid;
  for (long k = 0; k <= a.steps; ++k) {
    const double fraction = static_cast<double>(k) / static_cast<double>(a.steps);
    grid.push_back(k == a.steps ? stop : start + fraction * (stop - start));
  }
  for (const Complex& point : grid) check_domain(selector, point);

  std::vector<Evaluation> rows;
  rows.reserve(grid.size());
  for (const Complex& point : grid) rows.push_back(evaluate(selector, nu, point, method));

  auto point_text = [&](Complex p) {
    return is_ferrers(selector) ? format_real(p.real()) : format_complex(p);
  };
  if (a.format == "csv") {
    out << "point,re,im,abs_err\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << point_text(grid[i]) << ',' << format_real(rows[i].result.value.real()) << ','
          << format_real(rows[i].result.value.imag()) << ','
          << format_real(rows[i].result.abs_err) << '\n';
    }
    return kExitOk;
  }
  ordered_json table_rows = ordered_json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table_rows.push_back({{"point", point_text(grid[i])},
                          {"re", format_real(rows[i].result.value.real())},
                          {"im", format_real(rows[i].result.value.imag())},
                          {"abs_err", format_real(rows[i].result.abs_err)},
                          {"method", to_string(rows[i].method)},
                          {"fallback", rows[i].fallback}});
  }
  out << ordered_json{{"function", to_string(selector)},
                      {"nu", format_complex(nu)},
                      {"rows", table_rows}}
             .dump()
      << '\n';
  return kExitOk;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  verifier::ToleranceMap tolerances;
  for (const std::string& entry : a.tolerances) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects ID=VALUE");
    const std::string id = entry.substr(0, eq);
    const auto value = parse_real(std::string_view(entry).substr(eq + 1));
    if (!value || !(*value > 0.0)) throw UsageError("bad tolerance in '" + entry + "'");
    try {
      verifier::lookup(id);
    } catch (const UnknownIdentity& e) {
      throw UsageError(e.what());
    }
    tolerances[id] = *value;
  }
  if (a.samples < 1) throw UsageError("--samples must be >= 1");
  const auto reports = verifier::run_suite(a.seed, a.samples, tolerances);
  out << (a.format == "csv" ? verifier::reports_to_csv(reports)
                            : verifier::reports_to_json(reports));
  return verifier::all_passed(reports) ? kExitOk : kExitVerifyFailed;
}

int run_integrate(const IntegrateArgs& a, std::ostream& out) {
  const Complex nu = require_complex(a.nu, "--nu");
  Complex closed;
  EvalResult numeric;
  if (a.kind == "wing") {
    closed = legendre::definite_integral_wing(nu);
    numeric = legendre::wing_integral_quadrature(nu);
  } else if (a.kind == "cap") {
    closed = ferrers::definite_integral_cap(nu);
    numeric = ferrers::cap_integral_quadrature(nu);
  } else {
    throw UsageError("integral kind must be 'wing' or 'cap'");
  }
  const double difference = std::abs(numeric.value - closed);
  if (a.format == "csv") {
    out << "kind,nu,quadrature_re,quadrature_im,quadrature_err,gamma_ratio_re,"
           "gamma_ratio_im,difference\n"
        << a.kind << ',' << format_complex(nu) << ',' << format_real(numeric.value.real())
        << ',' << format_real(numeric.value.imag()) << ',' << format_real(numeric.abs_err)
        << ',' << format_real(closed.real()) << ',' << format_real(closed.imag()) << ','
        << format_real(difference) << '\n';
    return kExitOk;
  }
  out << ordered_json{{"kind", a.kind},
                      {"nu", format_complex(nu)},
                      {"quadrature", complex_json(numeric.value)},
                      {"quadrature_err", format_real(numeric.abs_err)},
                      {"gamma_ratio", complex_json(closed)},
                      {"difference", format_real(difference)}}
             .dump()
      << '\n';
  return kExitOk;
}

}  // namespace

std::optional<Complex> parse_complex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = parse_real(text);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = 1; k < body.size(); ++k) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
    }
  }
  if (split == std::string_view::npos) return std::nullopt;
  const auto re = parse_real(body.substr(0, split));
  const std::string_view im_text = body.substr(split);
  if (im_text.size() < 2) return std::nullopt;
  const auto im = parse_real(im_text);
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

std::optional<Selector> parse_selector(std::string_view name) {
  static constexpr std::pair<std::string_view, Selector> kNames[] = {
      {"Qnn", Selector::Qnn},   {"Qnmn", Selector::Qnmn},   {"Pnn", Selector::Pnn},
      {"Pnmn", Selector::Pnmn}, {"FQnn", Selector::FQnn},   {"FQnmn", Selector::FQnmn},
      {"FPnn", Selector::FPnn}, {"FPnmn", Selector::FPnmn},
  };
  for (const auto& [n, s] : kNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Selector selector) {
  switch (selector) {
    case Selector::Qnn: return "Qnn";
    case Selector::Qnmn: return "Qnmn";
    case Selector::Pnn: return "Pnn";
    case Selector::Pnmn: return "Pnmn";
    case Selector::FQnn: return "FQnn";
    case Selector::FQnmn: return "FQnmn";
    case Selector::FPnn: return "FPnn";
    case Selector::FPnmn: return "FPnmn";
  }
  return "?";
}

bool is_ferrers(Selector selector) {
  return selector == Selector::FQnn || selector == Selector::FQnmn ||
         selector == Selector::FPnn || selector == Selector::FPnmn;
}

Evaluation evaluate(Selector selector, Complex nu, Complex point, Method method) {
  auto compute = [&](Method m) {
    return is_ferrers(selector) ? ferrers_value(selector, nu, point.real(), m)
                                : legendre_value(selector, nu, point, m);
  };
  if (method == Method::Integral) return Evaluation{compute(method), method, false};
  try {
    return Evaluation{compute(Method::Closed), Method::Closed, false};
  } catch (const DomainError&) {
    if (selector == Selector::FPnmn || selector == Selector::Pnmn) throw;
    return Evaluation{compute(Method::Integral), Method::Integral, true};
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Legendre and Ferrers functions with order equal to +-degree", "lpm"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  eval->add_option("function", eval_args.selector,
                   "Qnn, Qnmn, Pnn, Pnmn, FQnn, FQnmn, FPnn or FPnmn")
      ->required();
  eval->add_option("--nu", eval_args.nu, "Degree (complex literal)")->required();
  eval->add_option("--z", eval_args.z, "Point off (-inf, 1] for Legendre functions");
  eval->add_option("--x", eval_args.x, "Real point in (-1, 1) for Ferrers functions");
  eval->add_option("--method", eval_args.method, "closed or integral");
  eval->add_option("--format", eval_args.format)->check(CLI::IsMember({"json", "csv"}));

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Tabulate a function on a line segment");
  table->add_option("function", table_args.selector)->required();
  table->add_option("--nu", table_args.nu)->required();
  table->add_option("--start", table_args.start)->required();
  table->add_option("--stop", table_args.stop)->required();
  table->add_option("--steps", table_args.steps)->required();
  table->add_option("--method", table_args.method);
  table->add_option("--format", table_args.format)->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the identity verification suite");
  verify->add_option("--seed", verify_args.seed);
  verify->add_option("--samples", verify_args.samples);
  verify->add_option("--tol", verify_args.tolerances, "Per-identity override ID=VALUE");
  verify->add_option("--format", verify_args.format)->check(CLI::IsMember({"json", "csv"}));

  IntegrateArgs integrate_args;
  auto* integrate = app.add_subcommand("integrate", "Compare a definite integral with its Gamma ratio");
  integrate->add_option("kind", integrate_args.kind, "wing or cap")->required();
  integrate->add_option("--nu", integrate_args.nu)->required();
  integrate->add_option("--format", integrate_args.format)->check(CLI::IsMember({"json", "csv"}));

  std::vector<const char*> argv;
  argv.push_back("lpm");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_args, out);
    if (*table) return run_table(table_args, out);
    if (*verify) return run_verify(verify_args, out);
    if (*integrate) return run_integrate(integrate_args, out);
  } catch (const UsageError& e) {
    write_error(err, "UsageError", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lpm::cli
