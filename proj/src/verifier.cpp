#include "lpm/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lpm/ferrers.hpp"
#include "lpm/hypergeometric.hpp"
#include "lpm/legendre.hpp"

namespace lpm::verifier {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Sampling box.
constexpr double kNuReMin = -0.4;
constexpr double kNuReMax = 3.0;
constexpr double kNuImMax = 1.0;
constexpr double kRadiusMin = 0.1;
constexpr double kRadiusMax = 5.0;
constexpr double kAngleMargin = 0.2;
constexpr double kIntervalMax = 0.9;
// Closed forms are sampled only where |1/z^2| <= 1/1.21.
constexpr double kClosedFormMinModulus = 1.1;
constexpr double kWhippleSeriesMax = 0.9;
constexpr double kPoleBand = 0.05;
constexpr int kMaxResampling = 100000;

constexpr double kDerivativeTol = 1e-6;
constexpr double kAlgebraicTol = 1e-9;
constexpr double kQuadratureTol = 1e-8;

enum class NuRange { Default, Wing, Cap };

struct Definition {
  IdentityInfo info;
  NuRange nu_range;
  std::function<Sides(const Sample&)> sides;
};

Complex phase(Complex multiple) { return std::exp(kI * kPi * multiple); }

double distance_to_negative_half_integers(Complex nu) {
  const double k = std::max(0.0, std::round(-nu.real() - 0.5));
  return std::abs(nu - Complex(-k - 0.5, 0.0));
}

Sides thm1_derivative(const Sample& s) {
  using namespace legendre;
  const Complex z = s.point;
  const double h = 1e-5 * std::abs(z);
  const Complex ahead = antiderivative(s.nu, z + h).value;
  const Complex behind = antiderivative(s.nu, z - h).value;
  return {(ahead - behind) / (2.0 * h), split_power(z, -(s.nu + 1.0))};
}

Sides thm1_q_equality(const Sample& s) {
  using namespace legendre;
  return {antiderivative(s.nu, s.point).value,
          antiderivative_via_q(s.nu, s.point).value};
}

Sides q_rep_eq6(const Sample& s) {
  using namespace legendre;
  return {integrate_q_rep(s.nu, s.point).value, q_nu_nu(s.nu, s.point).value};
}

Sides q_negorder(const Sample& s) {
  using namespace legendre;
  const Complex relation = phase(-2.0 * s.nu) / gamma(2.0 * s.nu + 1.0);
  return {q_nu_neg_nu(s.nu, s.point).value,
          relation * q_nu_nu(s.nu, s.point).value};
}

Sides whipple(const Sample& s) {
  using namespace legendre;
  return {whipple_q_from_p(s.nu, s.point).value, q_nu_nu(s.nu, s.point).value};
}

Sides p_rep_eq8(const Sample& s) {
  using namespace legendre;
  return {p_nu_nu(s.nu, s.point, Method::Integral).value,
          p_nu_nu(s.nu, s.point, Method::Closed).value};
}

Sides p_negorder_eq7(const Sample& s) {
  using namespace legendre;
  const Complex p = p_nu_nu(s.nu, s.point, Method::Integral).value;
  const Complex q = q_nu_nu(s.nu, s.point).value;
  const Complex combination =
      (p - 2.0 / kPi * phase(-s.nu) * std::sin(kPi * s.nu) * q) /
      gamma(2.0 * s.nu + 1.0);
  return {combination, p_nu_neg_nu(s.nu, s.point).value};
}

Sides wing_integral(const Sample& s) {
  using namespace legendre;
  return {wing_integral_quadrature(s.nu).value, definite_integral_wing(s.nu)};
}

Sides thm2_derivative(const Sample& s) {
  using namespace ferrers;
  const double x = s.point.real();
  const double h = 1e-5;
  const Complex ahead = kernel_integral(s.nu, x + h, Method::Closed).value;
  const Complex behind = kernel_integral(s.nu, x - h, Method::Closed).value;
  const Complex rhs = std::exp(-(s.nu + 1.0) * std::log((1.0 - x) * (1.0 + x)));
  return {(ahead - behind) / (2.0 * h), rhs};
}

Sides ferrers_q_rep_eq12(const Sample& s) {
  using namespace ferrers;
  const double x = s.point.real();
  return {ferrers_q_neg_nu_integral(s.nu, x).value, ferrers_q_neg_nu(s.nu, x).value};
}

Sides cap_integral(const Sample& s) {
  using namespace ferrers;
  return {cap_integral_quadrature(s.nu).value, definite_integral_cap(s.nu)};
}

Sides ferrers_negorder(const Sample& s) {
  using namespace ferrers;
  const double x = s.point.real();
  const Complex q = ferrers_q_nu(s.nu, x, Method::Integral).value;
  const Complex p = ferrers_p_nu(s.nu, x, Method::Integral).value;
  const Complex combination =
      (std::cos(kPi * s.nu) * q + kPi / 2.0 * std::sin(kPi * s.nu) * p) /
      gamma(2.0 * s.nu + 1.0);
  return {combination, ferrers_q_neg_nu(s.nu, x).value};
}

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = {
      {{"thm1_derivative", PointKind::CutPlane, kDerivativeTol}, NuRange::Default, thm1_derivative},
      {{"thm1_q_equality", PointKind::CutPlane, kAlgebraicTol}, NuRange::Default, thm1_q_equality},
      {{"q_rep_eq6", PointKind::CutPlane, kQuadratureTol}, NuRange::Default, q_rep_eq6},
      {{"q_negorder", PointKind::CutPlane, kAlgebraicTol}, NuRange::Default, q_negorder},
      {{"whipple", PointKind::CutPlane, kQuadratureTol}, NuRange::Default, whipple},
      {{"p_rep_eq8", PointKind::CutPlane, kQuadratureTol}, NuRange::Default, p_rep_eq8},
      {{"p_negorder_eq7", PointKind::CutPlane, kAlgebraicTol}, NuRange::Default, p_negorder_eq7},
      {{"wing_integral", PointKind::None, kQuadratureTol}, NuRange::Wing, wing_integral},
      {{"thm2_derivative", PointKind::Interval, kDerivativeTol}, NuRange::Default, thm2_derivative},
      {{"ferrers_q_rep_eq12", PointKind::Interval, kQuadratureTol}, NuRange::Default, ferrers_q_rep_eq12},
      {{"cap_integral", PointKind::None, kQuadratureTol}, NuRange::Cap, cap_integral},
      {{"ferrers_negorder", PointKind::Interval, kAlgebraicTol}, NuRange::Default, ferrers_negorder},
  };
  return defs;
}

const Definition& find(std::string_view id) {
  for (const auto& def : definitions()) {
    if (def.info.id == id) return def;
  }
  throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
}

std::pair<double, double> real_range(NuRange range) {
  switch (range) {
    case NuRange::Wing: return {0.05, 0.45};
    case NuRange::Cap: return {0.05, kNuReMax};
    case NuRange::Default: break;
  }
  return {kNuReMin, kNuReMax};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Portable uniform draw on [lo, hi); std::uniform_real_distribution is
// implementation-defined.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

double finite_or_inf(double x) {
  return std::isfinite(x) ? x : std::numeric_limits<double>::infinity();
}

}  // namespace

const std::vector<IdentityInfo>& registry() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> out;
    for (const auto& def : definitions()) out.push_back(def.info);
    return out;
  }();
  return infos;
}

const IdentityInfo& lookup(std::string_view identity_id) {
  return find(identity_id).info;
}

Sides evaluate_sides(std::string_view identity_id, const Sample& sample) {
  return find(identity_id).sides(sample);
}

double residual(const Sides& sides) {
  return finite_or_inf(std::abs(sides.lhs - sides.rhs) /
                       std::max(1.0, std::abs(sides.rhs)));
}

bool admissible(std::string_view identity_id, const Sample& sample) {
  const Definition& def = find(identity_id);
  const auto [re_lo, re_hi] = real_range(def.nu_range);
  const Complex nu = sample.nu;
  if (!(nu.real() > re_lo && nu.real() < re_hi)) return false;
  if (!(std::abs(nu.imag()) < kNuImMax)) return false;
  if (distance_to_negative_half_integers(nu) < kPoleBand) return false;

  switch (def.info.point_kind) {
    case PointKind::None:
      return true;
    case PointKind::Interval: {
      const double x = sample.point.real();
      return sample.point.imag() == 0.0 && std::abs(x) < kIntervalMax;
    }
    case PointKind::CutPlane:
      break;
  }
  const Complex z = sample.point;
  const Complex offset = z - 1.0;
  const double r = std::abs(offset);
  if (!(r > kRadiusMin && r < kRadiusMax)) return false;
  if (std::abs(std::arg(offset)) > kPi - kAngleMargin) return false;
  if (std::abs(z) < kClosedFormMinModulus) return false;
  if (def.info.id == "whipple") {
    if (!(z.real() > 0.0)) return false;
    const Complex w = legendre::whipple_argument(z);
    if (std::abs((1.0 - w) / 2.0) > kWhippleSeriesMax) return false;
  }
  return true;
}

std::vector<Sample> draw_samples(std::string_view identity_id,
                                 std::uint64_t seed, std::int64_t count) {
  const Definition& def = find(identity_id);
  std::size_t index = 0;
  while (definitions()[index].info.id != identity_id) ++index;
  Uniform uniform(splitmix64(seed ^ splitmix64(index + 1)));
  const auto [re_lo, re_hi] = real_range(def.nu_range);

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t i = 0; i < count; ++i) {
    Sample s{};
    int attempts = 0;
    do {
      if (++attempts > kMaxResampling) {
        throw DomainError("sampler could not satisfy the domain of " +
                          std::string(identity_id));
      }
      s.nu = Complex(uniform(re_lo, re_hi), uniform(-kNuImMax, kNuImMax));
      switch (def.info.point_kind) {
        case PointKind::CutPlane: {
          const double r = uniform(kRadiusMin, kRadiusMax);
          const double theta = uniform(-kPi + kAngleMargin, kPi - kAngleMargin);
          s.point = 1.0 + std::polar(r, theta);
          break;
        }
        case PointKind::Interval:
          s.point = Complex(uniform(-kIntervalMax, kIntervalMax), 0.0);
          break;
        case PointKind::None:
          s.point = 0.0;
          break;
      }
    } while (!admissible(identity_id, s));
    samples.push_back(s);
  }
  return samples;
}

IdentityReport run_identity(const IdentityCase& identity_case) {
  const Definition& def = find(identity_case.identity_id);
  IdentityReport report;
  report.identity_id = std::string(def.info.id);
  double sum = 0.0;
  bool errored = false;
  for (const Sample& sample : identity_case.parameter_sample) {
    double r = 0.0;
    std::string error;
    try {
      r = residual(def.sides(sample));
    } catch (const Error& e) {
      r = std::numeric_limits<double>::infinity();
      error = std::string(to_string(e.kind())) + ": " + e.what();
      errored = true;
    }
    ++report.samples_run;
    sum += r;
    report.max_residual = std::max(report.max_residual, r);
    if (!(r <= identity_case.tolerance)) {
      report.failures.push_back(Failure{sample, r, std::move(error)});
    }
  }
  if (report.samples_run > 0) {
    report.mean_residual = sum / static_cast<double>(report.samples_run);
  }
  report.passed = !errored && report.max_residual <= identity_case.tolerance;
  return report;
}

std::vector<IdentityReport> run_suite(std::uint64_t seed,
                                      std::int64_t samples_per_identity,
                                      const ToleranceMap& tolerances) {
  if (samples_per_identity < 1) {
    throw DomainError("run_suite: samples_per_identity must be >= 1");
  }
  for (const auto& [id, tol] : tolerances) {
    find(id);
    if (!(tol > 0.0)) throw DomainError("tolerance for " + id + " must be > 0");
  }
  std::vector<std::future<IdentityReport>> pending;
  for (const auto& def : definitions()) {
    IdentityCase c;
    c.identity_id = std::string(def.info.id);
    const auto it = tolerances.find(def.info.id);
    c.tolerance = it != tolerances.end() ? it->second : def.info.default_tolerance;
    c.parameter_sample = draw_samples(def.info.id, seed, samples_per_identity);
    pending.push_back(std::async(std::launch::async, run_identity, std::move(c)));
  }
  std::vector<IdentityReport> reports;
  for (auto& f : pending) reports.push_back(f.get());
  return reports;
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const IdentityReport& r) { return r.passed; });
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_complex(Complex value) {
  if (value.imag() == 0.0) return format_real(value.real());
  std::string out = format_real(value.real());
  out += std::signbit(value.imag()) ? '-' : '+';
  out += format_real(std::abs(value.imag()));
  out += 'i';
  return out;
}

std::string reports_to_json(const std::vector<IdentityReport>& reports) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& f : report.failures) {
      nlohmann::ordered_json parameters = {{"nu", format_complex(f.parameters.nu)},
                                           {"point", format_complex(f.parameters.point)}};
      if (!f.error.empty()) parameters["error"] = f.error;
      failures.push_back({{"parameters", parameters},
                          {"residual", format_real(f.residual)}});
    }
    array.push_back({{"identity_id", report.identity_id},
                     {"samples_run", report.samples_run},
                     {"max_residual", format_real(report.max_residual)},
                     {"mean_residual", format_real(report.mean_residual)},
                     {"failures", failures},
                     {"passed", report.passed}});
  }
  return array.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  os << "identity_id,samples_run,max_residual,mean_residual,failures,passed\n";
  for (const auto& r : reports) {
    os << r.identity_id << ',' << r.samples_run << ',' << format_real(r.max_residual)
       << ',' << format_real(r.mean_residual) << ',' << r.failures.size() << ','
       << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace lpm::verifier
