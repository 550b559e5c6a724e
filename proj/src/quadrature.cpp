#include "lpm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace lpm::quadrature {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Double-exponential rule: refinement levels beyond h = 1.
constexpr int kMaxDeLevel = 9;

struct Segment {
  double a;
  double b;
  Complex value;
  double err;
};

struct WorseFirst {
  bool operator()(const Segment& x, const Segment& y) const {
    return x.err < y.err;
  }
};

class Engine {
 public:
  Engine(const Integrand& f, double a, double b, bool singular_a,
         bool singular_b)
      : f_(f), a_(a), b_(b), singular_a_(singular_a), singular_b_(singular_b) {}

  std::int64_t evaluations() const { return evaluations_; }

  Segment evaluate(double a, double b, double target) {
    const bool touches_a = singular_a_ && a == a_;
    const bool touches_b = singular_b_ && b == b_;
    if (touches_a || touches_b) return double_exponential(a, b, target);
    return kronrod(a, b);
  }

 private:
  Complex call(double t, double from_a, double from_b) {
    ++evaluations_;
    const Complex v = f_(Abscissa{t, from_a, from_b});
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw QuadratureFailure("integrand is not finite at t = " +
                              std::to_string(t));
    }
    return v;
  }

  Abscissa locate(double t) const { return Abscissa{t, t - a_, b_ - t}; }

  Segment kronrod(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Complex f_center = call(center, center - a_, b_ - center);
    Complex kronrod_sum = f_center * kWgk[7];
    Complex gauss_sum = f_center * kWg[3];
    double abs_sum = std::abs(f_center) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const Abscissa lo = locate(center - dx);
      const Abscissa hi = locate(center + dx);
      const Complex f_lo = call(lo.t, lo.from_a, lo.from_b);
      const Complex f_hi = call(hi.t, hi.from_a, hi.from_b);
      kronrod_sum += kWgk[j] * (f_lo + f_hi);
      abs_sum += kWgk[j] * (std::abs(f_lo) + std::abs(f_hi));
      if (j % 2 == 1) gauss_sum += kWg[j / 2] * (f_lo + f_hi);
    }
    const double width = std::abs(half);
    double err = std::abs(kronrod_sum - gauss_sum) * width;
    err = std::max(err, 20.0 * kEps * abs_sum * width);
    return Segment{a, b, kronrod_sum * half, err};
  }

  // tanh-sinh on [a, b]. Nodes are placed by their distance to the nearer
  // endpoint so that the integrand sees exact offsets near the singularity.
  Segment double_exponential(double a, double b, double target) {
    const double width = b - a;
    // Largest u for which the distance to the endpoint stays >= 1e-300.
    const double v_max = 0.5 * std::log(width / 1e-300);
    const double u_max = std::asinh(2.0 * v_max / std::numbers::pi);

    auto node_sum = [&](double h, bool odd_only) {
      Complex sum = 0.0;
      const auto k_max = static_cast<long>(std::floor(u_max / h));
      for (long k = odd_only ? 1 : 0; k <= k_max; k += odd_only ? 2 : 1) {
        const double u = k * h;
        const double v = 0.5 * std::numbers::pi * std::sinh(u);
        const double e = std::exp(-2.0 * v);
        const double dist = width * e / (1.0 + e);
        const double weight =
            width * std::numbers::pi * std::cosh(u) * e / ((1.0 + e) * (1.0 + e));
        if (dist <= 0.0 || weight == 0.0) break;
        if (k == 0) {
          const double mid = a + 0.5 * width;
          sum += weight * call(mid, mid - a_, b_ - mid);
          continue;
        }
        // Node near b.
        {
          const double t = b - dist;
          const double from_b = (b == b_) ? dist : b_ - t;
          sum += weight * call(t, t - a_, from_b);
        }
        // Node near a.
        {
          const double t = a + dist;
          const double from_a = (a == a_) ? dist : t - a_;
          sum += weight * call(t, from_a, b_ - t);
        }
      }
      return sum;
    };

    double h = 1.0;
    Complex estimate = h * node_sum(h, false);
    double err = kInf;
    for (int level = 1; level <= kMaxDeLevel; ++level) {
      h *= 0.5;
      const Complex refined = 0.5 * estimate + h * node_sum(h, true);
      err = std::abs(refined - estimate);
      estimate = refined;
      if (level >= 3 && err <= target) break;
    }
    err = std::max(err, 50.0 * kEps * std::abs(estimate));
    return Segment{a, b, estimate, err};
  }

  const Integrand& f_;
  double a_;
  double b_;
  bool singular_a_;
  bool singular_b_;
  std::int64_t evaluations_ = 0;
};

void check_exponent(const std::optional<Complex>& p, const char* where) {
  if (p && !(p->real() > -1.0)) {
    throw NonIntegrable(std::string("declared exponent at ") + where +
                        " has Re <= -1");
  }
}

QuadratureResult integrate_finite(const QuadratureSpec& spec, double a,
                                  double b) {
  if (!(a < b)) {
    if (a == b) return QuadratureResult{0.0, 0.0, 0, true};
    throw DomainError("integrate: interval requires a <= b");
  }
  Engine engine(spec.integrand, a, b, spec.singular_exponent_at_a.has_value(),
                spec.singular_exponent_at_b.has_value());
  auto target_for = [&](Complex total) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  };

  std::priority_queue<Segment, std::vector<Segment>, WorseFirst> queue;
  Segment first = engine.evaluate(a, b, spec.abs_tol);
  Complex total = first.value;
  double total_err = first.err;
  queue.push(first);

  int subdivisions = 0;
  while (total_err > target_for(total)) {
    if (subdivisions >= spec.max_subdivisions) break;
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // cannot split further
    queue.pop();
    ++subdivisions;
    const double local = target_for(total) * 0.25;
    Segment left = engine.evaluate(worst.a, mid, local);
    Segment right = engine.evaluate(mid, worst.b, local);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
  }

  // Recompute the totals from the segments to shed accumulated drift.
  Complex value = 0.0;
  double err = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().err;
    queue.pop();
  }

  QuadratureResult result{value, err, engine.evaluations(),
                          err <= target_for(value)};
  if (!result.converged && !spec.allow_unconverged) {
    throw QuadratureFailure("integrate: tolerance not met after " +
                            std::to_string(subdivisions) +
                            " subdivisions (err " + std::to_string(err) + ")");
  }
  return result;
}

}  // namespace

QuadratureResult integrate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) ||
      spec.max_subdivisions < 1) {
    throw DomainError("integrate: tolerances must be positive and "
                      "max_subdivisions >= 1");
  }
  if (!spec.integrand) throw DomainError("integrate: empty integrand");
  check_exponent(spec.singular_exponent_at_a, "a");

  if (const auto* finite = std::get_if<FiniteInterval>(&spec.interval)) {
    check_exponent(spec.singular_exponent_at_b, "b");
    return integrate_finite(spec, finite->a, finite->b);
  }

  const auto& ray = std::get<RayInterval>(spec.interval);
  if (!(ray.decay_exponent.real() < -1.0)) {
    throw NonIntegrable("integrate: ray decay exponent must have Re < -1");
  }
  if (!(ray.scale > 0.0)) throw DomainError("integrate: ray scale must be > 0");

  // t = a + L s/(1-s): f(t) ~ t^p becomes ~ (1-s)^(-p-2) at s = 1.
  QuadratureSpec inner = spec;
  inner.interval = FiniteInterval{0.0, 1.0};
  inner.singular_exponent_at_b = -ray.decay_exponent - 2.0;
  const double a = ray.a;
  const double scale = ray.scale;
  const Integrand& outer = spec.integrand;
  inner.integrand = [&outer, a, scale](const Abscissa& s) -> Complex {
    const double one_minus_s = s.from_b;
    const double offset = scale * s.from_a / one_minus_s;
    if (!std::isfinite(offset)) return 0.0;
    const Complex v = outer(Abscissa{a + offset, offset, kInf});
    if (v == Complex(0.0)) return 0.0;
    return v / one_minus_s / one_minus_s * scale;
  };
  return integrate_finite(inner, 0.0, 1.0);
}

QuadratureResult integrate_ray(const std::function<Complex(Complex)>& f,
                               Complex start, Complex direction,
                               Complex decay_exponent, const Tolerance& tol,
                               double scale) {
  if (std::abs(std::abs(direction) - 1.0) > 1e-12) {
    throw DomainError("integrate_ray: direction must have unit modulus");
  }
  QuadratureSpec spec;
  spec.integrand = [&f, start, direction](const Abscissa& x) {
    return f(start + x.from_a * direction) * direction;
  };
  spec.interval = RayInterval{0.0, decay_exponent, scale};
  spec.rel_tol = tol.rel_tol;
  spec.abs_tol = tol.abs_tol;
  spec.max_subdivisions = tol.max_subdivisions;
  return integrate(spec);
}

}  // namespace lpm::quadrature
