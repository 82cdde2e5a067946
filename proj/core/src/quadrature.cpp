#include "sip/quadrature.hpp"

#include <cmath>
#include <limits>

namespace sip {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SimpsonCtx {
  const std::function<double(double)>* f;
  double tol;
  int max_depth;
};

double simpson_step(const SimpsonCtx& ctx, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*ctx.f)(lm);
  const double frm = (*ctx.f)(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= ctx.max_depth || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  SimpsonCtx ctx{&f, abs_tol, max_depth};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(ctx, a, b, fa, fm, fb, whole, abs_tol, 0);
}

double integrate_adaptive_panels(const std::function<double(double)>& f, double a,
                                 double b, double abs_tol, int panels, int max_depth) {
  if (panels < 1) panels = 1;
  const double w = (b - a) / panels;
  const double tol = abs_tol / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i)
    sum += integrate_adaptive(f, a + i * w, a + (i + 1) * w, tol, max_depth);
  return sum;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on (0, 1] half-interval (symmetric).
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

}  // namespace

double integrate_gl16(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  if (panels < 1) panels = 1;
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * w;
    const double half = 0.5 * w;
    double s = 0.0;
    for (int j = 0; j < 8; ++j)
      s += kGlWeight[j] * (f(mid - half * kGlNode[j]) + f(mid + half * kGlNode[j]));
    sum += s * half;
  }
  return sum;
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_level) {
  if (a == b) return 0.0;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // x(t) = mid + half*tanh((pi/2) sinh t); weights decay double-exponentially,
  // so truncating |t| where the weight underflows loses nothing.
  const double t_max = 3.8;

  auto node = [&](double t, double& x, double& w) {
    const double s = (kPi / 2.0) * std::sinh(t);
    const double ch = std::cosh(s);
    x = mid + half * std::tanh(s);
    w = half * (kPi / 2.0) * std::cosh(t) / (ch * ch);
  };

  auto eval = [&](double t) {
    double x, w;
    node(t, x, w);
    if (w < std::numeric_limits<double>::min()) return 0.0;
    if (x <= a || x >= b) return 0.0;  // clamp against rounding at the ends
    const double v = f(x);
    return std::isfinite(v) ? w * v : 0.0;
  };

  double h = 1.0;
  double sum = eval(0.0);
  for (double t = h; t <= t_max; t += h) sum += eval(t) + eval(-t);
  double integral = h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) add += eval(t) + eval(-t);
    sum += add;
    const double refined = h * sum;
    const double change = std::abs(refined - integral);
    integral = refined;
    if (level >= 3 && change <= abs_tol) break;
  }
  return integral;
}

}  // namespace sip
