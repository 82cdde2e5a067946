#ifndef SIP_QUADRATURE_HPP
#define SIP_QUADRATURE_HPP

#include <functional>

namespace sip {

// Tanh-sinh (double-exponential) quadrature on [a, b]. Robust against
// integrable endpoint singularities such as the sqrt vanishing of
// semiclassical action integrands at turning points. Doubles the node
// density until successive levels agree to abs_tol.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_level = 12);

// Adaptive Simpson on [a, b] to the given absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 40);

// Adaptive Simpson over an initial uniform partition; use when the integrand
// is localized somewhere inside a wide interval (a bare [a, m, b] probe can
// miss the support entirely).
double integrate_adaptive_panels(const std::function<double(double)>& f, double a,
                                 double b, double abs_tol, int panels,
                                 int max_depth = 40);

// Composite 16-point Gauss-Legendre with a fixed uniform partition.
// Machine-precision for smooth integrands once the panel width resolves the
// fastest oscillation; cost is deterministic (16 * panels evaluations).
double integrate_gl16(const std::function<double(double)>& f, double a, double b,
                      int panels);

}  // namespace sip

#endif
