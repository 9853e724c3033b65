#pragma once

// Contours, pole ledgers and the adaptive integration engines: trapezoidal
// rules on circles and small loops, truncated Gauss-Legendre rules on
// straight lines, and symmetric bilateral sums over Z + nu.
//
// Node evaluations may run on several threads; partial sums are always
// reduced in node order so results do not depend on the thread count.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hgt/hypergeometric_series.hpp"
#include "hgt/special_core.hpp"

namespace hgt {

enum class ContourKind { circle, vertical_line, horizontal_line };

// circle: counterclockwise. vertical_line: upward. horizontal_line: to the
// right.
enum class Orientation { positive, standard };

struct ContourSpec {
  ContourKind kind = ContourKind::circle;
  // Radius for circles, real part for vertical lines, imaginary part for
  // horizontal lines.
  double offset = 1.0;
  // Initial half-length for lines; grown adaptively.
  double truncation = 10.0;
  Orientation orientation = Orientation::positive;

  static ContourSpec circle(double radius = 1.0);
  static ContourSpec vertical_line(double offset = 0.0, double truncation = 10.0);
  static ContourSpec horizontal_line(double offset = 0.0, double truncation = 10.0);

  // Throws DomainError on radius <= 0 or truncation <= 0.
  void validate() const;

  // Point of a line at real parameter x.
  Complex line_point(double x) const;
};

// inside means: inside the circle, left of a vertical line, below a
// horizontal line.
struct PoleLedger {
  std::vector<Complex> inside_required;
  std::vector<Complex> outside_required;
  double margin = 1e-6;
};

enum class Side { inside, outside, boundary };

struct SeparationViolation {
  Complex point;
  // Where the point actually lies.
  Side side;
  bool required_inside;
};

// First violation in ledger order (inside list before outside list).
std::optional<SeparationViolation> pole_separation_check(const PoleLedger& ledger,
                                                         const ContourSpec& contour);
std::vector<SeparationViolation> separation_violations(const PoleLedger& ledger,
                                                       const ContourSpec& contour);

// Counterclockwise loop around one ledger point; sign is +1 or -1 according
// to how it is added to the base contour.
struct Indentation {
  Complex center;
  double radius;
  int sign;
};

// Loops that turn the base contour into a separating one. Each radius is
// 0.4 times the distance to the nearest other ledger point or point of
// avoid (and to 0 for circles). Throws RejectedParametersError if a point
// lies within the margin of the contour or if an inside-required point
// coincides with an outside-required one.
std::vector<Indentation> plan_indentations(const PoleLedger& ledger, const ContourSpec& contour,
                                           std::span<const Complex> avoid = {});

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  std::int64_t nodes_used = 0;
  bool converged = false;
  // Integral of |f| on the same rule, the natural scale for vanishing values.
  double magnitude = 0.0;
};

struct QuadratureBudget {
  std::int64_t max_nodes = std::int64_t{1} << 15;
  double max_truncation = 1e9;
  std::int64_t max_shells = 4096;
  int threads = 1;
};

using Integrand = std::function<Complex(Complex)>;
// Writes one value per component into out (out.size() components).
using VectorIntegrand = std::function<void(Complex, std::span<Complex>)>;
using ShellTerm = std::function<Complex(double)>;
using VectorShellTerm = std::function<void(double, std::span<Complex>)>;

// (1/2 pi i) \oint f(z) dz/z over a circle centred at 0.
QuadratureResult circle_quadrature(const Integrand& f, const ContourSpec& contour, double tol,
                                   const QuadratureBudget& budget = {});
std::vector<QuadratureResult> circle_quadrature(const VectorIntegrand& f, std::size_t components,
                                                const ContourSpec& contour, double tol,
                                                const QuadratureBudget& budget = {});

// (1/2 pi i) \oint f(z) dz over the counterclockwise circle |z - c| = r.
QuadratureResult loop_quadrature(const Integrand& f, Complex center, double radius, double tol,
                                 const QuadratureBudget& budget = {});
std::vector<QuadratureResult> loop_quadrature(const VectorIntegrand& f, std::size_t components,
                                              Complex center, double radius, double tol,
                                              const QuadratureBudget& budget = {});

// \int f(line_point(x)) dx over the whole real x-axis. decay_hint is the
// length scale of the integrand's core; panels are uniform inside it and
// geometric outside.
QuadratureResult line_quadrature(const Integrand& f, const ContourSpec& contour, double tol,
                                 double decay_hint = 1.0, const QuadratureBudget& budget = {});
std::vector<QuadratureResult> line_quadrature(const VectorIntegrand& f, std::size_t components,
                                              const ContourSpec& contour, double tol,
                                              double decay_hint = 1.0,
                                              const QuadratureBudget& budget = {});

// sum over N in Z + nu of term(N), nu in {0, 1/2}.
QuadratureResult bilateral_sum(const ShellTerm& term, double nu, double tol,
                               const QuadratureBudget& budget = {});
std::vector<QuadratureResult> bilateral_sum(const VectorShellTerm& term, std::size_t components,
                                            double nu, double tol,
                                            const QuadratureBudget& budget = {});

// (1/2 pi i) \oint_C f(z) dz/z where C is the circle plus the loops of
// plan_indentations(ledger, contour).
std::vector<QuadratureResult> indented_circle_integral(const VectorIntegrand& f,
                                                       std::size_t components,
                                                       const ContourSpec& contour,
                                                       const PoleLedger& ledger, double tol,
                                                       const QuadratureBudget& budget = {});

// \int_C f(u) du where C is the line plus the loops of plan_indentations.
std::vector<QuadratureResult> indented_line_integral(const VectorIntegrand& f,
                                                     std::size_t components,
                                                     const ContourSpec& contour,
                                                     const PoleLedger& ledger, double tol,
                                                     double decay_hint = 1.0,
                                                     const QuadratureBudget& budget = {});

// Points t_j p^a q^b (j <= 4), t5 p^{a-k} q^{b-m}, t6 p^{a-l} q^{b-n} for
// a, b >= 0 while |p^a q^b| >= cutoff, and their reciprocals.
PoleLedger build_ort2_ledger(const BetaParams& params, int m, int n, int k, int l,
                             double cutoff = 1e-6);

// Ledger of the eight-parameter V integrand.
PoleLedger build_v_ledger(const VParams& params, double cutoff = 1e-6);

// Points g_j + a omega2 + b omega1 (j <= 4), g5 + (a-k) omega2 + (b-m) omega1,
// g6 + (a-l) omega2 + (b-n) omega1 for 0 <= a, b < count, required right of
// the axis (outside); their negatives required left (inside).
PoleLedger build_hyperbolic_ledger(const HyperbolicParams& params, int m, int n, int k, int l,
                                   int count = 6);

// Points alpha_{1..4} - ic, alpha5 + i(s+m-c), alpha6 + i(l+n-c), c >= 0,
// required below the real line (inside); their negatives required above.
PoleLedger build_complex_ledger(const ComplexLevelParams& params, int m, int n, int s, int l,
                                int count = 6);

}  // namespace hgt
