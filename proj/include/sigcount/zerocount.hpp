#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigcount/elliptic.hpp"

namespace sigcount {

// P(X, Y) = sum c[i][j] X^i Y^j with real coefficients.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  // c[i][j]; ragged input is padded with zeros.
  explicit BivariatePoly(std::vector<std::vector<double>> c);

  // Parses sums of terms such as "3*X^2*Y - 2Y^3 + 1" (x and y accepted too).
  static BivariatePoly parse(std::string_view text);

  double coeff(int i, int j) const;
  int deg_x() const { return deg_x_; }
  int deg_y() const { return deg_y_; }
  int L() const { return std::max(deg_x_, deg_y_); }
  int total_degree() const;
  bool is_zero() const { return deg_x_ < 0; }
  bool has_integer_coefficients() const;
  double max_abs_coefficient() const;

  cplx eval(cplx x, cplx y) const;
  // c_j(x) = sum_i c[i][j] x^i and its derivative.
  cplx coeff_poly(int j, cplx x) const;
  cplx coeff_poly_derivative(int j, cplx x) const;

  std::string to_string() const;

 private:
  void normalize();
  std::vector<std::vector<double>> c_;  // c_[i][j]
  int deg_x_ = -1, deg_y_ = -1;
};

struct ZeroCountOptions {
  // Contour radius schedule R + k * step, k = 1..max_attempts, when a zero of F
  // sits on (or within 1e-6 of) the contour.
  double perturb_step = 5e-5;
  int max_attempts = 20;
  double near_zero = 1e-6;
  std::optional<double> besson_c;
};

struct ZeroCountReport {
  std::optional<int> count;
  double requested_radius = 0;
  double radius = 0;  // contour radius actually used
  int perturbations = 0;
  double winding_residual = 0;
  cplx winding{0, 0};
  int panels = 0;
  std::optional<double> besson_bound;
  std::optional<double> jensen_bound;
};

// Zeros of F(z) = P(z, sigma(z)) in |z| <= R by the argument principle.
// Throws ContourStuck if no admissible contour radius is found.
ZeroCountReport count_zeros(const SigmaEvaluator& ev, const BivariatePoly& P, double R,
                            const ZeroCountOptions& opts = {});

// c L (R + sqrt L)^2 log(R + L).
double besson_bound(int L, double R, double c);

// Maximum of |sigma| on |z| <= s (attained on |z| = s): 720-point circle scan
// refined by golden-section ascent.
double max_modulus_sigma(const SigmaEvaluator& ev, double s);
double log_max_modulus_sigma(const SigmaEvaluator& ev, double s);

struct CircleMaximum {
  double theta;
  double log_abs;
};
// Local maxima of log|sigma| on |z| = s within `slack` of the global maximum.
std::vector<CircleMaximum> circle_maxima(const SigmaEvaluator& ev, double s, int seeds = 720,
                                         double slack = 1e-9);

struct JensenOptions {
  double witness_c = 1.0;  // witness annulus radius witness_c*T + T + 14
  double disk_c = 1.0;     // D2 radius at least disk_c*T
  double step = 0.25;
  int seeds = 720;
};

struct JensenReport {
  double bound = 0;
  bool k_zero = false;  // P free of Y: direct polynomial root count
  cplx witness{0, 0};
  double witness_log_abs_F = 0;
  double witness_abs_R = 0;
  double witness_abs_Ptilde = 0;
  double search_radius = 0;  // outer radius of the witness annulus
  double d2_radius = 0;
  double majorant_radius = 0;  // S = |w| + D2 radius
  double log_max_on_d2 = 0;
  double log_coefficient_bound = 0;
};

// Jensen-formula bound on the zeros of P(z, sigma(z)) in |z| <= R1.
// Throws HypothesisUnmet if P is not an integer polynomial of total degree <= T
// with coefficients within 2^{1/d}(T+1)^2 H^T, WitnessNotFound if no witness
// exists in the searched annulus.
JensenReport jensen_pipeline(const SigmaEvaluator& ev, const BivariatePoly& P, int T, double H, int d, double R1,
                             const JensenOptions& opts = {});

}  // namespace sigcount
