#pragma once

#include "lts/hamiltonian.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace lts::catalog {

/// A catalog Hamiltonian plus the analytic bounds the planners consume.
struct Entry {
  Hamiltonian hamiltonian;
  /// Declared Lambda for smoothness order P = 2k over the whole interval.
  std::function<double(int k)> lambda;
  /// Profile used by the adaptive planner at order k.
  std::function<SmoothnessProfile(int k)> profile;
  /// Upper bound on max_{t, alpha} ||H_alpha(t)||_max (element magnitudes).
  double h_max = 0.0;
  /// Upper bound on max_{t, alpha} ||dH_alpha/dt||.
  double max_dH = 0.0;
  /// Upper bound on max_t ||H(t)||, used when excising discontinuities.
  double H_max = 0.0;
};

using Params = std::map<std::string, double>;

// Gaussian approximation to a delta function, exp(-(t-1)^2/a^2)/(a sqrt(pi)) * 1
// on [0, 2], one qubit.

/// d^p/dt^p of the Gaussian scalar via Hermite polynomials.
double gaussian_derivative(double a, int p, double t);

/// F_P(u) = max_{p<=P} (|H_p(u)| e^{-u^2} / sqrt(pi))^{1/(p+1)}; the exact
/// Upsilon floor is F_P((t-1)/a)/a.
double gaussian_shape(int P, double u);

/// d/dt of Upsilon_P(t) = max_{p<=P} |f^(p)(t)|^{1/(p+1)} for the Gaussian,
/// differentiating the active order analytically. Undefined at switch points.
double gaussian_upsilon_slope(double a, int P, double t);

/// Envelope constants for order P: peak value c and slope beta of the
/// certified envelope 1/Upsilon(t) = a/c + beta |t-1|, valid for every a.
struct GaussianEnvelope {
  double c;
  double beta;
};
GaussianEnvelope gaussian_envelope(int P);

/// Profile of the exact floor F_P((t-1)/a)/a with a sampled step certificate.
SmoothnessProfile gaussian_exact_profile(double a, int k);
/// Envelope profile with K^2 = beta and a growth-bound certificate.
SmoothnessProfile gaussian_envelope_profile(double a, int k);

Entry gaussian_delta(double a);

/// t^5 sin(1/t) e^{-t} * 1 on [0, T], one qubit.
Entry singular(double T = 1.0);

/// (1 + 0.5 sin t) sigma_x and (0.8 + 0.3 cos 2t) sigma_z as two terms on [0, 1].
Entry noncommuting_pair();

/// (b_l + 0.3 sin t) sigma_x + 0.5 sigma_z on [0, 1] with b jumping at 1/3, 2/3.
Entry piecewise();

/// Random n-qubit d-sparse term: sum_i (c0 + c1 sin(w t + phi)) B_i with B_i
/// random Hermitian on a fixed pattern, ||B_i|| = 1.
Entry random_sparse(std::uint64_t seed, int qubits = 2, double dt = 1.0);

/// Dispatch by name: gaussian, singular, pair, piecewise, random.
Entry make(const std::string& name, const Params& params, std::uint64_t seed);

}  // namespace lts::catalog
