#pragma once

#include "lts/hamiltonian.hpp"
#include "lts/linalg.hpp"

#include <functional>

namespace lts::test {

inline ScalarFunction constant(double c) {
  ScalarFunction f;
  f.jet = [c](const Taylor& t) { return Taylor(t.order(), 0.0) + c; };
  f.value = [c](double) { return c; };
  return f;
}

inline ScalarFunction linear(double slope, double offset = 0.0) {
  ScalarFunction f;
  f.jet = [=](const Taylor& t) { return t * slope + offset; };
  f.value = [=](double t) { return slope * t + offset; };
  return f;
}

inline ScalarFunction sine(double amp, double w, double phase, double offset) {
  ScalarFunction f;
  f.jet = [=](const Taylor& t) { return sin(t * w + phase) * amp + offset; };
  f.value = [=](double t) { return amp * std::sin(w * t + phase) + offset; };
  return f;
}

inline HamiltonianTerm single(const ScalarFunction& f, const CMatrix& m, Interval iv) {
  return HamiltonianTerm::from_components(static_cast<Index>(m.rows()), {{f, m}}, iv);
}

inline CMatrix cm(const Eigen::Matrix2cd& m) { return CMatrix(m); }

}  // namespace lts::test
