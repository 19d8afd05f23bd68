// Copyright 2026 The critsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <random>

#include "critsense/qmath.hpp"

namespace testutil {

using critsense::qmath::Complex;
using critsense::qmath::ComplexMatrix;
using critsense::qmath::ComplexVector;

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (m + m.adjoint());
}

inline ComplexVector random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
  return v.normalized();
}

inline ComplexMatrix random_density(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
  ComplexMatrix r = g * g.adjoint();
  return r / r.trace().real();
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, int dim) {
  return critsense::qmath::expm_hermitian(random_hermitian(rng, dim), 1.0);
}

}  // namespace testutil
