// Copyright 2026 The Authors.
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

#include "netfdi/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "netfdi/error.hpp"

namespace netfdi {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

using Eigen::MatrixXd;

// Pade numerator/denominator split: exp(A) ~ (V - U)^{-1} (V + U), with U
// odd and V even in A.
struct PadeTerms {
  MatrixXd u;
  MatrixXd v;
};

template <std::size_t N>
PadeTerms pade_low_degree(const MatrixXd& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const MatrixXd ident = MatrixXd::Identity(n, n);
  const MatrixXd a2 = a * a;
  MatrixXd even_power = ident;
  MatrixXd odd_sum = b[1] * ident;
  MatrixXd even_sum = b[0] * ident;
  for (std::size_t k = 2; k < N; k += 2) {
    even_power = even_power * a2;
    even_sum += b[k] * even_power;
    if (k + 1 < N) odd_sum += b[k + 1] * even_power;
  }
  return {a * odd_sum, even_sum};
}

PadeTerms pade13(const MatrixXd& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const auto n = a.rows();
  const MatrixXd ident = MatrixXd::Identity(n, n);
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd a6 = a4 * a2;
  const MatrixXd odd_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const MatrixXd u = a * (a6 * odd_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const MatrixXd even_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const MatrixXd v = a6 * even_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return {u, v};
}

MatrixXd solve_pade(const PadeTerms& t) {
  return (t.v - t.u).partialPivLu().solve(t.v + t.u);
}

}  // namespace

MatrixXd expm(const MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "expm needs a square matrix");
  }
  if (a.size() == 0) return a;
  // Backward-error bounds for each degree, double precision.
  static constexpr double kTheta3 = 1.495585217958292e-2;
  static constexpr double kTheta5 = 2.539398330063230e-1;
  static constexpr double kTheta7 = 9.504178996162932e-1;
  static constexpr double kTheta9 = 2.097847961257068e0;
  static constexpr double kTheta13 = 5.371920351148152e0;

  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) {
    throw Error(ErrorCode::kInvalidArgument, "expm argument is not finite");
  }
  if (norm <= kTheta3) {
    return solve_pade(pade_low_degree(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}));
  }
  if (norm <= kTheta5) {
    return solve_pade(pade_low_degree(
        a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}));
  }
  if (norm <= kTheta7) {
    return solve_pade(pade_low_degree(
        a, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                 25200.0, 1512.0, 56.0, 1.0}));
  }
  if (norm <= kTheta9) {
    return solve_pade(pade_low_degree(
        a, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                  302702400.0, 30270240.0, 2162160.0, 110880.0,
                                  3960.0, 90.0, 1.0}));
  }
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  }
  MatrixXd result = solve_pade(pade13(a / std::ldexp(1.0, squarings)));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

MatrixXd matrix_power(const MatrixXd& a, int k) {
  if (k < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix_power exponent must be nonnegative, got " + std::to_string(k));
  }
  MatrixXd result = MatrixXd::Identity(a.rows(), a.cols());
  MatrixXd base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace netfdi
