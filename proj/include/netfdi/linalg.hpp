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

#ifndef NETFDI_LINALG_HPP_
#define NETFDI_LINALG_HPP_

#include <Eigen/Dense>

namespace netfdi {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Matrix exponential by scaling and squaring with a diagonal Pade
// approximant of degree 3, 5, 7, 9 or 13, chosen from the 1-norm.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

// a^k by binary powering; a^0 is the identity.
Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& a, int k);

}  // namespace netfdi

#endif  // NETFDI_LINALG_HPP_
