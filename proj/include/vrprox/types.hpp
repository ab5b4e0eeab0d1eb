#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace vrprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Components are rows; stochastic oracles read one row at a time.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

}  // namespace vrprox
