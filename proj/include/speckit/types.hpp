#pragma once

#include <complex>
#include <Eigen/Dense>

namespace speckit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kMachineEps = 2.220446049250313e-16;

} // namespace speckit
