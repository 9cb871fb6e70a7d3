#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace lsfem {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

} // namespace lsfem
