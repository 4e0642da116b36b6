#pragma once

#include <Eigen/SparseCore>

namespace qcpn {

using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

}  // namespace qcpn
