#include "lumpkit/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace lumpkit {

Matrix expm(const Matrix& A) { return A.exp(); }

CMatrix expm(const CMatrix& A) { return A.exp(); }

}  // namespace lumpkit
