#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace fss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<std::size_t>;

// Affine map applied to effort before fitting and undone on predictions.
struct TargetScale {
    double offset = 0.0;
    double scale = 1.0;

    double forward(double v) const noexcept { return (v - offset) / scale; }
    double inverse(double v) const noexcept { return v * scale + offset; }
    Vector forward(const Vector& v) const { return ((v.array() - offset) / scale).matrix(); }
    Vector inverse(const Vector& v) const { return (v.array() * scale + offset).matrix(); }
};

// Rows `rows` and columns `cols` of `x`, copied.
Matrix gather(const Matrix& x, const IndexList& rows, const IndexList& cols);
Matrix gather_rows(const Matrix& x, const IndexList& rows);
Vector gather(const Vector& v, const IndexList& rows);

} // namespace fss
