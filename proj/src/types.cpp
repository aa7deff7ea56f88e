#include "fss/types.hpp"

namespace fss {

Matrix gather(const Matrix& x, const IndexList& rows, const IndexList& cols)
{
    Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out(static_cast<Index>(r), static_cast<Index>(c)) =
                x(static_cast<Index>(rows[r]), static_cast<Index>(cols[c]));
        }
    }
    return out;
}

Matrix gather_rows(const Matrix& x, const IndexList& rows)
{
    Matrix out(static_cast<Index>(rows.size()), x.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.row(static_cast<Index>(r)) = x.row(static_cast<Index>(rows[r]));
    }
    return out;
}

Vector gather(const Vector& v, const IndexList& rows)
{
    Vector out(static_cast<Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out(static_cast<Index>(r)) = v(static_cast<Index>(rows[r]));
    }
    return out;
}

} // namespace fss
