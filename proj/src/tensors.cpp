#include "scl/tensors.hpp"

#include <cmath>

namespace scl {

Mat solve_linear(Mat a, Mat b) {
    const int n = a.dim();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-300)
            throw std::runtime_error("singular matrix in linear solve");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(b(pivot, j), b(col, j));
            }
        const double inv = 1.0 / a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) *= inv;
            b(col, j) *= inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                b(r, j) -= f * b(col, j);
            }
        }
    }
    return b;
}

Mat invert(const Mat& a) { return solve_linear(a, identity(a.dim())); }

} // namespace scl
