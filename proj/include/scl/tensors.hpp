#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scl {

/// Dense square rank-2 container over a small chart dimension.
template <typename T>
class Grid2 {
public:
    Grid2() = default;
    explicit Grid2(int n, const T& init = T{}) : n_(n), v_(static_cast<size_t>(n) * n, init) {}

    int dim() const { return n_; }
    T& operator()(int i, int j) { return v_[static_cast<size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return v_[static_cast<size_t>(i) * n_ + j]; }

    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

private:
    int n_ = 0;
    std::vector<T> v_;
};

template <typename T>
class Grid3 {
public:
    Grid3() = default;
    explicit Grid3(int n, const T& init = T{}) : n_(n), v_(static_cast<size_t>(n) * n * n, init) {}

    int dim() const { return n_; }
    T& operator()(int a, int b, int c) {
        return v_[(static_cast<size_t>(a) * n_ + b) * n_ + c];
    }
    const T& operator()(int a, int b, int c) const {
        return v_[(static_cast<size_t>(a) * n_ + b) * n_ + c];
    }

    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

private:
    int n_ = 0;
    std::vector<T> v_;
};

template <typename T>
class Grid4 {
public:
    Grid4() = default;
    explicit Grid4(int n, const T& init = T{})
        : n_(n), v_(static_cast<size_t>(n) * n * n * n, init) {}

    int dim() const { return n_; }
    T& operator()(int a, int b, int c, int d) {
        return v_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
    }
    const T& operator()(int a, int b, int c, int d) const {
        return v_[((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d];
    }

    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

private:
    int n_ = 0;
    std::vector<T> v_;
};

using Mat = Grid2<double>;
using Vec = std::vector<double>;

inline double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

template <typename G>
double max_abs_grid(const G& g) {
    double m = 0.0;
    for (double x : g) m = std::max(m, std::abs(x));
    return m;
}

/// Solves a.x = b by Gauss elimination with partial pivoting.
/// Throws std::runtime_error when the matrix is singular to working precision.
Mat solve_linear(Mat a, Mat b);

/// Matrix inverse via solve_linear against the identity.
Mat invert(const Mat& a);

inline Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    const int n = a.dim();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline double trace(const Mat& a) {
    double t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

inline double determinant(Mat a) {
    const int n = a.dim();
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

} // namespace scl
