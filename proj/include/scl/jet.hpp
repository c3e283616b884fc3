#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scl {

/// Raised on invalid numeric evaluation: division by a zero denominator,
/// log of a nonpositive argument, singular forms, order overflow.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Hard engine bounds. The configurable per-run cap (default 6) is enforced
/// at the expression layer; these protect the dense tables themselves.
inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxJetOrder = 12;
inline constexpr int kDefaultJetOrderCap = 6;

/// Shared layout for dense truncated Taylor tables in `nvars` variables up to
/// total degree `order`: the graded-lex list of multi-indices, degree offsets,
/// and the position table for multi-index sums. Layouts are interned per
/// (nvars, order) and immutable once built.
class JetLayout {
public:
    static const JetLayout& get(int nvars, int order);

    int nvars;
    int order;
    int count; // number of multi-indices with |alpha| <= order

    /// exponents[pos] = the multi-index at that table position.
    std::vector<std::array<uint8_t, kMaxJetVars>> exponents;
    /// degree_offset[d] = first position of total degree d; size order + 2.
    std::vector<int> degree_offset;
    /// product[i * count + j] = position of exponents[i] + exponents[j],
    /// or npos when the sum exceeds `order`.
    std::vector<uint32_t> product;
    static constexpr uint32_t npos = 0xffffffffu;

    int degree_of(int pos) const;
    /// Position of a multi-index, or -1 when |alpha| > order.
    int position(std::span<const int> alpha) const;

private:
    JetLayout(int nvars, int order);
};

/// Truncated multivariate Taylor expansion of a scalar function at a point:
/// coefficient(alpha) stores d^alpha f / alpha!. Arithmetic is exact for the
/// stored truncation order. Immutable value type; all operations are pure.
class Jet {
public:
    Jet() = default;

    static Jet constant(int nvars, int order, double value);
    /// The coordinate function x_index seeded at `value`: unit linear term.
    static Jet variable(int nvars, int order, double value, int index);

    bool empty() const { return layout_ == nullptr; }
    int nvars() const { return layout_->nvars; }
    int order() const { return layout_->order; }
    double value() const { return c_[0]; }

    double coefficient(std::span<const int> alpha) const;
    /// alpha! * coefficient(alpha), i.e. the plain partial derivative.
    double partial(std::span<const int> alpha) const;
    std::span<const double> coefficients() const { return c_; }

    Jet truncated(int new_order) const;
    /// Order-(K-1) jet of the partial derivative along `var`.
    Jet derivative(int var) const;
    /// Re-embeds into a larger variable set; var_map[i] is the new index of
    /// old variable i. New variables carry zero derivatives.
    Jet extended(int new_nvars, std::span<const int> var_map) const;
    /// Restriction to the coordinate slice keeping old variables keep[j];
    /// coefficients with exponents on dropped variables are discarded.
    Jet restricted(int new_nvars, std::span<const int> keep) const;

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(const Jet& a, double s);
    friend Jet operator+(double s, const Jet& a);
    friend Jet operator-(const Jet& a, double s);
    friend Jet operator-(double s, const Jet& a);
    friend Jet operator*(const Jet& a, double s);
    friend Jet operator*(double s, const Jet& a);
    friend Jet operator/(const Jet& a, double s);
    friend Jet operator/(double s, const Jet& a);
    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }

    /// Nonnegative integer power by repeated squaring; exact truncation.
    Jet pow_nat(int exponent) const;
    Jet reciprocal() const;

    friend Jet exp(const Jet& a);
    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet ln(const Jet& a);

private:
    Jet(const JetLayout* layout) : layout_(layout), c_(layout->count, 0.0) {}

    /// Truncated power-series composition g(a) given g^{(m)}(a0)/m! in dcoef.
    Jet composed(std::span<const double> dcoef) const;
    static const JetLayout* common_layout(const Jet& a, const Jet& b);

    const JetLayout* layout_ = nullptr;
    std::vector<double> c_;
};

} // namespace scl
