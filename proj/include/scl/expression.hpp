#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scl/jet.hpp"

namespace scl {

/// Syntax error with the 0-based offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    size_t position;
};

/// Per-run cap on requested jet orders, settable from configuration.
int jet_order_cap();
void set_jet_order_cap(int cap);

/// Immutable coefficient-function tree over chart coordinates x1..xN
/// (1-based in the source grammar, 0-based indices internally). Evaluates
/// on scalars and on truncated Taylor jets of any requested order.
///
/// Grammar:  expr   := term (('+'|'-') term)*
///           term   := factor (('*'|'/') factor)*
///           factor := '-' factor | base ('^' natural)?
///           base   := number | ident | '(' expr ')' | func '(' expr ')'
///           ident  := 'x' natural      func := exp | sin | cos | ln
class Expression {
public:
    Expression() = default;

    static Expression parse(std::string_view source, int dim);
    static Expression constant(double value, int dim = 1);
    static Expression variable(int index, int dim);

    int dim() const { return dim_; }

    double eval(std::span<const double> point) const;
    /// Jet whose coefficients are the Taylor coefficients at `point` up to
    /// `order`; exact for polynomial and rational trees away from poles.
    Jet eval_jet(std::span<const double> point, int order) const;
    /// Unrestricted variant for internal towers that need headroom beyond
    /// the per-run cap (e.g. potential-mode connections).
    Jet eval_jet_unchecked(std::span<const double> point, int order) const;
    /// The plain partial derivative d^alpha at `point`.
    double partial(std::span<const double> point, std::span<const int> alpha) const;

    friend Expression operator+(Expression a, Expression b);
    friend Expression operator-(Expression a, Expression b);
    friend Expression operator*(Expression a, Expression b);
    friend Expression operator/(Expression a, Expression b);
    Expression pow(int exponent) const;
    friend Expression exp(Expression a);
    friend Expression sin(Expression a);
    friend Expression cos(Expression a);
    friend Expression ln(Expression a);

private:
    enum class Kind : uint8_t { Constant, Variable, Add, Sub, Mul, Div, Pow, Call };
    enum class Func : uint8_t { Exp, Sin, Cos, Ln };

    struct Node {
        Kind kind;
        Func fn = Func::Exp;
        double value = 0.0; // Constant payload
        int var = -1;       // Variable payload
        int lhs = -1;
        int rhs = -1;
        int exponent = 0; // Pow payload
    };

    template <typename T, typename MakeLeaf>
    T eval_node(int node, const MakeLeaf& leaf) const;

    int add_node(Node n);
    static Expression combine(Kind kind, Expression a, Expression b);
    Expression apply(Func fn) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    int dim_ = 0;

    friend class ExprParser;
};

} // namespace scl
