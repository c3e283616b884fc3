#include "scl/expression.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace scl {

namespace {
std::atomic<int> g_jet_order_cap{kDefaultJetOrderCap};
}

int jet_order_cap() { return g_jet_order_cap.load(); }

void set_jet_order_cap(int cap) {
    if (cap < 1 || cap > kMaxJetOrder) throw EvalError("jet order cap out of range");
    g_jet_order_cap.store(cap);
}

// ---------------------------------------------------------------------------
// parsing

class ExprParser {
public:
    ExprParser(std::string_view src, int dim) : src_(src), dim_(dim) {}

    Expression run() {
        Expression e;
        e.dim_ = dim_;
        out_ = &e;
        e.root_ = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        out_ = nullptr;
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (consume('+'))
                lhs = node({Expression::Kind::Add, {}, 0, -1, lhs, parse_term()});
            else if (consume('-'))
                lhs = node({Expression::Kind::Sub, {}, 0, -1, lhs, parse_term()});
            else
                return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            if (consume('*'))
                lhs = node({Expression::Kind::Mul, {}, 0, -1, lhs, parse_factor()});
            else if (consume('/'))
                lhs = node({Expression::Kind::Div, {}, 0, -1, lhs, parse_factor()});
            else
                return lhs;
        }
    }

    int parse_factor() {
        if (consume('-')) {
            // unary minus, binding looser than '^'
            const int zero = node({Expression::Kind::Constant, {}, 0.0, -1, -1, -1});
            return node({Expression::Kind::Sub, {}, 0, -1, zero, parse_factor()});
        }
        int base = parse_base();
        if (consume('^')) {
            Expression::Node n{Expression::Kind::Pow, {}, 0, -1, base, -1};
            n.exponent = parse_natural("exponent");
            return node(n);
        }
        return base;
    }

    int parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            int e = parse_expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number() {
        const size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size()) throw ParseError("malformed number", start);
        return node({Expression::Kind::Constant, {}, v, -1, -1, -1});
    }

    int parse_natural(const char* what) {
        skip_ws();
        const size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(std::string("expected ") + what, pos_);
        return std::atoi(std::string(src_.substr(start, pos_ - start)).c_str());
    }

    int parse_ident() {
        const size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") {
            const size_t digits = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (pos_ == digits) throw ParseError("expected coordinate index after 'x'", pos_);
            const int one_based =
                std::atoi(std::string(src_.substr(digits, pos_ - digits)).c_str());
            if (one_based < 1 || one_based > dim_)
                throw ParseError("variable index out of range for dimension " +
                                     std::to_string(dim_),
                                 start);
            return node({Expression::Kind::Variable, {}, 0, one_based - 1, -1, -1});
        }
        Expression::Func fn;
        if (name == "exp")
            fn = Expression::Func::Exp;
        else if (name == "sin")
            fn = Expression::Func::Sin;
        else if (name == "cos")
            fn = Expression::Func::Cos;
        else if (name == "ln")
            fn = Expression::Func::Ln;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        int arg = parse_expr();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        Expression::Node n{Expression::Kind::Call, fn, 0, -1, arg, -1};
        return node(n);
    }

    int node(Expression::Node n) { return out_->add_node(n); }

    std::string_view src_;
    int dim_;
    size_t pos_ = 0;
    Expression* out_ = nullptr;
};

Expression Expression::parse(std::string_view source, int dim) {
    if (dim < 1) throw ParseError("dimension must be at least 1", 0);
    return ExprParser(source, dim).run();
}

int Expression::add_node(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

Expression Expression::constant(double value, int dim) {
    Expression e;
    e.dim_ = dim;
    e.root_ = e.add_node({Kind::Constant, {}, value, -1, -1, -1});
    return e;
}

Expression Expression::variable(int index, int dim) {
    if (index < 0 || index >= dim) throw ParseError("variable index out of range", 0);
    Expression e;
    e.dim_ = dim;
    e.root_ = e.add_node({Kind::Variable, {}, 0, index, -1, -1});
    return e;
}

Expression Expression::combine(Kind kind, Expression a, Expression b) {
    const int off = static_cast<int>(a.nodes_.size());
    for (Node n : b.nodes_) {
        if (n.lhs >= 0) n.lhs += off;
        if (n.rhs >= 0) n.rhs += off;
        a.nodes_.push_back(n);
    }
    const int rhs_root = b.root_ + off;
    a.dim_ = std::max(a.dim_, b.dim_);
    a.root_ = a.add_node({kind, {}, 0, -1, a.root_, rhs_root});
    return a;
}

Expression operator+(Expression a, Expression b) {
    return Expression::combine(Expression::Kind::Add, std::move(a), std::move(b));
}
Expression operator-(Expression a, Expression b) {
    return Expression::combine(Expression::Kind::Sub, std::move(a), std::move(b));
}
Expression operator*(Expression a, Expression b) {
    return Expression::combine(Expression::Kind::Mul, std::move(a), std::move(b));
}
Expression operator/(Expression a, Expression b) {
    return Expression::combine(Expression::Kind::Div, std::move(a), std::move(b));
}

Expression Expression::pow(int exponent) const {
    if (exponent < 0) throw ParseError("negative exponent", 0);
    Expression e = *this;
    Node n{Kind::Pow, {}, 0, -1, e.root_, -1};
    n.exponent = exponent;
    e.root_ = e.add_node(n);
    return e;
}

Expression Expression::apply(Func fn) const {
    Expression e = *this;
    e.root_ = e.add_node({Kind::Call, fn, 0, -1, e.root_, -1});
    return e;
}

Expression exp(Expression a) { return a.apply(Expression::Func::Exp); }
Expression sin(Expression a) { return a.apply(Expression::Func::Sin); }
Expression cos(Expression a) { return a.apply(Expression::Func::Cos); }
Expression ln(Expression a) { return a.apply(Expression::Func::Ln); }

// ---------------------------------------------------------------------------
// evaluation

template <typename T, typename MakeLeaf>
T Expression::eval_node(int idx, const MakeLeaf& leaf) const {
    const Node& n = nodes_[idx];
    switch (n.kind) {
        case Kind::Constant:
            return leaf(n.value, -1);
        case Kind::Variable:
            return leaf(0.0, n.var);
        case Kind::Add:
            return eval_node<T>(n.lhs, leaf) + eval_node<T>(n.rhs, leaf);
        case Kind::Sub:
            return eval_node<T>(n.lhs, leaf) - eval_node<T>(n.rhs, leaf);
        case Kind::Mul:
            return eval_node<T>(n.lhs, leaf) * eval_node<T>(n.rhs, leaf);
        case Kind::Div: {
            T num = eval_node<T>(n.lhs, leaf);
            T den = eval_node<T>(n.rhs, leaf);
            if constexpr (std::is_same_v<T, double>) {
                if (den == 0.0) throw EvalError("division by zero");
            }
            return num / den;
        }
        case Kind::Pow: {
            T base = eval_node<T>(n.lhs, leaf);
            if constexpr (std::is_same_v<T, double>) {
                double acc = 1.0;
                for (int k = 0; k < n.exponent; ++k) acc *= base;
                return acc;
            } else {
                return base.pow_nat(n.exponent);
            }
        }
        case Kind::Call: {
            T arg = eval_node<T>(n.lhs, leaf);
            switch (n.fn) {
                case Func::Exp:
                    if constexpr (std::is_same_v<T, double>)
                        return std::exp(arg);
                    else
                        return exp(arg);
                case Func::Sin:
                    if constexpr (std::is_same_v<T, double>)
                        return std::sin(arg);
                    else
                        return sin(arg);
                case Func::Cos:
                    if constexpr (std::is_same_v<T, double>)
                        return std::cos(arg);
                    else
                        return cos(arg);
                case Func::Ln:
                    if constexpr (std::is_same_v<T, double>) {
                        if (arg <= 0.0) throw EvalError("log of nonpositive value");
                        return std::log(arg);
                    } else {
                        return ln(arg);
                    }
            }
        }
    }
    throw EvalError("corrupt expression tree");
}

double Expression::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) < dim_) throw EvalError("point dimension too small");
    return eval_node<double>(root_, [&](double v, int var) -> double {
        return var < 0 ? v : point[var];
    });
}

Jet Expression::eval_jet_unchecked(std::span<const double> point, int order) const {
    if (static_cast<int>(point.size()) < dim_) throw EvalError("point dimension too small");
    const int nv = dim_;
    return eval_node<Jet>(root_, [&](double v, int var) -> Jet {
        if (var < 0) return Jet::constant(nv, order, v);
        return Jet::variable(nv, order, point[var], var);
    });
}

Jet Expression::eval_jet(std::span<const double> point, int order) const {
    if (order < 0 || order > jet_order_cap())
        throw EvalError("requested jet order exceeds configured cap of " +
                        std::to_string(jet_order_cap()));
    return eval_jet_unchecked(point, order);
}

double Expression::partial(std::span<const double> point, std::span<const int> alpha) const {
    int total = 0;
    for (int a : alpha) total += a;
    return eval_jet(point, total).partial(alpha);
}

} // namespace scl
