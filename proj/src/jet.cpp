#include "scl/jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace scl {

namespace {

// Graded-lex enumeration of multi-indices of total degree exactly d.
void enumerate_degree(int nvars, int d, int var, std::array<uint8_t, kMaxJetVars>& cur,
                      std::vector<std::array<uint8_t, kMaxJetVars>>& out) {
    if (var == nvars - 1) {
        cur[var] = static_cast<uint8_t>(d);
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[var] = static_cast<uint8_t>(e);
        enumerate_degree(nvars, d - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

} // namespace

JetLayout::JetLayout(int nv, int ord) : nvars(nv), order(ord) {
    if (nv < 1 || nv > kMaxJetVars) throw EvalError("jet variable count out of range");
    if (ord < 0 || ord > kMaxJetOrder) throw EvalError("jet order out of range");
    degree_offset.resize(ord + 2, 0);
    std::array<uint8_t, kMaxJetVars> cur{};
    for (int d = 0; d <= ord; ++d) {
        degree_offset[d] = static_cast<int>(exponents.size());
        enumerate_degree(nv, d, 0, cur, exponents);
    }
    count = static_cast<int>(exponents.size());
    degree_offset[ord + 1] = count;

    product.assign(static_cast<size_t>(count) * count, npos);
    std::map<std::array<uint8_t, kMaxJetVars>, uint32_t> index;
    for (int p = 0; p < count; ++p) index[exponents[p]] = static_cast<uint32_t>(p);
    for (int i = 0; i < count; ++i) {
        const int di = degree_of(i);
        for (int j = 0; j < count && degree_of(j) + di <= ord; ++j) {
            std::array<uint8_t, kMaxJetVars> sum{};
            for (int v = 0; v < nv; ++v)
                sum[v] = static_cast<uint8_t>(exponents[i][v] + exponents[j][v]);
            product[static_cast<size_t>(i) * count + j] = index.at(sum);
        }
    }
}

int JetLayout::degree_of(int pos) const {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += exponents[pos][v];
    return d;
}

int JetLayout::position(std::span<const int> alpha) const {
    std::array<uint8_t, kMaxJetVars> key{};
    int total = 0;
    for (size_t v = 0; v < alpha.size(); ++v) {
        if (alpha[v] < 0) return -1;
        key[v] = static_cast<uint8_t>(alpha[v]);
        total += alpha[v];
    }
    if (total > order) return -1;
    // binary search within the degree block (entries are lex-descending)
    const int lo = degree_offset[total], hi = degree_offset[total + 1];
    for (int p = lo; p < hi; ++p)
        if (exponents[p] == key) return p;
    return -1;
}

const JetLayout& JetLayout::get(int nvars, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[{nvars, order}];
    if (!slot) slot.reset(new JetLayout(nvars, order));
    return *slot;
}

Jet Jet::constant(int nvars, int order, double value) {
    Jet j(&JetLayout::get(nvars, order));
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int nvars, int order, double value, int index) {
    Jet j(&JetLayout::get(nvars, order));
    j.c_[0] = value;
    if (order >= 1) {
        if (index < 0 || index >= nvars) throw EvalError("jet variable index out of range");
        std::vector<int> alpha(nvars, 0);
        alpha[index] = 1;
        j.c_[j.layout_->position(alpha)] = 1.0;
    }
    return j;
}

double Jet::coefficient(std::span<const int> alpha) const {
    const int p = layout_->position(alpha);
    if (p < 0) throw EvalError("multi-index outside stored jet order");
    return c_[p];
}

double Jet::partial(std::span<const int> alpha) const {
    double fact = 1.0;
    for (int a : alpha)
        for (int k = 2; k <= a; ++k) fact *= k;
    return fact * coefficient(alpha);
}

Jet Jet::truncated(int new_order) const {
    if (new_order >= order()) return *this;
    Jet out(&JetLayout::get(nvars(), new_order));
    std::copy(c_.begin(), c_.begin() + out.layout_->count, out.c_.begin());
    return out;
}

Jet Jet::derivative(int var) const {
    if (order() == 0) throw EvalError("cannot differentiate an order-0 jet");
    const auto& in = *layout_;
    Jet out(&JetLayout::get(nvars(), order() - 1));
    std::vector<int> alpha(nvars());
    for (int p = 0; p < out.layout_->count; ++p) {
        for (int v = 0; v < nvars(); ++v) alpha[v] = out.layout_->exponents[p][v];
        alpha[var] += 1;
        const int q = in.position(alpha);
        out.c_[p] = c_[q] * alpha[var];
    }
    return out;
}

Jet Jet::extended(int new_nvars, std::span<const int> var_map) const {
    Jet out(&JetLayout::get(new_nvars, order()));
    std::vector<int> alpha(new_nvars, 0);
    for (int p = 0; p < layout_->count; ++p) {
        if (c_[p] == 0.0) continue;
        std::fill(alpha.begin(), alpha.end(), 0);
        for (int v = 0; v < nvars(); ++v) alpha[var_map[v]] = layout_->exponents[p][v];
        out.c_[out.layout_->position(alpha)] = c_[p];
    }
    return out;
}

Jet Jet::restricted(int new_nvars, std::span<const int> keep) const {
    Jet out(&JetLayout::get(new_nvars, order()));
    std::vector<int> alpha(nvars(), 0);
    for (int p = 0; p < out.layout_->count; ++p) {
        std::fill(alpha.begin(), alpha.end(), 0);
        for (int v = 0; v < new_nvars; ++v) alpha[keep[v]] = out.layout_->exponents[p][v];
        out.c_[p] = c_[layout_->position(alpha)];
    }
    return out;
}

const JetLayout* Jet::common_layout(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars()) throw EvalError("jet variable counts differ");
    return &JetLayout::get(a.nvars(), std::min(a.order(), b.order()));
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (double& x : out.c_) x = -x;
    return out;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet out(Jet::common_layout(a, b));
    for (int p = 0; p < out.layout_->count; ++p) out.c_[p] = a.c_[p] + b.c_[p];
    return out;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet out(Jet::common_layout(a, b));
    for (int p = 0; p < out.layout_->count; ++p) out.c_[p] = a.c_[p] - b.c_[p];
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    const JetLayout* lay = Jet::common_layout(a, b);
    Jet out(lay);
    const int n = lay->count;
    const int order = lay->order;
    for (int i = 0; i < n; ++i) {
        const double ai = a.c_[i];
        if (ai == 0.0) continue;
        const int remaining = order - lay->degree_of(i);
        const int jmax = lay->degree_offset[remaining + 1];
        const uint32_t* row = lay->product.data() + static_cast<size_t>(i) * n;
        for (int j = 0; j < jmax; ++j) out.c_[row[j]] += ai * b.c_[j];
    }
    return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

Jet operator+(const Jet& a, double s) {
    Jet out = a;
    out.c_[0] += s;
    return out;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, double s) {
    Jet out = a;
    for (double& x : out.c_) x *= s;
    return out;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
    if (s == 0.0) throw EvalError("division by zero");
    return a * (1.0 / s);
}
Jet operator/(double s, const Jet& a) { return a.reciprocal() * s; }

Jet Jet::composed(std::span<const double> dcoef) const {
    // g(a) = sum_m dcoef[m] * w^m with w the nilpotent part of a.
    Jet w = *this;
    w.c_[0] = 0.0;
    Jet acc = Jet::constant(nvars(), order(), dcoef[0]);
    Jet wpow = w;
    for (int m = 1; m <= order(); ++m) {
        acc = acc + wpow * dcoef[m];
        if (m < order()) wpow = wpow * w;
    }
    return acc;
}

Jet Jet::pow_nat(int exponent) const {
    if (exponent < 0) throw EvalError("negative integer power on jet");
    Jet acc = Jet::constant(nvars(), order(), 1.0);
    Jet base = *this;
    int e = exponent;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Jet Jet::reciprocal() const {
    const double u0 = c_[0];
    if (u0 == 0.0) throw EvalError("division by zero");
    std::vector<double> d(order() + 1);
    double g = 1.0 / u0;
    for (int m = 0; m <= order(); ++m) {
        d[m] = g;
        g *= -1.0 / u0;
    }
    return composed(d);
}

Jet exp(const Jet& a) {
    const double e0 = std::exp(a.value());
    std::vector<double> d(a.order() + 1);
    double fact = 1.0;
    for (int m = 0; m <= a.order(); ++m) {
        if (m > 0) fact *= m;
        d[m] = e0 / fact;
    }
    return a.composed(d);
}

Jet sin(const Jet& a) {
    const double s0 = std::sin(a.value()), c0 = std::cos(a.value());
    const double cycle[4] = {s0, c0, -s0, -c0};
    std::vector<double> d(a.order() + 1);
    double fact = 1.0;
    for (int m = 0; m <= a.order(); ++m) {
        if (m > 0) fact *= m;
        d[m] = cycle[m % 4] / fact;
    }
    return a.composed(d);
}

Jet cos(const Jet& a) {
    const double s0 = std::sin(a.value()), c0 = std::cos(a.value());
    const double cycle[4] = {c0, -s0, -c0, s0};
    std::vector<double> d(a.order() + 1);
    double fact = 1.0;
    for (int m = 0; m <= a.order(); ++m) {
        if (m > 0) fact *= m;
        d[m] = cycle[m % 4] / fact;
    }
    return a.composed(d);
}

Jet ln(const Jet& a) {
    const double u0 = a.value();
    if (u0 <= 0.0) throw EvalError("log of nonpositive value");
    std::vector<double> d(a.order() + 1);
    d[0] = std::log(u0);
    // d^m ln / m! at u0 = (-1)^{m+1} / (m * u0^m)
    double upow = 1.0;
    for (int m = 1; m <= a.order(); ++m) {
        upow *= u0;
        d[m] = ((m % 2 == 1) ? 1.0 : -1.0) / (m * upow);
    }
    return a.composed(d);
}

} // namespace scl
