#include "sprd/analytic.hpp"

#include "sprd/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>

namespace sprd {

namespace {
enum class Op { Constant, Identity, Add, Sub, Mul, Div, Exp, Sin, Cos, Pow };
} // namespace

struct AnalyticFunction1D::Node {
    Op op;
    double value = 0.0; // Constant
    int exponent = 0;   // Pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

struct AnalyticFunction1D::Cache {
    std::mutex mutex;
    std::map<std::uint64_t, std::vector<double>> table; // x0 bits -> longest series
};

namespace {

using NodePtr = std::shared_ptr<const AnalyticFunction1D::Node>;
using Series = std::vector<double>;

Series convolve(const Series& a, const Series& b) {
    const std::size_t n = a.size();
    Series c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) acc += a[i] * b[k - i];
        c[k] = acc;
    }
    return c;
}

Series reciprocal(const Series& b) {
    if (b[0] == 0.0) throw DomainError("division pole inside the evaluation domain");
    const std::size_t n = b.size();
    Series q(n, 0.0);
    q[0] = 1.0 / b[0];
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) acc += q[i] * b[k - i];
        q[k] = -acc / b[0];
    }
    return q;
}

Series integer_power(Series base, int m) {
    const std::size_t n = base.size();
    if (m < 0) {
        base = reciprocal(base);
        m = -m;
    }
    Series out(n, 0.0);
    out[0] = 1.0;
    while (m > 0) {
        if (m & 1) out = convolve(out, base);
        base = convolve(base, base);
        m >>= 1;
    }
    return out;
}

} // namespace

AnalyticFunction1D::AnalyticFunction1D(std::shared_ptr<const Node> root)
    : root_(std::move(root)), cache_(std::make_shared<Cache>()) {}

AnalyticFunction1D AnalyticFunction1D::constant(double c) {
    auto node = std::make_shared<Node>();
    node->op = Op::Constant;
    node->value = c;
    return AnalyticFunction1D(node);
}

AnalyticFunction1D AnalyticFunction1D::identity() {
    auto node = std::make_shared<Node>();
    node->op = Op::Identity;
    return AnalyticFunction1D(node);
}

namespace {
NodePtr unary(Op op, NodePtr child) {
    auto node = std::make_shared<AnalyticFunction1D::Node>();
    node->op = op;
    node->lhs = std::move(child);
    return node;
}
NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<AnalyticFunction1D::Node>();
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}
} // namespace

AnalyticFunction1D operator+(const AnalyticFunction1D& a, const AnalyticFunction1D& b) {
    return AnalyticFunction1D(binary(Op::Add, a.root_, b.root_));
}
AnalyticFunction1D operator-(const AnalyticFunction1D& a, const AnalyticFunction1D& b) {
    return AnalyticFunction1D(binary(Op::Sub, a.root_, b.root_));
}
AnalyticFunction1D operator*(const AnalyticFunction1D& a, const AnalyticFunction1D& b) {
    return AnalyticFunction1D(binary(Op::Mul, a.root_, b.root_));
}
AnalyticFunction1D operator/(const AnalyticFunction1D& a, const AnalyticFunction1D& b) {
    return AnalyticFunction1D(binary(Op::Div, a.root_, b.root_));
}
AnalyticFunction1D AnalyticFunction1D::exp(const AnalyticFunction1D& a) {
    return AnalyticFunction1D(unary(Op::Exp, a.root_));
}
AnalyticFunction1D AnalyticFunction1D::sin(const AnalyticFunction1D& a) {
    return AnalyticFunction1D(unary(Op::Sin, a.root_));
}
AnalyticFunction1D AnalyticFunction1D::cos(const AnalyticFunction1D& a) {
    return AnalyticFunction1D(unary(Op::Cos, a.root_));
}
AnalyticFunction1D AnalyticFunction1D::pow(const AnalyticFunction1D& a, int exponent) {
    auto node = std::make_shared<Node>();
    node->op = Op::Pow;
    node->exponent = exponent;
    node->lhs = a.root_;
    return AnalyticFunction1D(node);
}

namespace {

double eval_node(const AnalyticFunction1D::Node& n, double x) {
    switch (n.op) {
    case Op::Constant: return n.value;
    case Op::Identity: return x;
    case Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::Div: {
        const double denom = eval_node(*n.rhs, x);
        if (denom == 0.0) throw DomainError("division pole at evaluation point");
        return eval_node(*n.lhs, x) / denom;
    }
    case Op::Exp: return std::exp(eval_node(*n.lhs, x));
    case Op::Sin: return std::sin(eval_node(*n.lhs, x));
    case Op::Cos: return std::cos(eval_node(*n.lhs, x));
    case Op::Pow: {
        const double base = eval_node(*n.lhs, x);
        if (n.exponent < 0 && base == 0.0) throw DomainError("pole of negative power");
        double out = 1.0, b = base;
        int m = std::abs(n.exponent);
        while (m > 0) {
            if (m & 1) out *= b;
            b *= b;
            m >>= 1;
        }
        return n.exponent < 0 ? 1.0 / out : out;
    }
    }
    throw Error("unreachable expression kind");
}

// Taylor-mode propagation: every rule fills order k from orders <= k only,
// so a longer computation is a bitwise extension of a shorter one.
Series taylor_node(const AnalyticFunction1D::Node& n, double x0, int order) {
    const std::size_t len = static_cast<std::size_t>(order) + 1;
    switch (n.op) {
    case Op::Constant: {
        Series a(len, 0.0);
        a[0] = n.value;
        return a;
    }
    case Op::Identity: {
        Series a(len, 0.0);
        a[0] = x0;
        if (order >= 1) a[1] = 1.0;
        return a;
    }
    case Op::Add: {
        Series a = taylor_node(*n.lhs, x0, order);
        const Series b = taylor_node(*n.rhs, x0, order);
        for (std::size_t k = 0; k < len; ++k) a[k] += b[k];
        return a;
    }
    case Op::Sub: {
        Series a = taylor_node(*n.lhs, x0, order);
        const Series b = taylor_node(*n.rhs, x0, order);
        for (std::size_t k = 0; k < len; ++k) a[k] -= b[k];
        return a;
    }
    case Op::Mul:
        return convolve(taylor_node(*n.lhs, x0, order), taylor_node(*n.rhs, x0, order));
    case Op::Div:
        return convolve(taylor_node(*n.lhs, x0, order), reciprocal(taylor_node(*n.rhs, x0, order)));
    case Op::Exp: {
        const Series a = taylor_node(*n.lhs, x0, order);
        Series e(len, 0.0);
        e[0] = std::exp(a[0]);
        for (std::size_t k = 1; k < len; ++k) {
            double acc = 0.0;
            for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
            e[k] = acc / static_cast<double>(k);
        }
        return e;
    }
    case Op::Sin:
    case Op::Cos: {
        const Series a = taylor_node(*n.lhs, x0, order);
        Series s(len, 0.0), c(len, 0.0);
        s[0] = std::sin(a[0]);
        c[0] = std::cos(a[0]);
        for (std::size_t k = 1; k < len; ++k) {
            double accs = 0.0, accc = 0.0;
            for (std::size_t j = 1; j <= k; ++j) {
                const double ja = static_cast<double>(j) * a[j];
                accs += ja * c[k - j];
                accc += ja * s[k - j];
            }
            s[k] = accs / static_cast<double>(k);
            c[k] = -accc / static_cast<double>(k);
        }
        return n.op == Op::Sin ? s : c;
    }
    case Op::Pow:
        return integer_power(taylor_node(*n.lhs, x0, order), n.exponent);
    }
    throw Error("unreachable expression kind");
}

Interval make_interval(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

Interval interval_node(const AnalyticFunction1D::Node& n, Interval x) {
    switch (n.op) {
    case Op::Constant: return {n.value, n.value};
    case Op::Identity: return x;
    case Op::Add: {
        const Interval a = interval_node(*n.lhs, x), b = interval_node(*n.rhs, x);
        return {a.lo + b.lo, a.hi + b.hi};
    }
    case Op::Sub: {
        const Interval a = interval_node(*n.lhs, x), b = interval_node(*n.rhs, x);
        return {a.lo - b.hi, a.hi - b.lo};
    }
    case Op::Mul: {
        const Interval a = interval_node(*n.lhs, x), b = interval_node(*n.rhs, x);
        const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    case Op::Div: {
        const Interval a = interval_node(*n.lhs, x), b = interval_node(*n.rhs, x);
        if (b.lo <= 0.0 && b.hi >= 0.0) return {-HUGE_VAL, HUGE_VAL};
        const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    case Op::Exp: {
        const Interval a = interval_node(*n.lhs, x);
        return {std::exp(a.lo), std::exp(a.hi)};
    }
    case Op::Sin:
    case Op::Cos:
        return {-1.0, 1.0};
    case Op::Pow: {
        const Interval a = interval_node(*n.lhs, x);
        const int m = n.exponent;
        if (m == 0) return {1.0, 1.0};
        if (m < 0) {
            if (a.lo <= 0.0 && a.hi >= 0.0) return {-HUGE_VAL, HUGE_VAL};
            Interval r = make_interval(std::pow(a.lo, m), std::pow(a.hi, m));
            return r;
        }
        Interval r = make_interval(std::pow(a.lo, m), std::pow(a.hi, m));
        if (m % 2 == 0 && a.lo < 0.0 && a.hi > 0.0) r.lo = 0.0;
        return r;
    }
    }
    throw Error("unreachable expression kind");
}

void print_node(const AnalyticFunction1D::Node& n, std::ostringstream& out) {
    switch (n.op) {
    case Op::Constant: out << n.value; return;
    case Op::Identity: out << 'x'; return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        const char* sym = n.op == Op::Add ? " + " : n.op == Op::Sub ? " - "
                          : n.op == Op::Mul ? " * " : " / ";
        out << '(';
        print_node(*n.lhs, out);
        out << sym;
        print_node(*n.rhs, out);
        out << ')';
        return;
    }
    case Op::Exp:
    case Op::Sin:
    case Op::Cos: {
        out << (n.op == Op::Exp ? "exp(" : n.op == Op::Sin ? "sin(" : "cos(");
        print_node(*n.lhs, out);
        out << ')';
        return;
    }
    case Op::Pow:
        out << "pow(";
        print_node(*n.lhs, out);
        out << ", " << n.exponent << ')';
        return;
    }
}

} // namespace

double AnalyticFunction1D::eval(double x) const { return eval_node(*root_, x); }

std::vector<double> AnalyticFunction1D::taylor_coeffs(double x0, int order) const {
    if (order < 0) throw DomainError("taylor_coeffs: negative order");
    if (x0 < 0.0 || x0 > 1.0) throw DomainError("taylor_coeffs: expansion point outside [0, 1]");
    if (order > order_cap_) throw CapacityError("taylor_coeffs: order above configured cap");
    const std::uint64_t key = std::bit_cast<std::uint64_t>(x0);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->table.find(key);
        if (it != cache_->table.end() && it->second.size() > static_cast<std::size_t>(order))
            return std::vector<double>(it->second.begin(), it->second.begin() + order + 1);
    }
    Series series = taylor_node(*root_, x0, order);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto& slot = cache_->table[key];
        if (slot.size() < series.size()) slot = series;
    }
    return series;
}

double AnalyticFunction1D::derivative(double x0, int n) const {
    const std::vector<double> coeffs = taylor_coeffs(x0, n);
    long double factorial = 1.0L;
    for (int k = 2; k <= n; ++k) factorial *= k;
    return static_cast<double>(coeffs[static_cast<std::size_t>(n)] * factorial);
}

Interval AnalyticFunction1D::range_enclosure(double lo, double hi) const {
    return interval_node(*root_, {lo, hi});
}

std::string AnalyticFunction1D::to_string() const {
    std::ostringstream out;
    print_node(*root_, out);
    return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    int parse_integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer exponent");
        return std::stoi(std::string(text.substr(start, pos - start)));
    }

    AnalyticFunction1D parse_expr() {
        AnalyticFunction1D value = parse_term();
        for (;;) {
            if (eat('+'))
                value = value + parse_term();
            else if (eat('-'))
                value = value - parse_term();
            else
                return value;
        }
    }

    AnalyticFunction1D parse_term() {
        AnalyticFunction1D value = parse_factor();
        for (;;) {
            if (eat('*'))
                value = value * parse_factor();
            else if (eat('/'))
                value = value / parse_factor();
            else
                return value;
        }
    }

    AnalyticFunction1D parse_factor() {
        if (eat('-')) return AnalyticFunction1D::constant(0.0) - parse_factor();
        AnalyticFunction1D value = parse_atom();
        if (eat('^')) value = AnalyticFunction1D::pow(value, parse_integer());
        return value;
    }

    AnalyticFunction1D parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text.data() + pos;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos += static_cast<std::size_t>(end - begin);
            return AnalyticFunction1D::constant(v);
        }
        if (c == '(') {
            ++pos;
            AnalyticFunction1D inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
            const std::string_view name = text.substr(start, pos - start);
            if (name == "x") return AnalyticFunction1D::identity();
            if (name == "pow") {
                if (!eat('(')) fail("expected '(' after pow");
                AnalyticFunction1D base = parse_expr();
                if (!eat(',')) fail("expected ',' in pow");
                const int exponent = parse_integer();
                if (!eat(')')) fail("expected ')'");
                return AnalyticFunction1D::pow(base, exponent);
            }
            if (name == "exp" || name == "sin" || name == "cos") {
                if (!eat('(')) fail("expected '(' after function name");
                AnalyticFunction1D inner = parse_expr();
                if (!eat(')')) fail("expected ')'");
                if (name == "exp") return AnalyticFunction1D::exp(inner);
                if (name == "sin") return AnalyticFunction1D::sin(inner);
                return AnalyticFunction1D::cos(inner);
            }
            fail("unknown identifier '" + std::string(name) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

AnalyticFunction1D AnalyticFunction1D::parse(std::string_view text) {
    Parser parser{text};
    AnalyticFunction1D value = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input after expression");
    return value;
}

// ---------------------------------------------------------------------------
// Analyticity fit

AnalyticityReport validate_analyticity(const AnalyticFunction1D& f, int N, int sample_count,
                                       int derivative_shift) {
    if (N < 2) throw DomainError("validate_analyticity: need N >= 2");
    if (sample_count < 8) throw DomainError("validate_analyticity: need at least 8 samples");
    if (derivative_shift < 0) throw DomainError("validate_analyticity: negative shift");

    const int top_order = N + derivative_shift;
    std::vector<double> log_factorial(static_cast<std::size_t>(top_order) + 1, 0.0);
    for (int k = 2; k <= top_order; ++k)
        log_factorial[static_cast<std::size_t>(k)] =
            log_factorial[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));

    AnalyticityReport report;
    report.orders_checked = N;
    report.sup_derivative.assign(static_cast<std::size_t>(N) + 1, 0.0);

    for (int i = 0; i < sample_count; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(sample_count - 1);
        const std::vector<double> coeffs = f.taylor_coeffs(x, top_order);
        for (int n = 0; n <= N; ++n) {
            const int m = n + derivative_shift;
            const double deriv =
                coeffs[static_cast<std::size_t>(m)] * std::exp(log_factorial[static_cast<std::size_t>(m)]);
            if (!std::isfinite(deriv))
                throw Error("validate_analyticity: non-finite derivative value at sample");
            report.sup_derivative[static_cast<std::size_t>(n)] =
                std::max(report.sup_derivative[static_cast<std::size_t>(n)], std::abs(deriv));
        }
    }

    double C = report.sup_derivative[0];
    if (C == 0.0) {
        // sup |f| vanished on the grid; fall back to the largest scaled derivative.
        for (int n = 1; n <= N; ++n)
            C = std::max(C, report.sup_derivative[static_cast<std::size_t>(n)] *
                                std::exp(-log_factorial[static_cast<std::size_t>(n)]));
    }
    report.C_fit = C;

    double gamma = 0.0;
    if (C > 0.0) {
        for (int n = 1; n <= N; ++n) {
            const double sup = report.sup_derivative[static_cast<std::size_t>(n)];
            if (sup == 0.0) continue;
            const double log_gamma_n =
                (std::log(sup) - std::log(C) - log_factorial[static_cast<std::size_t>(n)]) / n;
            gamma = std::max(gamma, std::exp(log_gamma_n));
        }
    }
    report.gamma_fit = gamma;

    double max_ratio = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double sup = report.sup_derivative[static_cast<std::size_t>(n)];
        if (sup == 0.0) continue;
        const double log_bound = std::log(C) + (n > 0 ? n * std::log(gamma) : 0.0) +
                                 log_factorial[static_cast<std::size_t>(n)];
        max_ratio = std::max(max_ratio, std::exp(std::log(sup) - log_bound));
    }
    report.max_ratio = max_ratio;
    return report;
}

} // namespace sprd
