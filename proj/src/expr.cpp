#include "hhcert/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "hhcert/errors.hpp"

namespace hhcert::expr {

Expr Expr::make_number(double v) {
    if (!std::isfinite(v)) throw DomainError("Expr: constants must be finite");
    Expr e;
    e.kind_ = Kind::number;
    e.number_ = v;
    return e;
}

Expr Expr::make_variable() {
    Expr e;
    e.kind_ = Kind::variable;
    return e;
}

Expr Expr::make_negate(Expr c) {
    Expr e;
    e.kind_ = Kind::negate;
    e.kids_.push_back(std::make_shared<const Expr>(std::move(c)));
    return e;
}

Expr Expr::make_binary(char op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind_ = Kind::binary;
    e.op_ = op;
    e.kids_.push_back(std::make_shared<const Expr>(std::move(lhs)));
    e.kids_.push_back(std::make_shared<const Expr>(std::move(rhs)));
    return e;
}

Expr Expr::make_call(std::string func, Expr arg) {
    Expr e;
    e.kind_ = Kind::call;
    e.func_ = std::move(func);
    e.kids_.push_back(std::make_shared<const Expr>(std::move(arg)));
    return e;
}

namespace {

bool is_known_func(const std::string& name) {
    return name == "exp" || name == "ln" || name == "abs" || name == "sqrt";
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    Expr run() {
        Expr e = parse_expr(0);
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError(pos_, "end of input or an operator");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    static constexpr int kMaxDepth = 512;

    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
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

    void check_depth(int depth) {
        if (depth > kMaxDepth) throw SyntaxError(pos_, "shallower nesting");
    }

    Expr parse_expr(int depth) {
        check_depth(depth);
        Expr lhs = parse_term(depth + 1);
        for (;;) {
            if (eat('+'))
                lhs = Expr::make_binary('+', std::move(lhs),
                                        parse_term(depth + 1));
            else if (eat('-'))
                lhs = Expr::make_binary('-', std::move(lhs),
                                        parse_term(depth + 1));
            else
                return lhs;
        }
    }

    Expr parse_term(int depth) {
        check_depth(depth);
        Expr lhs = parse_factor(depth + 1);
        for (;;) {
            if (eat('*'))
                lhs = Expr::make_binary('*', std::move(lhs),
                                        parse_factor(depth + 1));
            else if (eat('/'))
                lhs = Expr::make_binary('/', std::move(lhs),
                                        parse_factor(depth + 1));
            else
                return lhs;
        }
    }

    Expr parse_factor(int depth) {
        check_depth(depth);
        if (eat('-')) return Expr::make_negate(parse_power(depth + 1));
        return parse_power(depth + 1);
    }

    Expr parse_power(int depth) {
        check_depth(depth);
        Expr base = parse_primary(depth + 1);
        if (eat('^'))
            return Expr::make_binary('^', std::move(base),
                                     parse_factor(depth + 1));
        return base;
    }

    Expr parse_primary(int depth) {
        check_depth(depth);
        skip_ws();
        if (pos_ >= src_.size())
            throw SyntaxError(pos_, "a number, 'x', a function call, or '('");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_ident(depth);
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr(depth + 1);
            if (!eat(')')) throw SyntaxError(pos_, "')'");
            return inner;
        }
        throw SyntaxError(pos_, "a number, 'x', a function call, or '('");
    }

    Expr parse_number() {
        // Decimal mantissa with optional exponent; from_chars rejects
        // hex and locale-dependent forms, and the caller guarantees the
        // first character is a digit or '.'.
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) ||
                src_[end] == '.'))
            ++end;
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[e]))) {
                ++e;
                while (e < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[e])))
                    ++e;
                end = e;
            }
        }
        double value = 0.0;
        const auto res =
            std::from_chars(src_.data() + start, src_.data() + end, value);
        if (res.ec != std::errc{} || res.ptr != src_.data() + end ||
            !std::isfinite(value))
            throw SyntaxError(start, "a finite decimal number");
        pos_ = end;
        return Expr::make_number(value);
    }

    Expr parse_ident(int depth) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);
        if (name == "x") return Expr::make_variable();
        if (!is_known_func(name))
            throw SyntaxError(start, "'x' or one of exp, ln, abs, sqrt");
        if (!eat('(')) throw SyntaxError(pos_, "'(' after function name");
        Expr arg = parse_expr(depth + 1);
        if (!eat(')')) throw SyntaxError(pos_, "')'");
        return Expr::make_call(name, std::move(arg));
    }
};

double require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw EvalError(std::string("eval: non-finite result of ") + what);
    return v;
}

}  // namespace

Expr parse(const std::string& src) {
    if (src.empty()) throw SyntaxError(0, "a non-empty expression");
    return Parser(src).run();
}

double eval(const Expr& e, double x) {
    switch (e.kind()) {
        case Expr::Kind::number:
            return e.number();
        case Expr::Kind::variable:
            if (!std::isfinite(x)) throw EvalError("eval: x must be finite");
            return x;
        case Expr::Kind::negate:
            return -eval(e.child(0), x);
        case Expr::Kind::binary: {
            const double a = eval(e.child(0), x);
            const double b = eval(e.child(1), x);
            switch (e.op()) {
                case '+':
                    return require_finite(a + b, "'+'");
                case '-':
                    return require_finite(a - b, "'-'");
                case '*':
                    return require_finite(a * b, "'*'");
                case '/':
                    if (b == 0.0) throw EvalError("eval: division by zero");
                    return require_finite(a / b, "'/'");
                case '^':
                    return require_finite(std::pow(a, b), "'^'");
            }
            throw EvalError("eval: unknown operator");
        }
        case Expr::Kind::call: {
            const double a = eval(e.child(0), x);
            if (e.func() == "exp") return require_finite(std::exp(a), "exp");
            if (e.func() == "ln") {
                if (!(a > 0.0))
                    throw EvalError("eval: ln of non-positive value");
                return require_finite(std::log(a), "ln");
            }
            if (e.func() == "abs") return std::fabs(a);
            if (e.func() == "sqrt") {
                if (a < 0.0)
                    throw EvalError("eval: sqrt of negative value");
                return require_finite(std::sqrt(a), "sqrt");
            }
            throw EvalError("eval: unknown function " + e.func());
        }
    }
    throw EvalError("eval: corrupt expression node");
}

std::string to_string(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.number());
            return buf;
        }
        case Expr::Kind::variable:
            return "x";
        case Expr::Kind::negate:
            return "(-" + to_string(e.child(0)) + ")";
        case Expr::Kind::binary:
            return "(" + to_string(e.child(0)) + e.op() +
                   to_string(e.child(1)) + ")";
        case Expr::Kind::call:
            return e.func() + "(" + to_string(e.child(0)) + ")";
    }
    return "";
}

}  // namespace hhcert::expr
