#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hhcert::expr {

// Immutable arithmetic expression in one variable x.
//
// Grammar (EBNF), also documented in the README:
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := ('-')? power
//   power   := primary ('^' factor)?
//   primary := number | 'x' | ident '(' expr ')' | '(' expr ')'
//
// '^' is right-associative; unary minus binds looser than '^', so
// "-x^2" parses as -(x^2). Functions: exp, ln, abs, sqrt. Numbers are
// decimal with an optional exponent part; no hex, no implicit
// multiplication.
class Expr {
public:
    enum class Kind { number, variable, negate, binary, call };

    Kind kind() const { return kind_; }
    double number() const { return number_; }
    char op() const { return op_; }                    // binary: + - * / ^
    const std::string& func() const { return func_; }  // call: exp ln abs sqrt
    const Expr& child(std::size_t i) const { return *kids_[i]; }
    std::size_t child_count() const { return kids_.size(); }

    static Expr make_number(double v);
    static Expr make_variable();
    static Expr make_negate(Expr e);
    static Expr make_binary(char op, Expr lhs, Expr rhs);
    static Expr make_call(std::string func, Expr arg);

private:
    Expr() = default;
    Kind kind_ = Kind::number;
    double number_ = 0.0;
    char op_ = 0;
    std::string func_;
    std::vector<std::shared_ptr<const Expr>> kids_;
};

// Parses src into an Expr; throws SyntaxError with the byte offset and
// the expected token class on malformed input. No partial results.
Expr parse(const std::string& src);

// Evaluates e at x; throws EvalError on ln of a non-positive value,
// division by zero, or any non-finite intermediate.
double eval(const Expr& e, double x);

// Fully parenthesized rendering; parse(to_string(e)) rebuilds the same
// tree and evaluates with the identical operation order.
std::string to_string(const Expr& e);

}  // namespace hhcert::expr
