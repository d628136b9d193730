#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hhcert/expr.hpp"

namespace hhcert::funcspec {

// One function under study: f and/or its derivative f', behind a uniform
// evaluation interface. Either slot may be absent; operations that need
// the missing one raise InputError at the call site.
struct FunctionSpec {
    std::function<double(double)> f;       // empty when not supplied
    std::function<double(double)> fprime;  // empty when not supplied
    std::string label;
    std::vector<std::string> warnings;  // filled by construction-time checks

    bool has_f() const { return static_cast<bool>(f); }
    bool has_fprime() const { return static_cast<bool>(fprime); }
};

// Built-in family f(x) = c*x^s/s, f'(x) = c*x^(s-1) on x > 0, with
// 0 < s < 1 and c > 0. c = 1 is the reference member; c scales the
// derivative magnitude without disturbing its shape.
FunctionSpec builtin_power_s(double s, double c);

// Builds a FunctionSpec from expression strings (either may be absent,
// not both). When both are given, f' is cross-checked against a central
// finite difference of f on a fixed grid in [0.05, 1]; disagreement
// beyond 1e-4 relative appends a warning (never an error).
FunctionSpec from_expressions(const std::optional<std::string>& f_src,
                              const std::optional<std::string>& fprime_src);

}  // namespace hhcert::funcspec
