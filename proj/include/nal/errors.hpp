#ifndef NAL_ERRORS_HPP
#define NAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nal {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& msg = "zero denominator")
        : Error(msg) {}
};

struct ZeroDivide : Error {
    explicit ZeroDivide(const std::string& msg = "division by zero") : Error(msg) {}
};

// Two distinct radicands met in one arithmetic context.
struct MixedRadicals : Error {
    explicit MixedRadicals(const std::string& msg) : Error(msg) {}
};

// A t-coefficient whose vanishing depends on parameter values that the
// declared constraints do not settle.  Carries the offending coefficient.
struct IndeterminateValuation : Error {
    std::string coefficient;
    explicit IndeterminateValuation(const std::string& coeff)
        : Error("indeterminate valuation: coefficient " + coeff +
                " may vanish for special parameter values"),
          coefficient(coeff) {}
};

struct IndeterminateRank : Error {
    std::string discriminant;
    explicit IndeterminateRank(const std::string& disc)
        : Error("indeterminate rank: minor " + disc +
                " may vanish for special parameter values"),
          discriminant(disc) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "singular matrix") : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg = "dimension mismatch")
        : Error(msg) {}
};

struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& msg) : Error(msg) {}
};

struct NotACocycle : Error {
    explicit NotACocycle(const std::string& msg = "theta is not a cocycle")
        : Error(msg) {}
};

struct UnknownName : Error {
    explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};

struct UnknownTheorem : Error {
    explicit UnknownTheorem(const std::string& id) : Error("unknown theorem: " + id) {}
};

struct UnsupportedConditionShape : Error {
    explicit UnsupportedConditionShape(const std::string& msg) : Error(msg) {}
};

struct AllSamplesDegenerate : Error {
    explicit AllSamplesDegenerate(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" +
                std::to_string(col_) + ": " + msg),
          line(line_), column(col_) {}
};

} // namespace nal

#endif
