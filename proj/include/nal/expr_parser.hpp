#ifndef NAL_EXPR_PARSER_HPP
#define NAL_EXPR_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include "nal/scalar.hpp"

namespace nal {

/// Recursive-descent parser for the expression grammar shared by catalog
/// files and the CLI: integers, p/q, i, t, parameter identifiers,
/// + - * / ^, sqrt(...), parentheses.  Whitespace-insensitive.
///
/// Identifiers must be declared up front; unknown ones raise ParseError.
class ExprParser {
public:
    ExprParser(std::string text, std::map<std::string, int> idents,
               int line_offset = 1);

    /// Parse the whole text as one scalar expression.
    Scalar parse_scalar();

    /// Parse the whole text as a vector expression over basis e1..edim:
    /// sum of terms each containing exactly one basis factor.
    std::vector<Scalar> parse_vector(int dim);

private:
    struct Token {
        enum Kind { Int, Ident, Basis, Sym, End } kind;
        std::string text;
        int basis_index = 0;
        int line, col;
    };

    Token next_token();
    Token peek();
    Token get();
    void expect_sym(const std::string& s);
    [[noreturn]] void fail(const std::string& msg, const Token& at) const;

    Scalar parse_sum();
    Scalar parse_product();
    Scalar parse_factor();
    Scalar parse_atom();

    void vector_sum(int dim, std::vector<Scalar>* out);

    std::string text_;
    size_t pos_ = 0;
    int line_, col_ = 1;
    std::map<std::string, int> idents_;
    bool have_peek_ = false;
    Token peeked_;
};

/// Convenience: parse `text` with the given identifier table.
Scalar parse_scalar_expr(const std::string& text,
                         const std::map<std::string, int>& idents);
std::vector<Scalar> parse_vector_expr(const std::string& text,
                                      const std::map<std::string, int>& idents,
                                      int dim);

} // namespace nal

#endif
