#include "nal/expr_parser.hpp"

#include <cctype>

#include "nal/errors.hpp"

namespace nal {

ExprParser::ExprParser(std::string text, std::map<std::string, int> idents,
                       int line_offset)
    : text_(std::move(text)), line_(line_offset), idents_(std::move(idents)) {}

ExprParser::Token ExprParser::next_token() {
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '\n') { ++line_; col_ = 1; ++pos_; continue; }
        if (std::isspace(static_cast<unsigned char>(c))) { ++pos_; ++col_; continue; }
        if (c == '#') {  // comment to end of line
            while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            continue;
        }
        break;
    }
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) { t.kind = Token::End; return t; }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_; ++col_;
        }
        t.kind = Token::Int;
        t.text = text_.substr(start, pos_ - start);
        return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_; ++col_;
        }
        t.text = text_.substr(start, pos_ - start);
        if (t.text.size() >= 2 && t.text[0] == 'e' &&
            t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
            t.kind = Token::Basis;
            t.basis_index = std::stoi(t.text.substr(1));
            return t;
        }
        t.kind = Token::Ident;
        return t;
    }
    t.kind = Token::Sym;
    t.text = std::string(1, c);
    ++pos_; ++col_;
    return t;
}

ExprParser::Token ExprParser::peek() {
    if (!have_peek_) {
        peeked_ = next_token();
        have_peek_ = true;
    }
    return peeked_;
}

ExprParser::Token ExprParser::get() {
    Token t = peek();
    have_peek_ = false;
    return t;
}

void ExprParser::expect_sym(const std::string& s) {
    Token t = get();
    if (t.kind != Token::Sym || t.text != s)
        fail("expected '" + s + "'", t);
}

void ExprParser::fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
}

Scalar ExprParser::parse_scalar() {
    Scalar s = parse_sum();
    Token t = get();
    if (t.kind != Token::End) fail("unexpected trailing input '" + t.text + "'", t);
    return s;
}

Scalar ExprParser::parse_sum() {
    Scalar acc = parse_product();
    while (true) {
        Token t = peek();
        if (t.kind == Token::Sym && (t.text == "+" || t.text == "-")) {
            get();
            Scalar rhs = parse_product();
            acc = (t.text == "+") ? acc + rhs : acc - rhs;
        } else {
            return acc;
        }
    }
}

Scalar ExprParser::parse_product() {
    Scalar acc = parse_factor();
    while (true) {
        Token t = peek();
        if (t.kind == Token::Sym && (t.text == "*" || t.text == "/")) {
            get();
            Scalar rhs = parse_factor();
            if (t.text == "*") acc *= rhs;
            else acc /= rhs;
        } else {
            return acc;
        }
    }
}

Scalar ExprParser::parse_factor() {
    Token t = peek();
    if (t.kind == Token::Sym && (t.text == "-" || t.text == "+")) {
        get();
        Scalar f = parse_factor();
        return t.text == "-" ? -f : f;
    }
    Scalar atom = parse_atom();
    t = peek();
    if (t.kind == Token::Sym && t.text == "^") {
        get();
        Token e = get();
        bool neg = false;
        bool parens = false;
        if (e.kind == Token::Sym && e.text == "(") { parens = true; e = get(); }
        if (e.kind == Token::Sym && e.text == "-") { neg = true; e = get(); }
        if (e.kind != Token::Int) fail("expected integer exponent", e);
        int exp = std::stoi(e.text);
        if (parens) expect_sym(")");
        return atom.pow(neg ? -exp : exp);
    }
    return atom;
}

Scalar ExprParser::parse_atom() {
    Token t = get();
    if (t.kind == Token::Int) {
        return Scalar(GQ(mpq_class(t.text)));
    }
    if (t.kind == Token::Sym && t.text == "(") {
        Scalar s = parse_sum();
        expect_sym(")");
        return s;
    }
    if (t.kind == Token::Ident) {
        if (t.text == "i") return Scalar::i();
        if (t.text == "t") return Scalar::t();
        if (t.text == "sqrt") {
            expect_sym("(");
            Scalar arg = parse_sum();
            expect_sym(")");
            return Scalar::sqrt(arg);
        }
        auto it = idents_.find(t.text);
        if (it == idents_.end())
            fail("unknown identifier '" + t.text + "'", t);
        return Scalar::variable(it->second);
    }
    if (t.kind == Token::Basis)
        fail("basis vector '" + t.text + "' in scalar context", t);
    fail("unexpected token '" + t.text + "'", t);
}

void ExprParser::vector_sum(int dim, std::vector<Scalar>* out) {
    out->assign(static_cast<size_t>(dim), Scalar());
    bool first = true;
    while (true) {
        int sign = 1;
        Token t = peek();
        if (t.kind == Token::Sym && (t.text == "+" || t.text == "-")) {
            get();
            sign = (t.text == "-") ? -1 : 1;
        } else if (!first) {
            return;
        }
        first = false;
        // one additive term: product of factors, exactly one of them a basis vector
        Scalar coeff(1);
        int basis = -1;
        bool saw_factor = false;
        bool expect_operand = true;
        while (true) {
            Token p = peek();
            if (expect_operand || (p.kind == Token::Sym && (p.text == "*" || p.text == "/"))) {
                bool dividing = false;
                if (!expect_operand) {
                    get();
                    dividing = (p.text == "/");
                    p = peek();
                }
                if (p.kind == Token::Basis) {
                    get();
                    if (dividing) fail("cannot divide by a basis vector", p);
                    if (basis != -1)
                        fail("product of basis vectors in a vector expression", p);
                    if (p.basis_index < 1 || p.basis_index > dim)
                        fail("basis index out of range: " + p.text, p);
                    basis = p.basis_index;
                    // optional power on the basis vector is not allowed
                } else {
                    Scalar f = parse_factor();
                    coeff = dividing ? coeff / f : coeff * f;
                }
                saw_factor = true;
                expect_operand = false;
            } else {
                break;
            }
        }
        if (!saw_factor) fail("empty term in vector expression", peek());
        if (basis == -1) {
            if (coeff.is_zero()) continue;  // "0" term
            Token here = peek();
            throw ParseError("scalar term in vector context", here.line, here.col);
        }
        Scalar signed_coeff = (sign < 0) ? -coeff : coeff;
        (*out)[static_cast<size_t>(basis - 1)] += signed_coeff;
    }
}

std::vector<Scalar> ExprParser::parse_vector(int dim) {
    std::vector<Scalar> v;
    vector_sum(dim, &v);
    Token t = get();
    if (t.kind != Token::End) fail("unexpected trailing input '" + t.text + "'", t);
    return v;
}

Scalar parse_scalar_expr(const std::string& text,
                         const std::map<std::string, int>& idents) {
    return ExprParser(text, idents).parse_scalar();
}

std::vector<Scalar> parse_vector_expr(const std::string& text,
                                      const std::map<std::string, int>& idents,
                                      int dim) {
    return ExprParser(text, idents).parse_vector(dim);
}

} // namespace nal
