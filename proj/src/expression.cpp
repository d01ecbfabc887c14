#include "orthoplex/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "orthoplex/quadrature.hpp"

namespace orthoplex {

namespace {

using Kind = ExprNode::Kind;

ExprPtr make(Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

ExprPtr make_const(double v) {
    auto node = std::make_shared<ExprNode>();
    node->kind = Kind::Constant;
    node->value = v;
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw expr_parse_error(message, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+'))
                e = make(Kind::Add, e, term());
            else if (eat('-'))
                e = make(Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*'))
                e = make(Kind::Mul, e, unary());
            else if (eat('/'))
                e = make(Kind::Div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        skip_ws();
        if (peek() == '-') {
            // A '-' directly followed by a number literal is a signed
            // constant (so printed negative constants round-trip); any other
            // operand gets the 0 - x form.
            const std::size_t next = pos_ + 1;
            const bool numeric = next < text_.size() &&
                                 (std::isdigit(static_cast<unsigned char>(text_[next])) ||
                                  text_[next] == '.');
            if (!numeric) {
                ++pos_;
                return make(Kind::Sub, make_const(0.0), unary());
            }
            return power();
        }
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (!eat('^')) return base;
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("integer exponent expected after '^'");
        long e = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, e);
        auto node = std::make_shared<ExprNode>();
        node->kind = Kind::Pow;
        node->exponent = neg ? -e : e;
        node->lhs = base;
        return node;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) fail("malformed number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return make_const(v);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "m") return make(Kind::Var);
        Kind kind;
        if (name == "exp")
            kind = Kind::Exp;
        else if (name == "ln")
            kind = Kind::Ln;
        else if (name == "cos")
            kind = Kind::Cos;
        else if (name == "abs")
            kind = Kind::Abs;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!eat('(')) fail("'(' expected after function name");
        ExprPtr arg = expr();
        if (!eat(')')) fail("')' expected");
        return make(kind, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_rec(const ExprPtr& node, std::ostream& os) {
    switch (node->kind) {
        case Kind::Constant: {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), node->value,
                                           std::chars_format::general, 17);
            os.write(buf, ptr - buf);
            (void)ec;
            break;
        }
        case Kind::Var:
            os << 'm';
            break;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            const char op = node->kind == Kind::Add   ? '+'
                            : node->kind == Kind::Sub ? '-'
                            : node->kind == Kind::Mul ? '*'
                                                      : '/';
            os << '(';
            print_rec(node->lhs, os);
            os << op;
            print_rec(node->rhs, os);
            os << ')';
            break;
        }
        case Kind::Pow:
            os << '(';
            print_rec(node->lhs, os);
            os << '^';
            if (node->exponent < 0) os << '-';
            os << std::abs(node->exponent);
            os << ')';
            break;
        case Kind::Exp:
        case Kind::Ln:
        case Kind::Cos:
        case Kind::Abs: {
            const char* name = node->kind == Kind::Exp  ? "exp"
                               : node->kind == Kind::Ln ? "ln"
                               : node->kind == Kind::Cos ? "cos"
                                                         : "abs";
            os << name << '(';
            print_rec(node->lhs, os);
            os << ')';
            break;
        }
    }
}

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string print_expression(const ExprPtr& ast) {
    std::ostringstream os;
    print_rec(ast, os);
    return os.str();
}

double eval_expression(const ExprPtr& ast, double m) {
    switch (ast->kind) {
        case Kind::Constant:
            return ast->value;
        case Kind::Var:
            return m;
        case Kind::Add:
            return eval_expression(ast->lhs, m) + eval_expression(ast->rhs, m);
        case Kind::Sub:
            return eval_expression(ast->lhs, m) - eval_expression(ast->rhs, m);
        case Kind::Mul:
            return eval_expression(ast->lhs, m) * eval_expression(ast->rhs, m);
        case Kind::Div: {
            const double denom = eval_expression(ast->rhs, m);
            if (denom == 0.0) throw std::domain_error("expression: division by zero");
            return eval_expression(ast->lhs, m) / denom;
        }
        case Kind::Pow: {
            const double base = eval_expression(ast->lhs, m);
            if (ast->exponent < 0) {
                if (base == 0.0) throw std::domain_error("expression: zero to negative power");
                return 1.0 / powi(base, -ast->exponent);
            }
            return powi(base, ast->exponent);
        }
        case Kind::Exp:
            return std::exp(eval_expression(ast->lhs, m));
        case Kind::Ln: {
            const double arg = eval_expression(ast->lhs, m);
            if (!(arg > 0.0)) throw std::domain_error("expression: ln of non-positive value");
            return std::log(arg);
        }
        case Kind::Cos:
            return std::cos(eval_expression(ast->lhs, m));
        case Kind::Abs:
            return std::abs(eval_expression(ast->lhs, m));
    }
    throw std::logic_error("expression: unreachable node kind");
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Constant:
            return a->value == b->value;
        case Kind::Var:
            return true;
        case Kind::Pow:
            return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
        case Kind::Exp:
        case Kind::Ln:
        case Kind::Cos:
        case Kind::Abs:
            return expr_equal(a->lhs, b->lhs);
        default:
            return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

}  // namespace orthoplex
