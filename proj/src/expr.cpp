#include "geomhh/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <utility>
#include <vector>

namespace geomhh::expr {

namespace {

bool is_constant(const ExprNode& e) {
    return e.kind == NodeKind::Number;
}

double apply_unary(NodeKind kind, double v) {
    switch (kind) {
    case NodeKind::Negate: return -v;
    case NodeKind::Ln: return std::log(v);
    case NodeKind::Exp: return std::exp(v);
    case NodeKind::Sqrt: return std::sqrt(v);
    case NodeKind::Abs: return std::fabs(v);
    default: throw Error("not a unary node kind");
    }
}

double apply_binary(NodeKind kind, double a, double b) {
    switch (kind) {
    case NodeKind::Add: return a + b;
    case NodeKind::Sub: return a - b;
    case NodeKind::Mul: return a * b;
    case NodeKind::Div: return a / b;
    case NodeKind::Pow: return std::pow(a, b);
    default: throw Error("not a binary node kind");
    }
}

} // namespace

ExprPtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Number;
    n->value = v;
    return n;
}

ExprPtr make_variable() {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Variable;
    return n;
}

ExprPtr make_parameter(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Parameter;
    n->name = std::move(name);
    return n;
}

ExprPtr make_unary(NodeKind kind, ExprPtr child) {
    if (is_constant(*child)) {
        double v = apply_unary(kind, child->value);
        if (std::isfinite(v)) return make_number(v);
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(child);
    return n;
}

ExprPtr make_binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs) {
    if (is_constant(*lhs) && is_constant(*rhs)) {
        double v = apply_binary(kind, lhs->value, rhs->value);
        if (std::isfinite(v)) return make_number(v);
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

// ---------------------------------------------------------------------------
// Lexer + recursive-descent parser
// ---------------------------------------------------------------------------

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    double value = 0.0;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) return {TokKind::End, 0.0, "", start};
        char c = src_[pos_];
        switch (c) {
        case '+': ++pos_; return {TokKind::Plus, 0.0, "+", start};
        case '-': ++pos_; return {TokKind::Minus, 0.0, "-", start};
        case '*': ++pos_; return {TokKind::Star, 0.0, "*", start};
        case '/': ++pos_; return {TokKind::Slash, 0.0, "/", start};
        case '^': ++pos_; return {TokKind::Caret, 0.0, "^", start};
        case '(': ++pos_; return {TokKind::LParen, 0.0, "(", start};
        case ')': ++pos_; return {TokKind::RParen, 0.0, ")", start};
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {TokKind::Ident, 0.0, std::string(src_.substr(start, pos_ - start)), start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    Token lex_number(std::size_t start) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw ParseError("expected digit after decimal point", pos_);
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // "2e" is the number 2 followed by identifier e
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        return {TokKind::Number, std::strtod(text.c_str(), nullptr), text, start};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

const char* kFunctions[] = {"ln", "exp", "sqrt", "abs"};

bool is_function_name(const std::string& name) {
    for (const char* f : kFunctions)
        if (name == f) return true;
    return false;
}

NodeKind function_kind(const std::string& name) {
    if (name == "ln") return NodeKind::Ln;
    if (name == "exp") return NodeKind::Exp;
    if (name == "sqrt") return NodeKind::Sqrt;
    return NodeKind::Abs;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        if (tok_.kind != TokKind::End)
            throw ParseError("unexpected trailing input", tok_.offset);
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    bool accept(TokKind k) {
        if (tok_.kind == k) {
            advance();
            return true;
        }
        return false;
    }

    void expect(TokKind k, const char* what) {
        if (tok_.kind != k) throw ParseError(std::string("expected ") + what, tok_.offset);
        advance();
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept(TokKind::Plus)) lhs = make_binary(NodeKind::Add, lhs, parse_term());
            else if (accept(TokKind::Minus)) lhs = make_binary(NodeKind::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept(TokKind::Star)) lhs = make_binary(NodeKind::Mul, lhs, parse_factor());
            else if (accept(TokKind::Slash)) lhs = make_binary(NodeKind::Div, lhs, parse_factor());
            else return lhs;
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_unary();
        if (accept(TokKind::Caret)) return make_binary(NodeKind::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_unary() {
        if (accept(TokKind::Minus)) return make_unary(NodeKind::Negate, parse_unary());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (tok_.kind == TokKind::Number) {
            double v = tok_.value;
            advance();
            return make_number(v);
        }
        if (tok_.kind == TokKind::Ident) {
            std::string name = tok_.text;
            std::size_t off = tok_.offset;
            advance();
            if (tok_.kind == TokKind::LParen) {
                if (!is_function_name(name))
                    throw ParseError("unknown function '" + name + "'", off);
                advance();
                ExprPtr arg = parse_expr();
                expect(TokKind::RParen, "')'");
                return make_unary(function_kind(name), arg);
            }
            if (name == "x") return make_variable();
            return make_parameter(name);
        }
        if (tok_.kind == TokKind::LParen) {
            advance();
            ExprPtr e = parse_expr();
            expect(TokKind::RParen, "')'");
            return e;
        }
        throw ParseError("expected number, identifier or '('", tok_.offset);
    }

    Lexer lexer_;
    Token tok_;
};

} // namespace

ExprPtr parse(std::string_view source) {
    if (source.empty()) throw ParseError("empty expression", 0);
    return Parser(source).parse_all();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double evaluate(const ExprNode& e, double x, const Bindings& bindings) {
    switch (e.kind) {
    case NodeKind::Number: return e.value;
    case NodeKind::Variable: return x;
    case NodeKind::Parameter: {
        auto it = bindings.find(e.name);
        if (it == bindings.end()) throw DomainError("unbound parameter '" + e.name + "'");
        return it->second;
    }
    case NodeKind::Negate: return -evaluate(*e.lhs, x, bindings);
    case NodeKind::Add: return evaluate(*e.lhs, x, bindings) + evaluate(*e.rhs, x, bindings);
    case NodeKind::Sub: return evaluate(*e.lhs, x, bindings) - evaluate(*e.rhs, x, bindings);
    case NodeKind::Mul: return evaluate(*e.lhs, x, bindings) * evaluate(*e.rhs, x, bindings);
    case NodeKind::Div: {
        double num = evaluate(*e.lhs, x, bindings);
        double den = evaluate(*e.rhs, x, bindings);
        if (den == 0.0) throw DomainError("division by zero");
        return num / den;
    }
    case NodeKind::Pow: {
        double base = evaluate(*e.lhs, x, bindings);
        double expo = evaluate(*e.rhs, x, bindings);
        if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power");
        double r = std::pow(base, expo);
        if (std::isnan(r)) throw DomainError("negative base raised to a non-integer power");
        return r;
    }
    case NodeKind::Ln: {
        double v = evaluate(*e.lhs, x, bindings);
        if (v <= 0.0) throw DomainError("ln of a non-positive value");
        return std::log(v);
    }
    case NodeKind::Exp: return std::exp(evaluate(*e.lhs, x, bindings));
    case NodeKind::Sqrt: {
        double v = evaluate(*e.lhs, x, bindings);
        if (v < 0.0) throw DomainError("sqrt of a negative value");
        return std::sqrt(v);
    }
    case NodeKind::Abs: return std::fabs(evaluate(*e.lhs, x, bindings));
    }
    throw Error("unreachable node kind");
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

bool contains_variable(const ExprNode& e) {
    if (e.kind == NodeKind::Variable) return true;
    if (e.lhs && contains_variable(*e.lhs)) return true;
    if (e.rhs && contains_variable(*e.rhs)) return true;
    return false;
}

namespace {

ExprPtr diff(const ExprPtr& e);

ExprPtr diff_pow(const ExprPtr& e) {
    const ExprPtr& base = e->lhs;
    const ExprPtr& expo = e->rhs;
    if (!contains_variable(*expo)) {
        // d(u^c) = c * u^(c-1) * u'
        ExprPtr cm1 = make_binary(NodeKind::Sub, expo, make_number(1.0));
        ExprPtr head = make_binary(NodeKind::Mul, expo, make_binary(NodeKind::Pow, base, cm1));
        return make_binary(NodeKind::Mul, head, diff(base));
    }
    // u^g with x-dependent g: differentiate exp(g*ln u).
    ExprPtr lnu = make_unary(NodeKind::Ln, base);
    ExprPtr rewritten = make_unary(NodeKind::Exp, make_binary(NodeKind::Mul, expo, lnu));
    ExprPtr inner = make_binary(
        NodeKind::Add,
        make_binary(NodeKind::Mul, diff(expo), lnu),
        make_binary(NodeKind::Mul, expo, make_binary(NodeKind::Div, diff(base), base)));
    return make_binary(NodeKind::Mul, rewritten, inner);
}

ExprPtr diff(const ExprPtr& e) {
    switch (e->kind) {
    case NodeKind::Number:
    case NodeKind::Parameter:
        return make_number(0.0);
    case NodeKind::Variable:
        return make_number(1.0);
    case NodeKind::Negate:
        return make_unary(NodeKind::Negate, diff(e->lhs));
    case NodeKind::Add:
        return make_binary(NodeKind::Add, diff(e->lhs), diff(e->rhs));
    case NodeKind::Sub:
        return make_binary(NodeKind::Sub, diff(e->lhs), diff(e->rhs));
    case NodeKind::Mul:
        return make_binary(NodeKind::Add,
                           make_binary(NodeKind::Mul, diff(e->lhs), e->rhs),
                           make_binary(NodeKind::Mul, e->lhs, diff(e->rhs)));
    case NodeKind::Div:
        return make_binary(
            NodeKind::Div,
            make_binary(NodeKind::Sub,
                        make_binary(NodeKind::Mul, diff(e->lhs), e->rhs),
                        make_binary(NodeKind::Mul, e->lhs, diff(e->rhs))),
            make_binary(NodeKind::Pow, e->rhs, make_number(2.0)));
    case NodeKind::Pow:
        return diff_pow(e);
    case NodeKind::Ln:
        return make_binary(NodeKind::Div, diff(e->lhs), e->lhs);
    case NodeKind::Exp:
        return make_binary(NodeKind::Mul, make_unary(NodeKind::Exp, e->lhs), diff(e->lhs));
    case NodeKind::Sqrt:
        return make_binary(
            NodeKind::Div, diff(e->lhs),
            make_binary(NodeKind::Mul, make_number(2.0), make_unary(NodeKind::Sqrt, e->lhs)));
    case NodeKind::Abs:
        // sign(u)*u' as u/|u|*u'; evaluation errors at u=0.
        return make_binary(NodeKind::Mul,
                           make_binary(NodeKind::Div, e->lhs, make_unary(NodeKind::Abs, e->lhs)),
                           diff(e->lhs));
    }
    throw Error("unreachable node kind");
}

} // namespace

ExprPtr differentiate(const ExprPtr& e) {
    return diff(e);
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace {

int precedence(NodeKind k) {
    switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
    }
}

bool is_binary(NodeKind k) {
    switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow: return true;
    default: return false;
    }
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const ExprNode& e, std::string& out);

void print_child(const ExprNode& child, bool parens, std::string& out) {
    if (parens) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const ExprNode& e, std::string& out) {
    switch (e.kind) {
    case NodeKind::Number: out += format_number(e.value); return;
    case NodeKind::Variable: out += 'x'; return;
    case NodeKind::Parameter: out += e.name; return;
    case NodeKind::Negate:
        out += '-';
        // The negated operand must re-parse as a unary, so anything that is
        // itself an operator application (including ^) gets parentheses.
        print_child(*e.lhs, is_binary(e.lhs->kind), out);
        return;
    case NodeKind::Ln: out += "ln"; break;
    case NodeKind::Exp: out += "exp"; break;
    case NodeKind::Sqrt: out += "sqrt"; break;
    case NodeKind::Abs: out += "abs"; break;
    default: break;
    }
    if (!is_binary(e.kind)) { // function application
        out += '(';
        print_node(*e.lhs, out);
        out += ')';
        return;
    }
    const char* op = nullptr;
    switch (e.kind) {
    case NodeKind::Add: op = "+"; break;
    case NodeKind::Sub: op = "-"; break;
    case NodeKind::Mul: op = "*"; break;
    case NodeKind::Div: op = "/"; break;
    case NodeKind::Pow: op = "^"; break;
    default: break;
    }
    int prec = precedence(e.kind);
    if (e.kind == NodeKind::Pow) {
        // Base must re-parse as a unary; exponent is a factor (right-assoc).
        print_child(*e.lhs, is_binary(e.lhs->kind), out);
        out += op;
        print_child(*e.rhs, precedence(e.rhs->kind) <= 2, out);
    } else {
        print_child(*e.lhs, precedence(e.lhs->kind) < prec, out);
        out += op;
        print_child(*e.rhs, precedence(e.rhs->kind) <= prec, out);
    }
}

} // namespace

std::string to_string(const ExprNode& e) {
    std::string out;
    print_node(e, out);
    return out;
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == NodeKind::Number)
        return std::memcmp(&a.value, &b.value, sizeof(double)) == 0;
    if (a.kind == NodeKind::Parameter && a.name != b.name) return false;
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FunctionHandle
// ---------------------------------------------------------------------------

FunctionHandle::FunctionHandle(std::string_view source, Bindings bindings, Interval domain)
    : source_(source), value_(parse(source)), derivative_(differentiate(value_)),
      bindings_(std::move(bindings)), domain_(domain) {}

FunctionHandle::FunctionHandle(std::string_view source, std::string_view derivative_source,
                               Bindings bindings, Interval domain)
    : source_(source), value_(parse(source)), derivative_(parse(derivative_source)),
      bindings_(std::move(bindings)), domain_(domain) {}

FunctionHandle::FunctionHandle(ExprPtr value_expr, ExprPtr derivative_expr, Bindings bindings,
                               Interval domain)
    : source_(to_string(*value_expr)), value_(std::move(value_expr)),
      derivative_(std::move(derivative_expr)), bindings_(std::move(bindings)),
      domain_(domain) {}

double FunctionHandle::value(double x) const {
    return evaluate(*value_, x, bindings_);
}

double FunctionHandle::derivative(double x) const {
    return evaluate(*derivative_, x, bindings_);
}

double FunctionHandle::positive_value(double x) const {
    double v = value(x);
    if (!(v > 0.0)) throw DomainError("function value must be strictly positive");
    return v;
}

} // namespace geomhh::expr
