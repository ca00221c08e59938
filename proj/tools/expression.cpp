#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/specialfn.hpp"

namespace calogero::cli {

struct Expression::Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodeP = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodeP leaf(Node::Kind k, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    return n;
}
NodeP op(Node::Kind k, NodeP a, NodeP b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

double ln(double v) { return std::log(v); }
double ex(double v) { return std::exp(v); }
double sn(double v) { return std::sin(v); }
double cs(double v) { return std::cos(v); }
double sq(double v) { return std::sqrt(v); }

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse() {
        NodeP n = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("expression, column " + std::to_string(i_ + 1) + ": " + what);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    NodeP sum() {
        NodeP n = product();
        for (;;) {
            if (eat('+'))
                n = op(Node::Add, n, product());
            else if (eat('-'))
                n = op(Node::Sub, n, product());
            else
                return n;
        }
    }
    NodeP product() {
        NodeP n = unary();
        for (;;) {
            if (eat('*'))
                n = op(Node::Mul, n, unary());
            else if (eat('/'))
                n = op(Node::Div, n, unary());
            else
                return n;
        }
    }
    // -x^2 is -(x^2)
    NodeP unary() {
        if (eat('-')) return op(Node::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    // right associative
    NodeP power() {
        NodeP n = atom();
        if (eat('^')) return op(Node::Pow, n, unary());
        return n;
    }
    NodeP atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            NodeP n = sum();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + i_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            i_ += std::size_t(end - begin);
            return leaf(Node::Num, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i_;
            while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
            const std::string name = s_.substr(start, i_ - start);
            if (name == "x") return leaf(Node::Var);
            if (name == "pi") return leaf(Node::Num, kPi);
            double (*fn)(double) = nullptr;
            if (name == "exp") fn = ex;
            else if (name == "sin") fn = sn;
            else if (name == "cos") fn = cs;
            else if (name == "sqrt") fn = sq;
            else if (name == "ln") fn = ln;
            if (!fn) {
                i_ = start;
                fail("unknown name '" + name + "'");
            }
            if (!eat('(')) fail("expected '(' after " + name);
            auto n = std::make_shared<Node>();
            n->kind = Node::Call;
            n->fn = fn;
            n->a = sum();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

double eval(const Node& n, double x) {
    switch (n.kind) {
        case Node::Num: return n.value;
        case Node::Var: return x;
        case Node::Neg: return -eval(*n.a, x);
        case Node::Add: return eval(*n.a, x) + eval(*n.b, x);
        case Node::Sub: return eval(*n.a, x) - eval(*n.b, x);
        case Node::Mul: return eval(*n.a, x) * eval(*n.b, x);
        case Node::Div: return eval(*n.a, x) / eval(*n.b, x);
        case Node::Pow: return std::pow(eval(*n.a, x), eval(*n.b, x));
        case Node::Call: return n.fn(eval(*n.a, x));
    }
    return 0.0;
}

}  // namespace

Expression::Expression(const std::string& text) : text_(text), root_(Parser(text_).parse()) {}

double Expression::operator()(double x) const { return eval(*root_, x); }

}  // namespace calogero::cli
