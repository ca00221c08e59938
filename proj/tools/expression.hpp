#pragma once

#include <memory>
#include <string>

namespace calogero::cli {

// f(x) from a small arithmetic language: numbers, x, pi, + - * / ^, unary minus,
// parentheses and exp sin cos sqrt ln
class Expression {
public:
    explicit Expression(const std::string& text);  // throws InputError with the column
    double operator()(double x) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace calogero::cli
