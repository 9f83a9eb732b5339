#pragma once

#include <stdexcept>
#include <string>

namespace locmerge {

class MalformedUrlError : public std::runtime_error {
public:
    explicit MalformedUrlError(const std::string& url)
        : std::runtime_error("malformed url: \"" + url + "\"") {}
};

class BudgetTooSmallError : public std::invalid_argument {
public:
    BudgetTooSmallError(long long total, long long n)
        : std::invalid_argument("budget " + std::to_string(total) +
                                " is below the locale count " + std::to_string(n)) {}
};

class InvalidWeightError : public std::invalid_argument {
public:
    explicit InvalidWeightError(long long weight)
        : std::invalid_argument("locale weight must be >= 1, got " + std::to_string(weight)) {}
};

// Thrown when a prompt template names a field the projection does not carry.
class MissingFieldError : public std::runtime_error {
public:
    explicit MissingFieldError(const std::string& field)
        : std::runtime_error("template references field \"" + field +
                             "\" which is not present in the projection") {}
};

class TemplateSyntaxError : public std::runtime_error {
public:
    explicit TemplateSyntaxError(const std::string& what)
        : std::runtime_error("template syntax error: " + what) {}
};

class FixtureError : public std::runtime_error {
public:
    explicit FixtureError(const std::string& what)
        : std::runtime_error("fixture error: " + what) {}
};

} // namespace locmerge
