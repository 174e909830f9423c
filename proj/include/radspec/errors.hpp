#pragma once

#include <stdexcept>
#include <string>

namespace radspec {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A Mie-type potential with b >= 0 has no bound states.
class no_bound_state_error : public domain_error {
public:
    using domain_error::domain_error;
};

class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature or eigensolver failure. The message carries diagnostics.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace radspec
