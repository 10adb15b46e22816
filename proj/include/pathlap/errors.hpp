#pragma once

#include <stdexcept>
#include <string>

namespace pathlap {

// Malformed input text (edge lists, XYZ files, precedence tables).
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit parse_error(const std::string& what) : std::runtime_error(what), line_(0) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A configurable resource cap was exceeded (e.g. allowed-path count).
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Missing or invalid configuration (e.g. an unscored atom label).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A structural guarantee of the computation was violated; always a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace pathlap
