#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldual {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& name)
        : Error("unknown symbol '" + name + "'"), symbol(name) {}
    std::string symbol;
};

class UnknownFunction : public Error {
public:
    UnknownFunction(const std::string& name, std::size_t off)
        : Error("unknown function '" + name + "' at offset " + std::to_string(off)),
          function(name), offset(off) {}
    std::string function;
    std::size_t offset;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// offset is 1-based: the position of the offending character, or size()+1 at end of input
class ParseError : public Error {
public:
    ParseError(std::size_t off, std::set<std::string> exp, const std::string& detail);
    std::size_t offset;
    std::set<std::string> expected;
};

class SingularJacobian : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string field;
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diags);
    std::vector<Diagnostic> diagnostics;
};

}  // namespace ldual
