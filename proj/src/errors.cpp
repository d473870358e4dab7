#include "legendre_dual/errors.hpp"

namespace ldual {

namespace {

std::string joinExpected(const std::set<std::string>& exp) {
    std::string s;
    for (const auto& e : exp) {
        if (!s.empty()) s += ", ";
        s += "'" + e + "'";
    }
    return s;
}

std::string joinDiagnostics(const std::vector<Diagnostic>& diags) {
    std::string s = "scenario validation failed:";
    for (const auto& d : diags) {
        if (d.severity != Diagnostic::Severity::Error) continue;
        s += "\n  ";
        if (!d.field.empty()) s += d.field + ": ";
        s += d.message;
    }
    return s;
}

}  // namespace

ParseError::ParseError(std::size_t off, std::set<std::string> exp, const std::string& detail)
    : Error("parse error at offset " + std::to_string(off) + ": " + detail +
            (exp.empty() ? std::string() : " (expected " + joinExpected(exp) + ")")),
      offset(off),
      expected(std::move(exp)) {}

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : Error(joinDiagnostics(diags)), diagnostics(std::move(diags)) {}

}  // namespace ldual
