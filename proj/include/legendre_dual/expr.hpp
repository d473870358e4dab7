#pragma once

// Scalar expressions over the coordinate namespaces x1..xm, chi1..chim,
// y1..yr and p1..pr, evaluable on doubles and on any jet type.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "legendre_dual/errors.hpp"
#include "legendre_dual/jet.hpp"

namespace ldual {

enum class NodeKind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Log, Sin, Cos, Sqrt, Pow };
enum class Space { X, Chi, Y, P, Unknown };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Number;
    double number = 0.0;
    std::string name;               // Symbol
    Space space = Space::Unknown;   // Symbol
    int index = -1;                 // Symbol, 0-based
    Func func = Func::Exp;          // Call
    bool constant = true;           // no symbol in this subtree
    std::vector<NodePtr> kids;
};

NodePtr makeNumber(double v);
NodePtr makeSymbol(const std::string& name);
NodePtr makeUnary(NodePtr a);  // negation
NodePtr makeBinary(NodeKind k, NodePtr a, NodePtr b);
NodePtr makeCall(Func f, std::vector<NodePtr> args);

const char* funcName(Func f);
int funcArity(Func f);

// Splits "y12" into (Y, 11); anything off-convention gives (Unknown, -1).
std::pair<Space, int> classifySymbol(const std::string& name);
std::string symbolName(Space s, int index);

bool structurallyEqual(const Node& a, const Node& b);

struct ScalarField {
    NodePtr ast;
    std::set<std::string> freeSymbols;

    bool isConstant() const { return ast->constant; }
};

ScalarField fromAst(NodePtr ast);
ScalarField constantField(double v);
ScalarField parse(std::string_view text);
std::string prettyPrint(const Node& n);
inline std::string prettyPrint(const ScalarField& f) { return prettyPrint(*f.ast); }

// ---- evaluation ----

template <class S>
struct Env {
    const S* x = nullptr;
    int nx = 0;
    const S* chi = nullptr;
    int nchi = 0;
    const S* y = nullptr;
    int ny = 0;
    const S* p = nullptr;
    int np = 0;
};

template <class S>
S evaluate(const Node& n, const Env<S>& env);

namespace detail {

template <class S>
const S& lookup(const Node& n, const Env<S>& env) {
    const S* base = nullptr;
    int count = 0;
    switch (n.space) {
        case Space::X: base = env.x; count = env.nx; break;
        case Space::Chi: base = env.chi; count = env.nchi; break;
        case Space::Y: base = env.y; count = env.ny; break;
        case Space::P: base = env.p; count = env.np; break;
        case Space::Unknown: break;
    }
    if (!base || n.index < 0 || n.index >= count) throw UnknownSymbol(n.name);
    return base[n.index];
}

inline double divide(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
}
template <class S>
S divide(const S& a, const S& b) {
    return a / b;
}

template <class S>
S power(const Node& base, const Node& expo, const Env<S>& env) {
    S a = evaluate(base, env);
    if (expo.constant) {
        double c = evaluate(expo, Env<double>{});
        return jpow(a, c);
    }
    S b = evaluate(expo, env);
    if (!(primal(a) > 0.0)) throw DomainError("variable exponent requires a positive base");
    return jexp(b * jlog(a));
}

}  // namespace detail

template <class S>
S evaluate(const Node& n, const Env<S>& env) {
    switch (n.kind) {
        case NodeKind::Number: return S(n.number);
        case NodeKind::Symbol: return detail::lookup(n, env);
        case NodeKind::Neg: return -evaluate(*n.kids[0], env);
        case NodeKind::Add: return evaluate(*n.kids[0], env) + evaluate(*n.kids[1], env);
        case NodeKind::Sub: return evaluate(*n.kids[0], env) - evaluate(*n.kids[1], env);
        case NodeKind::Mul: return evaluate(*n.kids[0], env) * evaluate(*n.kids[1], env);
        case NodeKind::Div: return detail::divide(evaluate(*n.kids[0], env), evaluate(*n.kids[1], env));
        case NodeKind::Pow: return detail::power(*n.kids[0], *n.kids[1], env);
        case NodeKind::Call:
            switch (n.func) {
                case Func::Exp: return jexp(evaluate(*n.kids[0], env));
                case Func::Log: return jlog(evaluate(*n.kids[0], env));
                case Func::Sin: return jsin(evaluate(*n.kids[0], env));
                case Func::Cos: return jcos(evaluate(*n.kids[0], env));
                case Func::Sqrt: return jsqrt(evaluate(*n.kids[0], env));
                case Func::Pow: return detail::power(*n.kids[0], *n.kids[1], env);
            }
    }
    throw Error("malformed expression node");
}

template <class S>
S evaluate(const ScalarField& f, const Env<S>& env) {
    return evaluate(*f.ast, env);
}

// Named-coordinate convenience: every name in `point` is bound; names in
// `active` become jet variables in the order given.
Jet2 evalJet2(const ScalarField& f, const std::map<std::string, double>& point,
              const std::vector<std::string>& active);
Jet2 evaluateNamed(const ScalarField& f, const std::map<std::string, Jet2>& env);

// ---- validation ----

struct Dims {
    int m = 0;
    int p = 0;
    int r = 0;
};

// Checks namespace discipline and index ranges of one field. `role` names the
// quantity in messages, e.g. "Lagrangian".
std::vector<Diagnostic> validateField(const std::string& key, const std::string& role, const ScalarField& f,
                                      const std::set<Space>& allowed, const Dims& dims);

const char* spaceDescription(Space s);

}  // namespace ldual
