#include "legendre_dual/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace ldual {

namespace {

std::shared_ptr<Node> blank(NodeKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

}  // namespace

NodePtr makeNumber(double v) {
    auto n = blank(NodeKind::Number);
    n->number = v;
    return n;
}

NodePtr makeSymbol(const std::string& name) {
    auto n = blank(NodeKind::Symbol);
    n->name = name;
    auto [space, idx] = classifySymbol(name);
    n->space = space;
    n->index = idx;
    n->constant = false;
    return n;
}

NodePtr makeUnary(NodePtr a) {
    auto n = blank(NodeKind::Neg);
    n->constant = a->constant;
    n->kids = {std::move(a)};
    return n;
}

NodePtr makeBinary(NodeKind k, NodePtr a, NodePtr b) {
    auto n = blank(k);
    n->constant = a->constant && b->constant;
    n->kids = {std::move(a), std::move(b)};
    return n;
}

NodePtr makeCall(Func f, std::vector<NodePtr> args) {
    if (static_cast<int>(args.size()) != funcArity(f)) throw Error(std::string("wrong arity for ") + funcName(f));
    auto n = blank(NodeKind::Call);
    n->func = f;
    for (const auto& a : args) n->constant = n->constant && a->constant;
    n->kids = std::move(args);
    return n;
}

const char* funcName(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Sqrt: return "sqrt";
        case Func::Pow: return "pow";
    }
    return "?";
}

int funcArity(Func f) { return f == Func::Pow ? 2 : 1; }

std::pair<Space, int> classifySymbol(const std::string& name) {
    static const std::pair<const char*, Space> prefixes[] = {
        {"chi", Space::Chi}, {"x", Space::X}, {"y", Space::Y}, {"p", Space::P}};
    for (const auto& [pre, space] : prefixes) {
        std::string_view s(name);
        std::string_view ps(pre);
        if (s.substr(0, ps.size()) != ps) continue;
        std::string_view digits = s.substr(ps.size());
        if (digits.empty() || digits[0] == '0' || digits.size() > 6) return {Space::Unknown, -1};
        int v = 0;
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return {Space::Unknown, -1};
            v = v * 10 + (c - '0');
        }
        return {space, v - 1};
    }
    return {Space::Unknown, -1};
}

std::string symbolName(Space s, int index) {
    const char* pre = s == Space::X ? "x" : s == Space::Chi ? "chi" : s == Space::Y ? "y" : "p";
    return pre + std::to_string(index + 1);
}

bool structurallyEqual(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
        case NodeKind::Number:
            if (a.number != b.number) return false;
            break;
        case NodeKind::Symbol:
            if (a.name != b.name) return false;
            break;
        case NodeKind::Call:
            if (a.func != b.func) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!structurallyEqual(*a.kids[i], *b.kids[i])) return false;
    return true;
}

namespace {

void collectSymbols(const Node& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::Symbol) out.insert(n.name);
    for (const auto& k : n.kids) collectSymbols(*k, out);
}

// ---- parser ----

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;  // 0-based
    std::string_view text;
    double number = 0.0;
};

const std::set<std::string> kContinuation = {"+", "-", "*", "/", "^", "end of input"};
const std::set<std::string> kOperand = {"number", "symbol", "function call", "(", "-"};

class Parser {
public:
    explicit Parser(std::string_view s) : src_(s) { advance(); }

    NodePtr parseAll() {
        NodePtr e = parseExpr();
        if (tok_.kind != Tok::End) fail(kContinuation, "unexpected token '" + std::string(tok_.text) + "'");
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;

    [[noreturn]] void fail(std::set<std::string> expected, const std::string& detail) const {
        throw ParseError(tok_.pos + 1, std::move(expected), detail);
    }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.pos = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            tok_.kind = k;
            tok_.text = src_.substr(pos_, 1);
            ++pos_;
        };
        switch (c) {
            case '+': return single(Tok::Plus);
            case '-': return single(Tok::Minus);
            case '*': return single(Tok::Star);
            case '/': return single(Tok::Slash);
            case '^': return single(Tok::Caret);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ',': return single(Tok::Comma);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '.') {
                ++pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            tok_.kind = Tok::Number;
            tok_.text = src_.substr(start, pos_ - start);
            auto res = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), tok_.number);
            if (res.ec != std::errc() || res.ptr != tok_.text.data() + tok_.text.size() ||
                !std::isfinite(tok_.number))
                fail({"number"}, "malformed number '" + std::string(tok_.text) + "'");
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        tok_.text = src_.substr(pos_, 1);
        fail(kOperand, "unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr parseExpr() {
        NodePtr lhs = parseTerm();
        while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
            NodeKind k = tok_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
            advance();
            lhs = makeBinary(k, lhs, parseTerm());
        }
        return lhs;
    }

    NodePtr parseTerm() {
        NodePtr lhs = parseUnary();
        while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
            NodeKind k = tok_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
            advance();
            lhs = makeBinary(k, lhs, parseUnary());
        }
        return lhs;
    }

    NodePtr parseUnary() {
        if (tok_.kind == Tok::Minus) {
            advance();
            return makeUnary(parseUnary());
        }
        return parsePower();
    }

    NodePtr parsePower() {
        NodePtr base = parsePrimary();
        if (tok_.kind == Tok::Caret) {
            advance();
            return makeBinary(NodeKind::Pow, base, parseUnary());
        }
        return base;
    }

    NodePtr parsePrimary() {
        switch (tok_.kind) {
            case Tok::Number: {
                double v = tok_.number;
                advance();
                return makeNumber(v);
            }
            case Tok::LParen: {
                advance();
                NodePtr e = parseExpr();
                if (tok_.kind != Tok::RParen) fail({")"}, "unbalanced parenthesis");
                advance();
                return e;
            }
            case Tok::Ident: {
                std::string name(tok_.text);
                std::size_t at = tok_.pos + 1;
                advance();
                if (tok_.kind != Tok::LParen) return makeSymbol(name);
                Func f;
                if (!lookupFunc(name, f)) throw UnknownFunction(name, at);
                advance();
                std::vector<NodePtr> args;
                args.push_back(parseExpr());
                for (int k = 1; k < funcArity(f); ++k) {
                    if (tok_.kind != Tok::Comma) fail({","}, std::string(funcName(f)) + " takes two arguments");
                    advance();
                    args.push_back(parseExpr());
                }
                if (tok_.kind != Tok::RParen) fail({")"}, "unterminated argument list");
                advance();
                return makeCall(f, std::move(args));
            }
            case Tok::End: fail(kOperand, "unexpected end of input");
            default: fail(kOperand, "unexpected token '" + std::string(tok_.text) + "'");
        }
    }

    static bool lookupFunc(const std::string& name, Func& out) {
        for (Func f : {Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Sqrt, Func::Pow})
            if (name == funcName(f)) {
                out = f;
                return true;
            }
        return false;
    }
};

// ---- printer ----

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

std::string formatNumber(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print(const Node& n, std::string& out);

void printWrapped(const Node& n, bool parens, std::string& out) {
    if (parens) out += '(';
    print(n, out);
    if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
    const int prec = precedence(n);
    switch (n.kind) {
        case NodeKind::Number: out += formatNumber(n.number); return;
        case NodeKind::Symbol: out += n.name; return;
        case NodeKind::Neg:
            out += '-';
            printWrapped(*n.kids[0], precedence(*n.kids[0]) < prec, out);
            return;
        case NodeKind::Pow:
            printWrapped(*n.kids[0], precedence(*n.kids[0]) <= prec, out);
            out += '^';
            printWrapped(*n.kids[1], precedence(*n.kids[1]) < 3, out);
            return;
        case NodeKind::Call:
            out += funcName(n.func);
            out += '(';
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                if (i) out += ", ";
                print(*n.kids[i], out);
            }
            out += ')';
            return;
        default: {
            const char* op = n.kind == NodeKind::Add ? " + " : n.kind == NodeKind::Sub ? " - "
                             : n.kind == NodeKind::Mul ? "*" : "/";
            printWrapped(*n.kids[0], precedence(*n.kids[0]) < prec, out);
            out += op;
            printWrapped(*n.kids[1], precedence(*n.kids[1]) <= prec, out);
            return;
        }
    }
}

}  // namespace

ScalarField fromAst(NodePtr ast) {
    ScalarField f;
    collectSymbols(*ast, f.freeSymbols);
    f.ast = std::move(ast);
    return f;
}

ScalarField constantField(double v) { return fromAst(makeNumber(v)); }

ScalarField parse(std::string_view text) {
    Parser p(text);
    return fromAst(p.parseAll());
}

std::string prettyPrint(const Node& n) {
    std::string out;
    print(n, out);
    return out;
}

Jet2 evaluateNamed(const ScalarField& f, const std::map<std::string, Jet2>& env) {
    std::vector<Jet2> slots[4];
    for (const auto& [name, val] : env) {
        auto [space, idx] = classifySymbol(name);
        if (space == Space::Unknown) continue;
        auto& v = slots[static_cast<int>(space)];
        if (static_cast<int>(v.size()) <= idx) v.resize(idx + 1);
        v[idx] = val;
    }
    // Gaps in a namespace must not silently read as zero.
    for (const auto& s : f.freeSymbols)
        if (!env.count(s)) throw UnknownSymbol(s);
    Env<Jet2> e;
    e.x = slots[0].data(), e.nx = static_cast<int>(slots[0].size());
    e.chi = slots[1].data(), e.nchi = static_cast<int>(slots[1].size());
    e.y = slots[2].data(), e.ny = static_cast<int>(slots[2].size());
    e.p = slots[3].data(), e.np = static_cast<int>(slots[3].size());
    return evaluate(f, e);
}

Jet2 evalJet2(const ScalarField& f, const std::map<std::string, double>& point,
              const std::vector<std::string>& active) {
    if (static_cast<int>(active.size()) > kMaxVars) throw Error("too many active variables");
    std::map<std::string, Jet2> env;
    for (const auto& [name, v] : point) env[name] = Jet2(v);
    for (std::size_t k = 0; k < active.size(); ++k) {
        auto it = point.find(active[k]);
        if (it == point.end()) throw UnknownSymbol(active[k]);
        env[active[k]] = Jet2::variable(it->second, static_cast<int>(k), static_cast<int>(active.size()));
    }
    return evaluateNamed(f, env);
}

const char* spaceDescription(Space s) {
    switch (s) {
        case Space::X: return "base";
        case Space::Chi: return "chi";
        case Space::Y: return "fiber";
        case Space::P: return "momentum";
        case Space::Unknown: break;
    }
    return "unknown";
}

std::vector<Diagnostic> validateField(const std::string& key, const std::string& role, const ScalarField& f,
                                      const std::set<Space>& allowed, const Dims& dims) {
    std::vector<Diagnostic> out;
    std::set<Space> reported;
    for (const auto& name : f.freeSymbols) {
        auto [space, idx] = classifySymbol(name);
        if (space == Space::Unknown) {
            out.push_back({Diagnostic::Severity::Error, key, "unknown symbol '" + name + "'"});
            continue;
        }
        if (!allowed.count(space)) {
            if (reported.insert(space).second)
                out.push_back({Diagnostic::Severity::Error, key,
                               role + " may not reference " + spaceDescription(space) + " coordinates"});
            continue;
        }
        int limit = (space == Space::X || space == Space::Chi) ? dims.m : dims.r;
        if (idx >= limit)
            out.push_back({Diagnostic::Severity::Error, key,
                           "symbol '" + name + "' out of range (" +
                               ((space == Space::X || space == Space::Chi) ? "m = " : "r = ") +
                               std::to_string(limit) + ")"});
    }
    return out;
}

}  // namespace ldual
