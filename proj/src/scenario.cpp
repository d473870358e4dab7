#include "legendre_dual/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ldual {

namespace {

using Severity = Diagnostic::Severity;

struct Entry {
    std::string key;
    std::string raw;  // unquoted text for strings, literal text otherwise
    bool quoted = false;
    int line = 0;
};

struct Section {
    std::vector<Entry> entries;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string stripComment(const std::string& line) {
    bool inQuote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') inQuote = !inQuote;
        if (line[i] == '#' && !inQuote) return line.substr(0, i);
    }
    return line;
}

std::map<std::string, Section> splitSections(const std::string& text) {
    std::map<std::string, Section> out;
    std::istringstream in(text);
    std::string line, current;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string s = trim(stripComment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(s.size() + 1, {"]"}, "line " + std::to_string(lineNo) + ": unterminated section header");
            current = trim(s.substr(1, s.size() - 2));
            if (out.count(current)) throw ParseError(1, {}, "line " + std::to_string(lineNo) + ": duplicate section [" + current + "]");
            out[current].line = lineNo;
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(s.size() + 1, {"="}, "line " + std::to_string(lineNo) + ": expected key = value");
        if (current.empty()) throw ParseError(1, {"["}, "line " + std::to_string(lineNo) + ": entry outside any section");
        Entry e;
        e.key = trim(s.substr(0, eq));
        e.line = lineNo;
        std::string v = trim(s.substr(eq + 1));
        if (!v.empty() && v.front() == '"') {
            if (v.size() < 2 || v.back() != '"')
                throw ParseError(eq + v.size() + 2, {"\""}, "line " + std::to_string(lineNo) + ": unterminated string");
            e.raw = v.substr(1, v.size() - 2);
            e.quoted = true;
        } else {
            e.raw = v;
        }
        for (const auto& prev : out[current].entries)
            if (prev.key == e.key)
                throw ParseError(1, {}, "line " + std::to_string(lineNo) + ": duplicate key '" + e.key + "' in [" + current + "]");
        out[current].entries.push_back(std::move(e));
    }
    return out;
}

double parseNumber(const std::string& s, int line) {
    std::string t = trim(s);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ParseError(1, {"number"}, "line " + std::to_string(line) + ": '" + t + "' is not a number");
    return v;
}

Interval parseInterval(const Entry& e) {
    std::string t = trim(e.raw);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError(1, {"["}, "line " + std::to_string(e.line) + ": expected [lo, hi] for '" + e.key + "'");
    std::string body = t.substr(1, t.size() - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos)
        throw ParseError(1, {","}, "line " + std::to_string(e.line) + ": expected [lo, hi] for '" + e.key + "'");
    return {parseNumber(body.substr(0, comma), e.line), parseNumber(body.substr(comma + 1), e.line)};
}

ScalarField parseExpr(const Entry& e) {
    const std::string text = e.quoted ? e.raw : trim(e.raw);
    try {
        return parse(text);
    } catch (const ParseError& pe) {
        throw ParseError(pe.offset, pe.expected, "line " + std::to_string(e.line) + ", key '" + e.key + "': " + pe.what());
    } catch (const UnknownFunction& uf) {
        throw ParseError(uf.offset, {}, "line " + std::to_string(e.line) + ", key '" + e.key + "': " + uf.what());
    }
}

// "rho.1.2" -> prefix "rho", indices {0, 1}
bool splitKey(const std::string& key, std::string& prefix, std::vector<int>& idx) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    prefix = parts[0];
    idx.clear();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        int v = 0;
        auto res = std::from_chars(parts[k].data(), parts[k].data() + parts[k].size(), v);
        if (res.ec != std::errc() || res.ptr != parts[k].data() + parts[k].size() || parts[k].empty()) return false;
        idx.push_back(v - 1);
    }
    return true;
}

struct Builder {
    Scenario sc;
    std::vector<Diagnostic> diags;

    void error(const std::string& field, const std::string& msg) { diags.push_back({Severity::Error, field, msg}); }
    void warn(const std::string& field, const std::string& msg) { diags.push_back({Severity::Warning, field, msg}); }

    // Indexed entry: checks prefix, arity and ranges; returns false with a diagnostic otherwise.
    bool indexed(const Entry& e, const std::string& section, const std::map<std::string, std::vector<int>>& shapes,
                 std::string& prefix, std::vector<int>& idx) {
        if (!splitKey(e.key, prefix, idx)) {
            error(section + "." + e.key, "malformed key");
            return false;
        }
        auto it = shapes.find(prefix);
        if (it == shapes.end()) {
            error(section + "." + e.key, "unknown key");
            return false;
        }
        if (idx.size() != it->second.size()) {
            error(section + "." + e.key, "expected " + std::to_string(it->second.size()) + " indices");
            return false;
        }
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] < 0 || idx[k] >= it->second[k]) {
                error(section + "." + e.key, "index out of range");
                return false;
            }
        return true;
    }
};

std::vector<ScalarField> zeros(std::size_t n) { return std::vector<ScalarField>(n, constantField(0.0)); }

bool isNegationOf(const ScalarField& a, const ScalarField& b) {
    if (a.isConstant() && b.isConstant()) return evaluate(a, Env<double>{}) == -evaluate(b, Env<double>{});
    if (b.ast->kind == NodeKind::Neg && structurallyEqual(*b.ast->kids[0], *a.ast)) return true;
    if (a.ast->kind == NodeKind::Neg && structurallyEqual(*a.ast->kids[0], *b.ast)) return true;
    return false;
}

int readInt(const Entry& e) {
    double v = parseNumber(e.raw, e.line);
    if (v != static_cast<int>(v)) throw ParseError(1, {"integer"}, "line " + std::to_string(e.line) + ": '" + e.key + "' must be an integer");
    return static_cast<int>(v);
}

}  // namespace

SamplePlan SamplingSpec::plan(Side side) const {
    SamplePlan pl;
    pl.count = count;
    pl.seed = side == Side::E ? seed : seed + 1;
    pl.box = x;
    const auto& fb = side == Side::E ? y : p;
    pl.box.insert(pl.box.end(), fb.begin(), fb.end());
    return pl;
}

double Scenario::threshold(const std::string& id) const {
    auto it = tolerances.find(id);
    return it == tolerances.end() ? defaultTolerance : it->second;
}

std::string fnv1a64Hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string canonicalId(const std::string& id) {
    std::string out;
    const std::string prime = "\xE2\x80\xB2";
    for (std::size_t i = 0; i < id.size();) {
        if (id.compare(i, prime.size(), prime) == 0) {
            out += '\'';
            i += prime.size();
        } else {
            if (id[i] != ' ') out += id[i];
            ++i;
        }
    }
    return out;
}

Scenario parseScenario(const std::string& text) {
    auto sections = splitSections(text);
    Builder b;
    Scenario& sc = b.sc;
    sc.digest = fnv1a64Hex(text);

    static const std::set<std::string> known = {"scenario",   "algebroid",       "lagrangian",    "hamiltonian",
                                                "connection", "connection_star", "distinguished", "distinguished_star",
                                                "mechanics",  "mechanics_star",  "sampling",      "tolerances",
                                                "checks"};
    for (const auto& [name, sec] : sections)
        if (!known.count(name)) b.error("[" + name + "]", "unknown section");

    // ---- dimensions ----
    bool haveP = false;
    std::string mode = "general";
    if (auto it = sections.find("scenario"); it != sections.end()) {
        for (const auto& e : it->second.entries) {
            if (e.key == "name") sc.name = e.raw;
            else if (e.key == "mode") mode = e.raw;
            else if (e.key == "m") sc.dims.m = readInt(e);
            else if (e.key == "p") { sc.dims.p = readInt(e); haveP = true; }
            else if (e.key == "r") sc.dims.r = readInt(e);
            else b.error("scenario." + e.key, "unknown key");
        }
    } else {
        b.error("[scenario]", "missing section");
    }
    if (mode == "classical") sc.classical = true;
    else if (mode != "general") b.error("scenario.mode", "mode must be \"classical\" or \"general\"");
    if (!haveP) sc.dims.p = sc.dims.m;
    const int m = sc.dims.m, p = sc.dims.p, r = sc.dims.r;
    if (m < 1 || p < 1 || r < 1) {
        b.error("[scenario]", "dimensions m, p, r must be positive");
        throw ValidationError(b.diags);
    }
    if (m + r > kMaxVars) {
        b.error("[scenario]", "m + r exceeds the supported " + std::to_string(kMaxVars) + " jet variables");
        throw ValidationError(b.diags);
    }
    if (sc.classical && p != m) b.error("scenario.p", "classical mode requires p = m");

    // ---- algebroid ----
    AlgebroidData& alg = sc.alg;
    alg = AlgebroidData::classical(m);
    alg.p = p;
    alg.rho = zeros(static_cast<std::size_t>(m) * p);
    if (sc.classical || !sections.count("algebroid"))
        for (int i = 0; i < m && i < p; ++i) alg.rho[i * p + i] = constantField(1.0);
    alg.Lstruct = zeros(static_cast<std::size_t>(p) * p * p);
    std::map<std::vector<int>, std::string> lsGiven;
    if (auto it = sections.find("algebroid"); it != sections.end()) {
        if (sc.classical && !it->second.entries.empty())
            b.error("[algebroid]", "classical mode fixes the algebroid; remove this section");
        const std::map<std::string, std::vector<int>> shapes = {
            {"h", {m}}, {"eta", {m}}, {"rho", {m, p}}, {"Lstruct", {p, p, p}}};
        for (const auto& e : it->second.entries) {
            std::string pre;
            std::vector<int> ix;
            if (!b.indexed(e, "algebroid", shapes, pre, ix)) continue;
            ScalarField f = parseExpr(e);
            const std::string field = "algebroid." + e.key;
            if (pre == "h") {
                for (auto& d : validateField(field, "map h", f, {Space::X}, sc.dims)) b.diags.push_back(d);
                alg.h[ix[0]] = f;
            } else if (pre == "eta") {
                for (auto& d : validateField(field, "map eta", f, {Space::Chi}, sc.dims)) b.diags.push_back(d);
                alg.eta[ix[0]] = f;
            } else if (pre == "rho") {
                for (auto& d : validateField(field, "anchor", f, {Space::Chi}, sc.dims)) b.diags.push_back(d);
                alg.rho[ix[0] * p + ix[1]] = f;
            } else {
                for (auto& d : validateField(field, "structure function", f, {Space::Chi}, sc.dims)) b.diags.push_back(d);
                alg.Lstruct[(ix[0] * p + ix[1]) * p + ix[2]] = f;
                lsGiven[ix] = e.key;
            }
        }
    }
    for (int g = 0; g < p; ++g)
        for (int a = 0; a < p; ++a)
            for (int c = a; c < p; ++c) {
                bool hasAC = lsGiven.count({g, a, c}) > 0, hasCA = lsGiven.count({g, c, a}) > 0;
                ScalarField& fac = alg.Lstruct[(g * p + a) * p + c];
                ScalarField& fca = alg.Lstruct[(g * p + c) * p + a];
                if (a == c) {
                    if (hasAC && !(fac.isConstant() && evaluate(fac, Env<double>{}) == 0.0))
                        b.warn("algebroid." + lsGiven[{g, a, c}], "structure functions not antisymmetric as written");
                    continue;
                }
                if (hasAC && hasCA) {
                    if (!isNegationOf(fac, fca))
                        b.warn("algebroid." + lsGiven[{g, a, c}], "structure functions not antisymmetric as written");
                } else if (hasAC) {
                    fca = fromAst(makeUnary(fac.ast));
                    b.warn("algebroid." + lsGiven[{g, a, c}], "antisymmetric partner filled in as its negative");
                } else if (hasCA) {
                    fac = fromAst(makeUnary(fca.ast));
                    b.warn("algebroid." + lsGiven[{g, c, a}], "antisymmetric partner filled in as its negative");
                }
            }

    // ---- Lagrangian / Hamiltonian ----
    sc.pair.m = m;
    sc.pair.r = r;
    auto single = [&](const char* section, const char* key, const char* role, std::set<Space> allowed)
        -> std::optional<ScalarField> {
        auto it = sections.find(section);
        if (it == sections.end()) return std::nullopt;
        std::optional<ScalarField> out;
        for (const auto& e : it->second.entries) {
            if (e.key != key) {
                b.error(std::string(section) + "." + e.key, "unknown key");
                continue;
            }
            out = parseExpr(e);
            for (auto& d : validateField(std::string(section) + "." + e.key, role, *out, allowed, sc.dims))
                b.diags.push_back(d);
        }
        return out;
    };
    sc.pair.L = single("lagrangian", "L", "Lagrangian", {Space::X, Space::Y});
    sc.pair.H = single("hamiltonian", "H", "Hamiltonian", {Space::X, Space::P});
    if (!sc.pair.L && !sc.pair.H) b.error("", "scenario defines neither a Lagrangian nor a Hamiltonian");

    // ---- connections ----
    for (Side side : {Side::E, Side::Estar}) {
        const std::string section = side == Side::E ? "connection" : "connection_star";
        auto it = sections.find(section);
        if (it == sections.end()) continue;
        Connection c;
        c.side = side;
        c.p = p;
        c.r = r;
        c.gamma = zeros(static_cast<std::size_t>(r) * p);
        const std::set<Space> own = {Space::X, fiberSpace(side)};
        for (const auto& e : it->second.entries) {
            std::string pre;
            std::vector<int> ix;
            if (!b.indexed(e, section, {{"Gamma", {r, p}}}, pre, ix)) continue;
            ScalarField f = parseExpr(e);
            for (auto& d : validateField(section + "." + e.key, "connection", f, own, sc.dims)) b.diags.push_back(d);
            c.gamma[ix[0] * p + ix[1]] = f;
        }
        sc.conn[sideIndex(side)] = std::move(c);
    }

    // ---- distinguished linear connections ----
    for (Side side : {Side::E, Side::Estar}) {
        const std::string section = side == Side::E ? "distinguished" : "distinguished_star";
        auto it = sections.find(section);
        if (it == sections.end()) continue;
        DistinguishedConnection d;
        d.side = side;
        d.fields.resize(p, r, constantField(0.0));
        const std::set<Space> own = {Space::X, fiberSpace(side)};
        std::map<std::string, std::vector<int>> shapes;
        if (side == Side::E)
            shapes = {{"Hc", {p, p, p}}, {"Hv", {r, r, p}}, {"Vc", {p, p, r}}, {"Vv", {r, r, r}}};
        else
            shapes = {{"Hc", {p, p, p}}, {"Hv", {r, r, p}}, {"Vc", {p, r, p}}, {"Vv", {r, r, r}}};
        for (const auto& e : it->second.entries) {
            std::string pre;
            std::vector<int> ix;
            if (!b.indexed(e, section, shapes, pre, ix)) continue;
            ScalarField f = parseExpr(e);
            for (auto& dg : validateField(section + "." + e.key, "distinguished connection", f, own, sc.dims))
                b.diags.push_back(dg);
            auto& F = d.fields;
            if (pre == "Hc") F.Hc(ix[0], ix[1], ix[2]) = f;
            else if (side == Side::E) {
                if (pre == "Hv") F.Hv(ix[0], ix[1], ix[2]) = f;
                else if (pre == "Vc") F.Vc(ix[0], ix[1], ix[2]) = f;
                else F.Vv(ix[0], ix[1], ix[2]) = f;
            } else {
                // starred keys list upper indices first, then lower ones
                if (pre == "Hv") F.Hv(ix[1], ix[0], ix[2]) = f;       // H*^a_{b gamma}
                else if (pre == "Vc") F.Vc(ix[0], ix[2], ix[1]) = f;  // V*^{alpha c}_beta
                else F.Vv(ix[2], ix[0], ix[1]) = f;                   // V*^{a c}_b
            }
        }
        sc.dconn[sideIndex(side)] = std::move(d);
    }

    // ---- mechanics ----
    for (Side side : {Side::E, Side::Estar}) {
        const std::string section = side == Side::E ? "mechanics" : "mechanics_star";
        auto it = sections.find(section);
        if (it == sections.end()) continue;
        if (p != r) b.error("[" + section + "]", "mechanical data requires p = r");
        MechanicalSystem ms;
        ms.side = side;
        ms.r = r;
        ms.g = zeros(static_cast<std::size_t>(r) * r);
        for (int a = 0; a < r; ++a) ms.g[a * r + a] = constantField(1.0);
        std::vector<ScalarField> G = zeros(r), F = zeros(r);
        bool haveG = false, haveF = false;
        const std::set<Space> own = {Space::X, fiberSpace(side)};
        for (const auto& e : it->second.entries) {
            std::string pre;
            std::vector<int> ix;
            if (!b.indexed(e, section, {{"g", {r, r}}, {"G", {r}}, {"F", {r}}}, pre, ix)) continue;
            ScalarField f = parseExpr(e);
            const std::string field = section + "." + e.key;
            if (pre == "g") {
                for (auto& d : validateField(field, "morphism g", f, {Space::Chi}, sc.dims)) b.diags.push_back(d);
                ms.g[ix[0] * r + ix[1]] = f;
            } else {
                for (auto& d : validateField(field, pre == "G" ? "spray coefficient" : "force", f, own, sc.dims))
                    b.diags.push_back(d);
                (pre == "G" ? G : F)[ix[0]] = f;
                (pre == "G" ? haveG : haveF) = true;
            }
        }
        if (haveG) ms.G = G;
        if (haveF) ms.F = F;
        sc.mech[sideIndex(side)] = std::move(ms);
    }

    // ---- sampling ----
    sc.sampling.x.assign(m, {-1.0, 1.0});
    sc.sampling.y.assign(r, {-1.0, 1.0});
    std::vector<bool> pGiven(r, false);
    if (auto it = sections.find("sampling"); it != sections.end()) {
        for (const auto& e : it->second.entries) {
            if (e.key == "count") {
                int c = readInt(e);
                if (c < 0) b.error("sampling.count", "count must be non-negative");
                else sc.sampling.count = static_cast<std::size_t>(c);
                continue;
            }
            if (e.key == "seed") {
                double v = parseNumber(e.raw, e.line);
                if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
                    b.error("sampling.seed", "seed must be a non-negative integer");
                else
                    sc.sampling.seed = static_cast<std::uint64_t>(v);
                continue;
            }
            std::string pre;
            std::vector<int> ix;
            if (!b.indexed(e, "sampling", {{"x", {m}}, {"y", {r}}, {"p", {r}}}, pre, ix)) continue;
            Interval iv = parseInterval(e);
            if (!(iv.lo <= iv.hi)) b.error("sampling." + e.key, "empty interval");
            if (pre == "x") sc.sampling.x[ix[0]] = iv;
            else if (pre == "y") sc.sampling.y[ix[0]] = iv;
            else {
                if (sc.sampling.p.empty()) sc.sampling.p.assign(r, {});
                sc.sampling.p[ix[0]] = iv;
                pGiven[ix[0]] = true;
            }
        }
    }
    if (sc.sampling.p.empty()) sc.sampling.p.assign(r, {});
    for (int a = 0; a < r; ++a)
        if (!pGiven[a]) sc.sampling.p[a] = sc.sampling.y[a];

    // ---- tolerances and checks ----
    if (auto it = sections.find("tolerances"); it != sections.end()) {
        for (const auto& e : it->second.entries) {
            double v = parseNumber(e.raw, e.line);
            if (!(v > 0.0)) b.error("tolerances." + e.key, "tolerance must be positive");
            if (e.key == "default") sc.defaultTolerance = v;
            else sc.tolerances[canonicalId(e.key)] = v;
        }
    }
    if (auto it = sections.find("checks"); it != sections.end()) {
        std::vector<std::string> ids;
        for (const auto& e : it->second.entries) {
            if (e.key != "ids") {
                b.error("checks." + e.key, "unknown key");
                continue;
            }
            std::string cur;
            for (char c : e.raw + ",") {
                if (c == ',') {
                    std::string t = canonicalId(trim(cur));
                    if (!t.empty()) ids.push_back(t);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        sc.checks = ids;
    }

    for (const auto& d : validateScenario(sc)) b.diags.push_back(d);

    bool anyError = false;
    for (const auto& d : b.diags) {
        if (d.severity == Severity::Error) anyError = true;
        else sc.warnings.push_back(d);
    }
    if (anyError) throw ValidationError(b.diags);
    return sc;
}

std::vector<Diagnostic> validateScenario(const Scenario& sc) {
    std::vector<Diagnostic> out;
    const auto& a = sc.alg;
    if (static_cast<int>(a.h.size()) != a.m || static_cast<int>(a.eta.size()) != a.m)
        out.push_back({Severity::Error, "algebroid", "maps h and eta must have m components"});
    if (a.rho.size() != static_cast<std::size_t>(a.m) * a.p)
        out.push_back({Severity::Error, "algebroid.rho", "anchor must be m x p"});
    if (a.Lstruct.size() != static_cast<std::size_t>(a.p) * a.p * a.p)
        out.push_back({Severity::Error, "algebroid.Lstruct", "structure functions must be p x p x p"});
    for (const auto& c : sc.conn)
        if (c && c->gamma.size() != static_cast<std::size_t>(sc.dims.r) * sc.dims.p)
            out.push_back({Severity::Error, "connection", "connection must be r x p"});
    for (const auto& mch : sc.mech)
        if (mch && mch->g.size() != static_cast<std::size_t>(sc.dims.r) * sc.dims.r)
            out.push_back({Severity::Error, "mechanics.g", "morphism g must be r x r"});
    if (sc.sampling.x.size() != static_cast<std::size_t>(sc.dims.m) ||
        sc.sampling.y.size() != static_cast<std::size_t>(sc.dims.r) ||
        sc.sampling.p.size() != static_cast<std::size_t>(sc.dims.r))
        out.push_back({Severity::Error, "sampling", "box dimensions do not match m and r"});
    return out;
}

Scenario loadScenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseScenario(ss.str());
}

}  // namespace ldual
