#include "legendre_dual/report.hpp"

#include <cstdio>
#include <map>

#include <json.hpp>

#include "legendre_dual/errors.hpp"

namespace ldual {

namespace {

using json = nlohmann::ordered_json;

json pointJson(const std::optional<WorstPoint>& w) {
    if (!w) return nullptr;
    return json{{"side", w->side}, {"x", w->x}, {"fiber", w->fiber}};
}

std::optional<WorstPoint> pointFrom(const json& j) {
    if (j.is_null()) return std::nullopt;
    WorstPoint w;
    w.side = j.at("side").get<std::string>();
    w.x = j.at("x").get<std::vector<double>>();
    w.fiber = j.at("fiber").get<std::vector<double>>();
    return w;
}

json optNumber(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::optional<double> numberFrom(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json optString(const std::string& s) {
    if (s.empty()) return nullptr;
    return s;
}

std::string stringFrom(const json& j) { return j.is_null() ? std::string() : j.get<std::string>(); }

std::string fmtResidual(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", *v);
    return buf;
}

std::string fmtPoint(const WorstPoint& w) {
    std::string s = w.side + " x=(";
    char buf[32];
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", w.x[i]);
        s += buf;
    }
    s += ") fiber=(";
    for (std::size_t i = 0; i < w.fiber.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", w.fiber[i]);
        s += buf;
    }
    return s + ")";
}

std::map<std::string, int> counts(const Report& r) {
    std::map<std::string, int> c{{"PASS", 0}, {"FAIL", 0}, {"SKIP", 0}, {"ERROR", 0}};
    for (const auto& i : r.identities) ++c[i.status];
    return c;
}

}  // namespace

std::string renderText(const Report& r) {
    std::string out;
    char buf[512];
    out += r.engine + " " + r.version + "\n";
    out += "scenario: " + r.scenario + "  digest: " + r.digest + "\n";
    std::snprintf(buf, sizeof buf, "samples: %llu per side  seed: %llu\n", static_cast<unsigned long long>(r.samples),
                  static_cast<unsigned long long>(r.seed));
    out += buf;
    if (!r.banner.empty()) out += "*** " + r.banner + " ***\n";
    if (!r.gates.empty()) {
        out += "\n";
        std::snprintf(buf, sizeof buf, "%-10s %-54s %-10s %-9s %s\n", "gate", "condition", "residual", "threshold",
                      "status");
        out += buf;
        for (const auto& g : r.gates) {
            std::snprintf(buf, sizeof buf, "%-10s %-54s %-10s %-9.0e %s\n", g.name.c_str(), g.description.c_str(),
                          fmtResidual(g.residual).c_str(), g.threshold, g.status.c_str());
            out += buf;
        }
    }
    out += "\n";
    std::snprintf(buf, sizeof buf, "%-6s %-54s %-10s %-9s %-6s %s\n", "id", "equation", "residual", "threshold",
                  "status", "gate");
    out += buf;
    for (const auto& i : r.identities) {
        std::snprintf(buf, sizeof buf, "%-6s %-54s %-10s %-9.0e %-6s %s\n", i.id.c_str(), i.equation.c_str(),
                      fmtResidual(i.residual).c_str(), i.threshold, i.status.c_str(), i.gate.c_str());
        out += buf;
    }
    bool notes = false;
    for (const auto& i : r.identities) {
        if (i.message.empty() && !(i.worst && i.status == "FAIL")) continue;
        if (!notes) out += "\n";
        notes = true;
        out += "  " + i.id + ": ";
        if (!i.message.empty()) out += i.message;
        else out += "worst at " + fmtPoint(*i.worst);
        out += "\n";
    }
    auto list = [&](const char* title, const std::vector<std::string>& items) {
        if (items.empty()) return;
        out += std::string("\n") + title + ":\n";
        for (const auto& s : items) out += "  - " + s + "\n";
    };
    list("derived", r.derived);
    list("notes", r.footnotes);
    list("warnings", r.warnings);
    auto c = counts(r);
    std::snprintf(buf, sizeof buf, "\n%d pass, %d fail, %d skip, %d error\n", c["PASS"], c["FAIL"], c["SKIP"],
                  c["ERROR"]);
    out += buf;
    return out;
}

std::string renderJson(const Report& r) {
    json j;
    j["engine"] = r.engine;
    j["version"] = r.version;
    j["scenario"] = r.scenario;
    j["digest"] = r.digest;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["banner"] = optString(r.banner);
    json gates = json::array();
    for (const auto& g : r.gates)
        gates.push_back({{"name", g.name},
                         {"description", g.description},
                         {"residual", optNumber(g.residual)},
                         {"threshold", g.threshold},
                         {"status", g.status},
                         {"worst_point", pointJson(g.worst)},
                         {"message", optString(g.message)}});
    j["gates"] = gates;
    json ids = json::array();
    for (const auto& i : r.identities)
        ids.push_back({{"id", i.id},
                       {"equation", i.equation},
                       {"residual", optNumber(i.residual)},
                       {"threshold", i.threshold},
                       {"status", i.status},
                       {"gate", optString(i.gate)},
                       {"worst_point", pointJson(i.worst)},
                       {"message", optString(i.message)}});
    j["identities"] = ids;
    j["derived"] = r.derived;
    j["footnotes"] = r.footnotes;
    j["warnings"] = r.warnings;
    auto c = counts(r);
    j["summary"] = {{"pass", c["PASS"]}, {"fail", c["FAIL"]}, {"skip", c["SKIP"]}, {"error", c["ERROR"]},
                    {"exit_code", exitCode(r)}};
    return j.dump(2) + "\n";
}

Report reportFromJson(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
    try {
        Report r;
        r.engine = j.at("engine").get<std::string>();
        r.version = j.at("version").get<std::string>();
        r.scenario = j.at("scenario").get<std::string>();
        r.digest = j.at("digest").get<std::string>();
        r.samples = j.at("samples").get<std::uint64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.banner = stringFrom(j.at("banner"));
        for (const auto& g : j.at("gates")) {
            GateResult gr;
            gr.name = g.at("name").get<std::string>();
            gr.description = g.at("description").get<std::string>();
            gr.residual = numberFrom(g.at("residual"));
            gr.threshold = g.at("threshold").get<double>();
            gr.status = g.at("status").get<std::string>();
            gr.worst = pointFrom(g.at("worst_point"));
            gr.message = stringFrom(g.at("message"));
            r.gates.push_back(std::move(gr));
        }
        for (const auto& i : j.at("identities")) {
            IdentityResult ir;
            ir.id = i.at("id").get<std::string>();
            ir.equation = i.at("equation").get<std::string>();
            ir.residual = numberFrom(i.at("residual"));
            ir.threshold = i.at("threshold").get<double>();
            ir.status = i.at("status").get<std::string>();
            ir.gate = stringFrom(i.at("gate"));
            ir.worst = pointFrom(i.at("worst_point"));
            ir.message = stringFrom(i.at("message"));
            r.identities.push_back(std::move(ir));
        }
        r.derived = j.at("derived").get<std::vector<std::string>>();
        r.footnotes = j.at("footnotes").get<std::vector<std::string>>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

int exitCode(const Report& r) {
    bool fail = false;
    for (const auto& i : r.identities) {
        if (i.status == "ERROR") return 2;
        if (i.status == "FAIL") fail = true;
    }
    return fail ? 1 : 0;
}

}  // namespace ldual
