#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bqc/calculus.hpp"

namespace bqc {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

std::string str_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    if (!j[key].is_string()) bad(where + "/" + key, "expected a string");
    return j[key].get<std::string>();
}

VarList var_list(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of variable names");
    VarList out;
    for (const auto& v : j) {
        if (!v.is_string() || !is_identifier(v.get<std::string>()) || is_keyword(v.get<std::string>()))
            bad(where, "bad variable name " + v.dump());
        out.push_back(v.get<std::string>());
    }
    return out;
}

Derivation node(const json& j, const std::string& where, Signature& sig) {
    if (!j.is_object()) bad(where, "expected an object");
    Derivation d;
    std::string rname = str_field(j, "rule", where);
    auto r = parse_rule_name(rname);
    if (!r) bad(where + "/rule", "unknown rule '" + rname + "'");
    d.rule = *r;
    std::string text = str_field(j, "conclusion", where);
    try {
        d.conclusion = parse_sequent(text, sig);
    } catch (const ParseError& e) {
        bad(where + "/conclusion", e.what());
    }
    if (j.contains("with")) {
        const json& w = j["with"];
        std::string wp = where + "/with";
        if (!w.is_object()) bad(wp, "expected an object");
        for (const auto& [key, val] : w.items()) {
            std::string kp = wp + "/" + key;
            if (key == "A" || key == "B" || key == "C") {
                if (!val.is_string()) bad(kp, "expected a formula string");
                Formula f;
                try {
                    f = parse_formula(val.get<std::string>(), sig);
                } catch (const ParseError& e) {
                    bad(kp, e.what());
                }
                (key == "A" ? d.with.A : key == "B" ? d.with.B : d.with.C) = f;
            } else if (key == "xs") {
                d.with.xs = var_list(val, kp);
            } else if (key == "ys") {
                d.with.ys = var_list(val, kp);
            } else if (key == "x") {
                if (!val.is_string() || !is_identifier(val.get<std::string>()))
                    bad(kp, "expected a variable name");
                d.with.x = val.get<std::string>();
            } else {
                bad(kp, "unknown instantiation key");
            }
        }
    }
    if (j.contains("premises")) {
        const json& ps = j["premises"];
        if (!ps.is_array()) bad(where + "/premises", "expected an array");
        for (std::size_t i = 0; i < ps.size(); ++i)
            d.premises.push_back(node(ps[i], where + "/premises/" + std::to_string(i), sig));
    }
    return d;
}

json to_json(const Derivation& d) {
    json j;
    j["rule"] = rule_name(d.rule);
    j["conclusion"] = render(d.conclusion);
    json w = json::object();
    if (d.with.A) w["A"] = render(*d.with.A);
    if (d.with.B) w["B"] = render(*d.with.B);
    if (d.with.C) w["C"] = render(*d.with.C);
    if (d.with.xs) w["xs"] = *d.with.xs;
    if (d.with.ys) w["ys"] = *d.with.ys;
    if (d.with.x) w["x"] = *d.with.x;
    if (!w.empty()) j["with"] = w;
    if (!d.premises.empty()) {
        j["premises"] = json::array();
        for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
    }
    return j;
}

}  // namespace

ProofFile parse_proof(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) bad("/", "expected an object");
    ProofFile pf;
    if (j.contains("signature")) {
        const json& s = j["signature"];
        if (!s.is_object()) bad("/signature", "expected an object of arities");
        for (const auto& [name, ar] : s.items()) {
            if (!is_identifier(name) || is_keyword(name)) bad("/signature", "bad predicate name " + name);
            if (!ar.is_number_unsigned()) bad("/signature/" + name, "expected a non-negative arity");
            pf.signature.arities[name] = ar.get<std::size_t>();
        }
    }
    if (!j.contains("proof")) bad("/", "missing field 'proof'");
    pf.root = node(j["proof"], "/proof", pf.signature);
    return pf;
}

ProofFile load_proof(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_proof(ss.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string dump_proof(const ProofFile& p) {
    json j;
    j["signature"] = json::object();
    for (const auto& [name, ar] : p.signature.arities) j["signature"][name] = ar;
    j["proof"] = to_json(p.root);
    return j.dump(2);
}

}  // namespace bqc
