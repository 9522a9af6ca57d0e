#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bqc/semantics.hpp"

namespace bqc {

using nlohmann::json;

namespace {

void normalize(std::vector<Nat>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Nat nat_of(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return Nat(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        try {
            return parse_nat(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw SemanticsError(where + ": expected a natural number");
}

std::vector<Nat> nats_of(const json& j, const std::string& where) {
    if (!j.is_array()) throw SemanticsError(where + ": expected an array");
    std::vector<Nat> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(nat_of(j[i], where + "/" + std::to_string(i)));
    return out;
}

json nat_json(const Nat& n) {
    if (n.fits_ulong_p()) return json(n.get_ui());
    return json(to_string(n));
}

json nats_json(const std::vector<Nat>& v) {
    json a = json::array();
    for (const auto& n : v) a.push_back(nat_json(n));
    return a;
}

// "(1, 2)" or "()"
std::vector<Nat> parse_tuple_key(const std::string& key, const std::string& where) {
    std::string s;
    for (char c : key)
        if (c != ' ') s += c;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw SemanticsError(where + ": tuple key must look like (a,b)");
    s = s.substr(1, s.size() - 2);
    std::vector<Nat> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(parse_nat(part));
        } catch (const std::invalid_argument&) {
            throw SemanticsError(where + ": bad tuple component '" + part + "'");
        }
    }
    if (s.back() == ',') throw SemanticsError(where + ": trailing comma in tuple key");
    return out;
}

std::string tuple_key(const std::vector<Nat>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + to_string(t[i]);
    return s + ")";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SemanticsError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

bool Evaluation::in_domain(const Nat& a) const { return std::binary_search(domain.begin(), domain.end(), a); }

const std::vector<Nat>& Evaluation::realizers(const std::string& pred, const std::vector<Nat>& tuple) const {
    static const std::vector<Nat> none;
    auto it = preds.find(pred);
    if (it == preds.end()) throw SemanticsError("predicate " + pred + " is not interpreted by the evaluation");
    if (it->second.arity != tuple.size())
        throw SemanticsError("predicate " + pred + " has arity " + std::to_string(it->second.arity) +
                             ", applied to " + std::to_string(tuple.size()) + " arguments");
    auto row = it->second.table.find(tuple);
    return row == it->second.table.end() ? none : row->second;
}

void Evaluation::set(const std::string& pred, std::vector<Nat> tuple, std::vector<Nat> rs) {
    auto& p = preds[pred];
    if (p.table.empty()) p.arity = tuple.size();
    if (p.arity != tuple.size()) throw SemanticsError("predicate " + pred + ": inconsistent arity");
    normalize(rs);
    p.table[std::move(tuple)] = std::move(rs);
}

Evaluation parse_evaluation(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SemanticsError(std::string("evaluation is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("domain")) throw SemanticsError("/domain: missing");
    Evaluation f;
    f.domain = nats_of(j["domain"], "/domain");
    normalize(f.domain);
    if (j.contains("predicates")) {
        const json& ps = j["predicates"];
        if (!ps.is_object()) throw SemanticsError("/predicates: expected an object");
        for (const auto& [name, body] : ps.items()) {
            std::string where = "/predicates/" + name;
            if (!is_identifier(name) || is_keyword(name)) throw SemanticsError(where + ": bad predicate name");
            if (!body.is_object() || !body.contains("arity") || !body["arity"].is_number_unsigned())
                throw SemanticsError(where + ": expected {\"arity\": n, \"table\": {...}}");
            PredTable& p = f.preds[name];
            p.arity = body["arity"].get<std::size_t>();
            if (!body.contains("table")) continue;
            if (!body["table"].is_object()) throw SemanticsError(where + "/table: expected an object");
            for (const auto& [key, rs] : body["table"].items()) {
                std::string rw = where + "/table/" + key;
                auto tuple = parse_tuple_key(key, rw);
                if (tuple.size() != p.arity) throw SemanticsError(rw + ": tuple does not match the arity");
                for (const auto& a : tuple)
                    if (!f.in_domain(a)) throw SemanticsError(rw + ": " + to_string(a) + " is not in the domain");
                auto vals = nats_of(rs, rw);
                normalize(vals);
                p.table[tuple] = std::move(vals);
            }
        }
    }
    return f;
}

Evaluation load_evaluation(const std::filesystem::path& path) { return parse_evaluation(read_file(path)); }

std::string dump_evaluation(const Evaluation& f) {
    json j;
    j["domain"] = nats_json(f.domain);
    json ps = json::object();
    for (const auto& [name, p] : f.preds) {
        json table = json::object();
        for (const auto& [t, rs] : p.table) table[tuple_key(t)] = nats_json(rs);
        ps[name] = {{"arity", p.arity}, {"table", table}};
    }
    j["predicates"] = ps;
    return j.dump(2);
}

Evaluation random_evaluation(const Signature& sig, std::mt19937_64& rng, const RandomEvaluationOptions& opt) {
    std::uniform_int_distribution<std::size_t> dsize(opt.min_domain, opt.max_domain);
    std::uniform_int_distribution<std::size_t> rsize(0, opt.max_realizers);
    std::uniform_int_distribution<unsigned> val(0, opt.value_limit - 1);
    Evaluation f;
    f.domain = opt.required;
    normalize(f.domain);
    std::vector<unsigned> pool;
    for (unsigned i = 0; i < opt.domain_limit; ++i)
        if (!f.in_domain(Nat(i))) pool.push_back(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t want = dsize(rng);
    for (std::size_t i = 0; i < pool.size() && f.domain.size() < want; ++i) f.domain.push_back(Nat(pool[i]));
    normalize(f.domain);

    for (const auto& [name, arity] : sig.arities) {
        PredTable& p = f.preds[name];
        p.arity = arity;
        std::vector<std::size_t> idx(arity, 0);
        if (f.domain.empty() && arity > 0) continue;
        while (true) {
            std::vector<Nat> tuple;
            for (auto i : idx) tuple.push_back(f.domain[i]);
            std::vector<Nat> rs;
            for (std::size_t k = rsize(rng); k > 0; --k) rs.push_back(Nat(val(rng)));
            normalize(rs);
            p.table[tuple] = std::move(rs);
            std::size_t pos = 0;
            while (pos < arity && ++idx[pos] == f.domain.size()) idx[pos++] = 0;
            if (pos == arity) break;
        }
    }
    return f;
}

void WitnessTable::add(std::string path, std::vector<Nat> realizers) {
    entries.push_back({std::move(path), std::nullopt, std::move(realizers)});
}

void WitnessTable::add(std::string path, std::vector<Nat> tuple, std::vector<Nat> realizers) {
    entries.push_back({std::move(path), std::move(tuple), std::move(realizers)});
}

const std::vector<Nat>* WitnessTable::find(const std::string& path, const std::vector<Nat>& tuple) const {
    const std::vector<Nat>* any = nullptr;
    for (const auto& e : entries) {
        if (e.path != path) continue;
        if (e.tuple && *e.tuple == tuple) return &e.realizers;
        if (!e.tuple && !any) any = &e.realizers;
    }
    return any;
}

WitnessTable parse_witnesses(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SemanticsError(std::string("witness file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("witnesses") || !j["witnesses"].is_array())
        throw SemanticsError("/witnesses: expected an array");
    WitnessTable w;
    for (std::size_t i = 0; i < j["witnesses"].size(); ++i) {
        const json& e = j["witnesses"][i];
        std::string where = "/witnesses/" + std::to_string(i);
        if (!e.is_object() || !e.contains("path") || !e["path"].is_string() || !e.contains("realizers"))
            throw SemanticsError(where + ": expected {\"path\": ..., \"realizers\": [...]}");
        auto rs = nats_of(e["realizers"], where + "/realizers");
        if (e.contains("tuple")) w.add(e["path"], nats_of(e["tuple"], where + "/tuple"), std::move(rs));
        else w.add(e["path"], std::move(rs));
    }
    return w;
}

WitnessTable load_witnesses(const std::filesystem::path& path) { return parse_witnesses(read_file(path)); }

}  // namespace bqc
