// Command-line front end: check, extract, eval, realize, validate.
#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "bqc/campaign.hpp"
#include "bqc/extraction.hpp"
#include "bqc/semantics.hpp"

using namespace bqc;
using nlohmann::json;

namespace {

enum Status { kOk = 0, kFail = 1, kUnknown = 2, kInput = 3 };

// Line-oriented key/value output, or one JSON object with --json.
class Report {
public:
    explicit Report(bool as_json) : json_(as_json) {}

    void put(const std::string& key, const std::string& value) {
        if (json_) obj_[key] = value;
        else std::cout << key << ": " << value << "\n";
    }
    void add(const std::string& key, const std::string& value) {
        if (json_) obj_[key].push_back(value);
        else std::cout << key << ": " << value << "\n";
    }
    void raw(const json& j, const std::string& key) {
        if (json_) obj_[key] = j;
    }
    void text(const std::string& line) {
        if (!json_) std::cout << line << "\n";
    }
    ~Report() {
        if (json_) std::cout << obj_.dump(2) << "\n";
    }

private:
    bool json_;
    json obj_ = json::object();
};

std::string join(const std::vector<Nat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

std::string list_text(const VarList& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
}

std::vector<Nat> parse_args(const std::string& text) {
    std::vector<Nat> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part.erase(0, part.find_first_not_of(' '));
        part.erase(part.find_last_not_of(' ') + 1);
        if (part.empty()) continue;
        out.push_back(parse_nat(part));
    }
    return out;
}

std::string replay_command(const Replay& r) {
    return "bqc eval --code " + to_string(r.code) + " --args \"" + join(r.args) + "\"";
}

int verdict_status(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Holds: return kOk;
        case VerdictKind::Fails: return kFail;
        case VerdictKind::Unknown: return kUnknown;
    }
    return kInput;
}

void report_verdict(Report& out, const Verdict& v) {
    out.put("verdict", verdict_name(v.kind));
    if (v.kind == VerdictKind::Unknown) out.put("bound", std::to_string(v.bound));
    for (const auto& t : v.trace) out.add("trace", t);
    if (v.replay) {
        out.put("replay", replay_command(*v.replay));
        out.put("replay_outcome", v.replay->outcome);
    }
}

struct Common {
    bool json = false;
};

int cmd_check(const std::string& file, const Common& c) {
    ProofFile pf = load_proof(file);
    CheckReport rep = check_derivation(pf.root);
    Report out(c.json);
    out.put("status", rep.ok ? "ok" : "fail");
    out.put("conclusion", render(pf.root.conclusion));
    out.put("nodes", std::to_string(pf.root.size()));
    for (const auto& f : rep.failures) out.add("failure", f.path + ": " + f.reason);
    return rep.ok ? kOk : kFail;
}

VarList list_or_canonical(const std::optional<std::string>& vars, const Sequent& s) {
    return vars ? parse_var_list(*vars) : canonical_list(s);
}

int cmd_extract(const std::string& file, const std::optional<std::string>& vars, bool show_term, bool raw,
                const Common& c) {
    ProofFile pf = load_proof(file);
    CheckReport rep = check_derivation(pf.root);
    if (!rep.ok) {
        Report out(c.json);
        out.put("status", "fail");
        for (const auto& f : rep.failures) out.add("failure", f.path + ": " + f.reason);
        return kFail;
    }
    VarList rs = list_or_canonical(vars, pf.root.conclusion);
    Index e = extract(pf.root, rs);
    if (raw) {
        std::cout << to_string(e.code) << "\n";
        return kOk;
    }
    Report out(c.json);
    out.put("status", "ok");
    out.put("sequent", render(pf.root.conclusion));
    out.put("list", list_text(rs));
    out.put("index", to_string(e.code));
    if (show_term) out.put("term", render(std::get<ProgTerm>(decode(e))));
    return kOk;
}

int cmd_eval(const std::string& code, const std::string& args, std::optional<std::uint64_t> fuel, bool show_term,
             bool raw, const Common& c) {
    Index e{parse_nat(code)};
    std::vector<Nat> as = parse_args(args);
    EvalOutcome o = eval(e, as, fuel.value_or(default_fuel()));
    int status = o.is_value() ? kOk : o.fuel_exhausted() ? kUnknown : kFail;
    if (raw) {
        std::cout << o.describe() << "\n";
        return status;
    }
    Report out(c.json);
    out.put("outcome", o.describe());
    if (show_term) {
        Decoded d = decode(e);
        if (auto* t = std::get_if<ProgTerm>(&d)) out.put("term", render(*t));
        else out.put("term", "undecodable: " + std::get<DecodeFailure>(d).reason);
    }
    return status;
}

struct RealizeArgs {
    std::optional<std::string> code, proof, sequent, formula, vars, witnesses;
    std::string eval_file;
    std::uint64_t bound = 16;
    std::optional<std::uint64_t> fuel;
    bool parallel = false;
};

int cmd_realize(const RealizeArgs& a, const Common& c) {
    if (!!a.code == !!a.proof) throw InputError("give exactly one of --code and --proof");
    if (a.sequent && a.formula) throw InputError("give at most one of --sequent and --formula");
    Evaluation f = load_evaluation(a.eval_file);
    Signature sig;
    for (const auto& [name, p] : f.preds) sig.arities[name] = p.arity;
    std::optional<ProofFile> pf;
    if (a.proof) {
        pf = load_proof(*a.proof);
        CheckReport rep = check_derivation(pf->root);
        if (!rep.ok) throw InputError(*a.proof + ": derivation does not check: " + rep.failures[0].path + ": " +
                                      rep.failures[0].reason);
        for (const auto& [name, n] : pf->signature.arities) sig.arities.emplace(name, n);
    }

    CheckOptions opt;
    opt.bound = a.bound;
    opt.fuel = a.fuel.value_or(default_fuel());
    opt.parallel = a.parallel;
    Report out(c.json);

    if (a.formula) {
        if (a.witnesses) throw InputError("--witnesses needs a sequent");
        Formula A = parse_formula(*a.formula, sig);
        Nat e = a.code ? parse_nat(*a.code) : sentence_realizer(pf->root, opt.fuel);
        out.put("formula", render(A));
        out.put("index", to_string(e));
        Verdict v = check(e, A, f, opt);
        report_verdict(out, v);
        return verdict_status(v);
    }

    Sequent S;
    if (a.sequent) S = parse_sequent(*a.sequent, sig);
    else if (pf) S = pf->root.conclusion;
    else throw InputError("--code needs --sequent or --formula");
    VarList rs = list_or_canonical(a.vars, S);
    Nat e = a.code ? parse_nat(*a.code) : extract(pf->root, rs).code;
    out.put("sequent", render(S));
    out.put("list", list_text(rs));
    out.put("index", to_string(e));
    Verdict v = a.witnesses ? check_with_witnesses(e, S, rs, f, load_witnesses(*a.witnesses), opt)
                            : check_sequent(e, S, rs, f, opt);
    report_verdict(out, v);
    return verdict_status(v);
}

struct ValidateArgs {
    std::string dir;
    std::size_t trials = 50, lists = 2;
    std::uint64_t seed = 7, bound = 16;
    std::optional<std::uint64_t> fuel;
    bool parallel = false;
};

int cmd_validate(const ValidateArgs& a, const Common& c) {
    auto inputs = load_corpus(a.dir);
    CampaignOptions opt;
    opt.trials = a.trials;
    opt.lists = a.lists;
    opt.seed = a.seed;
    opt.check.bound = a.bound;
    opt.check.fuel = a.fuel.value_or(default_fuel());
    opt.parallel = a.parallel;
    CampaignReport rep = run_campaign(inputs, opt);

    std::size_t checks = 0, holds = 0, fails = 0, unknown = 0;
    json rows = json::array();
    std::ostringstream table;
    table << std::left << std::setw(24) << "proof" << std::right << std::setw(8) << "checks" << std::setw(8)
          << "holds" << std::setw(8) << "fails" << std::setw(9) << "unknown" << "  status\n";
    for (const auto& p : rep.proofs) {
        checks += p.checks;
        holds += p.holds;
        fails += p.fails;
        unknown += p.unknown;
        std::string status = p.ok() ? "ok" : p.error.empty() ? "FAIL" : "ERROR";
        table << std::left << std::setw(24) << p.name << std::right << std::setw(8) << p.checks << std::setw(8)
              << p.holds << std::setw(8) << p.fails << std::setw(9) << p.unknown << "  " << status << "\n";
        json row = {{"proof", p.name}, {"checks", p.checks}, {"holds", p.holds}, {"fails", p.fails},
                    {"unknown", p.unknown}, {"rank0", p.rank0}, {"status", status}};
        if (!p.error.empty()) {
            table << "  error: " << p.error << "\n";
            row["error"] = p.error;
        }
        if (p.fail_verdict) {
            table << "  list: " << list_text(*p.fail_list) << "\n  index: " << to_string(p.fail_index) << "\n";
            for (const auto& t : p.fail_verdict->trace) table << "  trace: " << t << "\n";
            if (p.fail_verdict->replay) table << "  replay: " << replay_command(*p.fail_verdict->replay) << "\n";
            table << "  evaluation: " << json::parse(*p.fail_evaluation).dump() << "\n";
            row["list"] = list_text(*p.fail_list);
            row["index"] = to_string(p.fail_index);
            row["trace"] = p.fail_verdict->trace;
            if (p.fail_verdict->replay) row["replay"] = replay_command(*p.fail_verdict->replay);
            row["evaluation"] = json::parse(*p.fail_evaluation);
        }
        rows.push_back(row);
    }
    Report out(c.json);
    out.text(table.str());
    out.raw(rows, "proofs");
    out.put("proofs", std::to_string(rep.proofs.size()));
    out.put("checks", std::to_string(checks));
    out.put("holds", std::to_string(holds));
    out.put("fails", std::to_string(fails));
    out.put("unknown", std::to_string(unknown));
    out.put("status", rep.ok() ? "ok" : "fail");
    return rep.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proof checking, realizer extraction and realizability checking"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "machine-readable output");

    std::string file;
    auto* check_cmd = app.add_subcommand("check", "check a derivation file");
    check_cmd->add_option("proof", file, "derivation file")->required();

    std::optional<std::string> vars;
    bool show_term = false, raw = false;
    auto* extract_cmd = app.add_subcommand("extract", "extract a realizer index from a derivation");
    extract_cmd->add_option("proof", file, "derivation file")->required();
    extract_cmd->add_option("--vars", vars, "admissible list, comma separated (default: sorted free variables)");
    extract_cmd->add_flag("--show-term", show_term, "print the decoded term");
    extract_cmd->add_flag("--raw", raw, "print only the index");

    std::string code, args;
    std::optional<std::uint64_t> fuel;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a code on arguments");
    eval_cmd->add_option("--code", code, "index")->required();
    eval_cmd->add_option("--args", args, "comma separated naturals");
    eval_cmd->add_option("--fuel", fuel, "evaluation steps (default: BQC_FUEL or 1000000)");
    eval_cmd->add_flag("--show-term", show_term, "print the decoded term");
    eval_cmd->add_flag("--raw", raw, "print only the outcome");

    RealizeArgs ra;
    auto* realize_cmd = app.add_subcommand("realize", "check a realizer against an evaluation");
    realize_cmd->add_option("--code", ra.code, "candidate index");
    realize_cmd->add_option("--proof", ra.proof, "derivation whose extracted realizer is checked");
    realize_cmd->add_option("--sequent", ra.sequent, "sequent to realize");
    realize_cmd->add_option("--formula", ra.formula, "closed formula to realize");
    realize_cmd->add_option("--vars", ra.vars, "admissible list for the sequent");
    realize_cmd->add_option("--eval", ra.eval_file, "evaluation file")->required();
    realize_cmd->add_option("--witnesses", ra.witnesses, "witness file for implication antecedents");
    realize_cmd->add_option("--bound", ra.bound, "antecedent candidate bound");
    realize_cmd->add_option("--fuel", ra.fuel, "evaluation steps per obligation");
    realize_cmd->add_flag("--parallel", ra.parallel, "spread obligations over threads");

    ValidateArgs va;
    auto* validate_cmd = app.add_subcommand("validate", "run the soundness campaign over a corpus directory");
    validate_cmd->add_option("corpus", va.dir, "directory of .bqc files")->required();
    validate_cmd->add_option("--trials", va.trials, "evaluations per proof and list");
    validate_cmd->add_option("--lists", va.lists, "admissible lists per proof");
    validate_cmd->add_option("--seed", va.seed, "random seed");
    validate_cmd->add_option("--bound", va.bound, "antecedent candidate bound");
    validate_cmd->add_option("--fuel", va.fuel, "evaluation steps per obligation");
    validate_cmd->add_flag("--parallel", va.parallel, "fan proofs out over threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*check_cmd) return cmd_check(file, common);
        if (*extract_cmd) return cmd_extract(file, vars, show_term, raw, common);
        if (*eval_cmd) return cmd_eval(code, args, fuel, show_term, raw, common);
        if (*realize_cmd) return cmd_realize(ra, common);
        if (*validate_cmd) return cmd_validate(va, common);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kInput;
}
