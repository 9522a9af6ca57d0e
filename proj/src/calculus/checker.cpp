#include <algorithm>
#include <array>

#include "bqc/calculus.hpp"

namespace bqc {

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    std::size_t premises;
};

constexpr std::array<RuleInfo, 22> kRules{{
    {Rule::A1, "A1", 0},   {Rule::A2, "A2", 0},   {Rule::A3, "A3", 0},   {Rule::A4, "A4", 0},
    {Rule::A5, "A5", 0},   {Rule::A6, "A6", 0},   {Rule::A7, "A7", 0},   {Rule::A8, "A8", 0},
    {Rule::A9, "A9", 0},   {Rule::A10, "A10", 0}, {Rule::A11, "A11", 0}, {Rule::R1, "R1", 2},
    {Rule::R2, "R2", 2},   {Rule::R3a, "R3a", 1}, {Rule::R3b, "R3b", 1}, {Rule::R4, "R4", 2},
    {Rule::R5a, "R5a", 1}, {Rule::R5b, "R5b", 1}, {Rule::R6, "R6", 1},   {Rule::R7, "R7", 1},
    {Rule::R8, "R8", 1},   {Rule::R9, "R9", 1},
}};

const RuleInfo& info(Rule r) { return kRules[static_cast<std::size_t>(r)]; }

}  // namespace

std::string rule_name(Rule r) { return info(r).name; }

std::optional<Rule> parse_rule_name(std::string_view s) {
    for (const auto& i : kRules)
        if (s == i.name) return i.rule;
    return std::nullopt;
}

bool is_axiom(Rule r) { return r <= Rule::A11; }
std::size_t premise_count(Rule r) { return info(r).premises; }

std::vector<Rule> all_rules() {
    std::vector<Rule> out;
    for (const auto& i : kRules) out.push_back(i.rule);
    return out;
}

AxiomInstance Derivation::axiom() const { return {rule, conclusion, with}; }

RuleApp Derivation::app() const {
    RuleApp a{rule, conclusion, with, {}};
    for (const auto& p : premises) a.premises.push_back(p.conclusion);
    return a;
}

std::size_t Derivation::size() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.size();
    return n;
}

void CheckReport::fail(std::string path, std::string reason) {
    ok = false;
    failures.push_back({std::move(path), std::move(reason)});
}

std::string child_path(const std::string& parent, std::size_t i) {
    return (parent == "/" ? "" : parent) + "/premises/" + std::to_string(i);
}

namespace {

std::vector<LTerm> as_terms(const VarList& ys) {
    std::vector<LTerm> ts;
    for (const auto& y : ys) ts.push_back(Var{y});
    return ts;
}

bool free_in(const std::string& x, const Formula& f) { return free_vars(f).count(x) > 0; }

std::string list_text(const VarList& xs) { return render(xs); }

// Collects missing metavariables; returns false if any is absent.
class Need {
public:
    Need(const Instantiation& w, std::string* why) : w_(w), why_(why) {}
    const Formula* A() { return f(w_.A, "A"); }
    const Formula* B() { return f(w_.B, "B"); }
    const Formula* C() { return f(w_.C, "C"); }
    const VarList* xs() { return l(w_.xs, "xs"); }
    const VarList* ys() { return l(w_.ys, "ys"); }
    const std::string* x() {
        if (!w_.x) miss("x");
        return w_.x ? &*w_.x : nullptr;
    }
    bool ok() const { return ok_; }
    void error(const std::string& msg) {
        if (why_ && ok_) *why_ = msg;
        ok_ = false;
    }

private:
    const Formula* f(const std::optional<Formula>& o, const char* n) {
        if (!o) miss(n);
        return o ? &*o : nullptr;
    }
    const VarList* l(const std::optional<VarList>& o, const char* n) {
        if (!o) miss(n);
        return o ? &*o : nullptr;
    }
    void miss(const char* n) { error(std::string("missing instantiation '") + n + "'"); }

    const Instantiation& w_;
    std::string* why_;
    bool ok_ = true;
};

}  // namespace

std::optional<Sequent> axiom_schema(Rule r, const Instantiation& with, std::string* why) {
    Need need(with, why);
    const Formula *A = need.A(), *B = nullptr, *C = nullptr;
    const VarList *xs = nullptr, *ys = nullptr;
    const std::string* x = nullptr;
    switch (r) {
        case Rule::A1: case Rule::A2: case Rule::A3: break;
        case Rule::A4: B = need.B(); x = need.x(); break;
        case Rule::A5: B = need.B(); C = need.C(); break;
        case Rule::A6: case Rule::A7: case Rule::A8:
            B = need.B(); C = need.C(); xs = need.xs(); break;
        case Rule::A9: case Rule::A10: B = need.B(); xs = need.xs(); ys = need.ys(); break;
        case Rule::A11: B = need.B(); xs = need.xs(); x = need.x(); break;
        default: need.error(rule_name(r) + " is not an axiom");
    }
    if (!need.ok()) return std::nullopt;
    if (xs && !distinct(*xs)) need.error("xs has repeated variables");
    if (ys && !distinct(*ys)) need.error("ys has repeated variables");
    if (xs && ys && xs->size() != ys->size()) need.error("|xs| != |ys|");
    if (!need.ok()) return std::nullopt;

    switch (r) {
        case Rule::A1: return Sequent{*A, *A};
        case Rule::A2: return Sequent{*A, f_top()};
        case Rule::A3: return Sequent{f_bot(), *A};
        case Rule::A4:
            return Sequent{f_and(*A, f_exists(*x, *B)), f_exists(*x, f_and(*A, *B))};
        case Rule::A5:
            return Sequent{f_and(*A, f_or(*B, *C)), f_or(f_and(*A, *B), f_and(*A, *C))};
        case Rule::A6:
            return Sequent{f_and(f_allimp(*xs, *A, *B), f_allimp(*xs, *B, *C)), f_allimp(*xs, *A, *C)};
        case Rule::A7:
            return Sequent{f_and(f_allimp(*xs, *A, *B), f_allimp(*xs, *A, *C)),
                           f_allimp(*xs, *A, f_and(*B, *C))};
        case Rule::A8:
            return Sequent{f_and(f_allimp(*xs, *B, *A), f_allimp(*xs, *C, *A)),
                           f_allimp(*xs, f_or(*B, *C), *A)};
        case Rule::A9: {
            auto ts = as_terms(*ys);
            return Sequent{f_allimp(*xs, *A, *B),
                           f_allimp(*xs, substitute(*A, *xs, ts), substitute(*B, *xs, ts))};
        }
        case Rule::A10: return Sequent{f_allimp(*xs, *A, *B), f_allimp(*ys, *A, *B)};
        case Rule::A11: {
            if (std::find(xs->begin(), xs->end(), *x) != xs->end()) {
                need.error("x occurs in xs");
                return std::nullopt;
            }
            VarList all = *xs;
            all.push_back(*x);
            return Sequent{f_allimp(all, *B, *A), f_allimp(*xs, f_exists(*x, *B), *A)};
        }
        default: return std::nullopt;
    }
}

namespace {

void check_axiom_at(const AxiomInstance& inst, const std::string& path, CheckReport& rep) {
    std::string tag = rule_name(inst.rule);
    std::string why;
    auto expect = axiom_schema(inst.rule, inst.with, &why);
    if (!expect) {
        rep.fail(path, tag + ": " + why);
        return;
    }
    const auto& w = inst.with;
    switch (inst.rule) {
        case Rule::A4:
        case Rule::A11:
            if (free_in(*w.x, *w.A)) rep.fail(path, tag + ": " + *w.x + " free in A");
            break;
        case Rule::A10: {
            Formula prem = f_allimp(*w.xs, *w.A, *w.B);
            for (const auto& y : *w.ys)
                if (free_in(y, prem))
                    rep.fail(path, tag + ": " + y + " from ys free in " + render(prem));
            break;
        }
        default: break;
    }
    if (!alpha_equal(*expect, inst.conclusion))
        rep.fail(path, tag + ": conclusion " + render(inst.conclusion) + " does not match schema " +
                           render(*expect));
}

void mismatch(CheckReport& rep, const std::string& path, const std::string& tag, const std::string& what,
              const Formula& got, const Formula& want) {
    rep.fail(path, tag + ": " + what + " is " + render(got) + ", expected " + render(want));
}

void check_rule_at(const RuleApp& app, const std::string& path, CheckReport& rep) {
    std::string tag = rule_name(app.rule);
    if (is_axiom(app.rule)) {
        rep.fail(path, tag + " is an axiom");
        return;
    }
    if (app.premises.size() != premise_count(app.rule)) {
        rep.fail(path, tag + ": expected " + std::to_string(premise_count(app.rule)) +
                           " premises, got " + std::to_string(app.premises.size()));
        return;
    }
    const Sequent& c = app.conclusion;
    const Sequent& p = app.premises[0];
    auto same = [&](const std::string& what, const Formula& got, const Formula& want) {
        if (!alpha_equal(got, want)) mismatch(rep, path, tag, what, got, want);
    };
    const auto& w = app.with;
    switch (app.rule) {
        case Rule::R1: {
            const Sequent& q = app.premises[1];
            same("first premise antecedent", p.lhs, c.lhs);
            same("second premise antecedent", q.lhs, p.rhs);
            same("conclusion succedent", c.rhs, q.rhs);
            break;
        }
        case Rule::R2: {
            const Sequent& q = app.premises[1];
            same("first premise antecedent", p.lhs, c.lhs);
            same("second premise antecedent", q.lhs, c.lhs);
            same("conclusion succedent", c.rhs, f_and(p.rhs, q.rhs));
            break;
        }
        case Rule::R3a:
        case Rule::R3b: {
            auto* conj = as<AndF>(p.rhs);
            if (!conj) {
                rep.fail(path, tag + ": premise succedent " + render(p.rhs) + " is not a conjunction");
                break;
            }
            same("conclusion antecedent", c.lhs, p.lhs);
            same("conclusion succedent", c.rhs, app.rule == Rule::R3a ? conj->left : conj->right);
            break;
        }
        case Rule::R4: {
            const Sequent& q = app.premises[1];
            same("first premise succedent", p.rhs, c.rhs);
            same("second premise succedent", q.rhs, c.rhs);
            same("conclusion antecedent", c.lhs, f_or(p.lhs, q.lhs));
            break;
        }
        case Rule::R5a:
        case Rule::R5b: {
            auto* disj = as<OrF>(p.lhs);
            if (!disj) {
                rep.fail(path, tag + ": premise antecedent " + render(p.lhs) + " is not a disjunction");
                break;
            }
            same("conclusion succedent", c.rhs, p.rhs);
            same("conclusion antecedent", c.lhs, app.rule == Rule::R5a ? disj->left : disj->right);
            break;
        }
        case Rule::R6: {
            if (!w.xs || !w.ys) {
                rep.fail(path, tag + ": missing instantiation 'xs'/'ys'");
                break;
            }
            if (w.xs->size() != w.ys->size()) {
                rep.fail(path, tag + ": |xs| != |ys|");
                break;
            }
            if (!distinct(*w.xs) || !distinct(*w.ys)) {
                rep.fail(path, tag + ": variable lists must be duplicate-free");
                break;
            }
            auto ts = as_terms(*w.ys);
            same("conclusion antecedent", c.lhs, substitute(p.lhs, *w.xs, ts));
            same("conclusion succedent", c.rhs, substitute(p.rhs, *w.xs, ts));
            break;
        }
        case Rule::R7:
        case Rule::R8: {
            if (!w.x) {
                rep.fail(path, tag + ": missing instantiation 'x'");
                break;
            }
            const Sequent& with_ex = app.rule == Rule::R7 ? c : p;
            const Sequent& without = app.rule == Rule::R7 ? p : c;
            auto* ex = as<ExistsF>(with_ex.lhs);
            if (!ex || ex->var != *w.x) {
                rep.fail(path, tag + ": " + (app.rule == Rule::R7 ? "conclusion" : "premise") +
                                   " antecedent " + render(with_ex.lhs) + " is not ex " + *w.x + " ...");
                break;
            }
            same("body of the existential", ex->body, without.lhs);
            same("conclusion succedent", c.rhs, p.rhs);
            if (free_in(*w.x, c.rhs)) rep.fail(path, tag + ": " + *w.x + " free in A");
            break;
        }
        case Rule::R9: {
            if (!w.xs) {
                rep.fail(path, tag + ": missing instantiation 'xs'");
                break;
            }
            if (!distinct(*w.xs)) {
                rep.fail(path, tag + ": xs has repeated variables");
                break;
            }
            auto* conj = as<AndF>(p.lhs);
            auto* imp = as<AllImpF>(c.rhs);
            if (!conj) {
                rep.fail(path, tag + ": premise antecedent " + render(p.lhs) + " is not a conjunction");
                break;
            }
            if (!imp || imp->vars != *w.xs) {
                rep.fail(path, tag + ": conclusion succedent " + render(c.rhs) + " is not all " +
                                   list_text(*w.xs) + " (B -> C)");
                break;
            }
            same("conclusion antecedent", c.lhs, conj->left);
            same("implication antecedent", imp->ant, conj->right);
            same("implication consequent", imp->cons, p.rhs);
            for (const auto& v : *w.xs)
                if (free_in(v, conj->left)) rep.fail(path, tag + ": " + v + " from xs free in A");
            break;
        }
        default: break;
    }
}

void check_tree(const Derivation& d, const std::string& path, CheckReport& rep) {
    if (is_axiom(d.rule)) {
        if (!d.premises.empty()) rep.fail(path, rule_name(d.rule) + ": axioms take no premises");
        check_axiom_at(d.axiom(), path, rep);
        return;
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i)
        check_tree(d.premises[i], child_path(path, i), rep);
    check_rule_at(d.app(), path, rep);
}

}  // namespace

CheckReport check_axiom(const AxiomInstance& inst) {
    CheckReport rep;
    if (!is_axiom(inst.rule)) rep.fail("/", rule_name(inst.rule) + " is not an axiom");
    else check_axiom_at(inst, "/", rep);
    return rep;
}

CheckReport check_rule(const RuleApp& app) {
    CheckReport rep;
    check_rule_at(app, "/", rep);
    return rep;
}

CheckReport check_derivation(const Derivation& d) {
    CheckReport rep;
    check_tree(d, "/", rep);
    return rep;
}

}  // namespace bqc
