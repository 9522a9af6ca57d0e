#include <algorithm>

#include "bqc/extraction.hpp"

namespace bqc {

namespace {

std::optional<std::size_t> position(const VarList& xs, const std::string& v) {
    auto it = std::find(xs.begin(), xs.end(), v);
    if (it == xs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - xs.begin()) + 1;
}

ProgTerm code_const(const ProgTerm& t) { return t_const(encode(t).code); }
ProgTerm proj_const(std::size_t i) { return t_const(encode(t_arg(i)).code); }

std::vector<std::size_t> arities(std::size_t count, std::size_t m) { return std::vector<std::size_t>(count, m); }

// compose(e, es) where every inner code has arity m
Index compose_all(const Index& e, const std::vector<Index>& es, std::size_t m) {
    auto ms = arities(es.size(), m);
    return build_compose(e, es, ms);
}

// I^1_m .. I^n_m
std::vector<Index> leading_projs(std::size_t n, std::size_t m) {
    std::vector<Index> out;
    for (std::size_t j = 1; j <= n; ++j) out.push_back(build_proj(j, m));
    return out;
}

VarList sorted_union(const std::vector<const Sequent*>& ss, const VarList& exclude) {
    std::set<std::string> all;
    for (const auto* s : ss) all.merge(free_vars(*s));
    for (const auto& x : exclude) all.erase(x);
    return {all.begin(), all.end()};
}

VarList rule_base_list(const RuleApp& app) {
    std::vector<const Sequent*> ss{&app.conclusion};
    for (const auto& p : app.premises) ss.push_back(&p);
    switch (app.rule) {
        case Rule::R7:
        case Rule::R8: return sorted_union(ss, {*app.with.x});
        case Rule::R9: return sorted_union(ss, *app.with.xs);
        default: return sorted_union(ss, {});
    }
}

}  // namespace

Index realize_axiom(const AxiomInstance& inst, const VarList& rs) {
    if (!is_admissible(rs, inst.conclusion))
        throw ExtractionError("list " + render(rs) + " is not admissible for " + render(inst.conclusion));
    const std::size_t l = rs.size();
    const ProgTerm d = t_arg(l + 1);
    const auto& w = inst.with;
    switch (inst.rule) {
        case Rule::A1:
        case Rule::A2: return build_proj(l + 1, l + 1);
        case Rule::A3: {
            Index e = build_const(0);
            for (std::size_t n = 0; n <= l; ++n) e = build_dummy(e, n);
            return e;
        }
        case Rule::A4:
        case Rule::A5:
            return encode(t_pair(t_fst(t_snd(d)), t_pair(t_fst(d), t_snd(t_snd(d)))));
        case Rule::A6: {
            std::size_t n = w.xs->size();
            std::vector<ProgTerm> args{t_snd(d)};
            for (std::size_t j = 1; j <= n; ++j) args.push_back(proj_const(j));
            args.push_back(t_fst(d));
            return encode(t_build(BuilderTag::compose(arities(n + 1, n + 1)), args));
        }
        case Rule::A7: {
            std::size_t n = w.xs->size();
            return encode(t_build(BuilderTag::compose({n + 1, n + 1}),
                                  {code_const(t_pair(t_arg(1), t_arg(2))), t_fst(d), t_snd(d)}));
        }
        case Rule::A8: {
            std::size_t n = w.xs->size();
            auto branch = [&](ProgTerm which) {
                std::vector<ProgTerm> args{which};
                for (std::size_t j = 1; j <= n; ++j) args.push_back(proj_const(j));
                args.push_back(code_const(t_snd(t_arg(n + 1))));
                return t_build(BuilderTag::compose(arities(n + 1, n + 1)), args);
            };
            return encode(t_build(BuilderTag::cond(n), {branch(t_fst(d)), branch(t_snd(d))}));
        }
        case Rule::A9:
        case Rule::A10: {
            const VarList& xs = *w.xs;
            const VarList& ys = *w.ys;
            std::size_t n = xs.size();
            // arguments of the inner code: bound values 1..n, antecedent n+1, list n+2..n+1+l
            std::size_t N = n + 1 + l;
            std::vector<ProgTerm> args{d};
            for (std::size_t i = 0; i < n; ++i) {
                ProgTerm src;
                if (inst.rule == Rule::A9) {
                    // value of y_i in the conclusion's scope
                    if (auto j = position(xs, ys[i])) src = t_arg(*j);
                    else if (auto r = position(rs, ys[i])) src = t_arg(n + 1 + *r);
                    else src = t_arg(i + 1);  // x_i is vacuous
                } else {
                    // value of x_i in the conclusion's scope
                    if (auto j = position(ys, xs[i])) src = t_arg(*j);
                    else if (auto r = position(rs, xs[i])) src = t_arg(n + 1 + *r);
                    else src = t_arg(1);  // x_i is vacuous; any bound value lies in M
                }
                args.push_back(code_const(src));
            }
            args.push_back(proj_const(n + 1));
            ProgTerm k = t_build(BuilderTag::compose(arities(n + 1, N)), args);
            std::vector<ProgTerm> sargs{k};
            for (std::size_t j = 1; j <= l; ++j) sargs.push_back(t_arg(j));
            return encode(t_build(BuilderTag::smn(n + 1, l), sargs));
        }
        case Rule::A11: {
            std::size_t n = w.xs->size();
            std::vector<ProgTerm> args{d};
            for (std::size_t j = 1; j <= n; ++j) args.push_back(proj_const(j));
            args.push_back(code_const(t_fst(t_arg(n + 1))));
            args.push_back(code_const(t_snd(t_arg(n + 1))));
            return encode(t_build(BuilderTag::compose(arities(n + 2, n + 1)), args));
        }
        default: throw ExtractionError(rule_name(inst.rule) + " is not an axiom");
    }
}

std::vector<VarList> premise_lists(const RuleApp& app) {
    VarList u = rule_base_list(app);
    switch (app.rule) {
        case Rule::R7: {
            VarList l = u;
            l.push_back(*app.with.x);
            return {l};
        }
        case Rule::R9: {
            VarList l = *app.with.xs;
            l.insert(l.end(), u.begin(), u.end());
            return {l};
        }
        default: return std::vector<VarList>(app.premises.size(), u);
    }
}

VarList construction_list(const RuleApp& app) {
    VarList u = rule_base_list(app);
    if (app.rule == Rule::R8) u.push_back(*app.with.x);
    return u;
}

Index realize_rule(const RuleApp& app, std::span<const RealizedSequent> premises, const VarList& rs) {
    if (premises.size() != premise_count(app.rule))
        throw ExtractionError(rule_name(app.rule) + ": wrong number of premise realizers");
    auto lists = premise_lists(app);
    std::vector<Index> a;
    for (std::size_t i = 0; i < premises.size(); ++i) a.push_back(adapt_list(premises[i], lists[i]).index);

    const VarList u = rule_base_list(app);
    const std::size_t p = u.size();
    const std::size_t P = p + 1;
    Index e;
    switch (app.rule) {
        case Rule::R1: {
            auto es = leading_projs(p, P);
            es.push_back(a[0]);
            e = compose_all(a[1], es, P);
            break;
        }
        case Rule::R2: e = compose_all(encode(t_pair(t_arg(1), t_arg(2))), {a[0], a[1]}, P); break;
        case Rule::R3a: e = compose_all(encode(t_fst(t_arg(1))), {a[0]}, P); break;
        case Rule::R3b: e = compose_all(encode(t_snd(t_arg(1))), {a[0]}, P); break;
        case Rule::R4: {
            auto es = leading_projs(p, P);
            es.push_back(encode(t_snd(t_arg(P))));
            e = build_cond(compose_all(a[0], es, P), compose_all(a[1], es, P), p);
            break;
        }
        case Rule::R5a:
        case Rule::R5b: {
            auto es = leading_projs(p, P);
            unsigned tag = app.rule == Rule::R5a ? 0 : 1;
            es.push_back(encode(t_pair(t_const(tag), t_arg(P))));
            e = compose_all(a[0], es, P);
            break;
        }
        case Rule::R6: {
            const VarList& xs = *app.with.xs;
            const VarList& ys = *app.with.ys;
            std::vector<Index> es;
            for (std::size_t i = 0; i < p; ++i) {
                std::size_t src = i + 1;
                if (auto j = position(xs, u[i]))
                    if (auto k = position(u, ys[*j - 1])) src = *k;
                es.push_back(build_proj(src, P));
            }
            es.push_back(build_proj(P, P));
            e = compose_all(a[0], es, P);
            break;
        }
        case Rule::R7: {
            auto es = leading_projs(p, P);
            es.push_back(encode(t_fst(t_arg(P))));
            es.push_back(encode(t_snd(t_arg(P))));
            e = compose_all(a[0], es, P);
            break;
        }
        case Rule::R8: {
            auto es = leading_projs(p, p + 2);
            es.push_back(encode(t_pair(t_arg(p + 1), t_arg(p + 2))));
            e = compose_all(a[0], es, p + 2);
            break;
        }
        case Rule::R9: {
            std::size_t n = app.with.xs->size();
            // inner layout: bound 1..n, antecedent n+1, list n+2..n+1+p, outer antecedent n+p+2
            std::size_t N = n + p + 2;
            auto es = leading_projs(n, N);
            for (std::size_t j = n + 2; j <= n + 1 + p; ++j) es.push_back(build_proj(j, N));
            es.push_back(encode(t_pair(t_arg(N), t_arg(n + 1))));
            Index T = compose_all(a[0], es, N);
            std::vector<ProgTerm> args{t_const(T.code)};
            for (std::size_t j = 1; j <= P; ++j) args.push_back(t_arg(j));
            e = encode(t_build(BuilderTag::smn(n + 1, P), args));
            break;
        }
        default: throw ExtractionError(rule_name(app.rule) + " is not a rule");
    }
    RealizedSequent built{app.conclusion, construction_list(app), e};
    return adapt_list(built, rs).index;
}

Index extract_checked(const Derivation& d, const VarList& rs) {
    if (is_axiom(d.rule)) return realize_axiom(d.axiom(), rs);
    RuleApp app = d.app();
    auto lists = premise_lists(app);
    std::vector<RealizedSequent> prs;
    for (std::size_t i = 0; i < d.premises.size(); ++i)
        prs.push_back({d.premises[i].conclusion, lists[i], extract_checked(d.premises[i], lists[i])});
    return realize_rule(app, prs, rs);
}

Index extract(const Derivation& d, const VarList& rs) {
    CheckReport rep = check_derivation(d);
    if (!rep.ok) {
        const auto& f = rep.failures.front();
        throw ExtractionError("derivation does not check: " + f.path + ": " + f.reason);
    }
    if (!is_admissible(rs, d.conclusion))
        throw ExtractionError("list " + render(rs) + " is not admissible for " + render(d.conclusion));
    return extract_checked(d, rs);
}

Nat sentence_realizer(const Derivation& d, std::uint64_t fuel) {
    if (!as<TopF>(d.conclusion.lhs))
        throw ExtractionError("sentence realizers need a derivation of top => A");
    if (!free_vars(d.conclusion.rhs).empty())
        throw ExtractionError(render(d.conclusion.rhs) + " is not a sentence");
    Index e = extract(d, {});
    std::vector<Nat> zero{Nat(0)};
    EvalOutcome o = eval(e, zero, fuel);
    if (!o.is_value()) throw ExtractionError("applying the realizer to 0: " + o.describe());
    return o.value();
}

}  // namespace bqc
