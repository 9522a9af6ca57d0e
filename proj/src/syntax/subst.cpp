#include <algorithm>
#include <cctype>

#include "bqc/syntax.hpp"

namespace bqc {

std::string fresh_name(const std::string& name, const std::set<std::string>& avoid) {
    std::size_t end = name.size();
    while (end > 1 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
    std::string stem = name.substr(0, end);
    for (std::size_t k = 1;; ++k) {
        std::string cand = stem + std::to_string(k);
        if (!avoid.count(cand)) return cand;
    }
}

namespace {

using Sigma = std::map<std::string, LTerm>;

// Variables that any term of sigma relevant to the given free set may introduce.
std::set<std::string> introduced(const Sigma& sigma, const std::set<std::string>& fv) {
    std::set<std::string> out;
    for (const auto& [x, t] : sigma)
        if (fv.count(x))
            if (auto* v = std::get_if<Var>(&t)) out.insert(v->name);
    return out;
}

Formula subst(const Formula& f, const Sigma& sigma);

// Shared by both binders: drops shadowed keys and renames binders that would
// capture a substituted variable.
template <class Body>
Formula under_binders(const std::vector<std::string>& vars, const Sigma& sigma,
                      const std::set<std::string>& scope_fv, const std::set<std::string>& scope_all,
                      Body&& rebuild) {
    Sigma inner = sigma;
    for (const auto& v : vars) inner.erase(v);
    std::set<std::string> fv_inner;
    for (const auto& x : scope_fv)
        if (std::find(vars.begin(), vars.end(), x) == vars.end()) fv_inner.insert(x);
    std::set<std::string> danger = introduced(inner, fv_inner);

    std::set<std::string> avoid = scope_all;
    for (const auto& [x, t] : inner) {
        avoid.insert(x);
        if (auto* v = std::get_if<Var>(&t)) avoid.insert(v->name);
    }
    avoid.insert(vars.begin(), vars.end());

    std::vector<std::string> out_vars = vars;
    for (auto& v : out_vars) {
        if (!danger.count(v)) continue;
        std::string fresh = fresh_name(v, avoid);
        avoid.insert(fresh);
        inner[v] = Var{fresh};
        v = fresh;
    }
    return rebuild(out_vars, inner);
}

Formula subst(const Formula& f, const Sigma& sigma) {
    if (sigma.empty()) return f;
    if (auto* a = as<AtomF>(f)) {
        std::vector<LTerm> args = a->args;
        bool changed = false;
        for (auto& t : args)
            if (auto* v = std::get_if<Var>(&t))
                if (auto it = sigma.find(v->name); it != sigma.end()) {
                    t = it->second;
                    changed = true;
                }
        return changed ? f_atom(a->pred, std::move(args)) : f;
    }
    if (auto* x = as<AndF>(f)) return f_and(subst(x->left, sigma), subst(x->right, sigma));
    if (auto* x = as<OrF>(f)) return f_or(subst(x->left, sigma), subst(x->right, sigma));
    if (auto* x = as<AllImpF>(f)) {
        std::set<std::string> fv = free_vars(x->ant);
        fv.merge(free_vars(x->cons));
        fv.insert(x->vars.begin(), x->vars.end());
        std::set<std::string> all = all_vars(x->ant);
        all.merge(all_vars(x->cons));
        return under_binders(x->vars, sigma, fv, all, [&](const auto& vars, const Sigma& inner) {
            return f_allimp(vars, subst(x->ant, inner), subst(x->cons, inner));
        });
    }
    if (auto* x = as<ExistsF>(f)) {
        std::set<std::string> fv = free_vars(x->body);
        fv.insert(x->var);
        return under_binders({x->var}, sigma, fv, all_vars(x->body),
                             [&](const auto& vars, const Sigma& inner) {
                                 return f_exists(vars[0], subst(x->body, inner));
                             });
    }
    return f;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, LTerm>& sigma) {
    return subst(f, sigma);
}

Formula substitute(const Formula& f, const VarList& xs, const std::vector<LTerm>& ts) {
    if (xs.size() != ts.size()) throw SubstitutionError("substitute: |xs| != |ts|");
    if (!distinct(xs)) throw SubstitutionError("substitute: repeated variable");
    Sigma sigma;
    for (std::size_t i = 0; i < xs.size(); ++i) sigma.emplace(xs[i], ts[i]);
    return subst(f, sigma);
}

}  // namespace bqc
