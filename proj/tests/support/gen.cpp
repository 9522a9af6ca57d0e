#include "support/gen.hpp"

namespace gen {

using namespace bqc;

Signature signature() { return Signature{{{"R", 0}, {"P", 1}, {"Q", 2}}, false}; }

namespace {

LTerm term(std::mt19937_64& rng, const FormulaOptions& opt, const std::vector<std::string>& vars) {
    if (vars.empty() || rng() % 4 == 0)
        return Num{Nat(static_cast<unsigned long>(rng() % (opt.max_const + 1)))};
    return Var{vars[rng() % vars.size()]};
}

Formula go(std::mt19937_64& rng, const FormulaOptions& opt, int depth,
           std::vector<std::string>& vars) {
    int hi = depth <= 0 ? 3 : 8;
    switch (std::uniform_int_distribution<int>(0, hi)(rng)) {
        case 0: return opt.bot ? f_bot() : f_atom("R");
        case 1: return opt.top ? f_top() : f_atom("R");
        case 2: return f_atom("P", {term(rng, opt, vars)});
        case 3: return f_atom("Q", {term(rng, opt, vars), term(rng, opt, vars)});
        case 4: {
            auto l = go(rng, opt, depth - 1, vars);
            return f_and(l, go(rng, opt, depth - 1, vars));
        }
        case 5: {
            auto l = go(rng, opt, depth - 1, vars);
            return f_or(l, go(rng, opt, depth - 1, vars));
        }
        case 6:
        case 7: {
            std::string v = opt.vars[rng() % opt.vars.size()];
            vars.push_back(v);
            auto b = go(rng, opt, depth - 1, vars);
            vars.pop_back();
            return f_exists(v, b);
        }
        default: {
            if (!opt.implications) return f_atom("R");
            std::vector<std::string> bs;
            for (const auto& v : opt.vars)
                if (rng() % 3 == 0) bs.push_back(v);
            vars.insert(vars.end(), bs.begin(), bs.end());
            auto a = go(rng, opt, depth - 1, vars);
            auto c = go(rng, opt, depth - 1, vars);
            vars.resize(vars.size() - bs.size());
            return f_allimp(bs, a, c);
        }
    }
}

}  // namespace

Formula formula(std::mt19937_64& rng, const FormulaOptions& opt) {
    std::vector<std::string> vars = opt.vars;
    return go(rng, opt, opt.depth, vars);
}

Formula alpha_variant(std::mt19937_64& rng, const Formula& f) {
    if (auto* x = as<AndF>(f)) return f_and(alpha_variant(rng, x->left), alpha_variant(rng, x->right));
    if (auto* x = as<OrF>(f)) return f_or(alpha_variant(rng, x->left), alpha_variant(rng, x->right));
    if (auto* x = as<ExistsF>(f)) {
        std::set<std::string> avoid = all_vars(x->body);
        avoid.insert(x->var);
        std::string w = fresh_name(rng() % 2 ? "v" : "w", avoid);
        Formula body = substitute(x->body, {x->var}, {Var{w}});
        return f_exists(w, alpha_variant(rng, body));
    }
    if (auto* x = as<AllImpF>(f)) {
        std::set<std::string> avoid = all_vars(x->ant);
        avoid.merge(all_vars(x->cons));
        avoid.insert(x->vars.begin(), x->vars.end());
        std::vector<std::string> ws;
        std::vector<LTerm> ts;
        for (std::size_t i = 0; i < x->vars.size(); ++i) {
            ws.push_back(fresh_name("u", avoid));
            avoid.insert(ws.back());
            ts.push_back(Var{ws.back()});
        }
        return f_allimp(ws, alpha_variant(rng, substitute(x->ant, x->vars, ts)),
                        alpha_variant(rng, substitute(x->cons, x->vars, ts)));
    }
    return f;
}

}  // namespace gen
