#include "symbolic.hpp"

#include <algorithm>
#include <functional>

namespace bqc::sym {

namespace {

Sym make(decltype(SymNode::node) n) { return std::make_shared<const SymNode>(SymNode{std::move(n)}); }

// Largest Arg index at most limit occurring in t.
std::size_t max_arg_upto(const ProgTerm& t, std::size_t limit) {
    std::size_t best = 0;
    std::function<void(const ProgTerm&)> walk = [&](const ProgTerm& u) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, ArgT>) {
                    if (x.index <= limit) best = std::max(best, x.index);
                } else if constexpr (std::is_same_v<T, PairT>) {
                    walk(x.left);
                    walk(x.right);
                } else if constexpr (std::is_same_v<T, FstT> || std::is_same_v<T, SndT>) {
                    walk(x.arg);
                } else if constexpr (std::is_same_v<T, IfZFstT>) {
                    walk(x.scrut);
                    walk(x.then_branch);
                    walk(x.else_branch);
                } else if constexpr (std::is_same_v<T, BuildT>) {
                    for (const auto& a : x.args) walk(a);
                }
            },
            u->node);
    };
    walk(t);
    return best;
}

ProgTerm close_term(const SCode& c, const std::map<std::size_t, Nat>* values) {
    return substitute_args(c.term, [&](std::size_t i) -> ProgTerm {
        if (i <= c.arity) return nullptr;
        const Sym& v = c.env[i - c.arity - 1];
        if (const Nat* n = concrete(v)) return t_const(*n);
        return t_const(instantiate(v, *values));
    });
}

std::optional<Sym> apply_builder_sym(const BuilderTag& tag, const std::vector<Sym>& args,
                                     std::uint64_t& fuel) {
    bool all_concrete = std::all_of(args.begin(), args.end(), [](const Sym& a) { return concrete(a); });
    if (all_concrete) {
        std::vector<Nat> vals;
        for (const auto& a : args) vals.push_back(*concrete(a));
        EvalOutcome o = apply_builder(tag, vals, fuel);
        if (!o.is_value()) return std::nullopt;
        return num(o.value());
    }
    const auto& ps = tag.params;
    switch (tag.kind) {
        case BuilderKind::Const: return code_of({t_arg(1), 0, {args[0]}});
        case BuilderKind::Compose: {
            std::size_t n = ps.size();
            auto e = as_closure(args[0], n);
            if (!e) return std::nullopt;
            std::vector<Closure> es;
            for (std::size_t j = 0; j < n; ++j) {
                auto c = as_closure(args[j + 1], ps[j]);
                if (!c) return std::nullopt;
                es.push_back(std::move(*c));
            }
            std::size_t m = n ? *std::max_element(ps.begin(), ps.end()) : 0;
            std::vector<Sym> env = e->env;
            std::vector<ProgTerm> shifted;
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t off = env.size(), mj = ps[j];
                shifted.push_back(reindex_args(es[j].term, [&](std::size_t r) {
                    return r <= mj ? r : m + off + (r - mj);
                }));
                env.insert(env.end(), es[j].env.begin(), es[j].env.end());
            }
            ProgTerm t = substitute_args(e->term, [&](std::size_t i) -> ProgTerm {
                return i <= n ? shifted[i - 1] : t_arg(m + (i - n));
            });
            return code_of({t, m, std::move(env)});
        }
        case BuilderKind::Cond: {
            std::size_t n = ps[0];
            auto a = as_closure(args[0], n + 1);
            auto b = as_closure(args[1], n + 1);
            if (!a || !b) return std::nullopt;
            std::size_t off = a->env.size();
            ProgTerm tb = reindex_args(b->term, [&](std::size_t r) { return r <= n + 1 ? r : r + off; });
            std::vector<Sym> env = a->env;
            env.insert(env.end(), b->env.begin(), b->env.end());
            return code_of({t_ifz(t_arg(n + 1), a->term, tb), n + 1, std::move(env)});
        }
        case BuilderKind::Perm: {
            std::size_t n = ps.size();
            auto c = as_closure(args[0], n);
            if (!c) return std::nullopt;
            ProgTerm t = reindex_args(c->term, [&](std::size_t r) { return r <= n ? ps[r - 1] : r; });
            return code_of({t, n, c->env});
        }
        case BuilderKind::Dummy: {
            std::size_t n = ps[0];
            auto c = as_closure(args[0], n);
            if (!c) return std::nullopt;
            ProgTerm t = reindex_args(c->term, [&](std::size_t r) { return r <= n ? r : r + 1; });
            return code_of({t, n + 1, c->env});
        }
        case BuilderKind::Smn: {
            std::size_t n = ps[0], m = ps[1];
            auto c = as_closure(args[0], n + m);
            if (!c) return std::nullopt;
            std::vector<Sym> env(args.begin() + 1, args.end());
            env.insert(env.end(), c->env.begin(), c->env.end());
            return code_of({c->term, n, std::move(env)});
        }
    }
    return std::nullopt;
}

}  // namespace

Sym num(Nat v) { return make(SNum{std::move(v)}); }
Sym hole(std::size_t id) { return make(SHole{id}); }

Sym mk_pair(Sym l, Sym r) {
    const Nat* a = concrete(l);
    const Nat* b = concrete(r);
    if (a && b) return num(pair(*a, *b));
    return make(SPair{std::move(l), std::move(r)});
}

Sym fst(const Sym& v) {
    if (const Nat* n = concrete(v)) return num(p1(*n));
    if (auto* p = std::get_if<SPair>(&v->node)) return p->l;
    return make(SProj{true, v});
}

Sym snd(const Sym& v) {
    if (const Nat* n = concrete(v)) return num(p2(*n));
    if (auto* p = std::get_if<SPair>(&v->node)) return p->r;
    return make(SProj{false, v});
}

const Nat* concrete(const Sym& v) {
    auto* n = std::get_if<SNum>(&v->node);
    return n ? &n->v : nullptr;
}

std::vector<std::size_t> holes(const Sym& v) {
    std::vector<std::size_t> out;
    std::function<void(const Sym&)> walk = [&](const Sym& s) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, SHole>) out.push_back(x.id);
                else if constexpr (std::is_same_v<T, SPair>) {
                    walk(x.l);
                    walk(x.r);
                } else if constexpr (std::is_same_v<T, SProj>) walk(x.of);
                else if constexpr (std::is_same_v<T, SCode>)
                    for (const auto& e : x.env) walk(e);
            },
            s->node);
    };
    walk(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Nat instantiate(const Sym& v, const std::map<std::size_t, Nat>& values) {
    return std::visit(
        [&](const auto& x) -> Nat {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SNum>) return x.v;
            else if constexpr (std::is_same_v<T, SHole>) return values.at(x.id);
            else if constexpr (std::is_same_v<T, SPair>)
                return pair(instantiate(x.l, values), instantiate(x.r, values));
            else if constexpr (std::is_same_v<T, SProj>) {
                Nat n = instantiate(x.of, values);
                return x.first ? p1(n) : p2(n);
            } else
                return encode(close_term(x, &values)).code;
        },
        v->node);
}

std::string render(const Sym& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SNum>) return to_string(x.v);
            else if constexpr (std::is_same_v<T, SHole>) return "?" + std::to_string(x.id);
            else if constexpr (std::is_same_v<T, SPair>) return "<" + render(x.l) + "," + render(x.r) + ">";
            else if constexpr (std::is_same_v<T, SProj>) return std::string(x.first ? "p1 " : "p2 ") + render(x.of);
            else {
                std::string s = "code[" + std::to_string(x.arity) + "] " + bqc::render(x.term);
                for (const auto& e : x.env) s += " " + render(e);
                return s;
            }
        },
        v->node);
}

std::optional<Closure> as_closure(const Sym& v, std::size_t arity) {
    if (const Nat* n = concrete(v)) {
        auto t = try_decode(*n);
        if (!t || max_arg(*t) > arity) return std::nullopt;
        return Closure{*t, arity, {}};
    }
    auto* c = std::get_if<SCode>(&v->node);
    if (!c || max_arg_upto(c->term, c->arity) > arity) return std::nullopt;
    std::size_t a = c->arity;
    ProgTerm t = reindex_args(c->term, [&](std::size_t r) { return r <= a ? r : r - a + arity; });
    return Closure{t, arity, c->env};
}

Sym code_of(Closure c) {
    SCode code{std::move(c.term), c.arity, std::move(c.env)};
    bool closed = std::all_of(code.env.begin(), code.env.end(), [](const Sym& e) { return concrete(e); });
    if (closed) return num(encode(close_term(code, nullptr)).code);
    return make(std::move(code));
}

std::optional<Sym> eval(const ProgTerm& t, const std::vector<Sym>& args, std::uint64_t& fuel) {
    if (fuel == 0) return std::nullopt;
    --fuel;
    return std::visit(
        [&](const auto& x) -> std::optional<Sym> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstT>) return num(x.value);
            else if constexpr (std::is_same_v<T, ArgT>) {
                if (x.index == 0 || x.index > args.size()) return std::nullopt;
                return args[x.index - 1];
            } else if constexpr (std::is_same_v<T, PairT>) {
                auto l = eval(x.left, args, fuel);
                if (!l) return std::nullopt;
                auto r = eval(x.right, args, fuel);
                if (!r) return std::nullopt;
                return mk_pair(*l, *r);
            } else if constexpr (std::is_same_v<T, FstT> || std::is_same_v<T, SndT>) {
                auto v = eval(x.arg, args, fuel);
                if (!v) return std::nullopt;
                return std::is_same_v<T, FstT> ? fst(*v) : snd(*v);
            } else if constexpr (std::is_same_v<T, IfZFstT>) {
                auto s = eval(x.scrut, args, fuel);
                if (!s) return std::nullopt;
                Sym first = fst(*s);
                const Nat* tag = concrete(first);
                if (!tag) return std::nullopt;
                return eval(*tag == 0 ? x.then_branch : x.else_branch, args, fuel);
            } else {
                std::vector<Sym> vals;
                for (const auto& a : x.args) {
                    auto v = eval(a, args, fuel);
                    if (!v) return std::nullopt;
                    vals.push_back(*v);
                }
                return apply_builder_sym(x.tag, vals, fuel);
            }
        },
        t->node);
}

}  // namespace bqc::sym
