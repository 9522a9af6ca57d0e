#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>

#include "bqc/semantics.hpp"
#include "symbolic.hpp"

namespace bqc {

namespace {

using sym::Sym;

constexpr std::size_t kMaxPatterns = 100'000;

struct Pattern {
    Sym value;
    bool certain;  // known to realize the antecedent
};

std::string join(const std::vector<Nat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

std::string show_set(const std::vector<Nat>& v) { return "{" + join(v) + "}"; }

std::vector<LTerm> nums(const std::vector<Nat>& v) {
    std::vector<LTerm> out;
    for (const auto& n : v) out.push_back(Num{n});
    return out;
}

std::string bindings(const VarList& xs, const std::vector<Nat>& as) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i] + "=" + to_string(as[i]);
    return s;
}

std::vector<Nat> atom_tuple(const AtomF& a) {
    std::vector<Nat> t;
    for (const auto& arg : a.args) {
        if (auto* n = std::get_if<Num>(&arg)) t.push_back(n->value);
        else throw SemanticsError("free variable " + std::get<Var>(arg).name + " in a checked formula");
    }
    return t;
}

Verdict holds() { return {}; }

Verdict fails(std::string why) {
    Verdict v;
    v.kind = VerdictKind::Fails;
    v.trace.push_back(std::move(why));
    return v;
}

Verdict unknown(std::uint64_t bound, std::string why) {
    Verdict v;
    v.kind = VerdictKind::Unknown;
    v.bound = bound;
    v.trace.push_back(std::move(why));
    return v;
}

Verdict prefixed(Verdict v, std::string step) {
    v.trace.insert(v.trace.begin(), std::move(step));
    return v;
}

// Iterates M^n in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<Nat>& dom, std::size_t n, F&& f) {
    if (n > 0 && dom.empty()) return;
    std::vector<std::size_t> idx(n, 0);
    std::vector<Nat> t(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) t[i] = dom[idx[i]];
        if (!f(t)) return;
        std::size_t pos = n;
        while (pos > 0 && ++idx[pos - 1] == dom.size()) idx[--pos] = 0;
        if (pos == 0) return;
    }
}

class Engine {
public:
    Engine(const Evaluation& f, const CheckOptions& opt, const WitnessTable* w) : f_(f), opt_(opt), wit_(w) {}

    Verdict value(const Nat& v, const Formula& A, bool top = false) const {
        const std::string rv = to_string(v);
        return std::visit(
            [&](const auto& x) -> Verdict {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, BotF>) return fails(rv + " does not realize bot: nothing does");
                else if constexpr (std::is_same_v<T, TopF>) return holds();
                else if constexpr (std::is_same_v<T, AtomF>) {
                    const auto& rs = f_.realizers(x.pred, atom_tuple(x));
                    if (std::binary_search(rs.begin(), rs.end(), v)) return holds();
                    return fails(rv + " does not realize " + render(A) + ", whose realizers are " + show_set(rs));
                } else if constexpr (std::is_same_v<T, AndF>) {
                    Verdict l = value(p1(v), x.left);
                    if (l.fails()) return prefixed(l, "left component of " + rv + " for " + render(A));
                    Verdict r = value(p2(v), x.right);
                    if (r.fails()) return prefixed(r, "right component of " + rv + " for " + render(A));
                    return l.holds() ? r : l;
                } else if constexpr (std::is_same_v<T, OrF>) {
                    Nat tag = p1(v);
                    if (tag > 1) return fails(rv + " does not realize " + render(A) + ": tag " + to_string(tag) + " is neither 0 nor 1");
                    Verdict s = value(p2(v), tag == 0 ? x.left : x.right);
                    if (s.fails()) return prefixed(s, "disjunct " + to_string(tag) + " of " + rv + " for " + render(A));
                    return s;
                } else if constexpr (std::is_same_v<T, ExistsF>) {
                    Nat w = p1(v);
                    if (!f_.in_domain(w))
                        return fails(rv + " does not realize " + render(A) + ": witness " + to_string(w) + " is not in the domain");
                    Verdict s = value(p2(v), substitute(x.body, {x.var}, {Num{w}}));
                    if (s.fails()) return prefixed(s, "witness " + to_string(w) + " of " + rv + " for " + render(A));
                    return s;
                } else {
                    return implication(v, A, x, top);
                }
            },
            A->node);
    }

private:
    struct Obligation {
        std::size_t tuple;  // index into tuples
        Pattern s;
    };
    struct Instance {
        std::vector<Nat> args;
        Formula ant, cons;
    };

    Verdict implication(const Nat& e, const Formula& A, const AllImpF& imp, bool top) const {
        const std::size_t n = imp.vars.size();
        auto term = try_decode(e);
        if (!term) return fails(to_string(e) + " does not realize " + render(A) + ": it is not a code");
        if (max_arg(*term) > n + 1)
            return fails(to_string(e) + " does not realize " + render(A) + ": it is not in I_" + std::to_string(n + 1));

        std::vector<Instance> tuples;
        std::vector<Obligation> obs;
        Verdict first_unknown;
        bool have_unknown = false;
        for_each_tuple(f_.domain, n, [&](const std::vector<Nat>& as) {
            Instance inst{as, substitute(imp.ant, imp.vars, nums(as)), substitute(imp.cons, imp.vars, nums(as))};
            std::size_t counter = 0;
            std::vector<Nat> key = as;
            auto pats = enumerate(inst.ant, counter, "", key, top && wit_);
            if (!pats) {
                pats.emplace();
                for (std::uint64_t s = 0; s <= opt_.bound; ++s) {
                    Verdict vs = value(Nat(s), inst.ant);
                    if (!vs.fails()) pats->push_back({sym::num(Nat(s)), vs.holds()});
                }
                if (!have_unknown) {
                    have_unknown = true;
                    first_unknown = unknown(opt_.bound, "antecedent " + render(inst.ant) +
                                                            " has no enumerable realizer set; tried candidates 0.." +
                                                            std::to_string(opt_.bound));
                }
            }
            for (auto& p : *pats) obs.push_back({tuples.size(), std::move(p)});
            tuples.push_back(std::move(inst));
            return true;
        });

        std::vector<Verdict> results(obs.size());
        std::atomic<std::size_t> first_fail{std::numeric_limits<std::size_t>::max()};
        auto run = [&](std::size_t i) {
            const Instance& inst = tuples[obs[i].tuple];
            Verdict v = obligation(e, *term, A, imp, inst, obs[i].s);
            if (v.fails()) {
                std::size_t cur = first_fail.load();
                while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
                }
            }
            results[i] = std::move(v);
        };
        const long count = static_cast<long>(obs.size());
        if (top && opt_.parallel) {
            std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < count; ++i) {
                if (static_cast<std::size_t>(i) > first_fail.load()) continue;
                try {
                    run(static_cast<std::size_t>(i));
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
            if (err) std::rethrow_exception(err);
        } else {
            for (long i = 0; i < count; ++i) {
                run(static_cast<std::size_t>(i));
                if (results[i].fails()) break;
            }
        }

        if (first_fail.load() < obs.size()) return results[first_fail.load()];
        for (auto& r : results)
            if (r.kind == VerdictKind::Unknown) return r;
        if (have_unknown) return first_unknown;
        return holds();
    }

    Verdict obligation(const Nat& e, const ProgTerm& term, const Formula& A, const AllImpF& imp,
                       const Instance& inst, const Pattern& s) const {
        std::string where = render(A) + (imp.vars.empty() ? "" : " at " + bindings(imp.vars, inst.args));
        auto hs = sym::holes(s.value);
        if (hs.empty()) {
            Verdict v = concrete(e, term, inst, *sym::concrete(s.value), where);
            if (v.fails() && !s.certain) {
                Verdict u = unknown(opt_.bound, "candidate " + sym::render(s.value) +
                                                    " is not known to realize " + render(inst.ant));
                u.trace.insert(u.trace.end(), v.trace.begin(), v.trace.end());
                return u;
            }
            return v;
        }

        std::uint64_t fuel = opt_.fuel;
        std::vector<Sym> args;
        for (const auto& a : inst.args) args.push_back(sym::num(a));
        args.push_back(s.value);
        std::size_t counter = hs.back() + 1;
        if (opt_.symbolic)
            if (auto r = sym::eval(term, args, fuel); r && sym_holds(*r, inst.cons, counter, fuel)) return holds();

        // Instantiate the unknown parts on a grid of small values.
        std::uint64_t g = 0;
        auto fits = [&](std::uint64_t side) {
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < hs.size(); ++i) {
                total *= side;
                if (total > opt_.grid_limit) return false;
            }
            return true;
        };
        while (g < opt_.bound && fits(g + 2)) ++g;
        std::vector<std::uint64_t> idx(hs.size(), 0);
        while (true) {
            std::map<std::size_t, Nat> values;
            for (std::size_t i = 0; i < hs.size(); ++i) values[hs[i]] = Nat(idx[i]);
            Nat sv = sym::instantiate(s.value, values);
            Verdict v = concrete(e, term, inst, sv, where);
            if (v.fails()) {
                std::string inst_desc;
                for (std::size_t i = 0; i < hs.size(); ++i) inst_desc += (i ? ", " : "") + std::to_string(idx[i]);
                return prefixed(v, "antecedent realizer " + sym::render(s.value) + " with top-typed parts (" +
                                       inst_desc + ")");
            }
            std::size_t pos = hs.size();
            while (pos > 0 && ++idx[pos - 1] > g) idx[--pos] = 0;
            if (pos == 0) break;
        }
        return unknown(opt_.bound, where + ": could not prove the obligation for antecedent realizer " +
                                       sym::render(s.value) + " symbolically; no counterexample with top-typed parts <= " +
                                       std::to_string(g));
    }

    Verdict concrete(const Nat& e, const ProgTerm& term, const Instance& inst, const Nat& s,
                     const std::string& where) const {
        std::vector<Nat> args = inst.args;
        args.push_back(s);
        std::uint64_t fuel = opt_.fuel;
        EvalOutcome o = eval_term(term, args, fuel);
        std::string call = "eval(" + to_string(e) + ", [" + join(args) + "])";
        std::string head = where + ", antecedent realizer " + to_string(s) + ": " + call + " = " + o.describe();
        if (o.fuel_exhausted()) return unknown(opt_.bound, head);
        if (!o.is_value()) {
            Verdict v = fails(head);
            v.replay = Replay{e, args, o.describe()};
            return v;
        }
        Verdict c = value(o.value(), inst.cons);
        if (c.kind == VerdictKind::Holds) return c;
        c = prefixed(c, head);
        if (c.fails() && !c.replay) c.replay = Replay{e, args, o.describe()};
        return c;
    }

    std::optional<std::vector<Pattern>> enumerate(const Formula& A, std::size_t& counter, const std::string& path,
                                                  std::vector<Nat>& key, bool witnesses) const {
        using R = std::optional<std::vector<Pattern>>;
        return std::visit(
            [&](const auto& x) -> R {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, BotF>) return std::vector<Pattern>{};
                else if constexpr (std::is_same_v<T, TopF>) return std::vector<Pattern>{{sym::hole(counter++), true}};
                else if constexpr (std::is_same_v<T, AtomF>) {
                    std::vector<Pattern> out;
                    for (const auto& r : f_.realizers(x.pred, atom_tuple(x))) out.push_back({sym::num(r), true});
                    return out;
                } else if constexpr (std::is_same_v<T, AndF>) {
                    auto l = enumerate(x.left, counter, path + "/left", key, witnesses);
                    if (!l) return std::nullopt;
                    auto r = enumerate(x.right, counter, path + "/right", key, witnesses);
                    if (!r) return std::nullopt;
                    if (l->size() * r->size() > kMaxPatterns) return std::nullopt;
                    std::vector<Pattern> out;
                    for (const auto& a : *l)
                        for (const auto& b : *r) out.push_back({sym::mk_pair(a.value, b.value), a.certain && b.certain});
                    return out;
                } else if constexpr (std::is_same_v<T, OrF>) {
                    auto l = enumerate(x.left, counter, path + "/left", key, witnesses);
                    if (!l) return std::nullopt;
                    auto r = enumerate(x.right, counter, path + "/right", key, witnesses);
                    if (!r) return std::nullopt;
                    std::vector<Pattern> out;
                    for (const auto& a : *l) out.push_back({sym::mk_pair(sym::num(0), a.value), a.certain});
                    for (const auto& b : *r) out.push_back({sym::mk_pair(sym::num(1), b.value), b.certain});
                    return out;
                } else if constexpr (std::is_same_v<T, ExistsF>) {
                    std::vector<Pattern> out;
                    for (const auto& m : f_.domain) {
                        key.push_back(m);
                        auto b = enumerate(substitute(x.body, {x.var}, {Num{m}}), counter, path + "/body", key,
                                           witnesses);
                        key.pop_back();
                        if (!b) return std::nullopt;
                        for (const auto& s : *b) out.push_back({sym::mk_pair(sym::num(m), s.value), s.certain});
                        if (out.size() > kMaxPatterns) return std::nullopt;
                    }
                    return out;
                } else {
                    if (!witnesses) return std::nullopt;
                    std::string at = path.empty() ? "/" : path;
                    const auto* ws = wit_->find(at, key);
                    if (!ws)
                        throw SemanticsError("no witness realizers for " + render(A) + " at " + at + " with tuple (" +
                                             join(key) + ")");
                    std::vector<Pattern> out;
                    for (const auto& w : *ws) {
                        Verdict v = value(w, A);
                        if (v.fails()) {
                            std::string why = "witness " + to_string(w) + " at " + at + " does not realize " + render(A);
                            for (const auto& t : v.trace) why += "\n  " + t;
                            throw SemanticsError(why);
                        }
                        out.push_back({sym::num(w), v.holds()});
                    }
                    return out;
                }
            },
            A->node);
    }

    bool sym_holds(const Sym& v, const Formula& A, std::size_t& counter, std::uint64_t& fuel) const {
        return std::visit(
            [&](const auto& x) -> bool {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, BotF>) return false;
                else if constexpr (std::is_same_v<T, TopF>) return true;
                else if constexpr (std::is_same_v<T, AtomF>) {
                    const Nat* n = sym::concrete(v);
                    if (!n) return false;
                    const auto& rs = f_.realizers(x.pred, atom_tuple(x));
                    return std::binary_search(rs.begin(), rs.end(), *n);
                } else if constexpr (std::is_same_v<T, AndF>) {
                    return sym_holds(sym::fst(v), x.left, counter, fuel) &&
                           sym_holds(sym::snd(v), x.right, counter, fuel);
                } else if constexpr (std::is_same_v<T, OrF>) {
                    Sym first = sym::fst(v);
                    const Nat* tag = sym::concrete(first);
                    if (!tag || *tag > 1) return false;
                    return sym_holds(sym::snd(v), *tag == 0 ? x.left : x.right, counter, fuel);
                } else if constexpr (std::is_same_v<T, ExistsF>) {
                    Sym first = sym::fst(v);
                    const Nat* w = sym::concrete(first);
                    if (!w || !f_.in_domain(*w)) return false;
                    return sym_holds(sym::snd(v), substitute(x.body, {x.var}, {Num{*w}}), counter, fuel);
                } else {
                    const std::size_t n = x.vars.size();
                    auto c = sym::as_closure(v, n + 1);
                    if (!c) return false;
                    bool ok = true;
                    for_each_tuple(f_.domain, n, [&](const std::vector<Nat>& as) {
                        Formula ant = substitute(x.ant, x.vars, nums(as));
                        Formula cons = substitute(x.cons, x.vars, nums(as));
                        std::vector<Nat> key = as;
                        auto pats = enumerate(ant, counter, "", key, false);
                        if (!pats) return ok = false;
                        for (const auto& p : *pats) {
                            std::vector<Sym> args;
                            for (const auto& a : as) args.push_back(sym::num(a));
                            args.push_back(p.value);
                            args.insert(args.end(), c->env.begin(), c->env.end());
                            auto r = sym::eval(c->term, args, fuel);
                            if (!r || !sym_holds(*r, cons, counter, fuel)) return ok = false;
                        }
                        return true;
                    });
                    return ok;
                }
            },
            A->node);
    }

    const Evaluation& f_;
    const CheckOptions& opt_;
    const WitnessTable* wit_;
};

void require_closed_over_domain(const Formula& A, const Evaluation& f) {
    auto fv = free_vars(A);
    if (!fv.empty()) throw SemanticsError(render(A) + " has free variable " + *fv.begin());
    for (const auto& c : constants(A))
        if (!f.in_domain(c)) throw SemanticsError("constant " + to_string(c) + " is not in the domain");
}

Formula sequent_formula(const Sequent& S, const VarList& rs) {
    if (!is_admissible(rs, S))
        throw SemanticsError("list " + render(rs) + " is not admissible for " + render(S));
    return f_allimp(rs, S.lhs, S.rhs);
}

}  // namespace

std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Holds: return "Holds";
        case VerdictKind::Fails: return "Fails";
        case VerdictKind::Unknown: return "Unknown";
    }
    return "?";
}

std::vector<Nat> real_set(const Formula& A, const Evaluation& f) {
    if (rank(A) > 0) throw SemanticsError(render(A) + " contains an implication");
    if (contains_top(A)) throw SemanticsError(render(A) + " contains top, whose realizers are all of N");
    require_closed_over_domain(A, f);
    // Without top or implications every pattern is a concrete number.
    std::function<std::vector<Nat>(const Formula&)> go = [&](const Formula& B) -> std::vector<Nat> {
        return std::visit(
            [&](const auto& x) -> std::vector<Nat> {
                using T = std::decay_t<decltype(x)>;
                std::vector<Nat> r;
                if constexpr (std::is_same_v<T, AtomF>) {
                    r = f.realizers(x.pred, atom_tuple(x));
                } else if constexpr (std::is_same_v<T, AndF>) {
                    auto l = go(x.left), rr = go(x.right);
                    for (const auto& a : l)
                        for (const auto& b : rr) r.push_back(pair(a, b));
                } else if constexpr (std::is_same_v<T, OrF>) {
                    for (const auto& a : go(x.left)) r.push_back(pair(Nat(0), a));
                    for (const auto& b : go(x.right)) r.push_back(pair(Nat(1), b));
                } else if constexpr (std::is_same_v<T, ExistsF>) {
                    for (const auto& m : f.domain)
                        for (const auto& s : go(substitute(x.body, {x.var}, {Num{m}}))) r.push_back(pair(m, s));
                }
                return r;
            },
            B->node);
    };
    std::vector<Nat> out = go(A);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Verdict check(const Nat& e, const Formula& A, const Evaluation& f, const CheckOptions& opt) {
    require_closed_over_domain(A, f);
    return Engine(f, opt, nullptr).value(e, A, true);
}

Verdict check_sequent(const Nat& e, const Sequent& S, const VarList& rs, const Evaluation& f,
                      const CheckOptions& opt) {
    return check(e, sequent_formula(S, rs), f, opt);
}

Verdict check_with_witnesses(const Nat& e, const Sequent& S, const VarList& rs, const Evaluation& f,
                             const WitnessTable& witnesses, const CheckOptions& opt) {
    Formula A = sequent_formula(S, rs);
    require_closed_over_domain(A, f);
    return Engine(f, opt, &witnesses).value(e, A, true);
}

}  // namespace bqc
