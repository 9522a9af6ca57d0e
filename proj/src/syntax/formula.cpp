#include <algorithm>
#include <sstream>

#include "bqc/syntax.hpp"

namespace bqc {

namespace {
Formula mk(auto node) { return std::make_shared<const FormulaNode>(FormulaNode{std::move(node)}); }

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;
}  // namespace

Formula f_bot() {
    static const Formula b = mk(BotF{});
    return b;
}
Formula f_top() {
    static const Formula t = mk(TopF{});
    return t;
}
Formula f_atom(std::string pred, std::vector<LTerm> args) {
    return mk(AtomF{std::move(pred), std::move(args)});
}
Formula f_and(Formula l, Formula r) { return mk(AndF{std::move(l), std::move(r)}); }
Formula f_or(Formula l, Formula r) { return mk(OrF{std::move(l), std::move(r)}); }
Formula f_allimp(std::vector<std::string> vars, Formula ant, Formula cons) {
    return mk(AllImpF{std::move(vars), std::move(ant), std::move(cons)});
}
Formula f_imp(Formula ant, Formula cons) { return f_allimp({}, std::move(ant), std::move(cons)); }
Formula f_exists(std::string var, Formula body) {
    return mk(ExistsF{std::move(var), std::move(body)});
}

static void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    std::visit(overloaded{
                   [](const BotF&) {},
                   [](const TopF&) {},
                   [&](const AtomF& a) {
                       for (const auto& t : a.args)
                           if (auto* v = std::get_if<Var>(&t); v && !bound.count(v->name))
                               out.insert(v->name);
                   },
                   [&](const AndF& x) {
                       collect_free(x.left, bound, out);
                       collect_free(x.right, bound, out);
                   },
                   [&](const OrF& x) {
                       collect_free(x.left, bound, out);
                       collect_free(x.right, bound, out);
                   },
                   [&](const AllImpF& x) {
                       std::set<std::string> inner = bound;
                       inner.insert(x.vars.begin(), x.vars.end());
                       collect_free(x.ant, inner, out);
                       collect_free(x.cons, inner, out);
                   },
                   [&](const ExistsF& x) {
                       std::set<std::string> inner = bound;
                       inner.insert(x.var);
                       collect_free(x.body, inner, out);
                   },
               },
               f->node);
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> free_vars(const Sequent& s) {
    auto a = free_vars(s.lhs);
    auto b = free_vars(s.rhs);
    a.insert(b.begin(), b.end());
    return a;
}

std::set<std::string> all_vars(const Formula& f) {
    std::set<std::string> out;
    std::visit(overloaded{
                   [](const BotF&) {},
                   [](const TopF&) {},
                   [&](const AtomF& a) {
                       for (const auto& t : a.args)
                           if (auto* v = std::get_if<Var>(&t)) out.insert(v->name);
                   },
                   [&](const AndF& x) {
                       out = all_vars(x.left);
                       out.merge(all_vars(x.right));
                   },
                   [&](const OrF& x) {
                       out = all_vars(x.left);
                       out.merge(all_vars(x.right));
                   },
                   [&](const AllImpF& x) {
                       out = all_vars(x.ant);
                       out.merge(all_vars(x.cons));
                       out.insert(x.vars.begin(), x.vars.end());
                   },
                   [&](const ExistsF& x) {
                       out = all_vars(x.body);
                       out.insert(x.var);
                   },
               },
               f->node);
    return out;
}

namespace {

using Binders = std::vector<std::string>;

long binder_pos(const Binders& b, const std::string& name) {
    for (std::size_t i = b.size(); i-- > 0;)
        if (b[i] == name) return static_cast<long>(i);
    return -1;
}

bool term_eq(const LTerm& a, const LTerm& b, const Binders* ba, const Binders* bb) {
    if (a.index() != b.index()) return false;
    if (auto* n = std::get_if<Num>(&a)) return n->value == std::get<Num>(b).value;
    const auto& x = std::get<Var>(a).name;
    const auto& y = std::get<Var>(b).name;
    if (!ba) return x == y;
    long i = binder_pos(*ba, x), j = binder_pos(*bb, y);
    if (i < 0 && j < 0) return x == y;
    return i == j;
}

// ba/bb null means structural comparison
bool feq(const Formula& a, const Formula& b, Binders* ba, Binders* bb) {
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        overloaded{
            [](const BotF&) { return true; },
            [](const TopF&) { return true; },
            [&](const AtomF& x) {
                const auto& y = std::get<AtomF>(b->node);
                if (x.pred != y.pred || x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!term_eq(x.args[i], y.args[i], ba, bb)) return false;
                return true;
            },
            [&](const AndF& x) {
                const auto& y = std::get<AndF>(b->node);
                return feq(x.left, y.left, ba, bb) && feq(x.right, y.right, ba, bb);
            },
            [&](const OrF& x) {
                const auto& y = std::get<OrF>(b->node);
                return feq(x.left, y.left, ba, bb) && feq(x.right, y.right, ba, bb);
            },
            [&](const AllImpF& x) {
                const auto& y = std::get<AllImpF>(b->node);
                if (x.vars.size() != y.vars.size()) return false;
                if (!ba) {
                    return x.vars == y.vars && feq(x.ant, y.ant, ba, bb) &&
                           feq(x.cons, y.cons, ba, bb);
                }
                ba->insert(ba->end(), x.vars.begin(), x.vars.end());
                bb->insert(bb->end(), y.vars.begin(), y.vars.end());
                bool r = feq(x.ant, y.ant, ba, bb) && feq(x.cons, y.cons, ba, bb);
                ba->resize(ba->size() - x.vars.size());
                bb->resize(bb->size() - y.vars.size());
                return r;
            },
            [&](const ExistsF& x) {
                const auto& y = std::get<ExistsF>(b->node);
                if (!ba) return x.var == y.var && feq(x.body, y.body, ba, bb);
                ba->push_back(x.var);
                bb->push_back(y.var);
                bool r = feq(x.body, y.body, ba, bb);
                ba->pop_back();
                bb->pop_back();
                return r;
            },
        },
        a->node);
}

}  // namespace

bool structurally_equal(const Formula& a, const Formula& b) { return feq(a, b, nullptr, nullptr); }

bool alpha_equal(const Formula& a, const Formula& b) {
    Binders ba, bb;
    return feq(a, b, &ba, &bb);
}

bool alpha_equal(const Sequent& a, const Sequent& b) {
    return alpha_equal(a.lhs, b.lhs) && alpha_equal(a.rhs, b.rhs);
}

std::size_t rank(const Formula& f) {
    return std::visit(overloaded{
                          [](const BotF&) -> std::size_t { return 0; },
                          [](const TopF&) -> std::size_t { return 0; },
                          [](const AtomF&) -> std::size_t { return 0; },
                          [](const AndF& x) { return std::max(rank(x.left), rank(x.right)); },
                          [](const OrF& x) { return std::max(rank(x.left), rank(x.right)); },
                          [](const AllImpF& x) { return std::max(1 + rank(x.ant), rank(x.cons)); },
                          [](const ExistsF& x) { return rank(x.body); },
                      },
                      f->node);
}

bool contains_top(const Formula& f) {
    return std::visit(overloaded{
                          [](const BotF&) { return false; },
                          [](const TopF&) { return true; },
                          [](const AtomF&) { return false; },
                          [](const AndF& x) { return contains_top(x.left) || contains_top(x.right); },
                          [](const OrF& x) { return contains_top(x.left) || contains_top(x.right); },
                          [](const AllImpF& x) { return contains_top(x.ant) || contains_top(x.cons); },
                          [](const ExistsF& x) { return contains_top(x.body); },
                      },
                      f->node);
}

std::set<Nat> constants(const Formula& f) {
    std::set<Nat> out;
    std::visit(overloaded{
                   [](const BotF&) {},
                   [](const TopF&) {},
                   [&](const AtomF& a) {
                       for (const auto& t : a.args)
                           if (auto* n = std::get_if<Num>(&t)) out.insert(n->value);
                   },
                   [&](const AndF& x) { out = constants(x.left); out.merge(constants(x.right)); },
                   [&](const OrF& x) { out = constants(x.left); out.merge(constants(x.right)); },
                   [&](const AllImpF& x) { out = constants(x.ant); out.merge(constants(x.cons)); },
                   [&](const ExistsF& x) { out = constants(x.body); },
               },
               f->node);
    return out;
}

bool distinct(const VarList& xs) {
    std::set<std::string> s(xs.begin(), xs.end());
    return s.size() == xs.size();
}

bool is_admissible(const VarList& xs, const Sequent& s) {
    if (!distinct(xs)) return false;
    std::set<std::string> have(xs.begin(), xs.end());
    for (const auto& v : free_vars(s))
        if (!have.count(v)) return false;
    return true;
}

VarList canonical_list(const Sequent& s) {
    auto fv = free_vars(s);
    return {fv.begin(), fv.end()};
}

std::string render(const LTerm& t) {
    if (auto* v = std::get_if<Var>(&t)) return v->name;
    return std::get<Num>(t).value.get_str();
}

namespace {

enum Prec { kOr = 0, kAnd = 1, kPrimary = 2 };

void render_to(std::ostream& os, const Formula& f, Prec ctx) {
    std::visit(overloaded{
                   [&](const BotF&) { os << "bot"; },
                   [&](const TopF&) { os << "top"; },
                   [&](const AtomF& a) {
                       os << a.pred;
                       if (!a.args.empty()) {
                           os << '(';
                           for (std::size_t i = 0; i < a.args.size(); ++i)
                               os << (i ? "," : "") << render(a.args[i]);
                           os << ')';
                       }
                   },
                   [&](const AndF& x) {
                       if (ctx > kAnd) os << '(';
                       render_to(os, x.left, kAnd);
                       os << " & ";
                       render_to(os, x.right, kPrimary);
                       if (ctx > kAnd) os << ')';
                   },
                   [&](const OrF& x) {
                       if (ctx > kOr) os << '(';
                       render_to(os, x.left, kOr);
                       os << " | ";
                       render_to(os, x.right, kAnd);
                       if (ctx > kOr) os << ')';
                   },
                   [&](const AllImpF& x) {
                       if (!x.vars.empty()) {
                           os << "all";
                           for (const auto& v : x.vars) os << ' ' << v;
                           os << ' ';
                       }
                       os << '(';
                       render_to(os, x.ant, kOr);
                       os << " -> ";
                       render_to(os, x.cons, kOr);
                       os << ')';
                   },
                   [&](const ExistsF& x) {
                       os << "ex " << x.var << ' ';
                       render_to(os, x.body, kPrimary);
                   },
               },
               f->node);
}

}  // namespace

std::string render(const Formula& f) {
    std::ostringstream os;
    render_to(os, f, kOr);
    return os.str();
}

std::string render(const Sequent& s) { return render(s.lhs) + " => " + render(s.rhs); }

std::string render(const VarList& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
    return out + "]";
}

}  // namespace bqc
