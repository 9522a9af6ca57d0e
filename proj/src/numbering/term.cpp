#include "bqc/numbering.hpp"

#include <algorithm>
#include <sstream>

namespace bqc {

BuilderTag BuilderTag::compose(std::vector<std::size_t> ms) {
    return {BuilderKind::Compose, std::move(ms)};
}
BuilderTag BuilderTag::constant() { return {BuilderKind::Const, {}}; }
BuilderTag BuilderTag::cond(std::size_t n) { return {BuilderKind::Cond, {n}}; }
BuilderTag BuilderTag::perm(std::vector<std::size_t> p) {
    return {BuilderKind::Perm, std::move(p)};
}
BuilderTag BuilderTag::dummy(std::size_t n) { return {BuilderKind::Dummy, {n}}; }
BuilderTag BuilderTag::smn(std::size_t n, std::size_t m) { return {BuilderKind::Smn, {n, m}}; }

std::size_t BuilderTag::arg_count() const {
    switch (kind) {
        case BuilderKind::Compose: return params.size() + 1;
        case BuilderKind::Const: return 1;
        case BuilderKind::Cond: return 2;
        case BuilderKind::Perm: return 1;
        case BuilderKind::Dummy: return 1;
        case BuilderKind::Smn: return params.size() == 2 ? 1 + params[1] : 0;
    }
    return 0;
}

bool BuilderTag::valid() const {
    switch (kind) {
        case BuilderKind::Compose: return true;
        case BuilderKind::Const: return params.empty();
        case BuilderKind::Cond:
        case BuilderKind::Dummy: return params.size() == 1;
        case BuilderKind::Perm: return is_permutation(params);
        case BuilderKind::Smn: return params.size() == 2;
    }
    return false;
}

bool is_permutation(std::span<const std::size_t> p) {
    std::vector<bool> seen(p.size() + 1, false);
    for (std::size_t v : p) {
        if (v == 0 || v > p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

namespace {
ProgTerm mk(auto node) { return std::make_shared<const TermNode>(TermNode{std::move(node)}); }
}  // namespace

ProgTerm t_const(Nat k) { return mk(ConstT{std::move(k)}); }
ProgTerm t_arg(std::size_t i) { return mk(ArgT{i}); }
ProgTerm t_pair(ProgTerm l, ProgTerm r) { return mk(PairT{std::move(l), std::move(r)}); }
ProgTerm t_fst(ProgTerm t) { return mk(FstT{std::move(t)}); }
ProgTerm t_snd(ProgTerm t) { return mk(SndT{std::move(t)}); }
ProgTerm t_ifz(ProgTerm s, ProgTerm a, ProgTerm b) {
    return mk(IfZFstT{std::move(s), std::move(a), std::move(b)});
}
ProgTerm t_build(BuilderTag tag, std::vector<ProgTerm> args) {
    return mk(BuildT{std::move(tag), std::move(args)});
}

bool equal(const ProgTerm& a, const ProgTerm& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, ConstT>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, ArgT>) return x.index == y.index;
            else if constexpr (std::is_same_v<T, PairT>)
                return equal(x.left, y.left) && equal(x.right, y.right);
            else if constexpr (std::is_same_v<T, FstT> || std::is_same_v<T, SndT>)
                return equal(x.arg, y.arg);
            else if constexpr (std::is_same_v<T, IfZFstT>)
                return equal(x.scrut, y.scrut) && equal(x.then_branch, y.then_branch) &&
                       equal(x.else_branch, y.else_branch);
            else {
                if (!(x.tag == y.tag) || x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!equal(x.args[i], y.args[i])) return false;
                return true;
            }
        },
        a->node);
}

template <class F>
static void for_children(const ProgTerm& t, F&& f) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PairT>) { f(x.left); f(x.right); }
            else if constexpr (std::is_same_v<T, FstT> || std::is_same_v<T, SndT>) f(x.arg);
            else if constexpr (std::is_same_v<T, IfZFstT>) {
                f(x.scrut); f(x.then_branch); f(x.else_branch);
            } else if constexpr (std::is_same_v<T, BuildT>) {
                for (const auto& c : x.args) f(c);
            }
        },
        t->node);
}

std::size_t max_arg(const ProgTerm& t) {
    if (const auto* a = std::get_if<ArgT>(&t->node)) return a->index;
    std::size_t m = 0;
    for_children(t, [&](const ProgTerm& c) { m = std::max(m, max_arg(c)); });
    return m;
}

std::size_t term_size(const ProgTerm& t) {
    std::size_t n = 1;
    for_children(t, [&](const ProgTerm& c) { n += term_size(c); });
    return n;
}

static const char* kind_name(BuilderKind k) {
    switch (k) {
        case BuilderKind::Compose: return "compose";
        case BuilderKind::Const: return "const";
        case BuilderKind::Cond: return "cond";
        case BuilderKind::Perm: return "perm";
        case BuilderKind::Dummy: return "dummy";
        case BuilderKind::Smn: return "smn";
    }
    return "?";
}

static void render_to(std::ostream& os, const ProgTerm& t) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstT>) os << "(const " << x.value.get_str() << ')';
            else if constexpr (std::is_same_v<T, ArgT>) os << "(arg " << x.index << ')';
            else if constexpr (std::is_same_v<T, PairT>) {
                os << "(pair ";
                render_to(os, x.left);
                os << ' ';
                render_to(os, x.right);
                os << ')';
            } else if constexpr (std::is_same_v<T, FstT>) {
                os << "(fst ";
                render_to(os, x.arg);
                os << ')';
            } else if constexpr (std::is_same_v<T, SndT>) {
                os << "(snd ";
                render_to(os, x.arg);
                os << ')';
            } else if constexpr (std::is_same_v<T, IfZFstT>) {
                os << "(ifz ";
                render_to(os, x.scrut);
                os << ' ';
                render_to(os, x.then_branch);
                os << ' ';
                render_to(os, x.else_branch);
                os << ')';
            } else {
                os << "(build " << kind_name(x.tag.kind);
                if (!x.tag.params.empty()) {
                    os << '[';
                    for (std::size_t i = 0; i < x.tag.params.size(); ++i)
                        os << (i ? "," : "") << x.tag.params[i];
                    os << ']';
                }
                for (const auto& c : x.args) {
                    os << ' ';
                    render_to(os, c);
                }
                os << ')';
            }
        },
        t->node);
}

std::string render(const ProgTerm& t) {
    std::ostringstream os;
    render_to(os, t);
    return os.str();
}

ProgTerm substitute_args(const ProgTerm& t, const std::function<ProgTerm(std::size_t)>& f) {
    return std::visit(
        [&](const auto& x) -> ProgTerm {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstT>) return t;
            else if constexpr (std::is_same_v<T, ArgT>) {
                ProgTerm r = f(x.index);
                return r ? r : t;
            } else if constexpr (std::is_same_v<T, PairT>)
                return t_pair(substitute_args(x.left, f), substitute_args(x.right, f));
            else if constexpr (std::is_same_v<T, FstT>) return t_fst(substitute_args(x.arg, f));
            else if constexpr (std::is_same_v<T, SndT>) return t_snd(substitute_args(x.arg, f));
            else if constexpr (std::is_same_v<T, IfZFstT>)
                return t_ifz(substitute_args(x.scrut, f), substitute_args(x.then_branch, f),
                             substitute_args(x.else_branch, f));
            else {
                std::vector<ProgTerm> args;
                args.reserve(x.args.size());
                for (const auto& c : x.args) args.push_back(substitute_args(c, f));
                return t_build(x.tag, std::move(args));
            }
        },
        t->node);
}

ProgTerm reindex_args(const ProgTerm& t, const std::function<std::size_t(std::size_t)>& f) {
    return substitute_args(t, [&](std::size_t i) { return t_arg(f(i)); });
}

}  // namespace bqc
