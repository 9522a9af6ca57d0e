#include "bqc/numbering.hpp"

#include <algorithm>

namespace bqc {

std::optional<ProgTerm> compose_terms(const ProgTerm& e, std::span<const ProgTerm> es,
                                      std::span<const std::size_t> ms) {
    if (ms.size() != es.size() || max_arg(e) > es.size()) return std::nullopt;
    for (std::size_t j = 0; j < es.size(); ++j)
        if (max_arg(es[j]) > ms[j]) return std::nullopt;
    return substitute_args(e, [&](std::size_t i) { return es[i - 1]; });
}

std::optional<ProgTerm> cond_terms(const ProgTerm& e1, const ProgTerm& e2, std::size_t n) {
    if (max_arg(e1) > n + 1 || max_arg(e2) > n + 1) return std::nullopt;
    return t_ifz(t_arg(n + 1), e1, e2);
}

std::optional<ProgTerm> perm_term(const ProgTerm& e, std::span<const std::size_t> p) {
    if (!is_permutation(p) || max_arg(e) > p.size()) return std::nullopt;
    return reindex_args(e, [&](std::size_t j) { return p[j - 1]; });
}

std::optional<ProgTerm> dummy_term(const ProgTerm& e, std::size_t n) {
    if (max_arg(e) > n) return std::nullopt;
    return e;
}

std::optional<ProgTerm> smn_term(const ProgTerm& e, std::span<const Nat> ks, std::size_t n) {
    if (max_arg(e) > n + ks.size()) return std::nullopt;
    return substitute_args(e, [&](std::size_t i) -> ProgTerm {
        return i > n ? t_const(ks[i - n - 1]) : nullptr;
    });
}

namespace {

ProgTerm decode_or_throw(const Index& e, const char* who) {
    Decoded d = decode(e);
    if (auto* f = std::get_if<DecodeFailure>(&d))
        throw NumberingError(std::string(who) + ": undecodable code (" + f->reason + ")");
    return std::get<ProgTerm>(d);
}

Index finish(std::optional<ProgTerm> t, const char* who) {
    if (!t) throw NumberingError(std::string(who) + ": argument code has the wrong arity");
    return encode(*t);
}

}  // namespace

Index build_proj(std::size_t i, std::size_t n) {
    if (i == 0 || i > n) throw NumberingError("build_proj: need 1 <= i <= n");
    return encode(t_arg(i));
}

Index build_compose(const Index& e, std::span<const Index> es, std::span<const std::size_t> ms) {
    if (es.size() != ms.size()) throw NumberingError("build_compose: |es| != |ms|");
    ProgTerm te = decode_or_throw(e, "build_compose");
    std::vector<ProgTerm> tes;
    tes.reserve(es.size());
    for (const auto& x : es) tes.push_back(decode_or_throw(x, "build_compose"));
    return finish(compose_terms(te, tes, ms), "build_compose");
}

Index build_const(const Nat& k) { return encode(t_const(k)); }

Index build_cond(const Index& e1, const Index& e2, std::size_t n) {
    return finish(cond_terms(decode_or_throw(e1, "build_cond"), decode_or_throw(e2, "build_cond"), n),
                  "build_cond");
}

Index build_perm(const Index& e, std::span<const std::size_t> p) {
    if (!is_permutation(p)) throw NumberingError("build_perm: not a permutation");
    return finish(perm_term(decode_or_throw(e, "build_perm"), p), "build_perm");
}

Index build_dummy(const Index& e, std::size_t n) {
    return finish(dummy_term(decode_or_throw(e, "build_dummy"), n), "build_dummy");
}

Index build_smn(const Index& e, std::span<const Nat> ks, std::size_t n) {
    return finish(smn_term(decode_or_throw(e, "build_smn"), ks, n), "build_smn");
}

EvalOutcome apply_builder(const BuilderTag& tag, std::span<const Nat> args, std::uint64_t& fuel) {
    auto code = [&](const Nat& v) -> std::optional<ProgTerm> {
        if (fuel == 0) return std::nullopt;
        --fuel;
        return try_decode(v);
    };
    auto fail = [&](const char* what) -> EvalOutcome {
        if (fuel == 0) return Undefined{UndefinedReason::FuelExhausted, "fuel exhausted"};
        return Undefined{UndefinedReason::DecodeFailure, what};
    };
    const auto& ps = tag.params;
    std::optional<ProgTerm> out;
    switch (tag.kind) {
        case BuilderKind::Compose: {
            auto e = code(args[0]);
            if (!e) return fail("compose: outer code does not decode");
            std::vector<ProgTerm> es;
            for (std::size_t j = 1; j < args.size(); ++j) {
                auto t = code(args[j]);
                if (!t) return fail("compose: inner code does not decode");
                es.push_back(*t);
            }
            out = compose_terms(*e, es, ps);
            break;
        }
        case BuilderKind::Const: out = t_const(args[0]); break;
        case BuilderKind::Cond: {
            auto a = code(args[0]);
            auto b = a ? code(args[1]) : std::nullopt;
            if (!a || !b) return fail("cond: branch code does not decode");
            out = cond_terms(*a, *b, ps[0]);
            break;
        }
        case BuilderKind::Perm: {
            auto e = code(args[0]);
            if (!e) return fail("perm: code does not decode");
            out = perm_term(*e, ps);
            break;
        }
        case BuilderKind::Dummy: {
            auto e = code(args[0]);
            if (!e) return fail("dummy: code does not decode");
            out = dummy_term(*e, ps[0]);
            break;
        }
        case BuilderKind::Smn: {
            auto e = code(args[0]);
            if (!e) return fail("smn: code does not decode");
            out = smn_term(*e, args.subspan(1), ps[0]);
            break;
        }
    }
    if (!out) return Undefined{UndefinedReason::DecodeFailure, "builder argument has the wrong arity"};
    return encode(*out).code;
}

}  // namespace bqc
