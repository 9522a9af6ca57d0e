#include "support/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

Nat opair(const Nat& a, const Nat& b) {
    Nat s = a + b;
    return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> ounpair(const Nat& n) {
    Nat lo = 0, hi = 1;
    while (hi * (hi + 1) / 2 <= n) hi *= 2;
    // invariant: tri(lo) <= n < tri(hi)
    while (hi - lo > 1) {
        Nat mid = (lo + hi) / 2;
        if (mid * (mid + 1) / 2 <= n) lo = mid;
        else hi = mid;
    }
    Nat b = n - lo * (lo + 1) / 2;
    return {lo - b, b};
}

Nat oeval(const OTerm& t, const std::vector<Nat>& args) {
    switch (t.kind) {
        case OTerm::Const: return t.value;
        case OTerm::Arg: return args.at(t.index - 1);
        case OTerm::Pair: return opair(oeval(t.kids[0], args), oeval(t.kids[1], args));
        case OTerm::Fst: return ounpair(oeval(t.kids[0], args)).first;
        case OTerm::Snd: return ounpair(oeval(t.kids[0], args)).second;
        case OTerm::IfZ:
            return ounpair(oeval(t.kids[0], args)).first == 0 ? oeval(t.kids[1], args)
                                                              : oeval(t.kids[2], args);
    }
    return 0;
}

std::size_t omax_arg(const OTerm& t) {
    std::size_t m = t.kind == OTerm::Arg ? t.index : 0;
    for (const auto& k : t.kids) m = std::max(m, omax_arg(k));
    return m;
}

bqc::ProgTerm lower(const OTerm& t) {
    switch (t.kind) {
        case OTerm::Const: return bqc::t_const(t.value);
        case OTerm::Arg: return bqc::t_arg(t.index);
        case OTerm::Pair: return bqc::t_pair(lower(t.kids[0]), lower(t.kids[1]));
        case OTerm::Fst: return bqc::t_fst(lower(t.kids[0]));
        case OTerm::Snd: return bqc::t_snd(lower(t.kids[0]));
        case OTerm::IfZ:
            return bqc::t_ifz(lower(t.kids[0]), lower(t.kids[1]), lower(t.kids[2]));
    }
    return nullptr;
}

Nat random_nat(std::mt19937_64& rng, unsigned max_bits) {
    unsigned bits = std::uniform_int_distribution<unsigned>(0, max_bits)(rng);
    Nat v = 0;
    for (unsigned i = 0; i < bits; ++i) v = v * 2 + (rng() & 1);
    return v;
}

std::vector<Nat> random_args(std::mt19937_64& rng, std::size_t n) {
    std::vector<Nat> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(random_nat(rng));
    return a;
}

OTerm random_term(std::mt19937_64& rng, std::size_t arity, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
    int k = pick(rng);
    if (k == 1 && arity == 0) k = 0;
    OTerm t{static_cast<OTerm::Kind>(k), 0, 0, {}};
    switch (t.kind) {
        case OTerm::Const: t.value = random_nat(rng, 12); break;
        case OTerm::Arg: t.index = std::uniform_int_distribution<std::size_t>(1, arity)(rng); break;
        case OTerm::Pair:
            t.kids = {random_term(rng, arity, depth - 1), random_term(rng, arity, depth - 1)};
            break;
        case OTerm::Fst:
        case OTerm::Snd: t.kids = {random_term(rng, arity, depth - 1)}; break;
        case OTerm::IfZ:
            t.kids = {random_term(rng, arity, depth - 1), random_term(rng, arity, depth - 1),
                      random_term(rng, arity, depth - 1)};
            break;
    }
    return t;
}

bqc::ProgTerm random_any_term(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
    auto sub = [&] { return random_any_term(rng, depth - 1); };
    auto small = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };
    switch (pick(rng)) {
        case 0: return bqc::t_const(random_nat(rng, 40));
        case 1: return bqc::t_arg(1 + small(20));
        case 2: { auto l = sub(); return bqc::t_pair(l, sub()); }
        case 3: return bqc::t_fst(sub());
        case 4: return bqc::t_snd(sub());
        case 5: { auto a = sub(); auto b = sub(); return bqc::t_ifz(a, b, sub()); }
        default: break;
    }
    bqc::BuilderTag tag;
    switch (small(5)) {
        case 0: {
            std::vector<std::size_t> ms(small(3));
            for (auto& m : ms) m = small(4);
            tag = bqc::BuilderTag::compose(ms);
            break;
        }
        case 1: tag = bqc::BuilderTag::constant(); break;
        case 2: tag = bqc::BuilderTag::cond(small(4)); break;
        case 3: {
            std::vector<std::size_t> p(small(4));
            std::iota(p.begin(), p.end(), 1);
            std::shuffle(p.begin(), p.end(), rng);
            tag = bqc::BuilderTag::perm(p);
            break;
        }
        case 4: tag = bqc::BuilderTag::dummy(small(4)); break;
        default: tag = bqc::BuilderTag::smn(small(4), small(3)); break;
    }
    std::vector<bqc::ProgTerm> args;
    for (std::size_t j = 0; j < tag.arg_count(); ++j) args.push_back(sub());
    return bqc::t_build(tag, args);
}

}  // namespace oracle
