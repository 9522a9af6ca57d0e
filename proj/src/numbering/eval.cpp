#include "bqc/numbering.hpp"

#include <cstdlib>

namespace bqc {

std::string EvalOutcome::describe() const {
    if (is_value()) return value().get_str();
    const auto& u = undefined();
    if (u.reason == UndefinedReason::FuelExhausted) return "undefined (fuel exhausted)";
    return "undefined (decode failure: " + u.detail + ")";
}

std::uint64_t default_fuel() {
    if (const char* s = std::getenv("BQC_FUEL")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
        }
    }
    return kDefaultFuel;
}

namespace {
Undefined exhausted() { return {UndefinedReason::FuelExhausted, "fuel exhausted"}; }
}  // namespace

EvalOutcome eval_term(const ProgTerm& t, std::span<const Nat> args, std::uint64_t& fuel) {
    if (fuel == 0) return exhausted();
    --fuel;
    return std::visit(
        [&](const auto& x) -> EvalOutcome {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstT>) return x.value;
            else if constexpr (std::is_same_v<T, ArgT>) {
                if (x.index == 0 || x.index > args.size())
                    return Undefined{UndefinedReason::DecodeFailure,
                                     "argument " + std::to_string(x.index) + " of " +
                                         std::to_string(args.size())};
                return args[x.index - 1];
            } else if constexpr (std::is_same_v<T, PairT>) {
                auto l = eval_term(x.left, args, fuel);
                if (!l.is_value()) return l;
                auto r = eval_term(x.right, args, fuel);
                if (!r.is_value()) return r;
                return pair(l.value(), r.value());
            } else if constexpr (std::is_same_v<T, FstT> || std::is_same_v<T, SndT>) {
                auto v = eval_term(x.arg, args, fuel);
                if (!v.is_value()) return v;
                auto [a, b] = unpair(v.value());
                return std::is_same_v<T, FstT> ? a : b;
            } else if constexpr (std::is_same_v<T, IfZFstT>) {
                auto s = eval_term(x.scrut, args, fuel);
                if (!s.is_value()) return s;
                return eval_term(p1(s.value()) == 0 ? x.then_branch : x.else_branch, args, fuel);
            } else {
                std::vector<Nat> vals;
                vals.reserve(x.args.size());
                for (const auto& c : x.args) {
                    auto v = eval_term(c, args, fuel);
                    if (!v.is_value()) return v;
                    vals.push_back(v.value());
                }
                return apply_builder(x.tag, vals, fuel);
            }
        },
        t->node);
}

EvalOutcome eval(const Index& e, std::span<const Nat> args, std::uint64_t fuel) {
    Decoded d = decode(e);
    if (auto* f = std::get_if<DecodeFailure>(&d))
        return Undefined{UndefinedReason::DecodeFailure, f->reason};
    const ProgTerm& t = std::get<ProgTerm>(d);
    if (max_arg(t) > args.size())
        return Undefined{UndefinedReason::DecodeFailure,
                         "code not in I_" + std::to_string(args.size())};
    return eval_term(t, args, fuel);
}

}  // namespace bqc
