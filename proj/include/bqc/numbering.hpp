// Gödel-numbered term language for the index model V.
#pragma once

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bqc {

using Nat = mpz_class;

// Native path, valid while pair(a, b) < 2^50 (a, b < 2^24 suffices).
inline constexpr std::uint64_t kNativePairLimit = std::uint64_t{1} << 50;

inline std::uint64_t pair_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s * (s + 1) / 2 + b;
}

// Branch-free so sweeps vectorize. Values below 2^52 convert exactly through the
// 2^52 bias, and the rounded root is the diagonal w or w + 1.
inline void unpair_u64(std::uint64_t n, std::uint64_t& a, std::uint64_t& b) {
    constexpr std::uint64_t bias = 0x4330000000000000ull;
    constexpr double two52 = 4503599627370496.0;
    double d = std::bit_cast<double>(bias | (2 * n)) - two52;
#if defined(__GNUC__)
    double r = __builtin_sqrt(d);
#else
    double r = std::sqrt(d);
#endif
    std::uint64_t w = std::bit_cast<std::uint64_t>(r + two52) ^ bias;
    std::uint64_t t = w * (w + 1) / 2;
    std::uint64_t c = t > n;
    w -= c;
    t -= c * (w + 1);
    c = t + w + 1 <= n;
    t += c * (w + 1);
    w += c;
    b = n - t;
    a = w - b;
}

Nat pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& n);
Nat p1(const Nat& n);
Nat p2(const Nat& n);

Nat parse_nat(const std::string& text);  // throws std::invalid_argument
std::string to_string(const Nat& n);

enum class BuilderKind : std::uint8_t { Compose, Const, Cond, Perm, Dummy, Smn };

// Compose: params = [m1..mn], consumes n+1 args (outer code, then n inner codes)
// Const:   params = [],        consumes 1 arg  (the constant)
// Cond:    params = [n],       consumes 2 args
// Perm:    params = [p1..pn],  consumes 1 arg
// Dummy:   params = [n],       consumes 1 arg
// Smn:     params = [n, m],    consumes 1+m args (code, then m values)
struct BuilderTag {
    BuilderKind kind;
    std::vector<std::size_t> params;

    static BuilderTag compose(std::vector<std::size_t> ms);
    static BuilderTag constant();
    static BuilderTag cond(std::size_t n);
    static BuilderTag perm(std::vector<std::size_t> p);
    static BuilderTag dummy(std::size_t n);
    static BuilderTag smn(std::size_t n, std::size_t m);

    std::size_t arg_count() const;
    bool valid() const;
    bool operator==(const BuilderTag&) const = default;
};

struct TermNode;
using ProgTerm = std::shared_ptr<const TermNode>;

struct ConstT { Nat value; };
struct ArgT { std::size_t index; };
struct PairT { ProgTerm left, right; };
struct FstT { ProgTerm arg; };
struct SndT { ProgTerm arg; };
struct IfZFstT { ProgTerm scrut, then_branch, else_branch; };
struct BuildT { BuilderTag tag; std::vector<ProgTerm> args; };

struct TermNode {
    std::variant<ConstT, ArgT, PairT, FstT, SndT, IfZFstT, BuildT> node;
};

ProgTerm t_const(Nat k);
ProgTerm t_arg(std::size_t i);
ProgTerm t_pair(ProgTerm l, ProgTerm r);
ProgTerm t_fst(ProgTerm t);
ProgTerm t_snd(ProgTerm t);
ProgTerm t_ifz(ProgTerm scrut, ProgTerm then_branch, ProgTerm else_branch);
ProgTerm t_build(BuilderTag tag, std::vector<ProgTerm> args);

bool equal(const ProgTerm& a, const ProgTerm& b);
std::size_t max_arg(const ProgTerm& t);
std::size_t term_size(const ProgTerm& t);
std::string render(const ProgTerm& t);

// Replace Arg(i) by f(i); f returns nullptr to keep the node.
ProgTerm substitute_args(const ProgTerm& t,
                         const std::function<ProgTerm(std::size_t)>& f);
// Rename Arg(i) to Arg(f(i)).
ProgTerm reindex_args(const ProgTerm& t,
                      const std::function<std::size_t(std::size_t)>& f);

struct Index {
    Nat code;
    bool operator==(const Index&) const = default;
};

Index encode(const ProgTerm& t);

struct DecodeFailure {
    std::string reason;
};
using Decoded = std::variant<ProgTerm, DecodeFailure>;
Decoded decode(const Index& e);
std::optional<ProgTerm> try_decode(const Nat& code);

bool in_arity(const Index& e, std::size_t n);

enum class UndefinedReason : std::uint8_t { DecodeFailure, FuelExhausted };

struct Undefined {
    UndefinedReason reason;
    std::string detail;
};

class EvalOutcome {
public:
    EvalOutcome(Nat v) : v_(std::move(v)) {}
    EvalOutcome(Undefined u) : v_(std::move(u)) {}

    bool is_value() const { return std::holds_alternative<Nat>(v_); }
    const Nat& value() const { return std::get<Nat>(v_); }
    const Undefined& undefined() const { return std::get<Undefined>(v_); }
    bool fuel_exhausted() const {
        return !is_value() && undefined().reason == UndefinedReason::FuelExhausted;
    }
    std::string describe() const;

private:
    std::variant<Nat, Undefined> v_;
};

constexpr std::uint64_t kDefaultFuel = 1'000'000;
std::uint64_t default_fuel();  // honours BQC_FUEL

EvalOutcome eval(const Index& e, std::span<const Nat> args, std::uint64_t fuel);
// Evaluates a decoded term; fuel is decremented in place.
EvalOutcome eval_term(const ProgTerm& t, std::span<const Nat> args, std::uint64_t& fuel);

class NumberingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Static index builders. Invalid arguments throw NumberingError.
Index build_proj(std::size_t i, std::size_t n);
Index build_compose(const Index& e, std::span<const Index> es,
                    std::span<const std::size_t> ms);
Index build_const(const Nat& k);
Index build_cond(const Index& e1, const Index& e2, std::size_t n);
Index build_perm(const Index& e, std::span<const std::size_t> p);
Index build_dummy(const Index& e, std::size_t n);
Index build_smn(const Index& e, std::span<const Nat> ks, std::size_t n);

// Term-level counterparts, shared with Build evaluation. Arity requirements
// are checked; nullopt signals a violated one.
std::optional<ProgTerm> compose_terms(const ProgTerm& e, std::span<const ProgTerm> es,
                                      std::span<const std::size_t> ms);
std::optional<ProgTerm> cond_terms(const ProgTerm& e1, const ProgTerm& e2, std::size_t n);
std::optional<ProgTerm> perm_term(const ProgTerm& e, std::span<const std::size_t> p);
std::optional<ProgTerm> dummy_term(const ProgTerm& e, std::size_t n);
std::optional<ProgTerm> smn_term(const ProgTerm& e, std::span<const Nat> ks, std::size_t n);

bool is_permutation(std::span<const std::size_t> p);

// Applies a builder to already evaluated argument values, as a Build node does.
EvalOutcome apply_builder(const BuilderTag& tag, std::span<const Nat> args,
                          std::uint64_t& fuel);

}  // namespace bqc
