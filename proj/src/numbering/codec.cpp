// Codes are bijective-binary numerals of a prefix-free serialization:
// n+1 written in binary is "1" followed by the serialized bits.
#include "bqc/numbering.hpp"

#include <bit>

namespace bqc {

namespace {

constexpr std::uint64_t kParamLimit = std::uint64_t{1} << 32;
constexpr std::size_t kMaxDepth = 20000;

void put_bits(std::string& out, std::uint64_t v, unsigned width) {
    for (unsigned i = width; i-- > 0;) out.push_back(((v >> i) & 1) ? '1' : '0');
}

// Elias gamma for L >= 1
void put_gamma(std::string& out, std::uint64_t L) {
    unsigned w = std::bit_width(L);
    out.append(w - 1, '0');
    put_bits(out, L, w);
}

// Elias delta for N >= 1
void put_delta(std::string& out, const Nat& N) {
    std::string bin = N.get_str(2);
    put_gamma(out, bin.size());
    out.append(bin, 1, std::string::npos);
}

void put_delta(std::string& out, std::uint64_t N) {
    unsigned w = std::bit_width(N);
    put_gamma(out, w);
    put_bits(out, N, w - 1);
}

void put_term(std::string& out, const ProgTerm& t) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConstT>) {
                put_bits(out, 0, 3);
                put_delta(out, Nat(x.value + 1));
            } else if constexpr (std::is_same_v<T, ArgT>) {
                put_bits(out, 1, 3);
                put_delta(out, std::uint64_t{x.index});
            } else if constexpr (std::is_same_v<T, PairT>) {
                put_bits(out, 2, 3);
                put_term(out, x.left);
                put_term(out, x.right);
            } else if constexpr (std::is_same_v<T, FstT>) {
                put_bits(out, 3, 3);
                put_term(out, x.arg);
            } else if constexpr (std::is_same_v<T, SndT>) {
                put_bits(out, 4, 3);
                put_term(out, x.arg);
            } else if constexpr (std::is_same_v<T, IfZFstT>) {
                put_bits(out, 5, 3);
                put_term(out, x.scrut);
                put_term(out, x.then_branch);
                put_term(out, x.else_branch);
            } else {
                put_bits(out, 6, 3);
                put_bits(out, static_cast<unsigned>(x.tag.kind), 3);
                const auto& ps = x.tag.params;
                switch (x.tag.kind) {
                    case BuilderKind::Compose:
                        put_delta(out, std::uint64_t{ps.size() + 1});
                        for (auto m : ps) put_delta(out, std::uint64_t{m + 1});
                        break;
                    case BuilderKind::Const: break;
                    case BuilderKind::Cond:
                    case BuilderKind::Dummy: put_delta(out, std::uint64_t{ps.at(0) + 1}); break;
                    case BuilderKind::Perm:
                        put_delta(out, std::uint64_t{ps.size() + 1});
                        for (auto p : ps) put_delta(out, std::uint64_t{p});
                        break;
                    case BuilderKind::Smn:
                        put_delta(out, std::uint64_t{ps.at(0) + 1});
                        put_delta(out, std::uint64_t{ps.at(1) + 1});
                        break;
                }
                for (const auto& c : x.args) put_term(out, c);
            }
        },
        t->node);
}

struct Fail {
    std::string reason;
};

class Reader {
public:
    explicit Reader(std::string bits) : b_(std::move(bits)), pos_(1) {}

    bool done() const { return pos_ == b_.size(); }
    std::size_t remaining() const { return b_.size() - pos_; }

    std::uint64_t bits(unsigned width) {
        if (remaining() < width) throw Fail{"truncated code"};
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | (b_[pos_++] == '1');
        return v;
    }

    std::uint64_t gamma() {
        unsigned z = 0;
        while (true) {
            if (pos_ >= b_.size()) throw Fail{"truncated code"};
            if (b_[pos_] == '1') break;
            ++pos_;
            if (++z > 63) throw Fail{"length prefix too long"};
        }
        return bits(z + 1);
    }

    Nat delta() {
        std::uint64_t L = gamma();
        if (L - 1 > remaining()) throw Fail{"truncated code"};
        std::string s = "1";
        s.append(b_, pos_, L - 1);
        pos_ += L - 1;
        return Nat(s, 2);
    }

    std::uint64_t small_delta() {
        std::uint64_t L = gamma();
        if (L > 33) throw Fail{"parameter out of range"};
        return (std::uint64_t{1} << (L - 1)) | bits(static_cast<unsigned>(L - 1));
    }

    std::uint64_t param() {
        std::uint64_t v = small_delta() - 1;
        if (v >= kParamLimit) throw Fail{"parameter out of range"};
        return v;
    }

    std::uint64_t count() {
        std::uint64_t n = param();
        if (n > remaining()) throw Fail{"parameter count exceeds code length"};
        return n;
    }

    ProgTerm term(std::size_t depth) {
        if (depth > kMaxDepth) throw Fail{"nesting too deep"};
        switch (bits(3)) {
            case 0: return t_const(delta() - 1);
            case 1: {
                std::uint64_t i = small_delta();
                if (i > kParamLimit) throw Fail{"argument index out of range"};
                return t_arg(i);
            }
            case 2: {
                auto l = term(depth + 1);
                return t_pair(l, term(depth + 1));
            }
            case 3: return t_fst(term(depth + 1));
            case 4: return t_snd(term(depth + 1));
            case 5: {
                auto s = term(depth + 1);
                auto a = term(depth + 1);
                return t_ifz(s, a, term(depth + 1));
            }
            case 6: return build(depth);
            default: throw Fail{"unknown constructor tag 7"};
        }
    }

private:
    ProgTerm build(std::size_t depth) {
        std::uint64_t k = bits(3);
        if (k > 5) throw Fail{"unknown builder kind " + std::to_string(k)};
        BuilderTag tag{static_cast<BuilderKind>(k), {}};
        switch (tag.kind) {
            case BuilderKind::Compose: {
                std::uint64_t n = count();
                for (std::uint64_t j = 0; j < n; ++j) tag.params.push_back(param());
                break;
            }
            case BuilderKind::Const: break;
            case BuilderKind::Cond:
            case BuilderKind::Dummy: tag.params.push_back(param()); break;
            case BuilderKind::Perm: {
                std::uint64_t n = count();
                for (std::uint64_t j = 0; j < n; ++j) tag.params.push_back(small_delta());
                if (!is_permutation(tag.params)) throw Fail{"perm parameters not a permutation"};
                break;
            }
            case BuilderKind::Smn:
                tag.params.push_back(param());
                tag.params.push_back(param());
                if (tag.params[1] > remaining()) throw Fail{"parameter count exceeds code length"};
                break;
        }
        std::vector<ProgTerm> args;
        std::size_t n = tag.arg_count();
        args.reserve(n);
        for (std::size_t j = 0; j < n; ++j) args.push_back(term(depth + 1));
        return t_build(std::move(tag), std::move(args));
    }

    std::string b_;
    std::size_t pos_;
};

}  // namespace

Index encode(const ProgTerm& t) {
    std::string bits = "1";
    put_term(bits, t);
    return Index{Nat(bits, 2) - 1};
}

Decoded decode(const Index& e) {
    if (sgn(e.code) < 0) return DecodeFailure{"negative code"};
    Nat n = e.code + 1;
    Reader r(n.get_str(2));
    try {
        ProgTerm t = r.term(0);
        if (!r.done()) return DecodeFailure{"trailing bits after term"};
        return t;
    } catch (const Fail& f) {
        return DecodeFailure{f.reason};
    }
}

std::optional<ProgTerm> try_decode(const Nat& code) {
    Decoded d = decode(Index{code});
    if (auto* t = std::get_if<ProgTerm>(&d)) return *t;
    return std::nullopt;
}

bool in_arity(const Index& e, std::size_t n) {
    auto t = try_decode(e.code);
    return t && max_arg(*t) <= n;
}

}  // namespace bqc
