#include "bqc/numbering.hpp"

namespace bqc {

namespace {
constexpr unsigned long kNativeArg = 1ul << 24;
}

Nat pair(const Nat& a, const Nat& b) {
    if (a.fits_ulong_p() && b.fits_ulong_p() && a.get_ui() < kNativeArg && b.get_ui() < kNativeArg)
        return Nat(pair_u64(a.get_ui(), b.get_ui()));
    Nat s = a + b;
    Nat t = s * (s + 1);
    mpz_fdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), 1);
    return t + b;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
    if (n.fits_ulong_p() && n.get_ui() < kNativePairLimit) {
        std::uint64_t a, b;
        unpair_u64(n.get_ui(), a, b);
        return {Nat(a), Nat(b)};
    }
    // w = floor((isqrt(8n+1) - 1) / 2) is the diagonal holding n
    Nat r = 8 * n + 1;
    mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
    Nat w = (r - 1) / 2;
    Nat t = w * (w + 1) / 2;
    Nat b = n - t;
    return {w - b, b};
}

Nat p1(const Nat& n) { return unpair(n).first; }
Nat p2(const Nat& n) { return unpair(n).second; }

Nat parse_nat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    for (char c : text)
        if (c < '0' || c > '9') throw std::invalid_argument("not a natural number: " + text);
    return Nat(text, 10);
}

std::string to_string(const Nat& n) { return n.get_str(10); }

}  // namespace bqc
