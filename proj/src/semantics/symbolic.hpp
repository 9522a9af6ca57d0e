// Values with unknown parts, for antecedent positions typed by top whose
// realizer set is all of N.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bqc/numbering.hpp"

namespace bqc::sym {

struct SymNode;
using Sym = std::shared_ptr<const SymNode>;

struct SNum { Nat v; };
struct SHole { std::size_t id; };
struct SPair { Sym l, r; };
struct SProj { bool first; Sym of; };
// The code of term with Arg(arity + j) replaced by the constant env[j-1].
struct SCode {
    ProgTerm term;
    std::size_t arity;
    std::vector<Sym> env;
};

struct SymNode {
    std::variant<SNum, SHole, SPair, SProj, SCode> node;
};

Sym num(Nat v);
Sym hole(std::size_t id);
Sym mk_pair(Sym l, Sym r);
Sym fst(const Sym& v);
Sym snd(const Sym& v);

const Nat* concrete(const Sym& v);
const Nat* concrete(Sym&&) = delete;  // the pointer would outlive the node
std::vector<std::size_t> holes(const Sym& v);
Nat instantiate(const Sym& v, const std::map<std::size_t, Nat>& values);
std::string render(const Sym& v);

struct Closure {
    ProgTerm term;
    std::size_t arity;
    std::vector<Sym> env;
};

// v read as a code of the given arity; nullopt when that cannot be established.
std::optional<Closure> as_closure(const Sym& v, std::size_t arity);
Sym code_of(Closure c);

// Evaluates term on symbolic arguments. nullopt: undefined, out of fuel, or
// the result depends on an unknown in a way that cannot be tracked.
std::optional<Sym> eval(const ProgTerm& t, const std::vector<Sym>& args, std::uint64_t& fuel);

}  // namespace bqc::sym
