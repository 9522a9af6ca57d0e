// Formulas of the guarded-implication predicate language, with parsing,
// rendering and capture-avoiding substitution.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bqc/numbering.hpp"

namespace bqc {

struct Var {
    std::string name;
    bool operator==(const Var&) const = default;
};
struct Num {
    Nat value;
    bool operator==(const Num&) const = default;
};
using LTerm = std::variant<Var, Num>;

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct BotF {};
struct TopF {};
struct AtomF {
    std::string pred;
    std::vector<LTerm> args;
};
struct AndF {
    Formula left, right;
};
struct OrF {
    Formula left, right;
};
struct AllImpF {
    std::vector<std::string> vars;
    Formula ant, cons;
};
struct ExistsF {
    std::string var;
    Formula body;
};

struct FormulaNode {
    std::variant<BotF, TopF, AtomF, AndF, OrF, AllImpF, ExistsF> node;
};

Formula f_bot();
Formula f_top();
Formula f_atom(std::string pred, std::vector<LTerm> args = {});
Formula f_and(Formula l, Formula r);
Formula f_or(Formula l, Formula r);
Formula f_allimp(std::vector<std::string> vars, Formula ant, Formula cons);
Formula f_imp(Formula ant, Formula cons);
Formula f_exists(std::string var, Formula body);

template <class T>
const T* as(const Formula& f) {
    return std::get_if<T>(&f->node);
}

using VarList = std::vector<std::string>;

struct Sequent {
    Formula lhs, rhs;
};

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Sequent& s);
std::set<std::string> all_vars(const Formula& f);

bool structurally_equal(const Formula& a, const Formula& b);
bool alpha_equal(const Formula& a, const Formula& b);
bool alpha_equal(const Sequent& a, const Sequent& b);

// 0 for implication-free formulas, otherwise 1 + the rank of the deepest
// implication antecedent.
std::size_t rank(const Formula& f);
bool contains_top(const Formula& f);
std::set<Nat> constants(const Formula& f);

class SubstitutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Formula substitute(const Formula& f, const VarList& xs, const std::vector<LTerm>& ts);
Formula substitute(const Formula& f, const std::map<std::string, LTerm>& sigma);

// Smallest name stem+k (k >= 1, stem = name without trailing digits) not in avoid.
std::string fresh_name(const std::string& name, const std::set<std::string>& avoid);

bool distinct(const VarList& xs);
bool is_admissible(const VarList& xs, const Sequent& s);
// Free variables of the sequent in sorted order.
VarList canonical_list(const Sequent& s);

std::string render(const LTerm& t);
std::string render(const Formula& f);
std::string render(const Sequent& s);
std::string render(const VarList& xs);

struct Signature {
    std::map<std::string, std::size_t> arities;
    bool open = false;  // learn predicate arities on first use
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
               std::string found);
    std::size_t line, column;
    std::vector<std::string> expected;
    std::string found;
};

Formula parse_formula(std::string_view text, Signature& sig);
Sequent parse_sequent(std::string_view text, Signature& sig);
VarList parse_var_list(std::string_view text);  // "x,y z" or ""

bool is_identifier(std::string_view s);
bool is_keyword(std::string_view s);

}  // namespace bqc
