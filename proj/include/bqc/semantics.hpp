// Realizability over finite evaluations: exact where antecedent realizer sets
// are enumerable, three-valued otherwise.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqc/syntax.hpp"

namespace bqc {

class SemanticsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A generalized predicate restricted to finite realizer sets. Tuples absent
// from the table have no realizers.
struct PredTable {
    std::size_t arity = 0;
    std::map<std::vector<Nat>, std::vector<Nat>> table;  // sets kept sorted and unique
};

struct Evaluation {
    std::vector<Nat> domain;  // sorted, unique
    std::map<std::string, PredTable> preds;

    bool in_domain(const Nat& a) const;
    // Throws SemanticsError for an unknown predicate or a wrong arity.
    const std::vector<Nat>& realizers(const std::string& pred, const std::vector<Nat>& tuple) const;
    void set(const std::string& pred, std::vector<Nat> tuple, std::vector<Nat> realizers);
};

// Evaluation files (format in docs/formats.md).
Evaluation parse_evaluation(const std::string& json_text);
Evaluation load_evaluation(const std::filesystem::path& path);
std::string dump_evaluation(const Evaluation& f);

struct RandomEvaluationOptions {
    std::size_t min_domain = 1, max_domain = 4;
    unsigned domain_limit = 8;   // domain elements are below this
    std::size_t max_realizers = 4;
    unsigned value_limit = 32;   // realizers are below this
    std::vector<Nat> required;   // always in the domain, counted towards its size
};

Evaluation random_evaluation(const Signature& sig, std::mt19937_64& rng,
                             const RandomEvaluationOptions& opt = {});

// The exact realizer set of a closed, implication-free formula without top.
std::vector<Nat> real_set(const Formula& A, const Evaluation& f);

enum class VerdictKind { Holds, Fails, Unknown };
std::string verdict_name(VerdictKind k);

// The innermost evaluation whose outcome violated an obligation.
struct Replay {
    Nat code;
    std::vector<Nat> args;
    std::string outcome;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Holds;
    std::uint64_t bound = 0;          // for Unknown: the antecedent bound that was exhausted
    std::vector<std::string> trace;   // outermost step first
    std::optional<Replay> replay;

    bool holds() const { return kind == VerdictKind::Holds; }
    bool fails() const { return kind == VerdictKind::Fails; }
};

struct CheckOptions {
    std::uint64_t bound = 16;          // antecedent candidates 0..bound when not enumerable
    std::uint64_t fuel = kDefaultFuel; // per evaluation
    std::size_t grid_limit = 256;      // concrete instances tried for top-typed holes
    bool symbolic = true;              // try to discharge top-typed holes symbolically first
    bool parallel = false;             // spread the outermost obligations over OpenMP threads
};

Verdict check(const Nat& e, const Formula& A, const Evaluation& f, const CheckOptions& opt = {});
Verdict check_sequent(const Nat& e, const Sequent& S, const VarList& rs, const Evaluation& f,
                      const CheckOptions& opt = {});

// Antecedent realizers for implication-typed positions of a sequent's
// antecedent. A position is a path from the antecedent root through
// "/left", "/right" (conjunction, disjunction) and "/body" (existential);
// the tuple lists the values of the sequent's variables followed by the
// existential witnesses chosen along the path. A missing tuple matches any.
struct WitnessTable {
    struct Entry {
        std::string path;
        std::optional<std::vector<Nat>> tuple;
        std::vector<Nat> realizers;
    };
    std::vector<Entry> entries;

    void add(std::string path, std::vector<Nat> realizers);
    void add(std::string path, std::vector<Nat> tuple, std::vector<Nat> realizers);
    const std::vector<Nat>* find(const std::string& path, const std::vector<Nat>& tuple) const;
};

WitnessTable parse_witnesses(const std::string& json_text);
WitnessTable load_witnesses(const std::filesystem::path& path);

Verdict check_with_witnesses(const Nat& e, const Sequent& S, const VarList& rs, const Evaluation& f,
                             const WitnessTable& witnesses, const CheckOptions& opt = {});

}  // namespace bqc
