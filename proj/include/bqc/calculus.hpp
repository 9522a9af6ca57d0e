// Derivation trees and the axiom/rule checker.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bqc/syntax.hpp"

namespace bqc {

enum class Rule {
    A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11,
    R1, R2, R3a, R3b, R4, R5a, R5b, R6, R7, R8, R9,
};

std::string rule_name(Rule r);
std::optional<Rule> parse_rule_name(std::string_view s);
bool is_axiom(Rule r);
std::size_t premise_count(Rule r);
std::vector<Rule> all_rules();

// Metavariables of the schema. Which ones are needed depends on the rule:
//   A1-A3: A          A4: A B x        A5: A B C      A6-A8: A B C xs
//   A9-A10: A B xs ys  A11: A B xs x   R6: xs ys      R7-R8: x     R9: xs
struct Instantiation {
    std::optional<Formula> A, B, C;
    std::optional<VarList> xs, ys;
    std::optional<std::string> x;
};

struct AxiomInstance {
    Rule rule;
    Sequent conclusion;
    Instantiation with;
};

struct RuleApp {
    Rule rule;
    Sequent conclusion;
    Instantiation with;
    std::vector<Sequent> premises;
};

struct Derivation {
    Rule rule;
    Sequent conclusion;
    Instantiation with;
    std::vector<Derivation> premises;

    AxiomInstance axiom() const;
    RuleApp app() const;
    std::size_t size() const;
};

struct Failure {
    std::string path;  // JSON-pointer into the proof tree, "/" is the root
    std::string reason;
};

struct CheckReport {
    bool ok = true;
    std::vector<Failure> failures;
    void fail(std::string path, std::string reason);
};

// The conclusion the schema prescribes for the given metavariables.
std::optional<Sequent> axiom_schema(Rule r, const Instantiation& with, std::string* why = nullptr);

CheckReport check_axiom(const AxiomInstance& inst);
CheckReport check_rule(const RuleApp& app);
CheckReport check_derivation(const Derivation& d);

std::string child_path(const std::string& parent, std::size_t i);

// Proof files (format in docs/formats.md).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProofFile {
    Signature signature;
    Derivation root;
};

ProofFile parse_proof(const std::string& json_text);
ProofFile load_proof(const std::filesystem::path& path);
std::string dump_proof(const ProofFile& p);

}  // namespace bqc
