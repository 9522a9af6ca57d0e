// Randomized soundness campaign: extract every proof, check the realizer on
// seeded random evaluations over several admissible lists.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bqc/calculus.hpp"
#include "bqc/semantics.hpp"

namespace bqc {

struct CampaignInput {
    std::string name;
    Signature signature;
    Derivation proof;
};

// *.bqc files of a directory, sorted by name. Throws InputError.
std::vector<CampaignInput> load_corpus(const std::filesystem::path& dir);

struct CampaignOptions {
    std::size_t trials = 50;     // evaluations per proof and list
    std::size_t lists = 2;       // admissible lists per proof
    std::uint64_t seed = 7;
    CheckOptions check;
    RandomEvaluationOptions evaluations;
    bool parallel = false;       // fan proofs out over OpenMP threads
};

// The canonical list, its reverse, then the canonical list with fresh extras.
std::vector<VarList> admissible_lists(const Sequent& s, std::size_t count);

struct ProofResult {
    std::string name;
    bool rank0 = false;          // implication-free antecedent
    std::size_t checks = 0, holds = 0, fails = 0, unknown = 0;
    std::string error;           // non-empty if the proof could not be processed
    // first Fails: list, evaluation and verdict
    std::optional<VarList> fail_list;
    std::optional<std::string> fail_evaluation;
    std::optional<Verdict> fail_verdict;
    Nat fail_index;

    bool ok() const { return error.empty() && fails == 0 && (!rank0 || unknown == 0); }
};

struct CampaignReport {
    std::vector<ProofResult> proofs;  // in input order
    bool ok() const;
};

CampaignReport run_campaign(const std::vector<CampaignInput>& inputs, const CampaignOptions& opt);
// Same, one proof at a time with no threads; kept as the reference.
CampaignReport run_campaign_serial(const std::vector<CampaignInput>& inputs, const CampaignOptions& opt);

}  // namespace bqc
