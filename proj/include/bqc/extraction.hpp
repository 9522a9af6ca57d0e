// Realizer extraction: derivations to indices realizing their conclusions.
#pragma once

#include <span>
#include <stdexcept>

#include "bqc/calculus.hpp"
#include "bqc/numbering.hpp"

namespace bqc {

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RealizedSequent {
    Sequent sequent;
    VarList list;
    Index index;
};

// How adapt_list instantiates variables that the target list drops.
//   Domain: the value of the first target variable (a domain element), or 0
//           when the target list is empty.
//   Zero:   always 0.
enum class DropFill { Domain, Zero };

Index realize_axiom(const AxiomInstance& inst, const VarList& rs);
Index realize_rule(const RuleApp& app, std::span<const RealizedSequent> premises, const VarList& rs);

// The list each premise is realized over, and the list the rule's own
// construction produces before the final adaptation.
std::vector<VarList> premise_lists(const RuleApp& app);
VarList construction_list(const RuleApp& app);

RealizedSequent adapt_list(const RealizedSequent& r, const VarList& target,
                           DropFill fill = DropFill::Domain);
// Permute, fix dropped variables to 0, add dummies, permute again.
RealizedSequent adapt_list_stepwise(const RealizedSequent& r, const VarList& target);

Index extract(const Derivation& d, const VarList& rs);
// Extraction without re-checking the tree; d must already be checked.
Index extract_checked(const Derivation& d, const VarList& rs);

// For a checked derivation of top => A with A closed: phi_e(0) where e is
// extracted over the empty list.
Nat sentence_realizer(const Derivation& d, std::uint64_t fuel = kDefaultFuel);

}  // namespace bqc
