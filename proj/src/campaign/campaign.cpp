#include "bqc/campaign.hpp"

#include <algorithm>
#include <exception>

#include "bqc/extraction.hpp"

namespace bqc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ProofResult run_one(const CampaignInput& in, const CampaignOptions& opt) {
    ProofResult r;
    r.name = in.name;
    const Sequent& s = in.proof.conclusion;
    r.rank0 = rank(s.lhs) == 0;
    try {
        auto rep = check_derivation(in.proof);
        if (!rep.ok) {
            r.error = "does not check: " + rep.failures.front().path + ": " + rep.failures.front().reason;
            return r;
        }
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(fnv1a(in.name)), static_cast<std::uint32_t>(fnv1a(in.name) >> 32)};
        std::mt19937_64 rng(seq);
        RandomEvaluationOptions eo = opt.evaluations;
        for (const auto& c : constants(s.lhs)) eo.required.push_back(c);
        for (const auto& c : constants(s.rhs)) eo.required.push_back(c);
        CheckOptions co = opt.check;
        co.parallel = false;
        for (const auto& rs : admissible_lists(s, opt.lists)) {
            Index e = extract_checked(in.proof, rs);
            for (std::size_t t = 0; t < opt.trials; ++t) {
                Evaluation f = random_evaluation(in.signature, rng, eo);
                Verdict v = check_sequent(e.code, s, rs, f, co);
                ++r.checks;
                switch (v.kind) {
                    case VerdictKind::Holds: ++r.holds; break;
                    case VerdictKind::Unknown: ++r.unknown; break;
                    case VerdictKind::Fails:
                        if (++r.fails == 1) {
                            r.fail_list = rs;
                            r.fail_evaluation = dump_evaluation(f);
                            r.fail_verdict = v;
                            r.fail_index = e.code;
                        }
                        break;
                }
            }
        }
    } catch (const std::exception& ex) {
        r.error = ex.what();
    }
    return r;
}

}  // namespace

std::vector<VarList> admissible_lists(const Sequent& s, std::size_t count) {
    VarList c = canonical_list(s);
    std::vector<VarList> out{c};
    VarList rev(c.rbegin(), c.rend());
    if (out.size() < count && rev != c) out.push_back(rev);
    std::set<std::string> avoid = all_vars(s.lhs);
    avoid.merge(all_vars(s.rhs));
    VarList grow = c;
    while (out.size() < count) {
        std::string v = fresh_name("w", avoid);
        avoid.insert(v);
        grow.insert(grow.begin() + static_cast<long>(grow.size() / 2), v);
        out.push_back(grow);
    }
    out.resize(std::min(out.size(), std::max<std::size_t>(count, 1)));
    return out;
}

bool CampaignReport::ok() const {
    return std::all_of(proofs.begin(), proofs.end(), [](const ProofResult& p) { return p.ok(); });
}

CampaignReport run_campaign_serial(const std::vector<CampaignInput>& inputs, const CampaignOptions& opt) {
    CampaignReport rep;
    for (const auto& in : inputs) rep.proofs.push_back(run_one(in, opt));
    return rep;
}

CampaignReport run_campaign(const std::vector<CampaignInput>& inputs, const CampaignOptions& opt) {
    if (!opt.parallel) return run_campaign_serial(inputs, opt);
    CampaignReport rep;
    rep.proofs.resize(inputs.size());
    const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) rep.proofs[i] = run_one(inputs[i], opt);
    return rep;
}

std::vector<CampaignInput> load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".bqc") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<CampaignInput> out;
    for (const auto& p : files) {
        ProofFile pf = load_proof(p);
        out.push_back({p.stem().string(), pf.signature, pf.root});
    }
    return out;
}

}  // namespace bqc
