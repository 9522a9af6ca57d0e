#include <algorithm>

#include "bqc/extraction.hpp"

namespace bqc {

namespace {

std::optional<std::size_t> position(const VarList& xs, const std::string& v) {
    auto it = std::find(xs.begin(), xs.end(), v);
    if (it == xs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - xs.begin()) + 1;
}

void require_admissible(const RealizedSequent& r, const VarList& target) {
    if (!is_admissible(target, r.sequent))
        throw ExtractionError("list " + render(target) + " is not admissible for " + render(r.sequent));
}

}  // namespace

RealizedSequent adapt_list(const RealizedSequent& r, const VarList& target, DropFill fill) {
    require_admissible(r, target);
    if (r.list == target) return r;
    std::size_t m = target.size();
    std::vector<Index> es;
    for (const auto& v : r.list) {
        if (auto j = position(target, v)) es.push_back(build_proj(*j, m + 1));
        else if (fill == DropFill::Domain && m > 0) es.push_back(build_proj(1, m + 1));
        else es.push_back(build_const(0));
    }
    es.push_back(build_proj(m + 1, m + 1));
    std::vector<std::size_t> ms(es.size(), m + 1);
    return {r.sequent, target, build_compose(r.index, es, ms)};
}

RealizedSequent adapt_list_stepwise(const RealizedSequent& r, const VarList& target) {
    require_admissible(r, target);
    const VarList& src = r.list;
    VarList shared, dropped, added;
    for (const auto& v : src) (position(target, v) ? shared : dropped).push_back(v);
    for (const auto& v : target)
        if (!position(src, v)) added.push_back(v);
    std::size_t z = shared.size();

    // (src, a) -> (shared, a, dropped)
    std::vector<std::size_t> p;
    for (const auto& v : src) {
        if (auto j = position(shared, v)) p.push_back(*j);
        else p.push_back(z + 1 + *position(dropped, v));
    }
    p.push_back(z + 1);
    Index e = build_perm(r.index, p);

    std::vector<Nat> zeros(dropped.size(), Nat(0));
    e = build_smn(e, zeros, z + 1);

    for (std::size_t j = 0; j < added.size(); ++j) e = build_dummy(e, z + 1 + j);

    // (shared, a, added) -> (target, a)
    std::vector<std::size_t> q;
    for (const auto& v : shared) q.push_back(*position(target, v));
    q.push_back(target.size() + 1);
    for (const auto& v : added) q.push_back(*position(target, v));
    e = build_perm(e, q);
    return {r.sequent, target, e};
}

}  // namespace bqc
