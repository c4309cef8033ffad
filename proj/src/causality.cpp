#include "causalis/causality.hpp"

#include <algorithm>

namespace causalis {

const char* cause_class_name(CauseClass c) {
    switch (c) {
        case CauseClass::NotACause: return "not-a-cause";
        case CauseClass::SufficientCause: return "sufficient-cause";
        case CauseClass::ActualCause: return "actual-cause";
    }
    return "not-a-cause";
}

namespace {

struct ResolvedCandidate {
    std::vector<int> vars;  // endogenous indices, ascending
    std::vector<int> vals;
};

ResolvedCandidate resolve_candidate(const Signature& sig, const ConjunctiveEvent& candidate) {
    std::vector<std::pair<int, int>> items;
    for (const PrimitiveEvent& e : candidate.events) {
        VarRef ref = sig.require(e.variable);
        if (ref.kind != VarKind::Endogenous)
            raise(ErrorCode::InvalidModel,
                  e.variable + " is exogenous; candidates are over endogenous variables");
        items.emplace_back(ref.index, sig.value_index(ref, e.value));
    }
    std::sort(items.begin(), items.end());
    ResolvedCandidate out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i && items[i].first == items[i - 1].first)
            raise(ErrorCode::InvalidModel, "candidate mentions a variable twice");
        out.vars.push_back(items[i].first);
        out.vals.push_back(items[i].second);
    }
    return out;
}

bool next_tuple(std::vector<int>& tuple, const std::vector<int>& radices) {
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
        if (++tuple[i] < radices[i]) return true;
        tuple[i] = 0;
    }
    return false;
}

// Lexicographically next size-k index combination drawn from 0..pool_size-1.
bool next_combination(std::vector<int>& comb, int pool_size) {
    int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < pool_size - (k - i)) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool candidate_holds(const ResolvedCandidate& c, const Assignment& solved) {
    for (size_t i = 0; i < c.vars.size(); ++i)
        if (solved.values[c.vars[i]] != c.vals[i]) return false;
    return true;
}

Ac2Witness make_witness(const Signature& sig, const ResolvedCandidate& x,
                        const std::vector<int>& wvars, const std::vector<int>& xprime,
                        const std::vector<int>& wprime, const Assignment& solved) {
    const int n = sig.endo_count();
    Ac2Witness w;
    w.alt_x = Assignment::unbound(n);
    w.alt_w = Assignment::unbound(n);
    w.baseline_z = Assignment::unbound(n);
    for (size_t i = 0; i < x.vars.size(); ++i) w.alt_x.values[x.vars[i]] = xprime[i];
    for (size_t j = 0; j < wvars.size(); ++j) w.alt_w.values[wvars[j]] = wprime[j];
    for (int v = 0; v < n; ++v) {
        bool in_w = std::find(wvars.begin(), wvars.end(), v) != wvars.end();
        if (in_w) {
            w.partition.wside.push_back(sig.endogenous()[v].name);
        } else {
            w.partition.zside.push_back(sig.endogenous()[v].name);
            w.baseline_z.values[v] = solved.values[v];
        }
    }
    return w;
}

// AC2(b): [X<-x, W'<-w', Z'<-z*] phi for every subset W' of W and every subset
// Z' of Z \ X. X is pinned to its actual values throughout.
bool ac2b_holds(const CausalModel& model, const Context& ctx, const CompiledFormula& phi,
                const ResolvedCandidate& x, const std::vector<int>& wvars,
                const std::vector<int>& wprime, const std::vector<int>& zrest,
                const Assignment& solved, SearchBudget& budget) {
    const int n = model.signature().endo_count();
    const std::uint64_t wcount = 1ull << wvars.size();
    const std::uint64_t zcount = 1ull << zrest.size();
    Assignment setting = Assignment::unbound(n);
    for (std::uint64_t wm = 0; wm < wcount; ++wm) {
        for (std::uint64_t zm = 0; zm < zcount; ++zm) {
            std::fill(setting.values.begin(), setting.values.end(), -1);
            for (size_t i = 0; i < x.vars.size(); ++i) setting.values[x.vars[i]] = x.vals[i];
            for (size_t j = 0; j < wvars.size(); ++j)
                if (wm >> j & 1) setting.values[wvars[j]] = wprime[j];
            for (size_t k = 0; k < zrest.size(); ++k)
                if (zm >> k & 1) setting.values[zrest[k]] = solved.values[zrest[k]];
            budget.charge();
            if (!phi.evaluate(ctx, &setting)) return false;
        }
    }
    return true;
}

std::optional<Ac2Witness> search_witness(const CausalModel& model, const Context& ctx,
                                         const CompiledFormula& phi, const ResolvedCandidate& x,
                                         const Assignment& solved, SearchBudget& budget) {
    if (x.vars.empty()) return std::nullopt;
    const Signature& sig = model.signature();
    const int n = sig.endo_count();
    if (n > 62) raise(ErrorCode::InvalidModel, "too many endogenous variables for AC2 search");

    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (std::find(x.vars.begin(), x.vars.end(), v) == x.vars.end()) rest.push_back(v);

    auto range_size = [&](int v) { return static_cast<int>(sig.endogenous()[v].range.size()); };
    std::vector<int> xrad;
    for (int v : x.vars) xrad.push_back(range_size(v));

    Assignment setting = Assignment::unbound(n);
    for (int wsize = 0; wsize <= static_cast<int>(rest.size()); ++wsize) {
        std::vector<int> comb(wsize);
        for (int i = 0; i < wsize; ++i) comb[i] = i;
        bool more_combs = true;
        while (more_combs) {
            std::vector<int> wvars;
            for (int i : comb) wvars.push_back(rest[i]);
            std::vector<int> zrest;
            for (int v : rest)
                if (std::find(wvars.begin(), wvars.end(), v) == wvars.end())
                    zrest.push_back(v);

            std::vector<int> wrad;
            for (int v : wvars) wrad.push_back(range_size(v));

            std::vector<int> xprime(x.vars.size(), 0);
            do {
                std::vector<int> wprime(wvars.size(), 0);
                do {
                    std::fill(setting.values.begin(), setting.values.end(), -1);
                    for (size_t i = 0; i < x.vars.size(); ++i)
                        setting.values[x.vars[i]] = xprime[i];
                    for (size_t j = 0; j < wvars.size(); ++j)
                        setting.values[wvars[j]] = wprime[j];
                    budget.charge();
                    if (!phi.evaluate(ctx, &setting) &&
                        ac2b_holds(model, ctx, phi, x, wvars, wprime, zrest, solved, budget))
                        return make_witness(sig, x, wvars, xprime, wprime, solved);
                } while (next_tuple(wprime, wrad));
            } while (next_tuple(xprime, xrad));
            more_combs = wsize > 0 && next_combination(comb, static_cast<int>(rest.size()));
        }
    }
    return std::nullopt;
}

CauseVerdict check_cause_impl(const CausalModel& model, const Context& ctx,
                              const ConjunctiveEvent& candidate, const CausalFormula& phi_ast,
                              const CompiledFormula& phi, const Assignment& solved,
                              bool phi_holds, SearchBudget& budget) {
    CauseVerdict verdict;
    verdict.candidate = candidate;
    verdict.phi = phi_ast;
    ResolvedCandidate x = resolve_candidate(model.signature(), candidate);

    verdict.ac1 = phi_holds && candidate_holds(x, solved);
    if (verdict.ac1 && !x.vars.empty())
        verdict.ac2 = search_witness(model, ctx, phi, x, solved, budget);

    // AC3: no proper nonempty subset may satisfy AC1 and AC2.
    verdict.ac3 = true;
    const int w = static_cast<int>(x.vars.size());
    for (int size = 1; size < w && verdict.ac3; ++size) {
        std::vector<int> comb(size);
        for (int i = 0; i < size; ++i) comb[i] = i;
        bool more = true;
        while (more && verdict.ac3) {
            ResolvedCandidate sub;
            for (int i : comb) {
                sub.vars.push_back(x.vars[i]);
                sub.vals.push_back(x.vals[i]);
            }
            if (phi_holds && candidate_holds(sub, solved) &&
                search_witness(model, ctx, phi, sub, solved, budget))
                verdict.ac3 = false;
            more = next_combination(comb, w);
        }
    }

    if (verdict.ac1 && verdict.ac2)
        verdict.classification =
            verdict.ac3 ? CauseClass::ActualCause : CauseClass::SufficientCause;
    return verdict;
}

std::vector<CauseVerdict> enumerate_impl(const Situation& situation, const CausalFormula& phi,
                                         int max_width, const CausalityOptions& options,
                                         bool actual_only) {
    if (max_width < 1) raise(ErrorCode::InvalidModel, "max_width must be at least 1");
    const CausalModel& model = situation.model;
    const Signature& sig = model.signature();
    SearchBudget budget{options.budget};
    CompiledFormula cphi(phi, model);
    Assignment solved = model.solve(situation.context);
    budget.charge();
    bool phi_holds = cphi.evaluate(situation.context);

    std::vector<CauseVerdict> found;
    if (!phi_holds) return found;  // AC1 can never hold

    const int n = sig.endo_count();
    max_width = std::min(max_width, n);
    for (int width = 1; width <= max_width; ++width) {
        std::vector<int> comb(width);
        for (int i = 0; i < width; ++i) comb[i] = i;
        bool more = true;
        while (more) {
            // Only candidates holding at (M,u) pass AC1; others are skipped
            // without burning budget.
            ConjunctiveEvent candidate;
            for (int i : comb) {
                const Variable& v = sig.endogenous()[i];
                candidate.events.push_back({v.name, v.range[solved.values[i]]});
            }
            CauseVerdict verdict = check_cause_impl(model, situation.context, candidate, phi,
                                                    cphi, solved, phi_holds, budget);
            bool keep = actual_only ? verdict.classification == CauseClass::ActualCause
                                    : verdict.ac1 && verdict.ac2.has_value();
            if (keep) found.push_back(std::move(verdict));
            more = next_combination(comb, n);
        }
    }
    return found;
}

}  // namespace

bool check_ac1(const Situation& situation, const ConjunctiveEvent& candidate,
               const CausalFormula& phi) {
    return holds_conjunct(situation, candidate) && evaluate(situation, phi);
}

std::optional<Ac2Witness> find_ac2_witness(const Situation& situation,
                                           const ConjunctiveEvent& candidate,
                                           const CausalFormula& phi,
                                           const CausalityOptions& options) {
    SearchBudget budget{options.budget};
    CompiledFormula cphi(phi, situation.model);
    return detail::find_ac2_witness(situation, candidate, cphi, budget);
}

namespace detail {

std::optional<Ac2Witness> find_ac2_witness(const Situation& situation,
                                           const ConjunctiveEvent& candidate,
                                           const CompiledFormula& phi, SearchBudget& budget) {
    ResolvedCandidate x = resolve_candidate(situation.model.signature(), candidate);
    Assignment solved = situation.model.solve(situation.context);
    return search_witness(situation.model, situation.context, phi, x, solved, budget);
}

bool is_sufficient_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                         const CompiledFormula& phi, SearchBudget& budget) {
    ResolvedCandidate x = resolve_candidate(situation.model.signature(), candidate);
    Assignment solved = situation.model.solve(situation.context);
    budget.charge();
    if (!phi.evaluate(situation.context) || !candidate_holds(x, solved)) return false;
    return search_witness(situation.model, situation.context, phi, x, solved, budget)
        .has_value();
}

}  // namespace detail

bool verify_ac2_witness(const Situation& situation, const ConjunctiveEvent& candidate,
                        const CausalFormula& phi, const Ac2Witness& witness) {
    const CausalModel& model = situation.model;
    const Signature& sig = model.signature();
    ResolvedCandidate x = resolve_candidate(sig, candidate);
    const int n = sig.endo_count();

    // Structural sanity: a partition of the endogenous variables with X in Z.
    if (static_cast<int>(witness.partition.zside.size() + witness.partition.wside.size()) != n)
        return false;
    std::vector<bool> in_w(n, false), seen(n, false);
    for (const std::string& name : witness.partition.wside) {
        VarRef ref = sig.require(name);
        if (ref.kind != VarKind::Endogenous || seen[ref.index]) return false;
        seen[ref.index] = in_w[ref.index] = true;
    }
    for (const std::string& name : witness.partition.zside) {
        VarRef ref = sig.require(name);
        if (ref.kind != VarKind::Endogenous || seen[ref.index]) return false;
        seen[ref.index] = true;
    }
    for (int v : x.vars)
        if (in_w[v]) return false;

    Assignment solved = model.solve(situation.context);
    std::vector<int> wvars, wprime, zrest;
    for (int v = 0; v < n; ++v) {
        if (in_w[v]) {
            if (witness.alt_w.values[v] < 0) return false;
            wvars.push_back(v);
            wprime.push_back(witness.alt_w.values[v]);
        } else if (std::find(x.vars.begin(), x.vars.end(), v) == x.vars.end()) {
            zrest.push_back(v);
        }
        if (!in_w[v] && witness.baseline_z.values[v] != solved.values[v]) return false;
    }

    CompiledFormula cphi(phi, model);
    SearchBudget budget{};  // verification is a bounded replay

    // (a) [X<-x', W<-w'] !phi
    Assignment setting = Assignment::unbound(n);
    for (int v : x.vars) {
        if (witness.alt_x.values[v] < 0) return false;
        setting.values[v] = witness.alt_x.values[v];
    }
    for (size_t j = 0; j < wvars.size(); ++j) setting.values[wvars[j]] = wprime[j];
    budget.charge();
    if (cphi.evaluate(situation.context, &setting)) return false;

    return ac2b_holds(model, situation.context, cphi, x, wvars, wprime, zrest, solved, budget);
}

CauseVerdict check_actual_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                                const CausalFormula& phi, const CausalityOptions& options) {
    SearchBudget budget{options.budget};
    CompiledFormula cphi(phi, situation.model);
    Assignment solved = situation.model.solve(situation.context);
    budget.charge();
    bool phi_holds = cphi.evaluate(situation.context);
    return check_cause_impl(situation.model, situation.context, candidate, phi, cphi, solved,
                            phi_holds, budget);
}

bool is_sufficient_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                         const CausalFormula& phi, const CausalityOptions& options) {
    SearchBudget budget{options.budget};
    CompiledFormula cphi(phi, situation.model);
    return detail::is_sufficient_cause(situation, candidate, cphi, budget);
}

std::vector<CauseVerdict> enumerate_actual_causes(const Situation& situation,
                                                  const CausalFormula& phi, int max_width,
                                                  const CausalityOptions& options) {
    return enumerate_impl(situation, phi, max_width, options, /*actual_only=*/true);
}

std::vector<CauseVerdict> enumerate_sufficient_causes(const Situation& situation,
                                                      const CausalFormula& phi, int max_width,
                                                      const CausalityOptions& options) {
    return enumerate_impl(situation, phi, max_width, options, /*actual_only=*/false);
}

}  // namespace causalis
