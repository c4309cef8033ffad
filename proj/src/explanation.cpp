#include "causalis/explanation.hpp"

#include <algorithm>
#include <map>

namespace causalis {

namespace {

void validate_context_list(const CausalModel& model, const std::vector<Context>& contexts) {
    for (const Context& c : contexts) model.validate_context(c);
    std::vector<Context> sorted = contexts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        raise(ErrorCode::InvalidModel, "duplicate context in epistemic state");
}

void validate_weights(const std::vector<Context>& contexts, const std::vector<Rational>& weights) {
    if (weights.size() != contexts.size())
        raise(ErrorCode::InvalidModel, "weights must align with the context list");
    Rational total = 0;
    for (const Rational& w : weights) {
        if (w < 0) raise(ErrorCode::InvalidModel, "weights must be nonnegative");
        total += w;
    }
    if (total != 1) raise(ErrorCode::InvalidModel, "weights must sum to exactly 1");
}

}  // namespace

EpistemicState::EpistemicState(CausalModel model, std::vector<Context> contexts,
                               std::optional<std::vector<Rational>> weights)
    : model_(std::move(model)), contexts_(std::move(contexts)), weights_(std::move(weights)) {
    if (contexts_.empty())
        raise(ErrorCode::EmptyEpistemicState, "an epistemic state needs at least one context");
    validate_context_list(model_, contexts_);
    if (weights_) validate_weights(contexts_, *weights_);
}

PriorState::PriorState(CausalModel model, std::vector<Context> contexts,
                       std::vector<Rational> weights)
    : model_(std::move(model)), contexts_(std::move(contexts)), weights_(std::move(weights)) {
    if (contexts_.empty())
        raise(ErrorCode::EmptyEpistemicState, "a prior state needs at least one context");
    validate_context_list(model_, contexts_);
    validate_weights(contexts_, weights_);
}

namespace {

struct ResolvedEvent {
    std::vector<int> vars;
    std::vector<int> vals;
};

ResolvedEvent resolve_event(const Signature& sig, const ConjunctiveEvent& event) {
    std::vector<std::pair<int, int>> items;
    for (const PrimitiveEvent& e : event.events) {
        VarRef ref = sig.require(e.variable);
        if (ref.kind != VarKind::Endogenous)
            raise(ErrorCode::InvalidModel,
                  e.variable + " is exogenous; candidates are over endogenous variables");
        items.emplace_back(ref.index, sig.value_index(ref, e.value));
    }
    std::sort(items.begin(), items.end());
    ResolvedEvent out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i && items[i].first == items[i - 1].first)
            raise(ErrorCode::InvalidModel, "candidate mentions a variable twice");
        out.vars.push_back(items[i].first);
        out.vals.push_back(items[i].second);
    }
    return out;
}

bool event_holds(const ResolvedEvent& e, const Assignment& solved) {
    for (size_t i = 0; i < e.vars.size(); ++i)
        if (solved.values[e.vars[i]] != e.vals[i]) return false;
    return true;
}

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

// Shared per-(state, phi) work: compiled formula, solved contexts, EX1.
struct Analysis {
    const EpistemicState& state;
    CompiledFormula phi;
    std::vector<Assignment> solved;
    std::vector<bool> phi_true;
    bool ex1 = true;
    SearchBudget budget;

    Analysis(const EpistemicState& s, const CausalFormula& phi_ast, std::uint64_t budget_limit)
        : state(s), phi(phi_ast, s.model()), budget{budget_limit, 0} {
        for (const Context& ctx : s.contexts()) {
            solved.push_back(s.model().solve(ctx));
            budget.charge();
            bool t = phi.evaluate(ctx);
            phi_true.push_back(t);
            ex1 = ex1 && t;
        }
    }

    bool sufficient_at(int i, const ConjunctiveEvent& candidate) {
        if (!phi_true[static_cast<size_t>(i)]) return false;  // AC1 needs phi
        return detail::find_ac2_witness(
                   Situation{state.model(), state.contexts()[static_cast<size_t>(i)]}, candidate,
                   phi, budget)
            .has_value();
    }

    // EX2 for an arbitrary conjunct: sufficient at every context where it holds.
    bool ex2_for(const ConjunctiveEvent& candidate, const ResolvedEvent& resolved,
                 std::vector<char>* suff_out, std::vector<bool>* holds_out) {
        bool ok = true;
        for (size_t i = 0; i < state.contexts().size(); ++i) {
            bool holds = event_holds(resolved, solved[i]);
            if (holds_out) (*holds_out)[i] = holds;
            if (!holds) continue;
            bool suff = sufficient_at(static_cast<int>(i), candidate);
            if (suff_out) (*suff_out)[i] = suff ? 1 : 0;
            if (!suff) ok = false;
        }
        return ok;
    }
};

struct ClauseData {
    ExplanationReport report;
    std::vector<bool> holds;      // candidate truth per context
    std::vector<char> sufficient;  // meaningful where holds
};

ClauseData analyze_candidate(Analysis& a, const ConjunctiveEvent& candidate,
                             const CausalFormula& phi_ast, const ExplanationOptions& options) {
    if (candidate.empty())
        raise(ErrorCode::InvalidModel, "explanation candidates must be nonempty");
    const EpistemicState& state = a.state;
    const Signature& sig = state.model().signature();
    ResolvedEvent resolved = resolve_event(sig, candidate);
    const size_t n = state.contexts().size();

    ClauseData data;
    data.holds.assign(n, false);
    data.sufficient.assign(n, 0);
    ExplanationReport& r = data.report;
    r.candidate = candidate;
    r.phi = phi_ast;
    r.ex1 = a.ex1;

    // EX4 first: both a context where the candidate fails and one where it
    // holds must be possible.
    for (size_t i = 0; i < n; ++i) data.holds[i] = event_holds(resolved, a.solved[i]);
    bool somewhere_false = std::find(data.holds.begin(), data.holds.end(), false) != data.holds.end();
    bool somewhere_true = std::find(data.holds.begin(), data.holds.end(), true) != data.holds.end();
    r.ex4 = somewhere_false && somewhere_true;

    // EX2, recording the failing contexts (they are the partial core's complement).
    r.ex2 = true;
    for (size_t i = 0; i < n; ++i) {
        if (!data.holds[i]) continue;
        bool suff = a.sufficient_at(static_cast<int>(i), candidate);
        data.sufficient[i] = suff ? 1 : 0;
        if (!suff) {
            r.ex2 = false;
            r.failing_contexts.push_back(state.contexts()[i]);
        }
    }

    // EX3: no proper nonempty sub-conjunct satisfies EX2.
    r.ex3 = true;
    const int w = candidate.width();
    std::vector<PrimitiveEvent> canon(candidate.events);
    std::sort(canon.begin(), canon.end(), [&](const PrimitiveEvent& x, const PrimitiveEvent& y) {
        return sig.require(x.variable).index < sig.require(y.variable).index;
    });
    for (int size = 1; size < w && r.ex3; ++size) {
        std::vector<int> comb(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) comb[i] = i;
        bool more = true;
        while (more && r.ex3) {
            ConjunctiveEvent sub;
            for (int i : comb) sub.events.push_back(canon[static_cast<size_t>(i)]);
            ResolvedEvent sub_resolved = resolve_event(sig, sub);
            if (a.ex2_for(sub, sub_resolved, nullptr, nullptr)) r.ex3 = false;
            more = next_combination(comb, w);
        }
    }

    if (options.require_actual) {
        const Context& actual = *options.require_actual;
        state.model().validate_context(actual);
        Assignment actual_solved = state.model().solve(actual);
        bool ok = event_holds(resolved, actual_solved);
        if (options.require_actual_in_k)
            ok = ok && std::find(state.contexts().begin(), state.contexts().end(), actual) !=
                           state.contexts().end();
        r.actual_ok = ok;
    }

    r.verdict = r.ex1 && r.ex2 && r.ex3 && r.ex4 && r.actual_ok.value_or(true);
    return data;
}

}  // namespace

ExplanationReport check_explanation(const EpistemicState& state, const ConjunctiveEvent& candidate,
                                    const CausalFormula& phi, const ExplanationOptions& options) {
    Analysis a(state, phi, options.budget);
    return analyze_candidate(a, candidate, phi, options).report;
}

std::vector<ConjunctiveEvent> enumerate_explanations(const EpistemicState& state,
                                                     const CausalFormula& phi, int max_width,
                                                     const EnumerateExplanationsOptions& options) {
    if (max_width < 1) raise(ErrorCode::InvalidModel, "max_width must be at least 1");
    const Signature& sig = state.model().signature();
    Analysis a(state, phi, options.budget);

    std::vector<int> pool;
    auto excluded = formula_variables(phi);
    for (int v = 0; v < sig.endo_count(); ++v) {
        if (!options.include_explanandum_variables &&
            excluded.count(sig.endogenous()[v].name))
            continue;
        pool.push_back(v);
    }

    std::vector<ConjunctiveEvent> found;
    max_width = std::min(max_width, static_cast<int>(pool.size()));
    for (int width = 1; width <= max_width; ++width) {
        std::vector<int> comb(static_cast<size_t>(width));
        for (int i = 0; i < width; ++i) comb[i] = i;
        bool more = true;
        while (more) {
            std::vector<int> radices;
            for (int i : comb)
                radices.push_back(
                    static_cast<int>(sig.endogenous()[pool[static_cast<size_t>(i)]].range.size()));
            std::vector<int> values(static_cast<size_t>(width), 0);
            bool more_values = true;
            while (more_values) {
                ConjunctiveEvent candidate;
                for (int i = 0; i < width; ++i) {
                    const Variable& v = sig.endogenous()[pool[static_cast<size_t>(comb[i])]];
                    candidate.events.push_back({v.name, v.range[values[static_cast<size_t>(i)]]});
                }
                if (analyze_candidate(a, candidate, phi, options).report.verdict)
                    found.push_back(std::move(candidate));
                more_values = false;
                for (int i = width - 1; i >= 0; --i) {
                    if (++values[static_cast<size_t>(i)] < radices[static_cast<size_t>(i)]) {
                        more_values = true;
                        break;
                    }
                    values[static_cast<size_t>(i)] = 0;
                }
            }
            more = next_combination(comb, static_cast<int>(pool.size()));
        }
    }
    return found;
}

namespace {

std::vector<Context> core_from(const ClauseData& data, const EpistemicState& state) {
    std::vector<Context> core;
    for (size_t i = 0; i < state.contexts().size(); ++i)
        if (!data.holds[i] || data.sufficient[i]) core.push_back(state.contexts()[i]);
    return core;
}

// Returns the empty string when the candidate is an explanation relative to
// the core, else the name of the first failing clause.
std::string core_failure(const EpistemicState& state, const std::vector<Context>& core,
                         const ConjunctiveEvent& candidate, const CausalFormula& phi,
                         std::uint64_t budget) {
    if (core.empty()) return "empty-core";
    EpistemicState core_state(state.model(), core,
                              std::nullopt);
    ExplanationOptions opts;
    opts.budget = budget;
    ExplanationReport r = check_explanation(core_state, candidate, phi, opts);
    if (!r.ex1) return "EX1";
    if (!r.ex2) return "EX2";
    if (!r.ex3) return "EX3";
    if (!r.ex4) return "EX4";
    return "";
}

}  // namespace

std::vector<Context> partial_core(const EpistemicState& state, const ConjunctiveEvent& candidate,
                                  const CausalFormula& phi, const ExplanationOptions& options) {
    Analysis a(state, phi, options.budget);
    ClauseData data = analyze_candidate(a, candidate, phi, options);
    std::vector<Context> core = core_from(data, state);
    std::string failure = core_failure(state, core, candidate, phi, options.budget);
    if (!failure.empty())
        raise(ErrorCode::CoreNotExplanation,
              "the candidate is not an explanation relative to its own core (" + failure +
                  " fails there)");
    return core;
}

namespace {

struct WeightedCore {
    std::vector<Context> core;
    std::vector<bool> holds;  // per K context
};

WeightedCore weighted_core(const EpistemicState& state, const ConjunctiveEvent& candidate,
                           const CausalFormula& phi, const ExplanationOptions& options) {
    Analysis a(state, phi, options.budget);
    ClauseData data = analyze_candidate(a, candidate, phi, options);
    return {core_from(data, state), data.holds};
}

}  // namespace

Rational goodness(const EpistemicState& state, const ConjunctiveEvent& candidate,
                  const CausalFormula& phi, const ExplanationOptions& options) {
    if (!state.has_weights())
        raise(ErrorCode::MissingWeights, "goodness needs probability weights on the state");
    WeightedCore wc = weighted_core(state, candidate, phi, options);
    const std::vector<Rational>& w = *state.weights();
    std::vector<bool> in_core(state.contexts().size(), false);
    for (size_t i = 0; i < state.contexts().size(); ++i)
        in_core[i] = std::find(wc.core.begin(), wc.core.end(), state.contexts()[i]) != wc.core.end();
    Rational denom = 0, numer = 0;
    for (size_t i = 0; i < state.contexts().size(); ++i) {
        if (!wc.holds[i]) continue;
        denom += w[i];
        if (in_core[i]) numer += w[i];
    }
    if (denom == 0)
        raise(ErrorCode::ZeroProbabilityCandidate,
              "the candidate has probability 0 in the epistemic state");
    return numer / denom;
}

namespace {

struct PriorView {
    std::map<Context, Rational> weight_of;  // over K^-
    std::vector<bool> holds;                // candidate truth per K^- context
    Rational candidate_mass = 0;            // Pr^-(candidate)
};

PriorView prior_view(const PriorState& prior, const EpistemicState& state,
                     const ConjunctiveEvent& candidate, const CausalFormula& phi) {
    if (!(prior.model() == state.model()))
        raise(ErrorCode::InconsistentPrior, "prior and posterior use different models");

    // K must be exactly the phi-satisfying subset of K^-.
    CompiledFormula cphi(phi, prior.model());
    std::vector<Context> satisfying;
    for (const Context& ctx : prior.contexts())
        if (cphi.evaluate(ctx)) satisfying.push_back(ctx);
    std::vector<Context> k = state.contexts();
    std::sort(satisfying.begin(), satisfying.end());
    std::sort(k.begin(), k.end());
    if (satisfying != k)
        raise(ErrorCode::InconsistentPrior,
              "K is not the explanandum-satisfying subset of the prior's contexts");

    PriorView view;
    Rational k_mass = 0;
    for (size_t i = 0; i < prior.contexts().size(); ++i) {
        view.weight_of[prior.contexts()[i]] = prior.weights()[i];
        if (cphi.evaluate(prior.contexts()[i])) k_mass += prior.weights()[i];
    }
    if (state.has_weights()) {
        if (k_mass == 0)
            raise(ErrorCode::InconsistentPrior, "the prior gives the explanandum probability 0");
        for (size_t i = 0; i < state.contexts().size(); ++i) {
            if ((*state.weights())[i] * k_mass != view.weight_of[state.contexts()[i]])
                raise(ErrorCode::InconsistentPrior,
                      "posterior weights are not the prior conditioned on the explanandum");
        }
    }

    ResolvedEvent resolved = resolve_event(prior.model().signature(), candidate);
    for (const Context& ctx : prior.contexts()) {
        Assignment solved = prior.model().solve(ctx);
        bool h = event_holds(resolved, solved);
        view.holds.push_back(h);
        if (h) view.candidate_mass += view.weight_of[ctx];
    }
    if (view.candidate_mass == 0)
        raise(ErrorCode::ZeroProbabilityCandidate, "the candidate has prior probability 0");
    return view;
}

}  // namespace

Rational explanatory_power(const PriorState& prior, const EpistemicState& state,
                           const ConjunctiveEvent& candidate, const CausalFormula& phi,
                           const ExplanationOptions& options) {
    PriorView view = prior_view(prior, state, candidate, phi);
    WeightedCore wc = weighted_core(state, candidate, phi, options);
    Rational numer = 0;
    for (size_t i = 0; i < prior.contexts().size(); ++i) {
        if (!view.holds[i]) continue;
        if (std::find(wc.core.begin(), wc.core.end(), prior.contexts()[i]) != wc.core.end())
            numer += prior.weights()[i];
    }
    return numer / view.candidate_mass;
}

Rational gardenfors_power(const PriorState& prior, const EpistemicState& state,
                          const ConjunctiveEvent& candidate, const CausalFormula& phi,
                          const ExplanationOptions& options) {
    (void)options;
    PriorView view = prior_view(prior, state, candidate, phi);
    Rational numer = 0;
    for (size_t i = 0; i < prior.contexts().size(); ++i) {
        if (!view.holds[i]) continue;
        if (std::find(state.contexts().begin(), state.contexts().end(), prior.contexts()[i]) !=
            state.contexts().end())
            numer += prior.weights()[i];
    }
    return numer / view.candidate_mass;
}

PartialExplanationReport partial_report(const EpistemicState& state, const PriorState* prior,
                                        const ConjunctiveEvent& candidate,
                                        const CausalFormula& phi,
                                        const ExplanationOptions& options) {
    if (!state.has_weights())
        raise(ErrorCode::MissingWeights, "partial-explanation reports need weights on the state");
    PartialExplanationReport report;
    report.candidate = candidate;
    report.phi = phi;

    WeightedCore wc = weighted_core(state, candidate, phi, options);
    report.core = wc.core;
    report.goodness = goodness(state, candidate, phi, options);
    const std::vector<Rational>& w = *state.weights();
    for (size_t i = 0; i < state.contexts().size(); ++i)
        if (wc.holds[i]) report.probability_of_explanation += w[i];

    std::string failure = core_failure(state, wc.core, candidate, phi, options.budget);
    report.core_is_explanation = failure.empty();
    report.core_failure = failure;

    if (prior) {
        report.power = explanatory_power(*prior, state, candidate, phi, options);
        report.gardenfors = gardenfors_power(*prior, state, candidate, phi, options);
    }
    return report;
}

}  // namespace causalis
