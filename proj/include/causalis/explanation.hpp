#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalis/causality.hpp"
#include "causalis/formula.hpp"
#include "causalis/model.hpp"
#include "causalis/rational.hpp"

namespace causalis {

/// The set K of contexts an agent considers possible, with optional exact
/// probability weights aligned to `contexts` (nonnegative, summing to 1).
class EpistemicState {
public:
    EpistemicState(CausalModel model, std::vector<Context> contexts,
                   std::optional<std::vector<Rational>> weights = std::nullopt);

    const CausalModel& model() const { return model_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::optional<std::vector<Rational>>& weights() const { return weights_; }
    bool has_weights() const { return weights_.has_value(); }

private:
    CausalModel model_;
    std::vector<Context> contexts_;
    std::optional<std::vector<Rational>> weights_;
};

/// The agent's pre-observation state: a superset K⁻ of contexts with an exact
/// prior Pr⁻. Conditioning Pr⁻ on the explanandum must reproduce K.
class PriorState {
public:
    PriorState(CausalModel model, std::vector<Context> contexts, std::vector<Rational> weights);

    const CausalModel& model() const { return model_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::vector<Rational>& weights() const { return weights_; }

private:
    CausalModel model_;
    std::vector<Context> contexts_;
    std::vector<Rational> weights_;
};

struct ExplanationOptions {
    std::uint64_t budget = 10'000'000;
    /// The "actual world" variant: the candidate must additionally hold at
    /// this context; with `require_actual_in_k` the context must also be a
    /// member of K. Both off by default.
    std::optional<Context> require_actual;
    bool require_actual_in_k = false;
};

struct ExplanationReport {
    ConjunctiveEvent candidate;
    CausalFormula phi;
    bool ex1 = false;  // phi holds in every context of K
    bool ex2 = false;  // sufficient cause wherever the candidate holds
    bool ex3 = false;  // no proper nonempty sub-conjunct satisfies EX2
    bool ex4 = false;  // candidate false somewhere and true somewhere in K
    /// Contexts where the candidate holds but is not a sufficient cause.
    std::vector<Context> failing_contexts;
    /// Present when the actual-world variant was requested.
    std::optional<bool> actual_ok;
    bool verdict = false;
};

ExplanationReport check_explanation(const EpistemicState& state, const ConjunctiveEvent& candidate,
                                    const CausalFormula& phi,
                                    const ExplanationOptions& options = {});

struct EnumerateExplanationsOptions : ExplanationOptions {
    /// The literal definition admits degenerate explanations built from the
    /// explanandum's own variables when phi is disjunctive (a disjunct is a
    /// sufficient cause of the disjunction wherever it holds). Enumeration
    /// skips candidates mentioning variables of phi unless this is set.
    bool include_explanandum_variables = false;
};

/// All candidates of width <= max_width with a true verdict, in canonical
/// order. One budget is shared by the whole enumeration.
std::vector<ConjunctiveEvent> enumerate_explanations(
    const EpistemicState& state, const CausalFormula& phi, int max_width,
    const EnumerateExplanationsOptions& options = {});

/// K_{X=x,phi}: all contexts of K except those where the candidate holds but
/// is not a sufficient cause. Verifies EX1-EX4 for the candidate relative to
/// the returned core and throws CoreNotExplanation if any clause fails there
/// (EX4 fails exactly when the partial explanation degenerates).
std::vector<Context> partial_core(const EpistemicState& state, const ConjunctiveEvent& candidate,
                                  const CausalFormula& phi, const ExplanationOptions& options = {});

/// Pr(core | candidate) under the state's weights. Computed from the core
/// characterization directly, so it is defined (possibly 0) even when
/// partial_core would report a degenerate core.
Rational goodness(const EpistemicState& state, const ConjunctiveEvent& candidate,
                  const CausalFormula& phi, const ExplanationOptions& options = {});

/// Pr⁻(core | candidate): the causal measure of explanatory power.
Rational explanatory_power(const PriorState& prior, const EpistemicState& state,
                           const ConjunctiveEvent& candidate, const CausalFormula& phi,
                           const ExplanationOptions& options = {});

/// Pr⁻(K | candidate), equivalently Pr⁻(phi | candidate): the baseline that
/// confounds correlation with causation.
Rational gardenfors_power(const PriorState& prior, const EpistemicState& state,
                          const ConjunctiveEvent& candidate, const CausalFormula& phi,
                          const ExplanationOptions& options = {});

struct PartialExplanationReport {
    ConjunctiveEvent candidate;
    CausalFormula phi;
    std::vector<Context> core;
    Rational goodness;
    Rational probability_of_explanation;  // Pr(candidate) over K
    std::optional<Rational> power;
    std::optional<Rational> gardenfors;
    bool core_is_explanation = false;
    std::string core_failure;  // clause name when the core degenerates
};

/// Aggregated partial-explanation numbers; requires weights on the state.
/// `prior` may be null (the power fields stay empty).
PartialExplanationReport partial_report(const EpistemicState& state, const PriorState* prior,
                                        const ConjunctiveEvent& candidate,
                                        const CausalFormula& phi,
                                        const ExplanationOptions& options = {});

}  // namespace causalis
