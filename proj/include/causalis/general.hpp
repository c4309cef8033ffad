#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalis/causality.hpp"
#include "causalis/explanation.hpp"
#include "causalis/formula.hpp"
#include "causalis/model.hpp"
#include "causalis/rational.hpp"

namespace causalis {

/// A set of situations (model, context) with model uncertainty. Models are
/// deduplicated by structural equality; M(K) is the distinct-model list.
class SituationSet {
public:
    struct Item {
        int model_index;
        Context context;
        bool operator==(const Item&) const = default;
        auto operator<=>(const Item&) const = default;
    };

    SituationSet(std::vector<std::pair<CausalModel, Context>> situations,
                 std::optional<std::vector<Rational>> weights = std::nullopt);

    const std::vector<CausalModel>& models() const { return models_; }
    const std::vector<Item>& items() const { return items_; }
    const std::optional<std::vector<Rational>>& weights() const { return weights_; }
    size_t size() const { return items_.size(); }
    Situation situation(size_t i) const {
        return Situation{models_[static_cast<size_t>(items_[i].model_index)], items_[i].context};
    }

private:
    std::vector<CausalModel> models_;
    std::vector<Item> items_;
    std::optional<std::vector<Rational>> weights_;
};

/// (psi, X⃗=x⃗): causal information plus a conjunction of primitive events.
struct GeneralExplanation {
    CausalFormula psi;
    ConjunctiveEvent event;
};

/// A causal model plus an exact probability over its context space, aligned
/// with enumerate_contexts().
class ProbabilisticCausalModel {
public:
    ProbabilisticCausalModel(CausalModel model, std::vector<Rational> weights);

    const CausalModel& model() const { return model_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::vector<Rational>& weights() const { return weights_; }

private:
    CausalModel model_;
    std::vector<Context> contexts_;
    std::vector<Rational> weights_;
};

/// M |= psi: psi holds at every context of M. A psi mentioning a variable
/// absent from M's signature (or a value outside a range) is not valid in M
/// rather than an error, so psi can partition heterogeneous model sets.
bool model_valid(const CausalModel& model, const CausalFormula& psi);

/// A formula valid in `model` that pins its mechanisms: the conjunction, for
/// each endogenous X and each total setting w⃗ of the other endogenous
/// variables, of [w⃗](X=x) whenever the intervened value of X is the same x
/// in every context. Rows whose output still depends on the exogenous
/// variables admit no valid pinning atom and are omitted. TRUE when nothing
/// can be pinned.
CausalFormula characterizing_formula(const CausalModel& model);

struct GeneralExplanationReport {
    GeneralExplanation candidate;
    CausalFormula phi;
    bool ex1 = false;
    bool ex2 = false;
    bool ex3 = false;
    bool ex4 = false;
    bool verdict = false;
};

/// EX1-EX4 of the general, model-uncertain definition. EX3's minimality is
/// decided against the finite lattice: sub-events of the candidate crossed
/// with hypotheses psi' from `hypotheses` (which must contain the candidate's
/// psi); a distinct pair with a superset of valid models satisfying EX2
/// defeats the candidate.
GeneralExplanationReport check_general_explanation(const SituationSet& set,
                                                   const GeneralExplanation& candidate,
                                                   const CausalFormula& phi,
                                                   const std::vector<CausalFormula>& hypotheses,
                                                   const CausalityOptions& options = {});

/// Total weight of the contexts satisfying phi.
Rational probability_of_formula(const ProbabilisticCausalModel& pmodel, const CausalFormula& phi);

/// Total weight of the contexts where the candidate is an actual cause of phi.
Rational probability_of_cause(const ProbabilisticCausalModel& pmodel,
                              const ConjunctiveEvent& candidate, const CausalFormula& phi,
                              const CausalityOptions& options = {});

}  // namespace causalis
