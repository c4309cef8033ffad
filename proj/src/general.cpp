#include "causalis/general.hpp"

#include <algorithm>

namespace causalis {

SituationSet::SituationSet(std::vector<std::pair<CausalModel, Context>> situations,
                           std::optional<std::vector<Rational>> weights)
    : weights_(std::move(weights)) {
    if (situations.empty())
        raise(ErrorCode::EmptyEpistemicState, "a situation set needs at least one situation");
    for (auto& [model, ctx] : situations) {
        model.validate_context(ctx);
        int index = -1;
        for (size_t m = 0; m < models_.size(); ++m)
            if (models_[m] == model) {
                index = static_cast<int>(m);
                break;
            }
        if (index < 0) {
            models_.push_back(std::move(model));
            index = static_cast<int>(models_.size()) - 1;
        }
        items_.push_back({index, ctx});
    }
    std::vector<Item> sorted = items_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        raise(ErrorCode::InvalidModel, "duplicate situation in situation set");
    if (weights_) {
        if (weights_->size() != items_.size())
            raise(ErrorCode::InvalidModel, "weights must align with the situation list");
        Rational total = 0;
        for (const Rational& w : *weights_) {
            if (w < 0) raise(ErrorCode::InvalidModel, "weights must be nonnegative");
            total += w;
        }
        if (total != 1) raise(ErrorCode::InvalidModel, "weights must sum to exactly 1");
    }
}

ProbabilisticCausalModel::ProbabilisticCausalModel(CausalModel model,
                                                   std::vector<Rational> weights)
    : model_(std::move(model)), contexts_(model_.enumerate_contexts()),
      weights_(std::move(weights)) {
    if (weights_.size() != contexts_.size())
        raise(ErrorCode::InvalidModel,
              "a probabilistic model needs one weight per context (" +
                  std::to_string(contexts_.size()) + " contexts)");
    Rational total = 0;
    for (const Rational& w : weights_) {
        if (w < 0) raise(ErrorCode::InvalidModel, "weights must be nonnegative");
        total += w;
    }
    if (total != 1) raise(ErrorCode::InvalidModel, "weights must sum to exactly 1");
}

bool model_valid(const CausalModel& model, const CausalFormula& psi) {
    try {
        CompiledFormula compiled(psi, model);
        for (const Context& ctx : model.enumerate_contexts())
            if (!compiled.evaluate(ctx)) return false;
        return true;
    } catch (const Error& e) {
        // A psi that does not fit the signature is not valid in the model.
        if (e.code() == ErrorCode::UnknownVariable || e.code() == ErrorCode::RangeViolation ||
            e.code() == ErrorCode::InvalidModel)
            return false;
        throw;
    }
}

CausalFormula characterizing_formula(const CausalModel& model) {
    const Signature& sig = model.signature();
    const int n = sig.endo_count();
    std::vector<Context> contexts = model.enumerate_contexts();
    std::optional<CausalFormula> result;

    std::vector<int> scratch;
    for (int x = 0; x < n; ++x) {
        std::vector<int> others;
        for (int v = 0; v < n; ++v)
            if (v != x) others.push_back(v);
        std::vector<int> radices;
        for (int v : others)
            radices.push_back(static_cast<int>(sig.endogenous()[v].range.size()));

        std::vector<int> setting_values(others.size(), 0);
        bool more = true;
        while (more) {
            Assignment setting = Assignment::unbound(n);
            for (size_t i = 0; i < others.size(); ++i)
                setting.values[others[i]] = setting_values[i];

            int pinned = -1;
            bool uniform = true;
            for (const Context& ctx : contexts) {
                model.solve_values(ctx, &setting, scratch);
                if (pinned < 0)
                    pinned = scratch[x];
                else if (scratch[x] != pinned) {
                    uniform = false;
                    break;
                }
            }
            if (uniform && pinned >= 0) {
                std::vector<InterventionBinding> binds;
                for (size_t i = 0; i < others.size(); ++i) {
                    const Variable& v = sig.endogenous()[others[i]];
                    binds.push_back({v.name, v.range[setting_values[i]]});
                }
                const Variable& target = sig.endogenous()[x];
                CausalFormula atom = CausalFormula::make_atom(
                    std::move(binds),
                    BoolExpr::make_event({target.name, target.range[pinned]}));
                result = result ? CausalFormula::make_and(std::move(*result), std::move(atom))
                                : std::move(atom);
            }

            more = false;
            for (int i = static_cast<int>(others.size()) - 1; i >= 0; --i) {
                if (++setting_values[i] < radices[i]) {
                    more = true;
                    break;
                }
                setting_values[i] = 0;
            }
        }
    }
    return result ? *result : CausalFormula::make_constant(true);
}

namespace {

bool event_holds_in(const Situation& s, const ConjunctiveEvent& event) {
    try {
        return holds_conjunct(s, event);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnknownVariable || e.code() == ErrorCode::RangeViolation ||
            e.code() == ErrorCode::InvalidModel)
            raise(ErrorCode::VariableMismatch,
                  std::string("the candidate event does not fit every model in the set (") +
                      e.what() + ")");
        throw;
    }
}

}  // namespace

GeneralExplanationReport check_general_explanation(const SituationSet& set,
                                                   const GeneralExplanation& candidate,
                                                   const CausalFormula& phi,
                                                   const std::vector<CausalFormula>& hypotheses,
                                                   const CausalityOptions& options) {
    if (candidate.event.empty())
        raise(ErrorCode::InvalidModel, "general explanations need a nonempty event component");
    if (hypotheses.empty())
        raise(ErrorCode::EmptyHypothesisSet,
              "EX3 needs a finite hypothesis set containing the candidate's psi");
    if (std::find(hypotheses.begin(), hypotheses.end(), candidate.psi) == hypotheses.end())
        raise(ErrorCode::EmptyHypothesisSet, "the hypothesis set must contain the candidate's psi");

    GeneralExplanationReport report;
    report.candidate = candidate;
    report.phi = phi;
    SearchBudget budget{options.budget, 0};

    // phi and the event must fit every model of the set.
    std::vector<CompiledFormula> phis;
    for (const CausalModel& m : set.models()) {
        try {
            phis.emplace_back(phi, m);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnknownVariable || e.code() == ErrorCode::RangeViolation ||
                e.code() == ErrorCode::InvalidModel)
                raise(ErrorCode::VariableMismatch,
                      std::string("the explanandum does not fit every model in the set (") +
                          e.what() + ")");
            throw;
        }
    }

    // EX1: phi holds in every situation.
    report.ex1 = true;
    for (size_t i = 0; i < set.size(); ++i) {
        budget.charge();
        if (!phis[static_cast<size_t>(set.items()[i].model_index)].evaluate(
                set.items()[i].context)) {
            report.ex1 = false;
            break;
        }
    }

    // Which models validate which hypothesis.
    auto validity_of = [&](const CausalFormula& psi) {
        std::vector<bool> valid;
        for (const CausalModel& m : set.models()) valid.push_back(model_valid(m, psi));
        return valid;
    };
    std::vector<bool> psi_valid = validity_of(candidate.psi);

    // EX2 for an arbitrary pair.
    auto ex2_of = [&](const std::vector<bool>& valid, const ConjunctiveEvent& event) {
        for (size_t i = 0; i < set.size(); ++i) {
            if (!valid[static_cast<size_t>(set.items()[i].model_index)]) continue;
            Situation s = set.situation(i);
            if (!event_holds_in(s, event)) continue;
            if (!detail::is_sufficient_cause(
                    s, event, phis[static_cast<size_t>(set.items()[i].model_index)], budget))
                return false;
        }
        return true;
    };
    report.ex2 = ex2_of(psi_valid, candidate.event);

    // EX4: the event fails somewhere and holds somewhere.
    bool somewhere_false = false, somewhere_true = false;
    for (size_t i = 0; i < set.size(); ++i) {
        bool h = event_holds_in(set.situation(i), candidate.event);
        somewhere_false = somewhere_false || !h;
        somewhere_true = somewhere_true || h;
    }
    report.ex4 = somewhere_false && somewhere_true;

    // EX3: no distinct pair (psi', X'=x') with a superset of valid models
    // satisfying EX2, where X' ranges over nonempty sub-events.
    report.ex3 = true;
    std::vector<ConjunctiveEvent> sub_events;
    const auto& events = candidate.event.events;
    const size_t width = events.size();
    for (std::uint64_t mask = 1; mask < (1ull << width); ++mask) {
        ConjunctiveEvent sub;
        for (size_t i = 0; i < width; ++i)
            if (mask >> i & 1) sub.events.push_back(events[i]);
        sub_events.push_back(std::move(sub));
    }
    for (const CausalFormula& psi_alt : hypotheses) {
        if (!report.ex3) break;
        std::vector<bool> alt_valid = validity_of(psi_alt);
        bool superset = true;
        for (size_t m = 0; m < set.models().size(); ++m)
            if (psi_valid[m] && !alt_valid[m]) superset = false;
        if (!superset) continue;
        for (const ConjunctiveEvent& sub : sub_events) {
            if (psi_alt == candidate.psi && sub == candidate.event) continue;
            if (ex2_of(alt_valid, sub)) {
                report.ex3 = false;
                break;
            }
        }
    }

    report.verdict = report.ex1 && report.ex2 && report.ex3 && report.ex4;
    return report;
}

Rational probability_of_formula(const ProbabilisticCausalModel& pmodel,
                                const CausalFormula& phi) {
    CompiledFormula compiled(phi, pmodel.model());
    Rational total = 0;
    for (size_t i = 0; i < pmodel.contexts().size(); ++i)
        if (compiled.evaluate(pmodel.contexts()[i])) total += pmodel.weights()[i];
    return total;
}

Rational probability_of_cause(const ProbabilisticCausalModel& pmodel,
                              const ConjunctiveEvent& candidate, const CausalFormula& phi,
                              const CausalityOptions& options) {
    if (candidate.empty())
        raise(ErrorCode::InvalidModel, "probability_of_cause needs a nonempty candidate");
    Rational total = 0;
    for (size_t i = 0; i < pmodel.contexts().size(); ++i) {
        CauseVerdict v = check_actual_cause(Situation{pmodel.model(), pmodel.contexts()[i]},
                                            candidate, phi, options);
        if (v.classification == CauseClass::ActualCause) total += pmodel.weights()[i];
    }
    return total;
}

}  // namespace causalis
