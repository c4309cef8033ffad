#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "causalis/document.hpp"
#include "causalis/fixtures.hpp"
#include "causalis/formula.hpp"
#include "causalis/model.hpp"

namespace testutil {

using namespace causalis;

inline ParsedModelDocument fixture_document(const std::string& name) {
    return parse_model_document(*find_fixture(name));
}

inline CausalModel fixture_model(const std::string& name) {
    return fixture_document(name).model;
}

inline std::vector<Context> fixture_contexts(const std::string& name, const CausalModel& model) {
    return parse_context_file(*find_fixture(name), model);
}

inline ConjunctiveEvent event(std::vector<std::pair<std::string, std::string>> pairs) {
    std::vector<PrimitiveEvent> events;
    for (auto& [var, val] : pairs) events.push_back({var, val});
    return make_conjunctive_event(std::move(events));
}

struct RandomModelConfig {
    int max_endo = 4;
    int max_exo = 2;
    int max_range = 3;
    int max_parents = 3;
};

inline CausalModel random_model(std::mt19937& rng, const RandomModelConfig& cfg = {}) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    RawModel raw;
    int exo_count = pick(1, cfg.max_exo);
    int endo_count = pick(1, cfg.max_endo);
    for (int i = 0; i < exo_count; ++i) {
        RawVariable v;
        v.name = "U" + std::to_string(i + 1);
        int range = pick(2, cfg.max_range);
        for (int r = 0; r < range; ++r) v.values.push_back(std::to_string(r));
        raw.exogenous.push_back(std::move(v));
    }
    for (int i = 0; i < endo_count; ++i) {
        RawVariable v;
        v.name = "X" + std::to_string(i + 1);
        int range = pick(2, cfg.max_range);
        for (int r = 0; r < range; ++r) v.values.push_back(std::to_string(r));
        raw.endogenous.push_back(std::move(v));
    }
    // Parents drawn from exogenous variables and lower-numbered endogenous
    // variables, so the model is recursive by construction.
    for (int i = 0; i < endo_count; ++i) {
        RawEquation eq;
        eq.target = raw.endogenous[static_cast<size_t>(i)].name;
        std::vector<std::string> pool;
        for (const RawVariable& u : raw.exogenous) pool.push_back(u.name);
        for (int j = 0; j < i; ++j) pool.push_back(raw.endogenous[static_cast<size_t>(j)].name);
        std::shuffle(pool.begin(), pool.end(), rng);
        int parents = std::min<int>(pick(0, cfg.max_parents), static_cast<int>(pool.size()));
        for (int p = 0; p < parents; ++p) eq.parents.push_back(pool[static_cast<size_t>(p)]);

        auto range_of = [&](const std::string& name) -> const std::vector<std::string>& {
            for (const RawVariable& v : raw.exogenous)
                if (v.name == name) return v.values;
            for (const RawVariable& v : raw.endogenous)
                if (v.name == name) return v.values;
            throw std::logic_error("unreachable");
        };
        const auto& out_range = raw.endogenous[static_cast<size_t>(i)].values;

        std::vector<size_t> radix;
        size_t combos = 1;
        for (const std::string& p : eq.parents) {
            radix.push_back(range_of(p).size());
            combos *= range_of(p).size();
        }
        for (size_t c = 0; c < combos; ++c) {
            RawRow row;
            size_t rest = c;
            for (size_t p = 0; p < eq.parents.size(); ++p) {
                row.inputs.push_back(range_of(eq.parents[p])[rest % radix[p]]);
                rest /= radix[p];
            }
            row.output = out_range[static_cast<size_t>(
                pick(0, static_cast<int>(out_range.size()) - 1))];
            eq.rows.push_back(std::move(row));
        }
        raw.equations.push_back(std::move(eq));
    }
    return validate_model(raw);
}

inline Context random_context(std::mt19937& rng, const CausalModel& model) {
    Context ctx;
    for (const Variable& v : model.signature().exogenous())
        ctx.values.push_back(std::uniform_int_distribution<int>(
            0, static_cast<int>(v.range.size()) - 1)(rng));
    return ctx;
}

inline BoolExpr random_bool_expr(std::mt19937& rng, const Signature& sig, int depth) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    if (depth == 0 || pick(0, 2) == 0) {
        const Variable& v = sig.endogenous()[static_cast<size_t>(
            pick(0, sig.endo_count() - 1))];
        return BoolExpr::make_event(
            {v.name, v.range[static_cast<size_t>(pick(0, static_cast<int>(v.range.size()) - 1))]});
    }
    switch (pick(0, 2)) {
        case 0: return BoolExpr::make_not(random_bool_expr(rng, sig, depth - 1));
        case 1:
            return BoolExpr::make_and(random_bool_expr(rng, sig, depth - 1),
                                      random_bool_expr(rng, sig, depth - 1));
        default:
            return BoolExpr::make_or(random_bool_expr(rng, sig, depth - 1),
                                     random_bool_expr(rng, sig, depth - 1));
    }
}

inline CausalFormula random_phi(std::mt19937& rng, const Signature& sig, int depth = 2) {
    return CausalFormula::make_atom({}, random_bool_expr(rng, sig, depth));
}

}  // namespace testutil
