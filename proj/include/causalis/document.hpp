#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causalis/general.hpp"
#include "causalis/model.hpp"
#include "causalis/rational.hpp"

namespace causalis {

/// A parsed model document: the validated model plus the optional prob block
/// (weights aligned with enumerate_contexts; unlisted contexts weigh 0).
struct ParsedModelDocument {
    CausalModel model;
    std::optional<std::vector<Rational>> weights;

    ProbabilisticCausalModel to_probabilistic() const;
};

/// Model DSL:
///   # comment
///   exo  NAME : {v, ...}
///   endo NAME : {v, ...}
///   eq   NAME (P1, ..., Pk): (t1, ..., tk) -> v ; ... ; default -> v
///   prob: NAME=v, ... -> p/q
/// Values may be tuple symbols like (1,1). Errors carry line/column.
ParsedModelDocument parse_model_document(const std::string& text);

/// Canonical form; parse-then-print is idempotent.
std::string print_model_document(const ParsedModelDocument& document);

/// "U=u11, UL=0" -> name/value pairs.
std::vector<std::pair<std::string, std::string>> parse_bindings(const std::string& text);

/// One context per line ("U1=v1, U2=v2"); comments and blank lines ignored.
std::vector<Context> parse_context_file(const std::string& text, const CausalModel& model);

struct WeightedContexts {
    std::vector<Context> contexts;
    std::vector<Rational> weights;
};

/// One "CONTEXT -> p/q" line per context.
WeightedContexts parse_weight_file(const std::string& text, const CausalModel& model);

/// Situation files for general explanations: "MODEL_REF | CONTEXT [-> p/q]"
/// per line. Model references are resolved by the caller.
struct RawSituation {
    std::string model_ref;
    std::vector<std::pair<std::string, std::string>> bindings;
    std::optional<Rational> weight;
};
std::vector<RawSituation> parse_situations_file(const std::string& text);

}  // namespace causalis
