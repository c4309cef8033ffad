#pragma once

#include <set>
#include <string>
#include <vector>

#include "causalis/model.hpp"

namespace causalis {

/// X = x for an endogenous X. Name-based so the same formula can be checked
/// against several models (general explanations depend on that).
struct PrimitiveEvent {
    std::string variable;
    std::string value;
    bool operator==(const PrimitiveEvent&) const = default;
    auto operator<=>(const PrimitiveEvent&) const = default;
};

/// Boolean combination of primitive events; the body of an interventional atom.
struct BoolExpr {
    enum class Kind { Constant, Event, Not, And, Or };

    Kind kind = Kind::Constant;
    bool constant = true;          // Kind::Constant
    PrimitiveEvent event;          // Kind::Event
    std::vector<BoolExpr> children;  // Not: 1, And/Or: 2 (left, right)

    static BoolExpr make_constant(bool value);
    static BoolExpr make_event(PrimitiveEvent event);
    static BoolExpr make_not(BoolExpr child);
    static BoolExpr make_and(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr make_or(BoolExpr lhs, BoolExpr rhs);

    bool operator==(const BoolExpr&) const = default;
};

struct InterventionBinding {
    std::string variable;
    std::string value;
    bool operator==(const InterventionBinding&) const = default;
};

/// A causal formula: Boolean combination of interventional atoms
/// [Y1<-y1, ...](body). An atom with an empty intervention list is a bare
/// Boolean formula (single event or TRUE/FALSE).
struct CausalFormula {
    enum class Kind { Atom, Not, And, Or };

    Kind kind = Kind::Atom;
    std::vector<InterventionBinding> intervention;  // Kind::Atom
    BoolExpr body;                                  // Kind::Atom
    std::vector<CausalFormula> children;            // Not: 1, And/Or: 2

    static CausalFormula make_atom(std::vector<InterventionBinding> intervention, BoolExpr body);
    static CausalFormula make_constant(bool value);
    static CausalFormula make_event(PrimitiveEvent event);
    static CausalFormula make_not(CausalFormula child);
    static CausalFormula make_and(CausalFormula lhs, CausalFormula rhs);
    static CausalFormula make_or(CausalFormula lhs, CausalFormula rhs);

    bool operator==(const CausalFormula&) const = default;
};

/// Conjunction of primitive events over distinct variables (X⃗ = x⃗); the shape
/// of cause and explanation candidates.
struct ConjunctiveEvent {
    std::vector<PrimitiveEvent> events;

    int width() const { return static_cast<int>(events.size()); }
    bool empty() const { return events.empty(); }
    bool operator==(const ConjunctiveEvent&) const = default;
    auto operator<=>(const ConjunctiveEvent&) const = default;
};

/// Validates distinctness of the variables.
ConjunctiveEvent make_conjunctive_event(std::vector<PrimitiveEvent> events);

/// Parses per the grammar:
///   formula := or ; or := and ('|' and)* ; and := unary ('&' unary)* ;
///   unary   := '!' unary | atom ;
///   atom    := '[' bind (',' bind)* ']' '(' inner ')' | '(' formula ')'
///            | event | 'TRUE' | 'FALSE' ;
///   bind    := IDENT '<-' VALUE ; event := IDENT '=' VALUE.
/// Tuple-shaped values like (1,1) are single VALUE tokens. All variables and
/// values are checked against `signature`; interventions may only target
/// endogenous variables.
CausalFormula parse_formula(const std::string& text, const Signature& signature);

/// Syntax-only parse, no name or range checks: the form needed for psi
/// formulas that deliberately mention variables absent from some models.
/// Resolution errors then surface at evaluation (or make psi not valid).
CausalFormula parse_formula(const std::string& text);

/// Inverse of parse_formula up to whitespace and redundant parentheses.
std::string print_formula(const CausalFormula& formula);
std::string print_formula(const BoolExpr& expr);
std::string print_conjunctive_event(const ConjunctiveEvent& event);

/// Satisfaction (M,u) |= phi. Interventional atoms solve the intervened model
/// at u; connectives are classical.
bool evaluate(const Situation& situation, const CausalFormula& formula);

/// True iff solve() assigns every listed value. The empty conjunct holds.
bool holds_conjunct(const Situation& situation, const ConjunctiveEvent& event);

/// The candidate as a causal formula (conjunction of bare atoms; TRUE if empty).
CausalFormula conjunct_to_formula(const ConjunctiveEvent& event);

/// Extracts a conjunction of primitive events from a parsed formula. Throws
/// DisjunctiveCandidate for anything else (disjunctions, negations,
/// interventions); the workaround for a disjunctive candidate is a named
/// disjunction variable in the model.
ConjunctiveEvent as_conjunctive_event(const CausalFormula& formula);

/// Names of every variable mentioned (events and intervention targets).
std::set<std::string> formula_variables(const CausalFormula& formula);

/// A causal formula resolved against one model for repeated evaluation.
/// `outer` composes an additional intervention under each atom (the atom's own
/// bindings win on their targets) — exactly evaluation in the submodel.
class CompiledFormula {
public:
    CompiledFormula(const CausalFormula& formula, const CausalModel& model);

    bool evaluate(const Context& context) const { return evaluate(context, nullptr); }
    bool evaluate(const Context& context, const Assignment* outer) const;

private:
    struct Node {
        CausalFormula::Kind kind;
        int atom = -1;       // Kind::Atom
        int lhs = -1, rhs = -1;
    };
    struct BNode {
        BoolExpr::Kind kind;
        bool constant = true;
        int var = -1, val = -1;  // Kind::Event
        int lhs = -1, rhs = -1;
    };
    struct Atom {
        Assignment intervention;
        int body;  // index into bnodes_
    };

    int compile(const CausalFormula& formula);
    int compile_body(const BoolExpr& expr);
    bool eval_node(int node, const Context& context, const Assignment* outer,
                   std::vector<int>& scratch) const;
    bool eval_body(int node, const std::vector<int>& solved) const;

    const CausalModel* model_;
    std::vector<Node> nodes_;
    std::vector<BNode> bnodes_;
    std::vector<Atom> atoms_;
    int root_ = -1;
};

}  // namespace causalis
