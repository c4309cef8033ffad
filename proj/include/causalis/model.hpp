#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causalis/errors.hpp"

namespace causalis {

enum class VarKind { Exogenous, Endogenous };

struct VarRef {
    VarKind kind;
    int index;
    bool operator==(const VarRef&) const = default;
    auto operator<=>(const VarRef&) const = default;
};

/// A named variable together with its finite, ordered range of symbolic values.
struct Variable {
    std::string name;
    std::vector<std::string> range;
};

/// Exogenous and endogenous variable declarations. Declaration order is the
/// canonical order used by every enumeration in the library.
class Signature {
public:
    Signature() = default;
    Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous);

    const std::vector<Variable>& exogenous() const { return exogenous_; }
    const std::vector<Variable>& endogenous() const { return endogenous_; }
    int exo_count() const { return static_cast<int>(exogenous_.size()); }
    int endo_count() const { return static_cast<int>(endogenous_.size()); }

    const Variable& var(VarRef ref) const {
        return ref.kind == VarKind::Exogenous ? exogenous_[ref.index] : endogenous_[ref.index];
    }
    std::optional<VarRef> find(const std::string& name) const;
    VarRef require(const std::string& name) const;
    /// Throws RangeViolation when `value` is not in the variable's range.
    int value_index(VarRef ref, const std::string& value) const;

    bool operator==(const Signature& other) const;

private:
    std::vector<Variable> exogenous_;
    std::vector<Variable> endogenous_;
    std::map<std::string, VarRef> by_name_;
};

/// One value index per exogenous variable, in declaration order.
struct Context {
    std::vector<int> values;
    bool operator==(const Context&) const = default;
    auto operator<=>(const Context&) const = default;
};

/// Partial (or total) setting of endogenous variables; -1 marks unbound slots.
struct Assignment {
    std::vector<int> values;

    static Assignment unbound(int endo_count) {
        return Assignment{std::vector<int>(static_cast<size_t>(endo_count), -1)};
    }
    bool bound(int endo_index) const { return values[endo_index] >= 0; }
    int width() const;
    bool operator==(const Assignment&) const = default;
};

/// The mechanism for one endogenous variable: an extensional table over the
/// parents' value tuples plus an optional default output.
class EquationTable {
public:
    EquationTable(int target, std::vector<VarRef> parents,
                  std::map<std::vector<int>, int> rows, std::optional<int> default_value);

    static EquationTable constant(int target, int value);

    int target() const { return target_; }
    const std::vector<VarRef>& parents() const { return parents_; }
    const std::map<std::vector<int>, int>& rows() const { return rows_; }
    const std::optional<int>& default_value() const { return default_value_; }

    int lookup(std::span<const int> key) const;

    bool operator==(const EquationTable& other) const;

private:
    int target_ = 0;
    std::vector<VarRef> parents_;
    std::map<std::vector<int>, int> rows_;
    std::optional<int> default_value_;
};

/// Untyped model description, as produced by a parser or a caller assembling a
/// model by hand; `validate_model` turns it into a CausalModel.
struct RawVariable {
    std::string name;
    std::vector<std::string> values;
};
struct RawRow {
    std::vector<std::string> inputs;
    std::string output;
};
struct RawEquation {
    std::string target;
    std::vector<std::string> parents;
    std::vector<RawRow> rows;
    std::optional<std::string> default_value;
};
struct RawModel {
    std::vector<RawVariable> exogenous;
    std::vector<RawVariable> endogenous;
    std::vector<RawEquation> equations;
};

/// A finite recursive structural causal model. Immutable after construction;
/// all operations are const and safe for concurrent use.
class CausalModel {
public:
    CausalModel() = default;
    /// Checks all invariants (totality, ranges, acyclicity among endogenous
    /// variables) and caches a topological order.
    CausalModel(Signature signature, std::vector<EquationTable> equations);

    const Signature& signature() const { return sig_; }
    const std::vector<EquationTable>& equations() const { return equations_; }
    /// Endogenous indices in dependency order (deterministic: declaration
    /// order breaks ties).
    const std::vector<int>& topological_order() const { return topo_; }

    /// The unique total endogenous assignment under `context`.
    Assignment solve(const Context& context) const;
    /// Fast path shared with formula evaluation: solve under an intervention
    /// given as a partial assignment (may be null). `out` is resized.
    void solve_values(const Context& context, const Assignment* intervention,
                      std::vector<int>& out) const;

    /// The submodel where every bound variable's equation is replaced by a
    /// constant. `setting` must bind endogenous variables only.
    CausalModel intervene(const Assignment& setting) const;

    std::uint64_t context_count() const;
    /// All contexts, lexicographic by variable declaration order then range
    /// order. A model with no exogenous variables has one empty context.
    std::vector<Context> enumerate_contexts() const;

    /// Throws unless `context` matches the signature with in-range values.
    void validate_context(const Context& context) const { check_context(context); }

    // -- name-based conveniences -------------------------------------------
    Context make_context(const std::vector<std::pair<std::string, std::string>>& bindings) const;
    Assignment make_assignment(const std::vector<std::pair<std::string, std::string>>& bindings) const;
    std::string context_to_string(const Context& context) const;
    std::string assignment_to_string(const Assignment& assignment) const;

    bool operator==(const CausalModel& other) const;

private:
    void check_context(const Context& context) const;

    Signature sig_;
    std::vector<EquationTable> equations_;
    std::vector<int> topo_;
};

CausalModel validate_model(const RawModel& raw);

/// A (model, context) pair; the unit every query is evaluated against.
struct Situation {
    const CausalModel& model;
    const Context& context;
};

}  // namespace causalis
