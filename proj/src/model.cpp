#include "causalis/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace causalis {

namespace {

// Dense compilation and context enumeration are capped so a malformed document
// cannot exhaust memory.
constexpr std::uint64_t kDenseLimit = 1u << 22;
constexpr std::uint64_t kEnumerationLimit = 1u << 22;

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::RangeViolation: return "RangeViolation";
        case ErrorCode::DuplicateVariable: return "DuplicateVariable";
        case ErrorCode::DuplicateInterventionTarget: return "DuplicateInterventionTarget";
        case ErrorCode::CyclicModel: return "CyclicModel";
        case ErrorCode::PartialEquation: return "PartialEquation";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::EmptyEpistemicState: return "EmptyEpistemicState";
        case ErrorCode::DisjunctiveCandidate: return "DisjunctiveCandidate";
        case ErrorCode::ZeroProbabilityCandidate: return "ZeroProbabilityCandidate";
        case ErrorCode::MissingWeights: return "MissingWeights";
        case ErrorCode::InconsistentPrior: return "InconsistentPrior";
        case ErrorCode::CoreNotExplanation: return "CoreNotExplanation";
        case ErrorCode::EmptyHypothesisSet: return "EmptyHypothesisSet";
        case ErrorCode::VariableMismatch: return "VariableMismatch";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Error";
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous)
    : exogenous_(std::move(exogenous)), endogenous_(std::move(endogenous)) {
    if (endogenous_.empty())
        raise(ErrorCode::InvalidModel, "a model needs at least one endogenous variable");
    auto declare = [this](const Variable& v, VarKind kind, int index) {
        if (v.name.empty()) raise(ErrorCode::InvalidModel, "empty variable name");
        if (v.range.empty())
            raise(ErrorCode::InvalidModel, "variable " + v.name + " has an empty range");
        std::vector<std::string> sorted = v.range;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            raise(ErrorCode::InvalidModel, "variable " + v.name + " has duplicate range values");
        if (!by_name_.emplace(v.name, VarRef{kind, index}).second)
            raise(ErrorCode::DuplicateVariable, "variable " + v.name + " declared twice");
    };
    for (int i = 0; i < exo_count(); ++i) declare(exogenous_[i], VarKind::Exogenous, i);
    for (int i = 0; i < endo_count(); ++i) declare(endogenous_[i], VarKind::Endogenous, i);
}

std::optional<VarRef> Signature::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

VarRef Signature::require(const std::string& name) const {
    auto ref = find(name);
    if (!ref) raise(ErrorCode::UnknownVariable, "unknown variable " + name);
    return *ref;
}

int Signature::value_index(VarRef ref, const std::string& value) const {
    const Variable& v = var(ref);
    auto it = std::find(v.range.begin(), v.range.end(), value);
    if (it == v.range.end())
        raise(ErrorCode::RangeViolation,
              "value " + value + " is not in the range of " + v.name);
    return static_cast<int>(it - v.range.begin());
}

bool Signature::operator==(const Signature& other) const {
    auto eq = [](const std::vector<Variable>& a, const std::vector<Variable>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].name != b[i].name || a[i].range != b[i].range) return false;
        return true;
    };
    return eq(exogenous_, other.exogenous_) && eq(endogenous_, other.endogenous_);
}

int Assignment::width() const {
    int n = 0;
    for (int v : values) n += v >= 0;
    return n;
}

// ---------------------------------------------------------------------------
// EquationTable

EquationTable::EquationTable(int target, std::vector<VarRef> parents,
                             std::map<std::vector<int>, int> rows,
                             std::optional<int> default_value)
    : target_(target),
      parents_(std::move(parents)),
      rows_(std::move(rows)),
      default_value_(default_value) {
    for (const auto& [key, value] : rows_) {
        (void)value;
        if (key.size() != parents_.size())
            raise(ErrorCode::InvalidModel, "equation row arity does not match parent list");
    }
}

EquationTable EquationTable::constant(int target, int value) {
    return EquationTable(target, {}, {{std::vector<int>{}, value}}, std::nullopt);
}

int EquationTable::lookup(std::span<const int> key) const {
    auto it = rows_.find(std::vector<int>(key.begin(), key.end()));
    if (it != rows_.end()) return it->second;
    return *default_value_;
}

bool EquationTable::operator==(const EquationTable& other) const {
    return target_ == other.target_ && parents_ == other.parents_ && rows_ == other.rows_ &&
           default_value_ == other.default_value_;
}

// ---------------------------------------------------------------------------
// CausalModel

CausalModel::CausalModel(Signature signature, std::vector<EquationTable> equations)
    : sig_(std::move(signature)), equations_(std::move(equations)) {
    const int n = sig_.endo_count();
    if (static_cast<int>(equations_.size()) != n)
        raise(ErrorCode::PartialEquation, "expected one equation per endogenous variable");

    for (int x = 0; x < n; ++x) {
        const EquationTable& eq = equations_[x];
        const std::string& name = sig_.endogenous()[x].name;
        if (eq.target() != x)
            raise(ErrorCode::InvalidModel, "equation for " + name + " is out of place");

        std::vector<VarRef> seen;
        std::uint64_t combos = 1;
        for (VarRef p : eq.parents()) {
            if (p.kind == VarKind::Endogenous && p.index == x)
                raise(ErrorCode::CyclicModel, name + " depends on itself");
            if (std::find(seen.begin(), seen.end(), p) != seen.end())
                raise(ErrorCode::InvalidModel, "duplicate parent in equation for " + name);
            seen.push_back(p);
            std::uint64_t size = sig_.var(p).range.size();
            combos = combos > kDenseLimit ? combos : combos * size;
        }
        const int out_range = static_cast<int>(sig_.endogenous()[x].range.size());
        for (const auto& [key, value] : eq.rows()) {
            for (size_t i = 0; i < key.size(); ++i) {
                int range = static_cast<int>(sig_.var(eq.parents()[i]).range.size());
                if (key[i] < 0 || key[i] >= range)
                    raise(ErrorCode::RangeViolation, "row input out of range for " + name);
            }
            if (value < 0 || value >= out_range)
                raise(ErrorCode::RangeViolation, "row output out of range for " + name);
        }
        if (eq.default_value()) {
            if (*eq.default_value() < 0 || *eq.default_value() >= out_range)
                raise(ErrorCode::RangeViolation, "default output out of range for " + name);
        } else if (eq.rows().size() < combos) {
            raise(ErrorCode::PartialEquation,
                  "equation for " + name + " does not cover every parent tuple (" +
                      std::to_string(eq.rows().size()) + " of " + std::to_string(combos) +
                      " rows, no default)");
        }
    }

    // Kahn's algorithm over endogenous-to-endogenous edges; ties broken by
    // declaration order so the cached order is deterministic.
    std::vector<std::vector<int>> children(n);
    std::vector<int> indegree(n, 0);
    for (int x = 0; x < n; ++x) {
        for (VarRef p : equations_[x].parents()) {
            if (p.kind != VarKind::Endogenous) continue;
            children[p.index].push_back(x);
            ++indegree[x];
        }
    }
    std::vector<int> ready;
    for (int x = 0; x < n; ++x)
        if (indegree[x] == 0) ready.push_back(x);
    topo_.clear();
    while (!ready.empty()) {
        int x = ready.front();
        ready.erase(ready.begin());
        topo_.push_back(x);
        std::vector<int> next;
        for (int c : children[x])
            if (--indegree[c] == 0) next.push_back(c);
        std::sort(next.begin(), next.end());
        for (int c : next)
            ready.insert(std::lower_bound(ready.begin(), ready.end(), c), c);
    }
    if (static_cast<int>(topo_.size()) != n) {
        std::vector<std::string> cycle;
        for (int x = 0; x < n; ++x)
            if (indegree[x] > 0) cycle.push_back(sig_.endogenous()[x].name);
        raise(ErrorCode::CyclicModel,
              "endogenous dependency cycle involving " + join_names(cycle));
    }
}

void CausalModel::check_context(const Context& context) const {
    if (static_cast<int>(context.values.size()) != sig_.exo_count())
        raise(ErrorCode::InvalidModel, "context does not match the model's signature");
    for (int i = 0; i < sig_.exo_count(); ++i) {
        int range = static_cast<int>(sig_.exogenous()[i].range.size());
        if (context.values[i] < 0 || context.values[i] >= range)
            raise(ErrorCode::RangeViolation,
                  "context value out of range for " + sig_.exogenous()[i].name);
    }
}

void CausalModel::solve_values(const Context& context, const Assignment* intervention,
                               std::vector<int>& out) const {
    check_context(context);
    const int n = sig_.endo_count();
    out.assign(static_cast<size_t>(n), -1);
    std::vector<int> key;
    for (int x : topo_) {
        if (intervention && intervention->values[x] >= 0) {
            out[x] = intervention->values[x];
            continue;
        }
        const EquationTable& eq = equations_[x];
        key.clear();
        for (VarRef p : eq.parents())
            key.push_back(p.kind == VarKind::Exogenous ? context.values[p.index] : out[p.index]);
        out[x] = eq.lookup(key);
    }
}

Assignment CausalModel::solve(const Context& context) const {
    Assignment result;
    solve_values(context, nullptr, result.values);
    return result;
}

CausalModel CausalModel::intervene(const Assignment& setting) const {
    if (static_cast<int>(setting.values.size()) != sig_.endo_count())
        raise(ErrorCode::InvalidModel, "intervention does not match the model's signature");
    std::vector<EquationTable> eqs;
    eqs.reserve(equations_.size());
    for (int x = 0; x < sig_.endo_count(); ++x) {
        if (setting.values[x] >= 0) {
            int range = static_cast<int>(sig_.endogenous()[x].range.size());
            if (setting.values[x] >= range)
                raise(ErrorCode::RangeViolation,
                      "intervention value out of range for " + sig_.endogenous()[x].name);
            eqs.push_back(EquationTable::constant(x, setting.values[x]));
        } else {
            eqs.push_back(equations_[x]);
        }
    }
    return CausalModel(sig_, std::move(eqs));
}

std::uint64_t CausalModel::context_count() const {
    std::uint64_t count = 1;
    for (const Variable& v : sig_.exogenous()) {
        count *= v.range.size();
        if (count > kEnumerationLimit) return kEnumerationLimit + 1;
    }
    return count;
}

std::vector<Context> CausalModel::enumerate_contexts() const {
    std::uint64_t count = context_count();
    if (count > kEnumerationLimit)
        raise(ErrorCode::InvalidModel, "context space too large to enumerate");
    std::vector<Context> result;
    result.reserve(count);
    Context current{std::vector<int>(static_cast<size_t>(sig_.exo_count()), 0)};
    for (std::uint64_t i = 0; i < count; ++i) {
        result.push_back(current);
        for (int pos = sig_.exo_count() - 1; pos >= 0; --pos) {
            int range = static_cast<int>(sig_.exogenous()[pos].range.size());
            if (++current.values[pos] < range) break;
            current.values[pos] = 0;
        }
    }
    return result;
}

Context CausalModel::make_context(
    const std::vector<std::pair<std::string, std::string>>& bindings) const {
    Context ctx{std::vector<int>(static_cast<size_t>(sig_.exo_count()), -1)};
    for (const auto& [name, value] : bindings) {
        VarRef ref = sig_.require(name);
        if (ref.kind != VarKind::Exogenous)
            raise(ErrorCode::InvalidModel, name + " is endogenous; contexts bind exogenous variables");
        if (ctx.values[ref.index] >= 0)
            raise(ErrorCode::InvalidModel, "context binds " + name + " twice");
        ctx.values[ref.index] = sig_.value_index(ref, value);
    }
    for (int i = 0; i < sig_.exo_count(); ++i)
        if (ctx.values[i] < 0)
            raise(ErrorCode::InvalidModel,
                  "context does not bind " + sig_.exogenous()[i].name);
    return ctx;
}

Assignment CausalModel::make_assignment(
    const std::vector<std::pair<std::string, std::string>>& bindings) const {
    Assignment a = Assignment::unbound(sig_.endo_count());
    for (const auto& [name, value] : bindings) {
        VarRef ref = sig_.require(name);
        if (ref.kind != VarKind::Endogenous)
            raise(ErrorCode::InvalidModel, name + " is exogenous; interventions bind endogenous variables");
        if (a.values[ref.index] >= 0)
            raise(ErrorCode::DuplicateInterventionTarget, name + " is bound twice");
        a.values[ref.index] = sig_.value_index(ref, value);
    }
    return a;
}

std::string CausalModel::context_to_string(const Context& context) const {
    std::ostringstream out;
    for (int i = 0; i < sig_.exo_count(); ++i) {
        if (i) out << ", ";
        out << sig_.exogenous()[i].name << "=" << sig_.exogenous()[i].range[context.values[i]];
    }
    return out.str();
}

std::string CausalModel::assignment_to_string(const Assignment& assignment) const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < sig_.endo_count(); ++i) {
        if (assignment.values[i] < 0) continue;
        if (!first) out << ", ";
        first = false;
        out << sig_.endogenous()[i].name << "="
            << sig_.endogenous()[i].range[assignment.values[i]];
    }
    return out.str();
}

bool CausalModel::operator==(const CausalModel& other) const {
    return sig_ == other.sig_ && equations_ == other.equations_;
}

// ---------------------------------------------------------------------------
// validate_model

CausalModel validate_model(const RawModel& raw) {
    std::vector<Variable> exo, endo;
    for (const RawVariable& v : raw.exogenous) exo.push_back({v.name, v.values});
    for (const RawVariable& v : raw.endogenous) endo.push_back({v.name, v.values});
    Signature sig(std::move(exo), std::move(endo));

    std::vector<std::optional<EquationTable>> slots(sig.endo_count());
    for (const RawEquation& req : raw.equations) {
        VarRef target = sig.require(req.target);
        if (target.kind != VarKind::Endogenous)
            raise(ErrorCode::InvalidModel,
                  "equation target " + req.target + " is an exogenous variable");
        if (slots[target.index])
            raise(ErrorCode::InvalidModel, "two equations for " + req.target);

        std::vector<VarRef> parents;
        for (const std::string& p : req.parents) parents.push_back(sig.require(p));

        std::map<std::vector<int>, int> rows;
        for (const RawRow& row : req.rows) {
            if (row.inputs.size() != parents.size())
                raise(ErrorCode::InvalidModel,
                      "row arity does not match parents of " + req.target);
            std::vector<int> key;
            for (size_t i = 0; i < parents.size(); ++i)
                key.push_back(sig.value_index(parents[i], row.inputs[i]));
            int out = sig.value_index(target, row.output);
            if (!rows.emplace(std::move(key), out).second)
                raise(ErrorCode::InvalidModel, "duplicate row in equation for " + req.target);
        }
        std::optional<int> def;
        if (req.default_value) def = sig.value_index(target, *req.default_value);
        slots[target.index].emplace(target.index, std::move(parents), std::move(rows), def);
    }
    std::vector<EquationTable> equations;
    for (int x = 0; x < sig.endo_count(); ++x) {
        if (!slots[x])
            raise(ErrorCode::PartialEquation,
                  "no equation for endogenous variable " + sig.endogenous()[x].name);
        equations.push_back(std::move(*slots[x]));
    }
    return CausalModel(std::move(sig), std::move(equations));
}

}  // namespace causalis
