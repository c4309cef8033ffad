#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalis/formula.hpp"
#include "causalis/model.hpp"

namespace causalis {

/// Global evaluation budget shared by a search; one unit per formula
/// evaluation. Exceeding it raises SearchBudgetExceeded carrying both numbers.
struct SearchBudget {
    std::uint64_t limit = 10'000'000;
    std::uint64_t used = 0;

    void charge() {
        if (++used > limit) {
            Error err(ErrorCode::SearchBudgetExceeded,
                      "search budget exhausted after " + std::to_string(limit) +
                          " formula evaluations");
            err.budget_limit = limit;
            err.budget_used = used;
            throw err;
        }
    }
};

struct CausalityOptions {
    std::uint64_t budget = 10'000'000;
};

/// (Z⃗, W⃗): a partition of the endogenous variables with the candidate's
/// variables on the Z side.
struct Partition {
    std::vector<std::string> zside;
    std::vector<std::string> wside;
    bool operator==(const Partition&) const = default;
};

/// Everything needed to re-check AC2 by direct evaluation: the partition, the
/// changed setting (x⃗', w⃗') and the actual values z⃗* of the Z side.
struct Ac2Witness {
    Partition partition;
    Assignment alt_x;
    Assignment alt_w;
    Assignment baseline_z;
};

enum class CauseClass { NotACause, SufficientCause, ActualCause };

const char* cause_class_name(CauseClass c);

struct CauseVerdict {
    ConjunctiveEvent candidate;
    CausalFormula phi;
    bool ac1 = false;
    std::optional<Ac2Witness> ac2;
    bool ac3 = false;
    CauseClass classification = CauseClass::NotACause;
};

/// AC1: both the candidate and phi are true in the actual world.
bool check_ac1(const Situation& situation, const ConjunctiveEvent& candidate,
               const CausalFormula& phi);

/// Searches partitions (by increasing |W|, then lexicographic) and settings
/// (lexicographic by range order) for the first (x⃗', w⃗') satisfying AC2(a)
/// and the full subset quantification of AC2(b). Absent means no witness
/// exists. The empty candidate never has a witness.
std::optional<Ac2Witness> find_ac2_witness(const Situation& situation,
                                           const ConjunctiveEvent& candidate,
                                           const CausalFormula& phi,
                                           const CausalityOptions& options = {});

/// Replays clauses (a) and (b) for a concrete witness, independent of how it
/// was discovered.
bool verify_ac2_witness(const Situation& situation, const ConjunctiveEvent& candidate,
                        const CausalFormula& phi, const Ac2Witness& witness);

/// Full verdict. AC3 tests every proper nonempty subset of the candidate for
/// AC1 and AC2.
CauseVerdict check_actual_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                                const CausalFormula& phi, const CausalityOptions& options = {});

/// AC1 and AC2, minimality not required.
bool is_sufficient_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                         const CausalFormula& phi, const CausalityOptions& options = {});

/// All candidates of width <= max_width classified actual-cause, in canonical
/// order (width, then variables by declaration order, then values by range
/// order). The whole enumeration shares one budget.
std::vector<CauseVerdict> enumerate_actual_causes(const Situation& situation,
                                                  const CausalFormula& phi, int max_width,
                                                  const CausalityOptions& options = {});

/// All candidates of width <= max_width satisfying AC1 and AC2 (actual causes
/// included; the classification field distinguishes them).
std::vector<CauseVerdict> enumerate_sufficient_causes(const Situation& situation,
                                                      const CausalFormula& phi, int max_width,
                                                      const CausalityOptions& options = {});

namespace detail {

/// Budget-sharing variants used by the explanation engine.
std::optional<Ac2Witness> find_ac2_witness(const Situation& situation,
                                           const ConjunctiveEvent& candidate,
                                           const CompiledFormula& phi, SearchBudget& budget);
bool is_sufficient_cause(const Situation& situation, const ConjunctiveEvent& candidate,
                         const CompiledFormula& phi, SearchBudget& budget);

}  // namespace detail

}  // namespace causalis
