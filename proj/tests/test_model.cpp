#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace causalis;
using testutil::fixture_model;

namespace {

// A television model with two exogenous variables: T follows U0, and P
// follows T unless U1 switches the picture off entirely.
CausalModel two_var_tv() {
    RawModel raw;
    raw.exogenous = {{"U0", {"0", "1"}}, {"U1", {"0", "1"}}};
    raw.endogenous = {{"T", {"0", "1"}}, {"P", {"0", "1"}}};
    raw.equations = {
        {"T", {"U0"}, {{{"1"}, "1"}}, "0"},
        {"P", {"U1", "T"}, {{{"0", "1"}, "1"}}, "0"},
    };
    return validate_model(raw);
}

}  // namespace

TEST_CASE("arson models validate with the expected topological order") {
    CausalModel m1 = fixture_model("arson_disjunctive");
    const auto& topo = m1.topological_order();
    REQUIRE(topo.size() == 3);
    CHECK(m1.signature().endogenous()[topo[0]].name == "ML1");
    CHECK(m1.signature().endogenous()[topo[1]].name == "ML2");
    CHECK(m1.signature().endogenous()[topo[2]].name == "FB");
}

TEST_CASE("two-node dependency cycle is rejected") {
    RawModel raw;
    raw.exogenous = {{"U", {"0", "1"}}};
    raw.endogenous = {{"X", {"0", "1"}}, {"Y", {"0", "1"}}};
    raw.equations = {
        {"X", {"Y"}, {{{"0"}, "0"}, {{"1"}, "1"}}, std::nullopt},
        {"Y", {"X"}, {{{"0"}, "0"}, {{"1"}, "1"}}, std::nullopt},
    };
    CHECK_THROWS_WITH_AS(validate_model(raw), doctest::Contains("cycle"), Error);
    try {
        validate_model(raw);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CyclicModel);
    }
}

TEST_CASE("out-of-range row output is rejected") {
    RawModel raw;
    raw.exogenous = {{"U", {"0", "1"}}};
    raw.endogenous = {{"FB", {"0", "1"}}};
    raw.equations = {{"FB", {"U"}, {{{"0"}, "0"}, {{"1"}, "2"}}, std::nullopt}};
    try {
        validate_model(raw);
        FAIL("expected RangeViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeViolation);
    }
}

TEST_CASE("duplicate variable names are rejected") {
    RawModel raw;
    raw.exogenous = {{"U", {"0", "1"}}};
    raw.endogenous = {{"U", {"0", "1"}}};
    raw.equations = {{"U", {}, {}, "0"}};
    try {
        validate_model(raw);
        FAIL("expected DuplicateVariable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateVariable);
    }
}

TEST_CASE("partial equation without default is rejected") {
    RawModel raw;
    raw.exogenous = {{"U", {"0", "1"}}};
    raw.endogenous = {{"X", {"0", "1"}}};
    raw.equations = {{"X", {"U"}, {{{"0"}, "0"}}, std::nullopt}};
    try {
        validate_model(raw);
        FAIL("expected PartialEquation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PartialEquation);
    }
}

TEST_CASE("solve: arson scenarios and the television model") {
    CausalModel m1 = fixture_model("arson_disjunctive");
    CausalModel m2 = fixture_model("arson_conjunctive");

    Assignment a = m1.solve(m1.make_context({{"U", "u11"}}));
    CHECK(m1.assignment_to_string(a) == "ML1=1, ML2=1, FB=1");

    Assignment b = m2.solve(m2.make_context({{"U", "u00"}}));
    CHECK(m2.assignment_to_string(b) == "ML1=0, ML2=0, FB=0");

    CausalModel tv = two_var_tv();
    Assignment c = tv.solve(tv.make_context({{"U0", "1"}, {"U1", "0"}}));
    CHECK(tv.assignment_to_string(c) == "T=1, P=1");
}

TEST_CASE("intervention: forest burns iff the submodel says so") {
    CausalModel m1 = fixture_model("arson_disjunctive");
    CausalModel m2 = fixture_model("arson_conjunctive");
    Context u11 = m1.make_context({{"U", "u11"}});

    Assignment drop1 = m1.make_assignment({{"ML1", "0"}});
    CHECK(m1.intervene(drop1).solve(u11).values[2] == 1);  // FB=1
    CHECK(m2.intervene(drop1).solve(u11).values[2] == 0);  // FB=0

    CHECK(m1.intervene(Assignment::unbound(3)) == m1);
}

TEST_CASE("context enumeration is canonical") {
    CausalModel m1 = fixture_model("arson_disjunctive");
    auto contexts = m1.enumerate_contexts();
    REQUIRE(contexts.size() == 4);
    CHECK(m1.context_to_string(contexts[0]) == "U=u00");
    CHECK(m1.context_to_string(contexts[1]) == "U=u10");
    CHECK(m1.context_to_string(contexts[2]) == "U=u01");
    CHECK(m1.context_to_string(contexts[3]) == "U=u11");

    CHECK(two_var_tv().enumerate_contexts().size() == 4);

    RawModel raw;
    raw.endogenous = {{"X", {"a"}}};
    raw.equations = {{"X", {}, {}, "a"}};
    CausalModel closed = validate_model(raw);
    auto closed_contexts = closed.enumerate_contexts();
    REQUIRE(closed_contexts.size() == 1);
    CHECK(closed_contexts[0].values.empty());
}

TEST_CASE("solve agrees with fixed-point search on random models") {
    std::mt19937 rng(2024u);
    for (int trial = 0; trial < 60; ++trial) {
        CausalModel m = testutil::random_model(rng);
        for (const Context& ctx : m.enumerate_contexts()) {
            auto all = oracle::satisfying_assignments(m, ctx, nullptr);
            REQUIRE(all.size() == 1);  // exactly one satisfying assignment
            CHECK(all.front() == m.solve(ctx));
        }
    }
}

TEST_CASE("intervention composition over disjoint targets is order-independent") {
    std::mt19937 rng(7u);
    for (int trial = 0; trial < 40; ++trial) {
        CausalModel m = testutil::random_model(rng);
        const Signature& sig = m.signature();
        if (sig.endo_count() < 2) continue;
        Assignment a = Assignment::unbound(sig.endo_count());
        Assignment b = Assignment::unbound(sig.endo_count());
        a.values[0] = 0;
        b.values[sig.endo_count() - 1] = 1 % static_cast<int>(
            sig.endogenous()[sig.endo_count() - 1].range.size());
        Assignment merged = a;
        merged.values[sig.endo_count() - 1] = b.values[sig.endo_count() - 1];
        CHECK(m.intervene(a).intervene(b) == m.intervene(merged));
        CHECK(m.intervene(b).intervene(a) == m.intervene(merged));
    }
}

TEST_CASE("an intervened variable solves to its setting") {
    std::mt19937 rng(11u);
    for (int trial = 0; trial < 30; ++trial) {
        CausalModel m = testutil::random_model(rng);
        const Signature& sig = m.signature();
        Context ctx = testutil::random_context(rng, m);
        for (int x = 0; x < sig.endo_count(); ++x) {
            for (size_t v = 0; v < sig.endogenous()[x].range.size(); ++v) {
                Assignment setting = Assignment::unbound(sig.endo_count());
                setting.values[x] = static_cast<int>(v);
                CHECK(m.intervene(setting).solve(ctx).values[x] == static_cast<int>(v));
            }
        }
    }
}

TEST_CASE("non-descendants keep their values under intervention") {
    std::mt19937 rng(13u);
    for (int trial = 0; trial < 40; ++trial) {
        CausalModel m = testutil::random_model(rng);
        const Signature& sig = m.signature();
        const int n = sig.endo_count();

        // Descendants of x in the endogenous parent graph.
        auto descendants = [&](int x) {
            std::set<int> out{x};
            bool grew = true;
            while (grew) {
                grew = false;
                for (int y = 0; y < n; ++y) {
                    if (out.count(y)) continue;
                    for (VarRef p : m.equations()[static_cast<size_t>(y)].parents())
                        if (p.kind == VarKind::Endogenous && out.count(p.index)) {
                            out.insert(y);
                            grew = true;
                            break;
                        }
                }
            }
            return out;
        };

        for (const Context& ctx : m.enumerate_contexts()) {
            Assignment base = m.solve(ctx);
            for (int x = 0; x < n; ++x) {
                std::set<int> desc = descendants(x);
                for (size_t v = 0; v < sig.endogenous()[x].range.size(); ++v) {
                    Assignment setting = Assignment::unbound(n);
                    setting.values[x] = static_cast<int>(v);
                    Assignment changed = m.intervene(setting).solve(ctx);
                    for (int y = 0; y < n; ++y)
                        if (!desc.count(y)) CHECK(changed.values[y] == base.values[y]);
                }
            }
        }
    }
}

TEST_CASE("context validation catches bad values") {
    CausalModel m1 = fixture_model("arson_disjunctive");
    CHECK_THROWS_AS(m1.make_context({{"U", "bogus"}}), Error);
    CHECK_THROWS_AS(m1.make_context({}), Error);
    CHECK_THROWS_AS(m1.make_context({{"ML1", "1"}}), Error);
}
