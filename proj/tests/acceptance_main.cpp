// Acceptance suite: one check per shipping criterion, each printed as a
// single pass/fail line. Golden numbers come from the bundled fixtures; the
// property checks compare the engine against the brute-force oracle.

#include <array>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "causalis/cli.hpp"
#include "causalis/document.hpp"
#include "causalis/explanation.hpp"
#include "causalis/fixtures.hpp"
#include "causalis/formula.hpp"
#include "causalis/general.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace causalis;
using testutil::event;
using testutil::fixture_contexts;
using testutil::fixture_model;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

std::vector<std::string> names_of(const std::vector<ConjunctiveEvent>& events) {
    std::vector<std::string> out;
    for (const ConjunctiveEvent& e : events) out.push_back(print_conjunctive_event(e));
    return out;
}

EpistemicState state_of(const std::string& model_name, const std::string& k_name,
                        const std::string& w_name = "") {
    CausalModel model = fixture_model(model_name);
    std::vector<Context> k = fixture_contexts(k_name, model);
    std::optional<std::vector<Rational>> weights;
    if (!w_name.empty()) {
        WeightedContexts wc = parse_weight_file(*find_fixture(w_name), model);
        std::vector<Rational> aligned;
        for (const Context& ctx : k) {
            auto it = std::find(wc.contexts.begin(), wc.contexts.end(), ctx);
            require(it != wc.contexts.end(), "fixture weight missing");
            aligned.push_back(wc.weights[static_cast<size_t>(it - wc.contexts.begin())]);
        }
        weights = std::move(aligned);
    }
    return EpistemicState(std::move(model), std::move(k), std::move(weights));
}

// --- criterion 1: counterfactual semantics --------------------------------

void criterion_counterfactuals() {
    CausalModel m1 = fixture_model("arson_disjunctive");
    CausalModel m2 = fixture_model("arson_conjunctive");
    Context u11 = m1.make_context({{"U", "u11"}});
    require(evaluate({m1, u11}, parse_formula("[ML1<-0](FB=1)", m1.signature())),
            "(M1,u11) |= [ML1<-0](FB=1)");
    require(evaluate({m2, u11}, parse_formula("[ML1<-0](FB=0)", m2.signature())),
            "(M2,u11) |= [ML1<-0](FB=0)");
}

// --- criterion 2: causality goldens ----------------------------------------

void criterion_causality() {
    CausalModel m1 = fixture_model("arson_disjunctive");
    CausalModel m2 = fixture_model("arson_conjunctive");
    Context u11 = m1.make_context({{"U", "u11"}});
    for (const CausalModel* m : {&m1, &m2}) {
        CausalFormula fire = parse_formula("FB=1", m->signature());
        CauseVerdict single = check_actual_cause({*m, u11}, event({{"ML1", "1"}}), fire);
        require(single.classification == CauseClass::ActualCause, "ML1=1 is an actual cause");
        CauseVerdict pair =
            check_actual_cause({*m, u11}, event({{"ML1", "1"}, {"ML2", "1"}}), fire);
        require(pair.ac1 && pair.ac2.has_value() && !pair.ac3,
                "ML1=1 & ML2=1 is sufficient but not actual");
        require(pair.classification == CauseClass::SufficientCause, "pair classification");
    }
}

// --- criterion 3: April showers --------------------------------------------

void criterion_april() {
    CausalModel april = fixture_model("april_showers");
    Context actual = april.make_context({{"UA", "1"}, {"UE", "(1,1)"}});
    CausalFormula june = parse_formula("F=2", april.signature());
    CausalFormula fire = parse_formula("F=1 | F=2", april.signature());

    require(check_actual_cause({april, actual}, event({{"AS", "1"}}), june).classification ==
                CauseClass::ActualCause,
            "AS=1 causes the June fire");
    require(check_actual_cause({april, actual}, event({{"AS", "1"}}), fire).classification ==
                CauseClass::NotACause,
            "AS=1 does not cause the fire");
    require(check_actual_cause({april, actual}, event({{"ES", "(1,1)"}}), june)
                    .classification == CauseClass::ActualCause,
            "ES=(1,1) causes the June fire");
    require(check_actual_cause({april, actual}, event({{"ES", "(1,1)"}}), fire)
                    .classification == CauseClass::ActualCause,
            "ES=(1,1) causes the fire");

    EpistemicState six = state_of("april_showers", "april_showers.six.k");
    require(names_of(enumerate_explanations(six, fire, 1)) ==
                std::vector<std::string>{"ES=(1,0)", "ES=(0,1)", "ES=(1,1)"},
            "six-context explanations of fire");

    EpistemicState june_k = state_of("april_showers", "april_showers.june.k");
    require(names_of(enumerate_explanations(june_k, june, 1)) ==
                std::vector<std::string>{"AS=1", "ES=(0,1)", "ES=(1,1)"},
            "June explanations");

    EpistemicState single = state_of("april_showers", "april_showers.single.k");
    require(enumerate_explanations(single, june, 2).empty(), "singleton K: no explanation");
    require(enumerate_explanations(single, fire, 2).empty(), "singleton K: no explanation");
}

// --- criterion 4: arson explanations ---------------------------------------

void criterion_arson_explanations() {
    EpistemicState disj = state_of("arson_disjunctive", "arson_disjunctive.k");
    require(names_of(enumerate_explanations(
                disj, parse_formula("FB=1", disj.model().signature()), 2)) ==
                std::vector<std::string>{"ML1=1", "ML2=1"},
            "disjunctive explanations");

    EpistemicState conj = state_of("arson_conjunctive_lightning",
                                   "arson_conjunctive_lightning.k");
    require(names_of(enumerate_explanations(
                conj, parse_formula("FB=1", conj.model().signature()), 2)) ==
                std::vector<std::string>{"ML1=1 & ML2=1"},
            "conjunctive-with-other-causes explanations");

    EpistemicState single = state_of("arson_conjunctive", "arson_conjunctive_single.k");
    require(enumerate_explanations(single,
                                   parse_formula("FB=1", single.model().signature()), 2)
                .empty(),
            "conjunctive singleton: none");
}

// --- criterion 5: Victoria ---------------------------------------------------

void criterion_victoria() {
    EpistemicState victoria = state_of("victoria", "victoria.k", "victoria.w");
    CausalFormula tan = parse_formula("Tan=1", victoria.model().signature());

    for (int width : {2, 3})
        require(names_of(enumerate_explanations(victoria, tan, width)) ==
                    std::vector<std::string>{"Canaries=1 & Sunny=1"},
                "Canaries & Sunny is the unique full explanation");

    ExplanationReport alone = check_explanation(victoria, event({{"Canaries", "1"}}), tan);
    require(!alone.ex2 && alone.failing_contexts.size() == 1, "Canaries fails EX2 once");
    require(victoria.model().context_to_string(alone.failing_contexts[0]) == "UC=1, US=0, UB=1",
            "the failure is at u*");

    require(goodness(victoria, event({{"Canaries", "1"}}), tan) == Rational(9, 10),
            "goodness(Canaries) = 9/10 exactly");
}

// --- criterion 6: television -------------------------------------------------

void criterion_television() {
    EpistemicState tv = state_of("tv", "tv.k", "tv.w");
    CausalFormula no_picture = parse_formula("P=0", tv.model().signature());
    require(enumerate_explanations(tv, no_picture, 2).empty(), "no explanation of P=0");
    require(goodness(tv, event({{"T", "0"}}), no_picture) == Rational(9, 10),
            "goodness(T=0) = 9/10 exactly");

    CausalModel named = fixture_model("tv_named");
    EpistemicState tv2(named, fixture_contexts("tv.k", named));
    require(check_explanation(tv2, event({{"I", "0"}}),
                              parse_formula("P=0", named.signature()))
                .verdict,
            "I=0 explains P=0 once the cause is named");
}

// --- criterion 7: paresis ----------------------------------------------------

void criterion_paresis() {
    CausalModel mp = fixture_model("paresis");
    CausalModel alt = fixture_model("paresis_alt");
    CausalFormula psi_p = characterizing_formula(mp);
    CausalFormula phi = parse_formula("P=1");
    std::vector<CausalFormula> hypotheses{psi_p, CausalFormula::make_constant(true)};

    SituationSet both({
        {mp, mp.make_context({{"U1", "1"}, {"U2", "1"}})},
        {alt, alt.make_context({{"U1", "0"}, {"U2", "1"}})},
        {alt, alt.make_context({{"U1", "1"}, {"U2", "1"}})},
    });
    require(check_general_explanation(both, GeneralExplanation{psi_p, event({{"S", "1"}})},
                                      phi, hypotheses)
                .verdict,
            "(psi_P, S=1) explains paresis for the unsure agent");

    SituationSet single({{mp, mp.make_context({{"U1", "1"}, {"U2", "1"}})}});
    for (const char* cand : {"S=1", "S=0", "P=1", "P=0"}) {
        for (const CausalFormula& psi : hypotheses) {
            ConjunctiveEvent e = as_conjunctive_event(parse_formula(cand));
            GeneralExplanationReport r = check_general_explanation(
                single, GeneralExplanation{psi, e}, phi, hypotheses);
            require(!r.verdict && !r.ex4, "single-model set: EX4 blocks every candidate");
        }
    }
}

// --- criterion 8: property suite ---------------------------------------------

void criterion_properties() {
    // (a) actual causes are always single conjuncts.
    {
        std::mt19937 rng(81101u);
        int models = 0;
        long causes_seen = 0;
        while (models < 500) {
            CausalModel m = testutil::random_model(rng, {4, 2, 3, 3});
            CausalFormula phi = testutil::random_phi(rng, m.signature(), 2);
            // Prefer a context where phi holds; only those can have causes.
            Context ctx = testutil::random_context(rng, m);
            for (const Context& candidate_ctx : m.enumerate_contexts())
                if (evaluate({m, candidate_ctx}, phi)) {
                    ctx = candidate_ctx;
                    break;
                }
            int width = std::min(2 + models % 2, m.signature().endo_count());
            if (width < 1) continue;
            for (const CauseVerdict& v :
                 enumerate_actual_causes({m, ctx}, phi, width)) {
                require(v.candidate.width() == 1, "an actual cause wider than one conjunct");
                ++causes_seen;
            }
            ++models;
        }
        require(causes_seen > 200, "the singleton-cause sweep found too few causes");
    }

    // (b) the engine agrees with the literal-definition brute force. Random
    // tables make full explanations rare, so the sweep keeps drawing (up to a
    // cap) until it has seen enough of them to make (c) and (d) meaningful.
    std::vector<std::tuple<CausalModel, std::vector<Context>, CausalFormula>> instances;
    long explanations_seen = 0;
    {
        std::mt19937 rng(81102u);
        CausalModel arson = fixture_model("arson_disjunctive");
        instances.emplace_back(arson, fixture_contexts("arson_disjunctive.k", arson),
                               parse_formula("FB=1", arson.signature()));
        CausalModel april = fixture_model("april_showers");
        instances.emplace_back(april, fixture_contexts("april_showers.six.k", april),
                               parse_formula("F=1 | F=2", april.signature()));
        while (instances.size() < 800 &&
               (instances.size() < 200 || explanations_seen < 30)) {
            CausalModel m = testutil::random_model(rng, {3, 2, 2, 2});
            CausalFormula phi = testutil::random_phi(rng, m.signature(), 2);
            std::vector<Context> k;
            for (const Context& ctx : m.enumerate_contexts())
                if (oracle::evaluate(m, ctx, phi)) k.push_back(ctx);
            if (k.empty()) continue;
            for (const ConjunctiveEvent& e : [&] {
                     EnumerateExplanationsOptions opts;
                     opts.include_explanandum_variables = true;
                     return enumerate_explanations(EpistemicState(m, k), phi, 2, opts);
                 }()) {
                (void)e;
                ++explanations_seen;
            }
            instances.emplace_back(std::move(m), std::move(k), std::move(phi));
        }
        require(instances.size() >= 200, "too few oracle-sweep instances");
        require(explanations_seen >= 30, "the oracle sweep found too few explanations");
        for (const auto& [m, k, phi] : instances) {
            const Signature& sig = m.signature();
            EpistemicState state(m, k);

            // Causes at the first context of K, all single-event candidates.
            for (int x = 0; x < sig.endo_count(); ++x) {
                for (const std::string& value : sig.endogenous()[x].range) {
                    ConjunctiveEvent candidate = event({{sig.endogenous()[x].name, value}});
                    CauseVerdict v = check_actual_cause({m, k[0]}, candidate, phi);
                    require((v.ac1 && v.ac2.has_value()) ==
                                oracle::is_sufficient_cause(m, k[0], candidate, phi),
                            "sufficient-cause disagreement");
                    require((v.classification == CauseClass::ActualCause) ==
                                oracle::is_actual_cause(m, k[0], candidate, phi),
                            "actual-cause disagreement");
                }
            }

            // Explanations: every candidate of width <= 2, engine vs oracle;
            // the enumeration over the unrestricted universe must agree too.
            std::vector<ConjunctiveEvent> universe;
            for (int x = 0; x < sig.endo_count(); ++x)
                for (const std::string& vx : sig.endogenous()[x].range) {
                    universe.push_back(event({{sig.endogenous()[x].name, vx}}));
                    for (int y = x + 1; y < sig.endo_count(); ++y)
                        for (const std::string& vy : sig.endogenous()[y].range)
                            universe.push_back(event({{sig.endogenous()[x].name, vx},
                                                      {sig.endogenous()[y].name, vy}}));
                }
            std::vector<std::string> oracle_explanations;
            for (const ConjunctiveEvent& candidate : universe) {
                bool engine = check_explanation(state, candidate, phi).verdict;
                bool brute = oracle::is_explanation(m, k, candidate, phi);
                require(engine == brute, "explanation disagreement on " +
                                             print_conjunctive_event(candidate));
                if (brute) oracle_explanations.push_back(print_conjunctive_event(candidate));
            }
            EnumerateExplanationsOptions include;
            include.include_explanandum_variables = true;
            std::vector<std::string> engine_list =
                names_of(enumerate_explanations(state, phi, 2, include));
            std::sort(engine_list.begin(), engine_list.end());
            std::sort(oracle_explanations.begin(), oracle_explanations.end());
            require(engine_list == oracle_explanations, "enumeration disagreement");
        }
    }

    // (c) goodness lies in [0,1] and is exactly 1 on full explanations;
    // (d) the two power measures agree on full explanations.
    {
        std::mt19937 rng(81103u);
        for (const auto& [m, k, phi] : instances) {
            std::vector<Context> all = m.enumerate_contexts();
            std::vector<Rational> prior_w;
            Rational total = 0;
            for (size_t i = 0; i < all.size(); ++i) {
                Rational w(std::uniform_int_distribution<int>(1, 9)(rng), 1);
                prior_w.push_back(w);
                total += w;
            }
            for (Rational& w : prior_w) w /= total;
            Rational k_mass = 0;
            for (size_t i = 0; i < all.size(); ++i)
                if (std::find(k.begin(), k.end(), all[i]) != k.end()) k_mass += prior_w[i];
            std::vector<Rational> posterior_w;
            for (const Context& ctx : k) {
                auto it = std::find(all.begin(), all.end(), ctx);
                posterior_w.push_back(prior_w[static_cast<size_t>(it - all.begin())] / k_mass);
            }
            PriorState prior(m, all, prior_w);
            EpistemicState state(m, k, posterior_w);

            EnumerateExplanationsOptions include;
            include.include_explanandum_variables = true;
            for (const ConjunctiveEvent& found :
                 enumerate_explanations(state, phi, 2, include)) {
                require(goodness(state, found, phi) == Rational(1),
                        "a full explanation with goodness != 1");
                require(explanatory_power(prior, state, found, phi) ==
                            gardenfors_power(prior, state, found, phi),
                        "power measures disagree on a full explanation");
            }
            const Signature& sig = m.signature();
            for (int x = 0; x < sig.endo_count(); ++x) {
                ConjunctiveEvent candidate =
                    event({{sig.endogenous()[x].name, sig.endogenous()[x].range[0]}});
                try {
                    Rational g = goodness(state, candidate, phi);
                    require(g >= 0 && g <= 1, "goodness outside [0,1]");
                } catch (const Error& e) {
                    require(e.code() == ErrorCode::ZeroProbabilityCandidate,
                            "unexpected goodness error");
                }
            }
        }

        // The constructed barometer: zero causal power, positive baseline.
        CausalModel barometer = fixture_model("barometer");
        std::vector<Context> k = fixture_contexts("barometer.k", barometer);
        WeightedContexts priorw =
            parse_weight_file(*find_fixture("barometer.prior.w"), barometer);
        PriorState prior(barometer, priorw.contexts, priorw.weights);
        EpistemicState state(barometer, k);
        CausalFormula rain = parse_formula("R=1", barometer.signature());
        require(explanatory_power(prior, state, event({{"B", "1"}}), rain) == Rational(0),
                "barometer causal power is 0");
        require(gardenfors_power(prior, state, event({{"B", "1"}}), rain) > Rational(0),
                "barometer Gardenfors power is positive");
    }
}

// --- criterion 9: CLI determinism ---------------------------------------------

std::string capture(const std::string& command) {
    std::string output;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    require(pipe != nullptr, "popen failed");
    std::array<char, 4096> buffer;
    size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), n);
    int status = pclose(pipe);
    require(status != -1, "pclose failed");
    return output;
}

void criterion_determinism() {
#ifndef CAUSALIS_CLI_PATH
    throw Failure("CLI binary path not configured");
#else
    const std::string cli = CAUSALIS_CLI_PATH;
    const std::vector<std::string> commands = {
        " eval arson_disjunctive --context U=u11 --formula \"[ML1<-0](FB=1)\" --json",
        " solve tv --context U=u10 --json",
        " cause arson_disjunctive --context U=u11 --phi FB=1 --json",
        " suffcause arson_conjunctive --context U=u11 --phi FB=1 --candidate \"ML1=1 & ML2=1\""
        " --json",
        " explain april_showers --k april_showers.six.k --phi \"F=1 | F=2\" --json",
        " explain tv --k tv.k --phi P=0 --json",
        " partial tv --k tv.k --weights tv.w --phi P=0 --candidate T=0 --json",
        " goodness victoria --k victoria.k --weights victoria.w --phi Tan=1 --candidate"
        " Canaries=1 --json",
        " power barometer --k barometer.k --weights barometer.w --prior-k barometer.prior.k"
        " --prior-weights barometer.prior.w --phi R=1 --candidate B=1 --json",
        " power barometer --k barometer.k --weights barometer.w --prior-k barometer.prior.k"
        " --prior-weights barometer.prior.w --phi R=1 --candidate B=1 --measure gardenfors"
        " --json",
        " prob arson_disjunctive --phi FB=1 --json",
        " prob arson_disjunctive --phi FB=1 --cause --candidate ML1=1 --json",
        " general-explain --situations paresis.situations --psi-characterizes paresis --phi"
        " P=1 --candidate S=1 --json",
        " fixtures --json",
    };
    for (const std::string& command : commands) {
        std::string first = capture(cli + command);
        std::string second = capture(cli + command);
        require(!first.empty(), "no output from:" + command);
        require(first == second, "nondeterministic output from:" + command);
    }
#endif
}

struct Criterion {
    const char* name;
    std::function<void()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"counterfactual semantics (arson scenarios)", criterion_counterfactuals},
        {"causality goldens (actual vs sufficient)", criterion_causality},
        {"April showers goldens", criterion_april},
        {"disjunctive/conjunctive explanation goldens", criterion_arson_explanations},
        {"Victoria goldens", criterion_victoria},
        {"television goldens", criterion_television},
        {"paresis general-explanation goldens", criterion_paresis},
        {"property suite (singleton causes, oracle agreement, goodness, power)",
         criterion_properties},
        {"CLI determinism", criterion_determinism},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i].body();
            std::cout << "[ PASS ] " << i + 1 << ". " << criteria[i].name << "\n";
        } catch (const std::exception& e) {
            std::cout << "[ FAIL ] " << i + 1 << ". " << criteria[i].name << ": " << e.what()
                      << "\n";
            ++failed;
        }
    }
    if (failed) std::cout << failed << " criterion(s) failed\n";
    return failed == 0 ? 0 : 1;
}
