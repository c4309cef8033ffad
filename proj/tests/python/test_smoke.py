import os
from fractions import Fraction

import pytest

if os.environ.get("CAUSALIS_CORE_ONLY"):
    import _core as causalis
else:
    import causalis


def fixture_model(name):
    return causalis.parse_model(causalis.fixture_text(name)).model


def fixture_contexts(name):
    text = causalis.fixture_text(name)
    contexts = []
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if not line:
            continue
        bindings = dict(part.strip().split("=", 1) for part in line.split(","))
        contexts.append(bindings)
    return contexts


def test_solve_and_counterfactuals():
    m1 = fixture_model("arson_disjunctive")
    m2 = fixture_model("arson_conjunctive")
    assert m1.solve({"U": "u11"}) == {"ML1": "1", "ML2": "1", "FB": "1"}
    assert m1.evaluate({"U": "u11"}, "[ML1<-0](FB=1)")
    assert m2.evaluate({"U": "u11"}, "[ML1<-0](FB=0)")


def test_interventions_return_new_models():
    m1 = fixture_model("arson_disjunctive")
    pinned = m1.intervene({"ML1": "0"})
    assert pinned.solve({"U": "u11"})["FB"] == "1"
    assert pinned != m1
    assert len(m1.contexts()) == 4


def test_actual_cause_verdicts():
    m2 = fixture_model("arson_conjunctive")
    verdict = causalis.check_actual_cause(m2, {"U": "u11"}, "ML1=1", "FB=1")
    assert verdict["classification"] == "actual-cause"
    assert verdict["witness"]["x_prime"] == {"ML1": "0"}

    pair = causalis.check_actual_cause(m2, {"U": "u11"}, "ML1=1 & ML2=1", "FB=1")
    assert pair["classification"] == "sufficient-cause"

    causes = causalis.enumerate_actual_causes(m2, {"U": "u11"}, "FB=1", max_width=2)
    assert [v["candidate"] for v in causes] == ["ML1=1", "ML2=1", "FB=1"]


def test_explanations_over_epistemic_states():
    m1 = fixture_model("arson_disjunctive")
    state = causalis.EpistemicState(m1, fixture_contexts("arson_disjunctive.k"))
    assert causalis.enumerate_explanations(state, "FB=1") == ["ML1=1", "ML2=1"]
    report = causalis.check_explanation(state, "ML1=1", "FB=1")
    assert report["verdict"] and report["ex4"]


def test_goodness_is_an_exact_fraction():
    model = fixture_model("victoria")
    contexts = fixture_contexts("victoria.k")
    weights = ["9/20", "1/20", "9/20", "1/20"]
    state = causalis.EpistemicState(model, contexts, weights)
    assert causalis.goodness(state, "Canaries=1", "Tan=1") == Fraction(9, 10)


def test_power_measures_disagree_on_the_barometer():
    model = fixture_model("barometer")
    state = causalis.EpistemicState(model, fixture_contexts("barometer.k"))
    prior = causalis.PriorState(model, fixture_contexts("barometer.prior.k"),
                                ["9/20", "1/20", "9/20", "1/20"])
    assert causalis.explanatory_power(prior, state, "B=1", "R=1") == 0
    assert causalis.gardenfors_power(prior, state, "B=1", "R=1") == 1


def test_general_explanation_for_paresis():
    mp = fixture_model("paresis")
    alt = fixture_model("paresis_alt")
    psi = causalis.characterizing_formula(mp)
    assert str(psi) == "[S<-0](P=0)"
    situations = [
        (mp, {"U1": "1", "U2": "1"}),
        (alt, {"U1": "0", "U2": "1"}),
        (alt, {"U1": "1", "U2": "1"}),
    ]
    report = causalis.check_general_explanation(situations, psi, "S=1", "P=1",
                                                [psi, "TRUE"])
    assert report["verdict"]


def test_probability_operations():
    doc = causalis.parse_model(causalis.fixture_text("arson_disjunctive"))
    pmodel = causalis.to_probabilistic(doc)
    assert causalis.probability_of_formula(pmodel, "FB=1") == Fraction(3, 4)
    assert causalis.probability_of_cause(pmodel, "ML1=1", "FB=1") == Fraction(1, 2)


def test_errors_are_causal_errors():
    m1 = fixture_model("arson_disjunctive")
    with pytest.raises(causalis.CausalError, match="RangeViolation"):
        m1.solve({"U": "bogus"})
    with pytest.raises(causalis.CausalError, match="DisjunctiveCandidate"):
        causalis.check_actual_cause(m1, {"U": "u11"}, "ML1=1 | ML2=1", "FB=1")


def test_document_round_trip():
    doc = causalis.parse_model(causalis.fixture_text("april_showers"))
    printed = str(doc)
    again = causalis.parse_model(printed)
    assert str(again) == printed
    assert doc.model == again.model
