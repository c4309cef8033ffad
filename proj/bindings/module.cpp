#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causalis/document.hpp"
#include "causalis/explanation.hpp"
#include "causalis/fixtures.hpp"
#include "causalis/formula.hpp"
#include "causalis/general.hpp"
#include "causalis/model.hpp"

namespace py = pybind11;
using namespace causalis;

namespace {

py::object to_fraction(const Rational& r) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(format_rational(r));
}

Rational rational_from(const py::handle& value) {
    return parse_rational(py::str(value).cast<std::string>());
}

using Bindings = std::vector<std::pair<std::string, std::string>>;

Context context_from(const CausalModel& model, const py::dict& d) {
    Bindings bindings;
    for (const auto& item : d)
        bindings.emplace_back(py::str(item.first).cast<std::string>(),
                              py::str(item.second).cast<std::string>());
    return model.make_context(bindings);
}

py::dict context_to_dict(const CausalModel& model, const Context& ctx) {
    py::dict out;
    const Signature& sig = model.signature();
    for (int i = 0; i < sig.exo_count(); ++i)
        out[py::str(sig.exogenous()[i].name)] =
            sig.exogenous()[i].range[static_cast<size_t>(ctx.values[i])];
    return out;
}

py::dict assignment_to_dict(const CausalModel& model, const Assignment& a) {
    py::dict out;
    const Signature& sig = model.signature();
    for (int i = 0; i < sig.endo_count(); ++i)
        if (a.values[i] >= 0)
            out[py::str(sig.endogenous()[i].name)] =
                sig.endogenous()[i].range[static_cast<size_t>(a.values[i])];
    return out;
}

CausalFormula formula_from(const CausalModel& model, const py::handle& value) {
    if (py::isinstance<CausalFormula>(value)) return value.cast<CausalFormula>();
    return parse_formula(py::str(value).cast<std::string>(), model.signature());
}

ConjunctiveEvent candidate_from(const CausalModel& model, const py::handle& value) {
    return as_conjunctive_event(formula_from(model, value));
}

std::optional<std::vector<Rational>> weights_from(const py::object& weights) {
    if (weights.is_none()) return std::nullopt;
    std::vector<Rational> out;
    for (const auto& w : weights) out.push_back(rational_from(w));
    return out;
}

EpistemicState state_from(const CausalModel& model, const py::list& contexts,
                          const py::object& weights) {
    std::vector<Context> k;
    for (const auto& c : contexts) k.push_back(context_from(model, c.cast<py::dict>()));
    return EpistemicState(model, std::move(k), weights_from(weights));
}

PriorState prior_from(const CausalModel& model, const py::list& contexts,
                      const py::list& weights) {
    std::vector<Context> k;
    for (const auto& c : contexts) k.push_back(context_from(model, c.cast<py::dict>()));
    std::vector<Rational> w;
    for (const auto& x : weights) w.push_back(rational_from(x));
    return PriorState(model, std::move(k), std::move(w));
}

py::dict verdict_to_dict(const CausalModel& model, const CauseVerdict& v) {
    py::dict out;
    out["candidate"] = print_conjunctive_event(v.candidate);
    out["classification"] = cause_class_name(v.classification);
    out["ac1"] = v.ac1;
    out["ac2"] = v.ac2.has_value();
    out["ac3"] = v.ac3;
    if (v.ac2) {
        py::dict w;
        w["zside"] = v.ac2->partition.zside;
        w["wside"] = v.ac2->partition.wside;
        w["x_prime"] = assignment_to_dict(model, v.ac2->alt_x);
        w["w_prime"] = assignment_to_dict(model, v.ac2->alt_w);
        w["z_star"] = assignment_to_dict(model, v.ac2->baseline_z);
        out["witness"] = w;
    } else {
        out["witness"] = py::none();
    }
    return out;
}

py::dict report_to_dict(const CausalModel& model, const ExplanationReport& r) {
    py::dict out;
    out["candidate"] = print_conjunctive_event(r.candidate);
    out["verdict"] = r.verdict;
    out["ex1"] = r.ex1;
    out["ex2"] = r.ex2;
    out["ex3"] = r.ex3;
    out["ex4"] = r.ex4;
    py::list failing;
    for (const Context& c : r.failing_contexts) failing.append(context_to_dict(model, c));
    out["failing_contexts"] = failing;
    out["actual_ok"] = r.actual_ok ? py::cast(*r.actual_ok) : py::none();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite structural causal models: counterfactuals, actual causes, explanations";

    static py::exception<Error> causal_error(m, "CausalError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            std::string message =
                std::string("[") + error_code_name(e.code()) + "] " + e.what();
            PyErr_SetString(causal_error.ptr(), message.c_str());
        }
    });

    py::class_<CausalFormula>(m, "Formula")
        .def("__str__", [](const CausalFormula& f) { return print_formula(f); })
        .def("__repr__",
             [](const CausalFormula& f) { return "Formula(" + print_formula(f) + ")"; })
        .def("__eq__", [](const CausalFormula& a, const CausalFormula& b) { return a == b; });

    py::class_<CausalModel>(m, "Model")
        .def_property_readonly("exogenous",
                               [](const CausalModel& m_) {
                                   py::dict out;
                                   for (const Variable& v : m_.signature().exogenous())
                                       out[py::str(v.name)] = v.range;
                                   return out;
                               })
        .def_property_readonly("endogenous",
                               [](const CausalModel& m_) {
                                   py::dict out;
                                   for (const Variable& v : m_.signature().endogenous())
                                       out[py::str(v.name)] = v.range;
                                   return out;
                               })
        .def("solve",
             [](const CausalModel& m_, const py::dict& ctx) {
                 return assignment_to_dict(m_, m_.solve(context_from(m_, ctx)));
             },
             py::arg("context"))
        .def("intervene",
             [](const CausalModel& m_, const py::dict& setting) {
                 Bindings bindings;
                 for (const auto& item : setting)
                     bindings.emplace_back(py::str(item.first).cast<std::string>(),
                                           py::str(item.second).cast<std::string>());
                 return m_.intervene(m_.make_assignment(bindings));
             },
             py::arg("setting"))
        .def("contexts",
             [](const CausalModel& m_) {
                 py::list out;
                 for (const Context& c : m_.enumerate_contexts())
                     out.append(context_to_dict(m_, c));
                 return out;
             })
        .def("evaluate",
             [](const CausalModel& m_, const py::dict& ctx, const py::handle& formula) {
                 return evaluate({m_, context_from(m_, ctx)}, formula_from(m_, formula));
             },
             py::arg("context"), py::arg("formula"))
        .def("holds",
             [](const CausalModel& m_, const py::dict& ctx, const py::handle& candidate) {
                 return holds_conjunct({m_, context_from(m_, ctx)},
                                       candidate_from(m_, candidate));
             },
             py::arg("context"), py::arg("candidate"))
        .def("parse_formula",
             [](const CausalModel& m_, const std::string& text) {
                 return parse_formula(text, m_.signature());
             },
             py::arg("text"))
        .def("__eq__", [](const CausalModel& a, const CausalModel& b) { return a == b; })
        .def("__repr__", [](const CausalModel& m_) {
            return "Model(" + std::to_string(m_.signature().exo_count()) + " exogenous, " +
                   std::to_string(m_.signature().endo_count()) + " endogenous)";
        });

    py::class_<ParsedModelDocument>(m, "ModelDocument")
        .def_readonly("model", &ParsedModelDocument::model)
        .def_property_readonly("weights",
                               [](const ParsedModelDocument& d) -> py::object {
                                   if (!d.weights) return py::none();
                                   py::list out;
                                   for (const Rational& w : *d.weights)
                                       out.append(to_fraction(w));
                                   return out;
                               })
        .def("__str__", [](const ParsedModelDocument& d) { return print_model_document(d); });

    m.def("parse_model", [](const std::string& text) { return parse_model_document(text); },
          py::arg("text"), "Parse a model document (signature, equations, prob block).");
    m.def("print_model",
          [](const CausalModel& model) {
              return print_model_document({model, std::nullopt});
          },
          py::arg("model"), "Canonical document form of a model.");
    m.def("parse_formula",
          [](const std::string& text) { return parse_formula(text); }, py::arg("text"),
          "Parse a causal formula without validating names against a model.");

    m.def("check_actual_cause",
          [](const CausalModel& model, const py::dict& ctx, const py::handle& candidate,
             const py::handle& phi, std::uint64_t budget) {
              CauseVerdict v = check_actual_cause({model, context_from(model, ctx)},
                                                  candidate_from(model, candidate),
                                                  formula_from(model, phi), {budget});
              return verdict_to_dict(model, v);
          },
          py::arg("model"), py::arg("context"), py::arg("candidate"), py::arg("phi"),
          py::arg("budget") = 10'000'000);

    m.def("is_sufficient_cause",
          [](const CausalModel& model, const py::dict& ctx, const py::handle& candidate,
             const py::handle& phi, std::uint64_t budget) {
              return is_sufficient_cause({model, context_from(model, ctx)},
                                         candidate_from(model, candidate),
                                         formula_from(model, phi), {budget});
          },
          py::arg("model"), py::arg("context"), py::arg("candidate"), py::arg("phi"),
          py::arg("budget") = 10'000'000);

    m.def("enumerate_actual_causes",
          [](const CausalModel& model, const py::dict& ctx, const py::handle& phi,
             int max_width, std::uint64_t budget) {
              py::list out;
              for (const CauseVerdict& v :
                   enumerate_actual_causes({model, context_from(model, ctx)},
                                           formula_from(model, phi), max_width, {budget}))
                  out.append(verdict_to_dict(model, v));
              return out;
          },
          py::arg("model"), py::arg("context"), py::arg("phi"), py::arg("max_width") = 2,
          py::arg("budget") = 10'000'000);

    py::class_<EpistemicState>(m, "EpistemicState")
        .def(py::init([](const CausalModel& model, const py::list& contexts,
                         const py::object& weights) {
                 return state_from(model, contexts, weights);
             }),
             py::arg("model"), py::arg("contexts"), py::arg("weights") = py::none())
        .def_property_readonly("model", &EpistemicState::model)
        .def_property_readonly("contexts", [](const EpistemicState& s) {
            py::list out;
            for (const Context& c : s.contexts()) out.append(context_to_dict(s.model(), c));
            return out;
        });

    py::class_<PriorState>(m, "PriorState")
        .def(py::init([](const CausalModel& model, const py::list& contexts,
                         const py::list& weights) {
                 return prior_from(model, contexts, weights);
             }),
             py::arg("model"), py::arg("contexts"), py::arg("weights"));

    m.def("check_explanation",
          [](const EpistemicState& state, const py::handle& candidate, const py::handle& phi,
             std::uint64_t budget) {
              ExplanationOptions opts;
              opts.budget = budget;
              ExplanationReport r =
                  check_explanation(state, candidate_from(state.model(), candidate),
                                    formula_from(state.model(), phi), opts);
              return report_to_dict(state.model(), r);
          },
          py::arg("state"), py::arg("candidate"), py::arg("phi"),
          py::arg("budget") = 10'000'000);

    m.def("enumerate_explanations",
          [](const EpistemicState& state, const py::handle& phi, int max_width,
             bool include_explanandum_variables, std::uint64_t budget) {
              EnumerateExplanationsOptions opts;
              opts.budget = budget;
              opts.include_explanandum_variables = include_explanandum_variables;
              py::list out;
              for (const ConjunctiveEvent& e : enumerate_explanations(
                       state, formula_from(state.model(), phi), max_width, opts))
                  out.append(print_conjunctive_event(e));
              return out;
          },
          py::arg("state"), py::arg("phi"), py::arg("max_width") = 2,
          py::arg("include_explanandum_variables") = false, py::arg("budget") = 10'000'000);

    m.def("partial_core",
          [](const EpistemicState& state, const py::handle& candidate, const py::handle& phi) {
              py::list out;
              for (const Context& c :
                   partial_core(state, candidate_from(state.model(), candidate),
                                formula_from(state.model(), phi)))
                  out.append(context_to_dict(state.model(), c));
              return out;
          },
          py::arg("state"), py::arg("candidate"), py::arg("phi"));

    m.def("goodness",
          [](const EpistemicState& state, const py::handle& candidate, const py::handle& phi) {
              return to_fraction(goodness(state, candidate_from(state.model(), candidate),
                                          formula_from(state.model(), phi)));
          },
          py::arg("state"), py::arg("candidate"), py::arg("phi"));

    m.def("explanatory_power",
          [](const PriorState& prior, const EpistemicState& state, const py::handle& candidate,
             const py::handle& phi) {
              return to_fraction(explanatory_power(prior, state,
                                                   candidate_from(state.model(), candidate),
                                                   formula_from(state.model(), phi)));
          },
          py::arg("prior"), py::arg("state"), py::arg("candidate"), py::arg("phi"));

    m.def("gardenfors_power",
          [](const PriorState& prior, const EpistemicState& state, const py::handle& candidate,
             const py::handle& phi) {
              return to_fraction(gardenfors_power(prior, state,
                                                  candidate_from(state.model(), candidate),
                                                  formula_from(state.model(), phi)));
          },
          py::arg("prior"), py::arg("state"), py::arg("candidate"), py::arg("phi"));

    m.def("model_valid",
          [](const CausalModel& model, const py::handle& psi) {
              CausalFormula formula = py::isinstance<CausalFormula>(psi)
                                          ? psi.cast<CausalFormula>()
                                          : parse_formula(py::str(psi).cast<std::string>());
              return model_valid(model, formula);
          },
          py::arg("model"), py::arg("psi"));

    m.def("characterizing_formula", &characterizing_formula, py::arg("model"));

    m.def("check_general_explanation",
          [](const py::list& situations, const py::handle& psi, const py::handle& candidate,
             const py::handle& phi, const py::list& hypotheses, std::uint64_t budget) {
              std::vector<std::pair<CausalModel, Context>> pairs;
              for (const auto& item : situations) {
                  auto pair = item.cast<py::tuple>();
                  CausalModel model = pair[0].cast<CausalModel>();
                  Context ctx = context_from(model, pair[1].cast<py::dict>());
                  pairs.emplace_back(std::move(model), std::move(ctx));
              }
              auto as_formula = [](const py::handle& h) {
                  return py::isinstance<CausalFormula>(h)
                             ? h.cast<CausalFormula>()
                             : parse_formula(py::str(h).cast<std::string>());
              };
              std::vector<CausalFormula> psis;
              for (const auto& h : hypotheses) psis.push_back(as_formula(h));
              SituationSet set(std::move(pairs));
              GeneralExplanation ge{as_formula(psi),
                                    as_conjunctive_event(as_formula(candidate))};
              GeneralExplanationReport r =
                  check_general_explanation(set, ge, as_formula(phi), psis, {budget});
              py::dict out;
              out["verdict"] = r.verdict;
              out["ex1"] = r.ex1;
              out["ex2"] = r.ex2;
              out["ex3"] = r.ex3;
              out["ex4"] = r.ex4;
              return out;
          },
          py::arg("situations"), py::arg("psi"), py::arg("candidate"), py::arg("phi"),
          py::arg("hypotheses"), py::arg("budget") = 10'000'000);

    py::class_<ProbabilisticCausalModel>(m, "ProbabilisticModel")
        .def(py::init([](const CausalModel& model, const py::list& weights) {
                 std::vector<Rational> w;
                 for (const auto& x : weights) w.push_back(rational_from(x));
                 return ProbabilisticCausalModel(model, std::move(w));
             }),
             py::arg("model"), py::arg("weights"))
        .def_property_readonly("model", &ProbabilisticCausalModel::model);

    m.def("probability_of_formula",
          [](const ProbabilisticCausalModel& pmodel, const py::handle& phi) {
              return to_fraction(
                  probability_of_formula(pmodel, formula_from(pmodel.model(), phi)));
          },
          py::arg("pmodel"), py::arg("phi"));

    m.def("probability_of_cause",
          [](const ProbabilisticCausalModel& pmodel, const py::handle& candidate,
             const py::handle& phi, std::uint64_t budget) {
              return to_fraction(probability_of_cause(
                  pmodel, candidate_from(pmodel.model(), candidate),
                  formula_from(pmodel.model(), phi), {budget}));
          },
          py::arg("pmodel"), py::arg("candidate"), py::arg("phi"),
          py::arg("budget") = 10'000'000);

    m.def("to_probabilistic",
          [](const ParsedModelDocument& doc) { return doc.to_probabilistic(); },
          py::arg("document"));

    m.def("fixture_names", &fixture_names);
    m.def("fixture_text",
          [](const std::string& name) -> py::object {
              auto text = find_fixture(name);
              return text ? py::cast(*text) : py::object(py::none());
          },
          py::arg("name"));

    m.attr("__version__") = "0.1.0";
}
