#include "causalis/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "causalis/document.hpp"
#include "causalis/explanation.hpp"
#include "causalis/fixtures.hpp"
#include "causalis/formula.hpp"
#include "causalis/general.hpp"

namespace causalis::cli {

namespace {

using Json = nlohmann::ordered_json;

// A reference names either a file on disk or a bundled fixture.
std::string load_text(const std::string& ref) {
    std::ifstream in(ref, std::ios::binary);
    if (in) {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    if (auto fixture = find_fixture(ref)) return *fixture;
    raise(ErrorCode::UsageError, "no file or bundled fixture named '" + ref + "'");
}

struct CommonArgs {
    bool json = false;
    std::uint64_t budget = 10'000'000;
    int max_width = 2;
    std::string require_actual;
    bool require_actual_in_k = false;
};

struct Workspace {
    CommonArgs common;

    std::string model_ref;
    std::string context_text;
    std::string formula_text;
    std::string phi_text;
    std::string candidate_text;
    std::string k_ref;
    std::string weights_ref;
    std::string prior_k_ref;
    std::string prior_weights_ref;
    std::string situations_ref;
    std::string psi_text = "TRUE";
    std::string psi_characterizes_ref;
    std::string psi_set_ref;
    std::string measure = "causal";
    std::string show_fixture;
    bool enumerate = false;
    bool want_cause = false;  // prob --cause mode

    ParsedModelDocument document;

    const CausalModel& model() { return document.model; }

    void load_model() { document = parse_model_document(load_text(model_ref)); }

    Context context() { return model().make_context(parse_bindings(context_text)); }

    CausalFormula phi() { return parse_formula(phi_text, model().signature()); }

    ConjunctiveEvent candidate() {
        return as_conjunctive_event(parse_formula(candidate_text, model().signature()));
    }

    EpistemicState state() {
        std::vector<Context> contexts = parse_context_file(load_text(k_ref), model());
        std::optional<std::vector<Rational>> weights;
        if (!weights_ref.empty()) weights = align_weights(contexts, weights_ref);
        return EpistemicState(model(), std::move(contexts), std::move(weights));
    }

    std::vector<Rational> align_weights(const std::vector<Context>& contexts,
                                        const std::string& ref) {
        WeightedContexts wc = parse_weight_file(load_text(ref), model());
        std::vector<Rational> aligned;
        for (const Context& ctx : contexts) {
            auto it = std::find(wc.contexts.begin(), wc.contexts.end(), ctx);
            if (it == wc.contexts.end())
                raise(ErrorCode::UsageError,
                      "no weight for context " + model().context_to_string(ctx));
            aligned.push_back(wc.weights[static_cast<size_t>(it - wc.contexts.begin())]);
        }
        if (wc.contexts.size() != contexts.size())
            raise(ErrorCode::UsageError, "weight file lists contexts outside the state");
        return aligned;
    }

    PriorState prior() {
        std::vector<Context> contexts = parse_context_file(load_text(prior_k_ref), model());
        if (prior_weights_ref.empty())
            raise(ErrorCode::UsageError, "--prior-weights is required with --prior-k");
        return PriorState(model(), contexts, align_weights(contexts, prior_weights_ref));
    }

    ExplanationOptions explanation_options() {
        ExplanationOptions opts;
        opts.budget = common.budget;
        if (!common.require_actual.empty()) {
            opts.require_actual = model().make_context(parse_bindings(common.require_actual));
            opts.require_actual_in_k = common.require_actual_in_k;
        }
        return opts;
    }
};

Json context_list_json(const CausalModel& model, const std::vector<Context>& contexts) {
    Json arr = Json::array();
    for (const Context& c : contexts) arr.push_back(model.context_to_string(c));
    return arr;
}

Json witness_json(const CausalModel& model, const Ac2Witness& w) {
    Json j;
    j["zside"] = w.partition.zside;
    j["wside"] = w.partition.wside;
    j["x_prime"] = model.assignment_to_string(w.alt_x);
    j["w_prime"] = model.assignment_to_string(w.alt_w);
    j["z_star"] = model.assignment_to_string(w.baseline_z);
    return j;
}

std::string witness_text(const CausalModel& model, const Ac2Witness& w) {
    std::string wside;
    for (size_t i = 0; i < w.partition.wside.size(); ++i) {
        if (i) wside += ", ";
        wside += w.partition.wside[i];
    }
    std::string out = "  witness: W = {" + wside + "}";
    out += "\n    x' = " + model.assignment_to_string(w.alt_x);
    if (w.alt_w.width() > 0) out += "\n    w' = " + model.assignment_to_string(w.alt_w);
    out += "\n    z* = " + model.assignment_to_string(w.baseline_z);
    return out;
}

Json verdict_json(const CausalModel& model, const CauseVerdict& v) {
    Json j;
    j["candidate"] = print_conjunctive_event(v.candidate);
    j["classification"] = cause_class_name(v.classification);
    j["clauses"] = {{"ac1", v.ac1}, {"ac2", v.ac2.has_value()}, {"ac3", v.ac3}};
    if (v.ac2) j["witness"] = witness_json(model, *v.ac2);
    return j;
}

void emit(const CommonArgs& common, std::ostream& out, const Json& json,
          const std::string& text) {
    if (common.json)
        out << json.dump(2) << "\n";
    else
        out << text << "\n";
}

Json inputs_json(std::initializer_list<std::pair<const char*, std::string>> items) {
    Json j;
    for (const auto& [key, value] : items)
        if (!value.empty()) j[key] = value;
    return j;
}

// ---------------------------------------------------------------------------
// Subcommand bodies

int cmd_eval(Workspace& ws, std::ostream& out) {
    ws.load_model();
    Context ctx = ws.context();
    CausalFormula formula = parse_formula(ws.formula_text, ws.model().signature());
    bool verdict = evaluate(Situation{ws.model(), ctx}, formula);
    Json j;
    j["command"] = "eval";
    j["inputs"] = inputs_json(
        {{"model", ws.model_ref}, {"context", ws.context_text}, {"formula", ws.formula_text}});
    j["verdict"] = verdict;
    emit(ws.common, out, j, verdict ? "true" : "false");
    return 0;
}

int cmd_solve(Workspace& ws, std::ostream& out) {
    ws.load_model();
    Context ctx = ws.context();
    Assignment solved = ws.model().solve(ctx);
    Json values;
    const Signature& sig = ws.model().signature();
    for (int i = 0; i < sig.endo_count(); ++i)
        values[sig.endogenous()[i].name] =
            sig.endogenous()[i].range[static_cast<size_t>(solved.values[i])];
    Json j;
    j["command"] = "solve";
    j["inputs"] = inputs_json({{"model", ws.model_ref}, {"context", ws.context_text}});
    j["values"] = values;
    emit(ws.common, out, j, ws.model().assignment_to_string(solved));
    return 0;
}

int cmd_cause(Workspace& ws, std::ostream& out, bool sufficient_mode) {
    ws.load_model();
    Context ctx = ws.context();
    CausalFormula phi = ws.phi();
    CausalityOptions opts{ws.common.budget};
    const char* name = sufficient_mode ? "suffcause" : "cause";

    Json j;
    j["command"] = name;
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"context", ws.context_text},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text}});

    if (!ws.candidate_text.empty()) {
        CauseVerdict v =
            check_actual_cause(Situation{ws.model(), ctx}, ws.candidate(), phi, opts);
        bool verdict = sufficient_mode ? v.ac1 && v.ac2.has_value()
                                       : v.classification == CauseClass::ActualCause;
        j["verdict"] = verdict;
        j["classification"] = cause_class_name(v.classification);
        j["clauses"] = {{"ac1", v.ac1}, {"ac2", v.ac2.has_value()}, {"ac3", v.ac3}};
        if (v.ac2) j["witnesses"] = Json::array({witness_json(ws.model(), *v.ac2)});
        std::string text = std::string(verdict ? "true" : "false") + " (" +
                           cause_class_name(v.classification) + "; AC1=" +
                           (v.ac1 ? "1" : "0") + " AC2=" + (v.ac2 ? "1" : "0") +
                           " AC3=" + (v.ac3 ? "1" : "0") + ")";
        if (v.ac2) text += "\n" + witness_text(ws.model(), *v.ac2);
        emit(ws.common, out, j, text);
        return 0;
    }

    std::vector<CauseVerdict> found =
        sufficient_mode
            ? enumerate_sufficient_causes(Situation{ws.model(), ctx}, phi, ws.common.max_width, opts)
            : enumerate_actual_causes(Situation{ws.model(), ctx}, phi, ws.common.max_width, opts);
    Json arr = Json::array();
    std::string text;
    for (const CauseVerdict& v : found) {
        arr.push_back(verdict_json(ws.model(), v));
        if (!text.empty()) text += "\n";
        text += print_conjunctive_event(v.candidate);
        text += "  [";
        text += cause_class_name(v.classification);
        text += "]";
    }
    j["values"] = {{"causes", arr}};
    emit(ws.common, out, j, found.empty() ? "(none)" : text);
    return 0;
}

int cmd_explain(Workspace& ws, std::ostream& out) {
    ws.load_model();
    EpistemicState state = ws.state();
    CausalFormula phi = ws.phi();
    ExplanationOptions opts = ws.explanation_options();

    Json j;
    j["command"] = "explain";
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"k", ws.k_ref},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text}});

    if (!ws.candidate_text.empty()) {
        ExplanationReport r = check_explanation(state, ws.candidate(), phi, opts);
        j["verdict"] = r.verdict;
        Json clauses = {{"ex1", r.ex1}, {"ex2", r.ex2}, {"ex3", r.ex3}, {"ex4", r.ex4}};
        if (r.actual_ok) clauses["actual"] = *r.actual_ok;
        j["clauses"] = clauses;
        j["values"] = {{"failing_contexts", context_list_json(ws.model(), r.failing_contexts)}};
        std::string text = std::string(r.verdict ? "true" : "false") + " (EX1=" +
                           (r.ex1 ? "1" : "0") + " EX2=" + (r.ex2 ? "1" : "0") + " EX3=" +
                           (r.ex3 ? "1" : "0") + " EX4=" + (r.ex4 ? "1" : "0") + ")";
        for (const Context& c : r.failing_contexts)
            text += "\n  not sufficient at: " + ws.model().context_to_string(c);
        emit(ws.common, out, j, text);
        return 0;
    }

    EnumerateExplanationsOptions eopts;
    static_cast<ExplanationOptions&>(eopts) = opts;
    std::vector<ConjunctiveEvent> found =
        enumerate_explanations(state, phi, ws.common.max_width, eopts);
    Json arr = Json::array();
    std::string text;
    for (const ConjunctiveEvent& e : found) {
        arr.push_back(print_conjunctive_event(e));
        if (!text.empty()) text += "\n";
        text += print_conjunctive_event(e);
    }
    j["values"] = {{"explanations", arr}};
    emit(ws.common, out, j, found.empty() ? "(none)" : text);
    return 0;
}

int cmd_partial(Workspace& ws, std::ostream& out) {
    ws.load_model();
    EpistemicState state = ws.state();
    const PriorState* prior_ptr = nullptr;
    std::optional<PriorState> prior;
    if (!ws.prior_k_ref.empty()) {
        prior = ws.prior();
        prior_ptr = &*prior;
    }
    PartialExplanationReport r =
        partial_report(state, prior_ptr, ws.candidate(), ws.phi(), ws.explanation_options());

    Json values;
    values["core"] = context_list_json(ws.model(), r.core);
    values["goodness"] = format_rational(r.goodness);
    values["probability_of_explanation"] = format_rational(r.probability_of_explanation);
    if (r.power) values["power"] = format_rational(*r.power);
    if (r.gardenfors) values["gardenfors_power"] = format_rational(*r.gardenfors);
    values["core_is_explanation"] = r.core_is_explanation;
    if (!r.core_failure.empty()) values["core_failure"] = r.core_failure;

    Json j;
    j["command"] = "partial";
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"k", ws.k_ref},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text}});
    j["values"] = values;

    std::string text = "goodness = " + format_rational(r.goodness);
    text += "\nprobability = " + format_rational(r.probability_of_explanation);
    if (r.power) text += "\npower = " + format_rational(*r.power);
    if (r.gardenfors) text += "\ngardenfors power = " + format_rational(*r.gardenfors);
    text += "\ncore (" + std::to_string(r.core.size()) + " contexts):";
    for (const Context& c : r.core) text += "\n  " + ws.model().context_to_string(c);
    if (!r.core_is_explanation)
        text += "\nnote: candidate is not an explanation relative to the core (" +
                r.core_failure + ")";
    emit(ws.common, out, j, text);
    return 0;
}

int cmd_goodness(Workspace& ws, std::ostream& out) {
    ws.load_model();
    Rational g = goodness(ws.state(), ws.candidate(), ws.phi(), ws.explanation_options());
    Json j;
    j["command"] = "goodness";
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"k", ws.k_ref},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text}});
    j["values"] = {{"goodness", format_rational(g)}};
    emit(ws.common, out, j, format_rational(g));
    return 0;
}

int cmd_power(Workspace& ws, std::ostream& out) {
    ws.load_model();
    if (ws.measure != "causal" && ws.measure != "gardenfors")
        raise(ErrorCode::UsageError, "--measure must be 'causal' or 'gardenfors'");
    EpistemicState state = ws.state();
    PriorState prior = ws.prior();
    Rational p = ws.measure == "causal"
                     ? explanatory_power(prior, state, ws.candidate(), ws.phi(),
                                         ws.explanation_options())
                     : gardenfors_power(prior, state, ws.candidate(), ws.phi(),
                                        ws.explanation_options());
    Json j;
    j["command"] = "power";
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"k", ws.k_ref},
                               {"prior_k", ws.prior_k_ref},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text},
                               {"measure", ws.measure}});
    j["values"] = {{"power", format_rational(p)}};
    emit(ws.common, out, j, format_rational(p));
    return 0;
}

int cmd_general_explain(Workspace& ws, std::ostream& out) {
    std::vector<RawSituation> raw = parse_situations_file(load_text(ws.situations_ref));
    if (raw.empty()) raise(ErrorCode::UsageError, "the situations file is empty");

    std::vector<std::pair<CausalModel, Context>> situations;
    std::optional<std::vector<Rational>> weights;
    for (const RawSituation& rs : raw) {
        ParsedModelDocument doc = parse_model_document(load_text(rs.model_ref));
        Context ctx = doc.model.make_context(rs.bindings);
        situations.emplace_back(std::move(doc.model), std::move(ctx));
        if (rs.weight) {
            if (!weights) weights.emplace();
            weights->push_back(*rs.weight);
        }
    }
    if (weights && weights->size() != situations.size())
        raise(ErrorCode::UsageError, "either all situations carry weights or none");
    SituationSet set(std::move(situations), std::move(weights));

    CausalFormula psi = ws.psi_characterizes_ref.empty()
                            ? parse_formula(ws.psi_text)
                            : characterizing_formula(
                                  parse_model_document(load_text(ws.psi_characterizes_ref)).model);
    CausalFormula phi = parse_formula(ws.phi_text);
    ConjunctiveEvent event = as_conjunctive_event(parse_formula(ws.candidate_text));

    std::vector<CausalFormula> hypotheses;
    if (!ws.psi_set_ref.empty()) {
        std::string text = load_text(ws.psi_set_ref);
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            hypotheses.push_back(parse_formula(line));
        }
    } else {
        hypotheses.push_back(psi);
        CausalFormula top = CausalFormula::make_constant(true);
        if (!(psi == top)) hypotheses.push_back(top);
    }

    GeneralExplanationReport r = check_general_explanation(set, GeneralExplanation{psi, event},
                                                           phi, hypotheses,
                                                           CausalityOptions{ws.common.budget});
    Json j;
    j["command"] = "general-explain";
    j["inputs"] = inputs_json({{"situations", ws.situations_ref},
                               {"psi", print_formula(r.candidate.psi)},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text}});
    j["verdict"] = r.verdict;
    j["clauses"] = {{"ex1", r.ex1}, {"ex2", r.ex2}, {"ex3", r.ex3}, {"ex4", r.ex4}};
    std::string text = std::string(r.verdict ? "true" : "false") + " (EX1=" +
                       (r.ex1 ? "1" : "0") + " EX2=" + (r.ex2 ? "1" : "0") + " EX3=" +
                       (r.ex3 ? "1" : "0") + " EX4=" + (r.ex4 ? "1" : "0") + ")";
    emit(ws.common, out, j, text);
    return 0;
}

int cmd_prob(Workspace& ws, std::ostream& out) {
    ws.load_model();
    ProbabilisticCausalModel pmodel = ws.document.to_probabilistic();
    Rational p;
    if (ws.want_cause) {
        if (ws.candidate_text.empty())
            raise(ErrorCode::UsageError, "--cause mode needs --candidate");
        p = probability_of_cause(pmodel, ws.candidate(), ws.phi(),
                                 CausalityOptions{ws.common.budget});
    } else {
        p = probability_of_formula(pmodel, ws.phi());
    }
    Json j;
    j["command"] = "prob";
    j["inputs"] = inputs_json({{"model", ws.model_ref},
                               {"phi", ws.phi_text},
                               {"candidate", ws.candidate_text},
                               {"mode", ws.want_cause ? "cause" : "formula"}});
    j["values"] = {{"probability", format_rational(p)}};
    emit(ws.common, out, j, format_rational(p));
    return 0;
}

int cmd_fixtures(Workspace& ws, std::ostream& out) {
    if (!ws.show_fixture.empty()) {
        auto text = find_fixture(ws.show_fixture);
        if (!text) raise(ErrorCode::UsageError, "no fixture named '" + ws.show_fixture + "'");
        Json j;
        j["command"] = "fixtures";
        j["inputs"] = inputs_json({{"show", ws.show_fixture}});
        j["values"] = {{"text", *text}};
        emit(ws.common, out, j, *text);
        return 0;
    }
    std::vector<std::string> names = fixture_names();
    Json j;
    j["command"] = "fixtures";
    j["inputs"] = Json::object();
    j["values"] = {{"fixtures", names}};
    std::string text;
    for (const std::string& n : names) {
        if (!text.empty()) text += "\n";
        text += n;
    }
    emit(ws.common, out, j, text);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Workspace ws;
    CLI::App app{"finite structural causal models: counterfactuals, actual causes, explanations"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", ws.common.json, "machine-readable output");
        cmd->add_option("--budget", ws.common.budget, "formula-evaluation budget");
        cmd->add_option("--max-width", ws.common.max_width, "candidate width bound");
        cmd->add_option("--require-actual", ws.common.require_actual,
                        "actual-world context the candidate must satisfy");
        cmd->add_flag("--require-actual-in-k", ws.common.require_actual_in_k,
                      "the actual context must also belong to K");
    };

    auto* eval = app.add_subcommand("eval", "evaluate a formula at (model, context)");
    eval->add_option("model", ws.model_ref)->required();
    eval->add_option("--context", ws.context_text)->required();
    eval->add_option("--formula", ws.formula_text)->required();
    add_common(eval);

    auto* solve = app.add_subcommand("solve", "unique solution of the equations");
    solve->add_option("model", ws.model_ref)->required();
    solve->add_option("--context", ws.context_text)->required();
    add_common(solve);

    auto* cause = app.add_subcommand("cause", "check or enumerate actual causes");
    cause->add_option("model", ws.model_ref)->required();
    cause->add_option("--context", ws.context_text)->required();
    cause->add_option("--phi", ws.phi_text)->required();
    auto* cause_cand = cause->add_option("--candidate", ws.candidate_text);
    cause->add_flag("--enumerate", ws.enumerate)->excludes(cause_cand);
    add_common(cause);

    auto* suffcause = app.add_subcommand("suffcause", "check or enumerate sufficient causes");
    suffcause->add_option("model", ws.model_ref)->required();
    suffcause->add_option("--context", ws.context_text)->required();
    suffcause->add_option("--phi", ws.phi_text)->required();
    auto* suff_cand = suffcause->add_option("--candidate", ws.candidate_text);
    suffcause->add_flag("--enumerate", ws.enumerate)->excludes(suff_cand);
    add_common(suffcause);

    auto* explain = app.add_subcommand("explain", "check or enumerate explanations over K");
    explain->add_option("model", ws.model_ref)->required();
    explain->add_option("--k", ws.k_ref)->required();
    explain->add_option("--weights", ws.weights_ref);
    explain->add_option("--phi", ws.phi_text)->required();
    auto* explain_cand = explain->add_option("--candidate", ws.candidate_text);
    explain->add_flag("--enumerate", ws.enumerate)->excludes(explain_cand);
    add_common(explain);

    auto* partial = app.add_subcommand("partial", "partial-explanation core and numbers");
    partial->add_option("model", ws.model_ref)->required();
    partial->add_option("--k", ws.k_ref)->required();
    partial->add_option("--weights", ws.weights_ref)->required();
    partial->add_option("--prior-k", ws.prior_k_ref);
    partial->add_option("--prior-weights", ws.prior_weights_ref);
    partial->add_option("--phi", ws.phi_text)->required();
    partial->add_option("--candidate", ws.candidate_text)->required();
    add_common(partial);

    auto* goodness_cmd = app.add_subcommand("goodness", "Pr(core | candidate)");
    goodness_cmd->add_option("model", ws.model_ref)->required();
    goodness_cmd->add_option("--k", ws.k_ref)->required();
    goodness_cmd->add_option("--weights", ws.weights_ref)->required();
    goodness_cmd->add_option("--phi", ws.phi_text)->required();
    goodness_cmd->add_option("--candidate", ws.candidate_text)->required();
    add_common(goodness_cmd);

    auto* power = app.add_subcommand("power", "explanatory power against a prior");
    power->add_option("model", ws.model_ref)->required();
    power->add_option("--k", ws.k_ref)->required();
    power->add_option("--weights", ws.weights_ref);
    power->add_option("--prior-k", ws.prior_k_ref)->required();
    power->add_option("--prior-weights", ws.prior_weights_ref)->required();
    power->add_option("--phi", ws.phi_text)->required();
    power->add_option("--candidate", ws.candidate_text)->required();
    power->add_option("--measure", ws.measure, "causal|gardenfors");
    add_common(power);

    auto* general = app.add_subcommand("general-explain",
                                       "explanations over situations with model uncertainty");
    general->add_option("--situations", ws.situations_ref)->required();
    general->add_option("--psi", ws.psi_text);
    general->add_option("--psi-characterizes", ws.psi_characterizes_ref,
                        "use the characterizing formula of this model as psi");
    general->add_option("--psi-set", ws.psi_set_ref, "hypothesis set file (one formula per line)");
    general->add_option("--phi", ws.phi_text)->required();
    general->add_option("--candidate", ws.candidate_text)->required();
    add_common(general);

    auto* prob = app.add_subcommand("prob", "probability of a formula or of causing it");
    prob->add_option("model", ws.model_ref)->required();
    prob->add_option("--phi", ws.phi_text)->required();
    prob->add_option("--candidate", ws.candidate_text);
    prob->add_flag("--cause", ws.want_cause, "probability that the candidate causes phi");
    add_common(prob);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "list bundled example models");
    fixtures_cmd->add_option("--show", ws.show_fixture, "print one fixture");
    add_common(fixtures_cmd);

    std::vector<const char*> argv;
    argv.push_back("causalis");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(ws, out);
        if (solve->parsed()) return cmd_solve(ws, out);
        if (cause->parsed()) return cmd_cause(ws, out, false);
        if (suffcause->parsed()) return cmd_cause(ws, out, true);
        if (explain->parsed()) return cmd_explain(ws, out);
        if (partial->parsed()) return cmd_partial(ws, out);
        if (goodness_cmd->parsed()) return cmd_goodness(ws, out);
        if (power->parsed()) return cmd_power(ws, out);
        if (general->parsed()) return cmd_general_explain(ws, out);
        if (prob->parsed()) return cmd_prob(ws, out);
        if (fixtures_cmd->parsed()) return cmd_fixtures(ws, out);
        err << "error: no command\n";
        return 2;
    } catch (const Error& e) {
        int code = e.code() == ErrorCode::SearchBudgetExceeded ? 3 : 2;
        if (ws.common.json) {
            Json j;
            j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
            if (code == 3) {
                j["error"]["budget_limit"] = e.budget_limit;
                j["error"]["budget_used"] = e.budget_used;
            }
            err << j.dump(2) << "\n";
        } else {
            err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        }
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace causalis::cli
