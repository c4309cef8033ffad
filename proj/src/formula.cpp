#include "causalis/formula.hpp"

#include <algorithm>
#include <cctype>

namespace causalis {

// ---------------------------------------------------------------------------
// AST construction

BoolExpr BoolExpr::make_constant(bool value) {
    BoolExpr e;
    e.kind = Kind::Constant;
    e.constant = value;
    return e;
}
BoolExpr BoolExpr::make_event(PrimitiveEvent event) {
    BoolExpr e;
    e.kind = Kind::Event;
    e.event = std::move(event);
    return e;
}
BoolExpr BoolExpr::make_not(BoolExpr child) {
    BoolExpr e;
    e.kind = Kind::Not;
    e.children.push_back(std::move(child));
    return e;
}
BoolExpr BoolExpr::make_and(BoolExpr lhs, BoolExpr rhs) {
    BoolExpr e;
    e.kind = Kind::And;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}
BoolExpr BoolExpr::make_or(BoolExpr lhs, BoolExpr rhs) {
    BoolExpr e;
    e.kind = Kind::Or;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

CausalFormula CausalFormula::make_atom(std::vector<InterventionBinding> intervention,
                                       BoolExpr body) {
    CausalFormula f;
    f.kind = Kind::Atom;
    f.intervention = std::move(intervention);
    f.body = std::move(body);
    return f;
}
CausalFormula CausalFormula::make_constant(bool value) {
    return make_atom({}, BoolExpr::make_constant(value));
}
CausalFormula CausalFormula::make_event(PrimitiveEvent event) {
    return make_atom({}, BoolExpr::make_event(std::move(event)));
}
CausalFormula CausalFormula::make_not(CausalFormula child) {
    CausalFormula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(child));
    return f;
}
CausalFormula CausalFormula::make_and(CausalFormula lhs, CausalFormula rhs) {
    CausalFormula f;
    f.kind = Kind::And;
    f.children.push_back(std::move(lhs));
    f.children.push_back(std::move(rhs));
    return f;
}
CausalFormula CausalFormula::make_or(CausalFormula lhs, CausalFormula rhs) {
    CausalFormula f;
    f.kind = Kind::Or;
    f.children.push_back(std::move(lhs));
    f.children.push_back(std::move(rhs));
    return f;
}

ConjunctiveEvent make_conjunctive_event(std::vector<PrimitiveEvent> events) {
    for (size_t i = 0; i < events.size(); ++i)
        for (size_t j = i + 1; j < events.size(); ++j)
            if (events[i].variable == events[j].variable)
                raise(ErrorCode::InvalidModel,
                      "conjunct mentions " + events[i].variable + " twice");
    return ConjunctiveEvent{std::move(events)};
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class TokKind { Word, LBracket, RBracket, LParen, RParen, Comma, And, Or, Not, Eq, Arrow, End };

struct Token {
    TokKind kind;
    std::string text;
    SourcePos pos;
};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
           c == '-';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (offset_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[offset_])))
            bump();
        current_.pos = {line_, col_};
        if (offset_ >= text_.size()) {
            current_.kind = TokKind::End;
            current_.text.clear();
            return;
        }
        char c = text_[offset_];
        switch (c) {
            case '[': current_ = {TokKind::LBracket, "[", current_.pos}; bump(); return;
            case ']': current_ = {TokKind::RBracket, "]", current_.pos}; bump(); return;
            case '(': current_ = {TokKind::LParen, "(", current_.pos}; bump(); return;
            case ')': current_ = {TokKind::RParen, ")", current_.pos}; bump(); return;
            case ',': current_ = {TokKind::Comma, ",", current_.pos}; bump(); return;
            case '&': current_ = {TokKind::And, "&", current_.pos}; bump(); return;
            case '|': current_ = {TokKind::Or, "|", current_.pos}; bump(); return;
            case '!': current_ = {TokKind::Not, "!", current_.pos}; bump(); return;
            case '=': current_ = {TokKind::Eq, "=", current_.pos}; bump(); return;
            default: break;
        }
        if (c == '<' && offset_ + 1 < text_.size() && text_[offset_ + 1] == '-') {
            current_ = {TokKind::Arrow, "<-", current_.pos};
            bump();
            bump();
            return;
        }
        if (word_char(c)) {
            std::string word;
            // '-' only joins a word after '<', handled above; inside words it
            // supports signed numerals like -1.
            while (offset_ < text_.size() && word_char(text_[offset_])) {
                word += text_[offset_];
                bump();
            }
            current_ = {TokKind::Word, std::move(word), current_.pos};
            return;
        }
        raise_at(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'",
                 current_.pos);
    }

    void bump() {
        if (text_[offset_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++offset_;
    }

    const std::string& text_;
    size_t offset_ = 0;
    int line_ = 1, col_ = 1;
    Token current_{TokKind::End, "", {1, 1}};
};

class FormulaParser {
public:
    FormulaParser(const std::string& text, const Signature* signature)
        : lexer_(text), sig_(signature) {}

    CausalFormula parse() {
        CausalFormula f = parse_or();
        expect(TokKind::End, "end of formula");
        return f;
    }

private:
    CausalFormula parse_or() {
        CausalFormula lhs = parse_and();
        while (lexer_.peek().kind == TokKind::Or) {
            lexer_.take();
            lhs = CausalFormula::make_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    CausalFormula parse_and() {
        CausalFormula lhs = parse_unary();
        while (lexer_.peek().kind == TokKind::And) {
            lexer_.take();
            lhs = CausalFormula::make_and(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    CausalFormula parse_unary() {
        if (lexer_.peek().kind == TokKind::Not) {
            lexer_.take();
            return CausalFormula::make_not(parse_unary());
        }
        return parse_atom();
    }

    CausalFormula parse_atom() {
        const Token& t = lexer_.peek();
        switch (t.kind) {
            case TokKind::LBracket: {
                lexer_.take();
                std::vector<InterventionBinding> binds;
                binds.push_back(parse_bind());
                while (lexer_.peek().kind == TokKind::Comma) {
                    lexer_.take();
                    binds.push_back(parse_bind());
                }
                for (size_t i = 0; i < binds.size(); ++i)
                    for (size_t j = i + 1; j < binds.size(); ++j)
                        if (binds[i].variable == binds[j].variable)
                            raise(ErrorCode::DuplicateInterventionTarget,
                                  "intervention sets " + binds[i].variable + " twice");
                expect(TokKind::RBracket, "']'");
                expect(TokKind::LParen, "'('");
                BoolExpr body = parse_bool_or();
                expect(TokKind::RParen, "')'");
                return CausalFormula::make_atom(std::move(binds), std::move(body));
            }
            case TokKind::LParen: {
                lexer_.take();
                CausalFormula inner = parse_or();
                expect(TokKind::RParen, "')'");
                return inner;
            }
            case TokKind::Word: {
                Token word = lexer_.take();
                if (word.text == "TRUE") return CausalFormula::make_constant(true);
                if (word.text == "FALSE") return CausalFormula::make_constant(false);
                return CausalFormula::make_event(parse_event_tail(word));
            }
            default:
                raise_at(ErrorCode::SyntaxError, "expected a formula atom, got '" + t.text + "'",
                         t.pos);
        }
    }

    BoolExpr parse_bool_or() {
        BoolExpr lhs = parse_bool_and();
        while (lexer_.peek().kind == TokKind::Or) {
            lexer_.take();
            lhs = BoolExpr::make_or(std::move(lhs), parse_bool_and());
        }
        return lhs;
    }
    BoolExpr parse_bool_and() {
        BoolExpr lhs = parse_bool_unary();
        while (lexer_.peek().kind == TokKind::And) {
            lexer_.take();
            lhs = BoolExpr::make_and(std::move(lhs), parse_bool_unary());
        }
        return lhs;
    }
    BoolExpr parse_bool_unary() {
        if (lexer_.peek().kind == TokKind::Not) {
            lexer_.take();
            return BoolExpr::make_not(parse_bool_unary());
        }
        const Token& t = lexer_.peek();
        if (t.kind == TokKind::LParen) {
            lexer_.take();
            BoolExpr inner = parse_bool_or();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        if (t.kind == TokKind::Word) {
            Token word = lexer_.take();
            if (word.text == "TRUE") return BoolExpr::make_constant(true);
            if (word.text == "FALSE") return BoolExpr::make_constant(false);
            return BoolExpr::make_event(parse_event_tail(word));
        }
        raise_at(ErrorCode::SyntaxError, "expected an event, got '" + t.text + "'", t.pos);
    }

    PrimitiveEvent parse_event_tail(const Token& name) {
        expect(TokKind::Eq, "'='");
        std::string value = parse_value();
        if (sig_) {
            VarRef ref = sig_->require(name.text);
            if (ref.kind != VarKind::Endogenous)
                raise(ErrorCode::InvalidModel,
                      name.text + " is exogenous; primitive events are over endogenous variables");
            sig_->value_index(ref, value);  // range check
        }
        return PrimitiveEvent{name.text, std::move(value)};
    }

    InterventionBinding parse_bind() {
        Token name = expect(TokKind::Word, "a variable name");
        expect(TokKind::Arrow, "'<-'");
        std::string value = parse_value();
        if (sig_) {
            VarRef ref = sig_->require(name.text);
            if (ref.kind != VarKind::Endogenous)
                raise(ErrorCode::InvalidModel,
                      name.text + " is exogenous; interventions may only set endogenous variables");
            sig_->value_index(ref, value);
        }
        return InterventionBinding{name.text, std::move(value)};
    }

    // A VALUE is a word or a tuple like (1,1), folded into one symbol.
    std::string parse_value() {
        const Token& t = lexer_.peek();
        if (t.kind == TokKind::Word) return lexer_.take().text;
        if (t.kind == TokKind::LParen) {
            lexer_.take();
            std::string out = "(";
            out += parse_value();
            while (lexer_.peek().kind == TokKind::Comma) {
                lexer_.take();
                out += ",";
                out += parse_value();
            }
            expect(TokKind::RParen, "')'");
            out += ")";
            return out;
        }
        raise_at(ErrorCode::SyntaxError, "expected a value, got '" + t.text + "'", t.pos);
    }

    Token expect(TokKind kind, const std::string& what) {
        if (lexer_.peek().kind != kind)
            raise_at(ErrorCode::SyntaxError,
                     "expected " + what + ", got '" + lexer_.peek().text + "'",
                     lexer_.peek().pos);
        return lexer_.take();
    }

    Lexer lexer_;
    const Signature* sig_;
};

}  // namespace

CausalFormula parse_formula(const std::string& text, const Signature& signature) {
    return FormulaParser(text, &signature).parse();
}

CausalFormula parse_formula(const std::string& text) {
    return FormulaParser(text, nullptr).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int bool_precedence(BoolExpr::Kind k) {
    switch (k) {
        case BoolExpr::Kind::Or: return 1;
        case BoolExpr::Kind::And: return 2;
        case BoolExpr::Kind::Not: return 3;
        default: return 4;
    }
}
int causal_precedence(CausalFormula::Kind k) {
    switch (k) {
        case CausalFormula::Kind::Or: return 1;
        case CausalFormula::Kind::And: return 2;
        case CausalFormula::Kind::Not: return 3;
        default: return 4;
    }
}

void print_bool(const BoolExpr& e, int parent_prec, bool right_operand, std::string& out) {
    int prec = bool_precedence(e.kind);
    bool parens = prec < parent_prec || (prec == parent_prec && right_operand && prec < 3);
    if (parens) out += "(";
    switch (e.kind) {
        case BoolExpr::Kind::Constant: out += e.constant ? "TRUE" : "FALSE"; break;
        case BoolExpr::Kind::Event:
            out += e.event.variable;
            out += "=";
            out += e.event.value;
            break;
        case BoolExpr::Kind::Not:
            out += "!";
            print_bool(e.children[0], prec, false, out);
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            print_bool(e.children[0], prec, false, out);
            out += e.kind == BoolExpr::Kind::And ? " & " : " | ";
            print_bool(e.children[1], prec, true, out);
            break;
    }
    if (parens) out += ")";
}

void print_causal(const CausalFormula& f, int parent_prec, bool right_operand, std::string& out) {
    int prec = causal_precedence(f.kind);
    bool parens = prec < parent_prec || (prec == parent_prec && right_operand && prec < 3);
    if (parens) out += "(";
    switch (f.kind) {
        case CausalFormula::Kind::Atom:
            if (f.intervention.empty()) {
                if (f.body.kind == BoolExpr::Kind::Constant ||
                    f.body.kind == BoolExpr::Kind::Event) {
                    print_bool(f.body, 0, false, out);
                } else {
                    // Bare atoms with composite bodies are not grammar-reachable;
                    // print the body (reparsing yields the equivalent causal tree).
                    out += "(";
                    print_bool(f.body, 0, false, out);
                    out += ")";
                }
            } else {
                out += "[";
                for (size_t i = 0; i < f.intervention.size(); ++i) {
                    if (i) out += ", ";
                    out += f.intervention[i].variable;
                    out += "<-";
                    out += f.intervention[i].value;
                }
                out += "](";
                print_bool(f.body, 0, false, out);
                out += ")";
            }
            break;
        case CausalFormula::Kind::Not:
            out += "!";
            print_causal(f.children[0], prec, false, out);
            break;
        case CausalFormula::Kind::And:
        case CausalFormula::Kind::Or:
            print_causal(f.children[0], prec, false, out);
            out += f.kind == CausalFormula::Kind::And ? " & " : " | ";
            print_causal(f.children[1], prec, true, out);
            break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string print_formula(const CausalFormula& formula) {
    std::string out;
    print_causal(formula, 0, false, out);
    return out;
}

std::string print_formula(const BoolExpr& expr) {
    std::string out;
    print_bool(expr, 0, false, out);
    return out;
}

std::string print_conjunctive_event(const ConjunctiveEvent& event) {
    if (event.empty()) return "TRUE";
    std::string out;
    for (size_t i = 0; i < event.events.size(); ++i) {
        if (i) out += " & ";
        out += event.events[i].variable;
        out += "=";
        out += event.events[i].value;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conversions

CausalFormula conjunct_to_formula(const ConjunctiveEvent& event) {
    if (event.empty()) return CausalFormula::make_constant(true);
    CausalFormula f = CausalFormula::make_event(event.events[0]);
    for (size_t i = 1; i < event.events.size(); ++i)
        f = CausalFormula::make_and(std::move(f), CausalFormula::make_event(event.events[i]));
    return f;
}

namespace {

void collect_conjuncts(const CausalFormula& f, std::vector<PrimitiveEvent>& out) {
    switch (f.kind) {
        case CausalFormula::Kind::And:
            collect_conjuncts(f.children[0], out);
            collect_conjuncts(f.children[1], out);
            return;
        case CausalFormula::Kind::Atom:
            if (f.intervention.empty()) {
                if (f.body.kind == BoolExpr::Kind::Event) {
                    out.push_back(f.body.event);
                    return;
                }
                if (f.body.kind == BoolExpr::Kind::Constant && f.body.constant) return;
            }
            [[fallthrough]];
        default:
            raise(ErrorCode::DisjunctiveCandidate,
                  "candidates must be conjunctions of primitive events; disjunctive "
                  "explanations are banned — model the disjunction as a named variable "
                  "instead");
    }
}

}  // namespace

ConjunctiveEvent as_conjunctive_event(const CausalFormula& formula) {
    std::vector<PrimitiveEvent> events;
    collect_conjuncts(formula, events);
    return make_conjunctive_event(std::move(events));
}

namespace {
void collect_bool_vars(const BoolExpr& e, std::set<std::string>& out) {
    if (e.kind == BoolExpr::Kind::Event) out.insert(e.event.variable);
    for (const BoolExpr& c : e.children) collect_bool_vars(c, out);
}
}  // namespace

std::set<std::string> formula_variables(const CausalFormula& formula) {
    std::set<std::string> out;
    if (formula.kind == CausalFormula::Kind::Atom) {
        for (const InterventionBinding& b : formula.intervention) out.insert(b.variable);
        collect_bool_vars(formula.body, out);
    }
    for (const CausalFormula& c : formula.children) {
        auto sub = formula_variables(c);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

CompiledFormula::CompiledFormula(const CausalFormula& formula, const CausalModel& model)
    : model_(&model) {
    root_ = compile(formula);
}

int CompiledFormula::compile(const CausalFormula& f) {
    const Signature& sig = model_->signature();
    if (f.kind == CausalFormula::Kind::Atom) {
        Atom atom;
        atom.intervention = Assignment::unbound(sig.endo_count());
        for (const InterventionBinding& b : f.intervention) {
            VarRef ref = sig.require(b.variable);
            if (ref.kind != VarKind::Endogenous)
                raise(ErrorCode::InvalidModel,
                      b.variable + " is exogenous; interventions may only set endogenous variables");
            if (atom.intervention.values[ref.index] >= 0)
                raise(ErrorCode::DuplicateInterventionTarget,
                      "intervention sets " + b.variable + " twice");
            atom.intervention.values[ref.index] = sig.value_index(ref, b.value);
        }
        atom.body = compile_body(f.body);
        atoms_.push_back(std::move(atom));
        nodes_.push_back({f.kind, static_cast<int>(atoms_.size()) - 1, -1, -1});
        return static_cast<int>(nodes_.size()) - 1;
    }
    int lhs = compile(f.children[0]);
    int rhs = f.children.size() > 1 ? compile(f.children[1]) : -1;
    nodes_.push_back({f.kind, -1, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
}

int CompiledFormula::compile_body(const BoolExpr& e) {
    const Signature& sig = model_->signature();
    BNode node;
    node.kind = e.kind;
    switch (e.kind) {
        case BoolExpr::Kind::Constant:
            node.constant = e.constant;
            break;
        case BoolExpr::Kind::Event: {
            VarRef ref = sig.require(e.event.variable);
            if (ref.kind != VarKind::Endogenous)
                raise(ErrorCode::InvalidModel,
                      e.event.variable +
                          " is exogenous; primitive events are over endogenous variables");
            node.var = ref.index;
            node.val = sig.value_index(ref, e.event.value);
            break;
        }
        case BoolExpr::Kind::Not:
            node.lhs = compile_body(e.children[0]);
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            node.lhs = compile_body(e.children[0]);
            node.rhs = compile_body(e.children[1]);
            break;
    }
    bnodes_.push_back(node);
    return static_cast<int>(bnodes_.size()) - 1;
}

bool CompiledFormula::evaluate(const Context& context, const Assignment* outer) const {
    std::vector<int> scratch;
    return eval_node(root_, context, outer, scratch);
}

bool CompiledFormula::eval_node(int index, const Context& context, const Assignment* outer,
                                std::vector<int>& scratch) const {
    const Node& node = nodes_[index];
    switch (node.kind) {
        case CausalFormula::Kind::Atom: {
            const Atom& atom = atoms_[node.atom];
            const Assignment* intervention = &atom.intervention;
            Assignment merged;
            if (outer) {
                merged = *outer;
                for (size_t i = 0; i < merged.values.size(); ++i)
                    if (atom.intervention.values[i] >= 0)
                        merged.values[i] = atom.intervention.values[i];
                intervention = &merged;
            }
            model_->solve_values(context, intervention, scratch);
            return eval_body(atom.body, scratch);
        }
        case CausalFormula::Kind::Not:
            return !eval_node(node.lhs, context, outer, scratch);
        case CausalFormula::Kind::And:
            return eval_node(node.lhs, context, outer, scratch) &&
                   eval_node(node.rhs, context, outer, scratch);
        case CausalFormula::Kind::Or:
            return eval_node(node.lhs, context, outer, scratch) ||
                   eval_node(node.rhs, context, outer, scratch);
    }
    return false;
}

bool CompiledFormula::eval_body(int index, const std::vector<int>& solved) const {
    const BNode& node = bnodes_[index];
    switch (node.kind) {
        case BoolExpr::Kind::Constant: return node.constant;
        case BoolExpr::Kind::Event: return solved[node.var] == node.val;
        case BoolExpr::Kind::Not: return !eval_body(node.lhs, solved);
        case BoolExpr::Kind::And: return eval_body(node.lhs, solved) && eval_body(node.rhs, solved);
        case BoolExpr::Kind::Or: return eval_body(node.lhs, solved) || eval_body(node.rhs, solved);
    }
    return false;
}

bool evaluate(const Situation& situation, const CausalFormula& formula) {
    return CompiledFormula(formula, situation.model).evaluate(situation.context);
}

bool holds_conjunct(const Situation& situation, const ConjunctiveEvent& event) {
    const Signature& sig = situation.model.signature();
    Assignment solved = situation.model.solve(situation.context);
    for (const PrimitiveEvent& e : event.events) {
        VarRef ref = sig.require(e.variable);
        if (ref.kind != VarKind::Endogenous)
            raise(ErrorCode::InvalidModel,
                  e.variable + " is exogenous; primitive events are over endogenous variables");
        if (solved.values[ref.index] != sig.value_index(ref, e.value)) return false;
    }
    return true;
}

}  // namespace causalis
