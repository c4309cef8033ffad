#include "causalis/document.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace causalis {

namespace {

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' ||
           c == '-';
}

// Character scanner for one logical line of the DSL.
struct LineScanner {
    const std::string& text;
    size_t offset = 0;
    int line;

    LineScanner(const std::string& t, int line_number) : text(t), line(line_number) {}

    SourcePos pos() const { return {line, static_cast<int>(offset) + 1}; }

    void skip_space() {
        while (offset < text.size() && std::isspace(static_cast<unsigned char>(text[offset])))
            ++offset;
    }
    bool at_end() {
        skip_space();
        return offset >= text.size();
    }
    char peek() {
        skip_space();
        return offset < text.size() ? text[offset] : '\0';
    }
    bool accept(char c) {
        skip_space();
        if (offset < text.size() && text[offset] == c) {
            ++offset;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            raise_at(ErrorCode::SyntaxError, std::string("expected '") + c + "'", pos());
    }
    bool accept_arrow() {
        skip_space();
        if (offset + 1 < text.size() && text[offset] == '-' && text[offset + 1] == '>') {
            offset += 2;
            return true;
        }
        return false;
    }
    void expect_arrow() {
        if (!accept_arrow()) raise_at(ErrorCode::SyntaxError, "expected '->'", pos());
    }

    std::string word() {
        skip_space();
        // '->' must not be eaten as the start of a word.
        if (offset + 1 < text.size() && text[offset] == '-' && text[offset + 1] == '>')
            raise_at(ErrorCode::SyntaxError, "expected a name or value", pos());
        std::string out;
        while (offset < text.size() && word_char(text[offset])) {
            if (text[offset] == '-' && offset + 1 < text.size() && text[offset + 1] == '>') break;
            out += text[offset++];
        }
        if (out.empty()) raise_at(ErrorCode::SyntaxError, "expected a name or value", pos());
        return out;
    }

    // A value is a word or a tuple (v1,v2,...) folded into one symbol.
    std::string value() {
        skip_space();
        if (peek() != '(') return word();
        expect('(');
        std::string out = "(";
        out += value();
        while (accept(',')) {
            out += ",";
            out += value();
        }
        expect(')');
        out += ")";
        return out;
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    lines.push_back(current);
    return lines;
}

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::pair<std::string, std::string>> scan_bindings(LineScanner& scanner) {
    std::vector<std::pair<std::string, std::string>> out;
    for (;;) {
        std::string name = scanner.word();
        scanner.expect('=');
        std::string value = scanner.value();
        out.emplace_back(std::move(name), std::move(value));
        if (!scanner.accept(',')) break;
    }
    return out;
}

}  // namespace

ProbabilisticCausalModel ParsedModelDocument::to_probabilistic() const {
    if (!weights)
        raise(ErrorCode::MissingWeights, "the model document has no prob block");
    return ProbabilisticCausalModel(model, *weights);
}

ParsedModelDocument parse_model_document(const std::string& text) {
    RawModel raw;
    struct ProbLine {
        std::vector<std::pair<std::string, std::string>> bindings;
        Rational weight;
        int line;
    };
    std::vector<ProbLine> prob_lines;

    std::vector<std::string> lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string body = strip_comment(lines[li]);
        LineScanner scanner(body, static_cast<int>(li) + 1);
        if (scanner.at_end()) continue;
        std::string keyword = scanner.word();

        if (keyword == "exo" || keyword == "endo") {
            RawVariable var;
            var.name = scanner.word();
            scanner.expect(':');
            scanner.expect('{');
            var.values.push_back(scanner.value());
            while (scanner.accept(',')) var.values.push_back(scanner.value());
            scanner.expect('}');
            if (!scanner.at_end())
                raise_at(ErrorCode::SyntaxError, "trailing text after declaration", scanner.pos());
            (keyword == "exo" ? raw.exogenous : raw.endogenous).push_back(std::move(var));
        } else if (keyword == "eq") {
            RawEquation eq;
            eq.target = scanner.word();
            scanner.expect('(');
            if (!scanner.accept(')')) {
                eq.parents.push_back(scanner.word());
                while (scanner.accept(',')) eq.parents.push_back(scanner.word());
                scanner.expect(')');
            }
            scanner.expect(':');
            for (;;) {
                if (scanner.peek() == '(') {
                    RawRow row;
                    scanner.expect('(');
                    if (!scanner.accept(')')) {
                        row.inputs.push_back(scanner.value());
                        while (scanner.accept(',')) row.inputs.push_back(scanner.value());
                        scanner.expect(')');
                    }
                    scanner.expect_arrow();
                    row.output = scanner.value();
                    eq.rows.push_back(std::move(row));
                } else {
                    std::string word = scanner.word();
                    if (word != "default")
                        raise_at(ErrorCode::SyntaxError,
                                 "expected a row tuple or 'default', got '" + word + "'",
                                 scanner.pos());
                    if (eq.default_value)
                        raise_at(ErrorCode::SyntaxError, "two defaults in one equation",
                                 scanner.pos());
                    scanner.expect_arrow();
                    eq.default_value = scanner.value();
                }
                if (!scanner.accept(';')) break;
            }
            if (!scanner.at_end())
                raise_at(ErrorCode::SyntaxError, "trailing text after equation", scanner.pos());
            raw.equations.push_back(std::move(eq));
        } else if (keyword == "prob") {
            scanner.expect(':');
            ProbLine pl;
            pl.line = static_cast<int>(li) + 1;
            pl.bindings = scan_bindings(scanner);
            scanner.expect_arrow();
            std::string w = scanner.word();
            if (scanner.accept('/')) w += "/" + scanner.word();
            pl.weight = parse_rational(w);
            if (!scanner.at_end())
                raise_at(ErrorCode::SyntaxError, "trailing text after prob line", scanner.pos());
            prob_lines.push_back(std::move(pl));
        } else {
            raise_at(ErrorCode::SyntaxError,
                     "expected 'exo', 'endo', 'eq' or 'prob', got '" + keyword + "'",
                     {static_cast<int>(li) + 1, 1});
        }
    }

    ParsedModelDocument doc{validate_model(raw), std::nullopt};
    if (!prob_lines.empty()) {
        std::vector<Context> contexts = doc.model.enumerate_contexts();
        std::vector<Rational> weights(contexts.size(), Rational(0));
        std::vector<bool> seen(contexts.size(), false);
        for (const auto& pl : prob_lines) {
            Context ctx = doc.model.make_context(pl.bindings);
            auto it = std::find(contexts.begin(), contexts.end(), ctx);
            size_t index = static_cast<size_t>(it - contexts.begin());
            if (seen[index])
                raise_at(ErrorCode::SyntaxError, "two prob lines for one context",
                         {pl.line, 1});
            seen[index] = true;
            if (pl.weight < 0)
                raise_at(ErrorCode::SyntaxError, "weights must be nonnegative", {pl.line, 1});
            weights[index] = pl.weight;
        }
        Rational total = 0;
        for (const Rational& w : weights) total += w;
        if (total != 1)
            raise(ErrorCode::InvalidModel,
                  "prob block sums to " + format_rational(total) + ", expected 1");
        doc.weights = std::move(weights);
    }
    return doc;
}

std::string print_model_document(const ParsedModelDocument& document) {
    const CausalModel& model = document.model;
    const Signature& sig = model.signature();
    std::ostringstream out;

    auto print_var = [&](const char* kw, const Variable& v) {
        out << kw << " " << v.name << " : {";
        for (size_t i = 0; i < v.range.size(); ++i) {
            if (i) out << ", ";
            out << v.range[i];
        }
        out << "}\n";
    };
    for (const Variable& v : sig.exogenous()) print_var("exo", v);
    for (const Variable& v : sig.endogenous()) print_var("endo", v);

    for (int x = 0; x < sig.endo_count(); ++x) {
        const EquationTable& eq = model.equations()[static_cast<size_t>(x)];
        out << "eq " << sig.endogenous()[x].name << " (";
        for (size_t i = 0; i < eq.parents().size(); ++i) {
            if (i) out << ", ";
            out << sig.var(eq.parents()[i]).name;
        }
        out << "):";
        bool first = true;
        for (const auto& [key, value] : eq.rows()) {
            out << (first ? " " : " ; ");
            first = false;
            out << "(";
            for (size_t i = 0; i < key.size(); ++i) {
                if (i) out << ", ";
                out << sig.var(eq.parents()[i]).range[static_cast<size_t>(key[i])];
            }
            out << ") -> " << sig.endogenous()[x].range[static_cast<size_t>(value)];
        }
        if (eq.default_value()) {
            out << (first ? " " : " ; ");
            out << "default -> "
                << sig.endogenous()[x].range[static_cast<size_t>(*eq.default_value())];
        }
        out << "\n";
    }

    if (document.weights) {
        std::vector<Context> contexts = model.enumerate_contexts();
        for (size_t i = 0; i < contexts.size(); ++i) {
            if ((*document.weights)[i] == 0) continue;
            out << "prob: " << model.context_to_string(contexts[i]) << " -> "
                << format_rational((*document.weights)[i]) << "\n";
        }
    }
    return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_bindings(const std::string& text) {
    LineScanner scanner(text, 1);
    auto bindings = scan_bindings(scanner);
    if (!scanner.at_end())
        raise_at(ErrorCode::SyntaxError, "trailing text after bindings", scanner.pos());
    return bindings;
}

std::vector<Context> parse_context_file(const std::string& text, const CausalModel& model) {
    std::vector<Context> contexts;
    std::vector<std::string> lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string body = strip_comment(lines[li]);
        LineScanner scanner(body, static_cast<int>(li) + 1);
        if (scanner.at_end()) continue;
        contexts.push_back(model.make_context(scan_bindings(scanner)));
        if (!scanner.at_end())
            raise_at(ErrorCode::SyntaxError, "trailing text after context", scanner.pos());
    }
    return contexts;
}

WeightedContexts parse_weight_file(const std::string& text, const CausalModel& model) {
    WeightedContexts out;
    std::vector<std::string> lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string body = strip_comment(lines[li]);
        LineScanner scanner(body, static_cast<int>(li) + 1);
        if (scanner.at_end()) continue;
        out.contexts.push_back(model.make_context(scan_bindings(scanner)));
        scanner.expect_arrow();
        std::string w = scanner.word();
        if (scanner.accept('/')) w += "/" + scanner.word();
        out.weights.push_back(parse_rational(w));
        if (!scanner.at_end())
            raise_at(ErrorCode::SyntaxError, "trailing text after weight", scanner.pos());
    }
    return out;
}

std::vector<RawSituation> parse_situations_file(const std::string& text) {
    std::vector<RawSituation> out;
    std::vector<std::string> lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string body = strip_comment(lines[li]);
        LineScanner scanner(body, static_cast<int>(li) + 1);
        if (scanner.at_end()) continue;
        RawSituation s;
        s.model_ref = scanner.word();
        scanner.expect('|');
        s.bindings = scan_bindings(scanner);
        if (scanner.accept_arrow()) {
            std::string w = scanner.word();
            if (scanner.accept('/')) w += "/" + scanner.word();
            s.weight = parse_rational(w);
        }
        if (!scanner.at_end())
            raise_at(ErrorCode::SyntaxError, "trailing text after situation", scanner.pos());
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace causalis
