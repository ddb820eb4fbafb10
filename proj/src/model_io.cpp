#include "trendsolve/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <unordered_set>

#include "trendsolve/error.hpp"

namespace trendsolve {

namespace {

constexpr double kSymmetryTolerance = 1e-9;

struct Token {
    enum class Kind { Ident, Plus, Minus, Zero, Star, LParen, RParen, Equals, End };
    Kind kind;
    std::string text;
    int col;  // 1-based
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;  // comment to end of line
        if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        switch (c) {
            case '+': out.push_back({Token::Kind::Plus, "+", col}); ++i; continue;
            case '-': out.push_back({Token::Kind::Minus, "-", col}); ++i; continue;
            case '0': out.push_back({Token::Kind::Zero, "0", col}); ++i; continue;
            case '*': out.push_back({Token::Kind::Star, "*", col}); ++i; continue;
            case '(': out.push_back({Token::Kind::LParen, "(", col}); ++i; continue;
            case ')': out.push_back({Token::Kind::RParen, ")", col}); ++i; continue;
            case '=': out.push_back({Token::Kind::Equals, "=", col}); ++i; continue;
            default: break;
        }
        if (is_ident_start(c)) {
            std::size_t start = i;
            while (i < line.size() && is_ident_char(line[i])) ++i;
            out.push_back({Token::Kind::Ident, line.substr(start, i - start), col});
            continue;
        }
        throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens, int lineno)
        : tokens_(std::move(tokens)), lineno_(lineno) {}

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != Token::Kind::End) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(lineno_, t.col, msg);
    }

    std::string expect_name(const std::string& what) {
        const Token& t = next();
        if (t.kind != Token::Kind::Ident) fail("expected " + what, t);
        return t.text;
    }

    Sign expect_sign(const std::string& what, bool allow_zero) {
        const Token& t = next();
        switch (t.kind) {
            case Token::Kind::Plus: return Sign::Pos;
            case Token::Kind::Minus: return Sign::Neg;
            case Token::Kind::Zero:
                if (allow_zero) return Sign::Zero;
                break;
            default: break;
        }
        fail("expected " + what, t);
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing input", peek());
    }

    int lineno() const { return lineno_; }

private:
    std::vector<Token> tokens_;
    int lineno_;
    std::size_t pos_ = 0;
};

std::size_t resolve_var(LineParser& p, const TrendModel& model, const Token& tok) {
    auto idx = model.index_of(tok.text);
    if (!idx) p.fail("unknown variable '" + tok.text + "'", tok);
    return *idx;
}

Factor parse_factor(LineParser& p, const TrendModel& model) {
    const Token& t = p.next();
    if (t.kind != Token::Kind::Ident) p.fail("expected a factor", t);
    if ((t.text == "D" || t.text == "DD") && p.peek().kind == Token::Kind::LParen) {
        p.next();  // (
        const Token& name = p.next();
        if (name.kind != Token::Kind::Ident) p.fail("expected a variable name", name);
        resolve_var(p, model, name);
        if (p.next().kind != Token::Kind::RParen) p.fail("expected ')'", p.peek());
        return Factor{t.text == "D" ? Factor::Slot::D1 : Factor::Slot::D2, name.text};
    }
    resolve_var(p, model, t);
    return Factor{Factor::Slot::Value, t.text};
}

Monomial parse_monomial(LineParser& p, const TrendModel& model, Sign coeff) {
    Monomial m;
    m.coeff = coeff;
    m.factors.push_back(parse_factor(p, model));
    while (p.peek().kind == Token::Kind::Star) {
        p.next();
        m.factors.push_back(parse_factor(p, model));
    }
    return m;
}

std::vector<Monomial> parse_sum(LineParser& p, const TrendModel& model) {
    std::vector<Monomial> out;
    if (p.peek().kind == Token::Kind::Zero) {
        p.next();
        return out;  // a bare "0" is the empty sum
    }
    Sign coeff = Sign::Pos;
    if (p.peek().kind == Token::Kind::Minus) {
        p.next();
        coeff = Sign::Neg;
    }
    out.push_back(parse_monomial(p, model, coeff));
    while (true) {
        const Token& t = p.peek();
        if (t.kind == Token::Kind::Plus) coeff = Sign::Pos;
        else if (t.kind == Token::Kind::Minus) coeff = Sign::Neg;
        else break;
        p.next();
        out.push_back(parse_monomial(p, model, coeff));
    }
    return out;
}

TrendEquation parse_equation_tokens(LineParser& p, const TrendModel& model) {
    TrendEquation eq;
    eq.lhs = parse_sum(p, model);
    const Token& t = p.next();
    if (t.kind != Token::Kind::Equals) p.fail("expected '='", t);
    eq.rhs = parse_sum(p, model);
    p.expect_end();
    return eq;
}

void parse_var_decl(LineParser& p, TrendModel& model) {
    const Token& name = p.next();
    if (name.kind != Token::Kind::Ident) p.fail("expected a variable name", name);
    if (model.index_of(name.text))
        p.fail("duplicate variable '" + name.text + "'", name);
    Sign value = Sign::Pos;
    if (!p.at_end()) value = p.expect_sign("a value sign (+, 0 or -)", true);
    p.expect_end();
    model.variables.push_back(Variable{name.text, value});
}

void parse_rel_decl(LineParser& p, TrendModel& model) {
    const Token& kind = p.next();
    if (kind.kind != Token::Kind::Ident) p.fail("expected SUP, RED or SHAPE", kind);
    Sign s1, s2;
    if (kind.text == "SUP") {
        s1 = Sign::Pos; s2 = Sign::Zero;
    } else if (kind.text == "RED") {
        s1 = Sign::Neg; s2 = Sign::Zero;
    } else if (kind.text == "SHAPE") {
        s1 = p.expect_sign("a first-derivative sign (+ or -)", false);
        s2 = p.expect_sign("a second-derivative sign (+, 0 or -)", true);
    } else {
        p.fail("expected SUP, RED or SHAPE", kind);
    }
    const Token& src = p.next();
    if (src.kind != Token::Kind::Ident) p.fail("expected a variable name", src);
    resolve_var(p, model, src);
    const Token& dst = p.next();
    if (dst.kind != Token::Kind::Ident) p.fail("expected a variable name", dst);
    resolve_var(p, model, dst);
    if (src.text == dst.text)
        p.fail("relation relates variable '" + src.text + "' to itself", dst);
    p.expect_end();
    model.relations.push_back(TrendRelation{s1, s2, src.text, dst.text});
}

std::string render_sum(const std::vector<Monomial>& sum) {
    if (sum.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Monomial& m : sum) {
        if (first) {
            if (m.coeff == Sign::Neg) out += "-";
        } else {
            out += m.coeff == Sign::Neg ? " - " : " + ";
        }
        first = false;
        bool first_factor = true;
        for (const Factor& f : m.factors) {
            if (!first_factor) out += "*";
            first_factor = false;
            switch (f.slot) {
                case Factor::Slot::Value: out += f.var; break;
                case Factor::Slot::D1: out += "D(" + f.var + ")"; break;
                case Factor::Slot::D2: out += "DD(" + f.var + ")"; break;
            }
        }
    }
    return out;
}

struct Cell {
    std::string text;
    int col;
};

std::vector<Cell> split_csv_line(const std::string& line) {
    std::vector<Cell> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::string field = line.substr(start, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - start);
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        int col = static_cast<int>(start) + 1;
        if (b == std::string::npos) {
            cells.push_back({"", col});
        } else {
            cells.push_back({field.substr(b, e - b + 1),
                             static_cast<int>(start + b) + 1});
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

int TrendEquation::order() const {
    int order = 0;
    for (const auto* side : {&lhs, &rhs})
        for (const Monomial& m : *side)
            for (const Factor& f : m.factors) {
                if (f.slot == Factor::Slot::D1) order = std::max(order, 1);
                if (f.slot == Factor::Slot::D2) order = std::max(order, 2);
            }
    return order;
}

std::optional<std::size_t> TrendModel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return i;
    return std::nullopt;
}

TrendModel parse_model(const std::string& text) {
    TrendModel model;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                    : nl - pos);
        ++lineno;
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

        LineParser p(lex_line(line, lineno), lineno);
        if (p.at_end()) continue;
        const Token& kw = p.next();
        if (kw.kind != Token::Kind::Ident)
            p.fail("expected 'var', 'rel' or 'eq'", kw);
        if (kw.text == "var") parse_var_decl(p, model);
        else if (kw.text == "rel") parse_rel_decl(p, model);
        else if (kw.text == "eq") model.equations.push_back(parse_equation_tokens(p, model));
        else p.fail("unknown keyword '" + kw.text + "'", kw);
    }
    return model;
}

TrendEquation parse_equation_line(const std::string& line, const TrendModel& model) {
    LineParser p(lex_line(line, 1), 1);
    const Token& kw = p.next();
    if (kw.kind != Token::Kind::Ident || kw.text != "eq")
        p.fail("expected 'eq'", kw);
    return parse_equation_tokens(p, model);
}

std::string render_relation(const TrendRelation& rel) {
    std::string head;
    if (rel.s1 == Sign::Pos && rel.s2 == Sign::Zero) head = "SUP";
    else if (rel.s1 == Sign::Neg && rel.s2 == Sign::Zero) head = "RED";
    else head = std::string("SHAPE ") + sign_char(rel.s1) + sign_char(rel.s2);
    return "rel " + head + " " + rel.source + " " + rel.target;
}

std::string render_equation(const TrendEquation& eq) {
    return "eq " + render_sum(eq.lhs) + " = " + render_sum(eq.rhs);
}

std::string render_model(const TrendModel& model) {
    std::string out;
    for (const Variable& v : model.variables) {
        out += "var " + v.name + " ";
        out += sign_char(v.value_sign);
        out += "\n";
    }
    for (const TrendRelation& r : model.relations) out += render_relation(r) + "\n";
    for (const TrendEquation& e : model.equations) out += render_equation(e) + "\n";
    return out;
}

CorrelationMatrix parse_correlation_csv(const std::string& text) {
    std::vector<std::pair<int, std::vector<Cell>>> rows;  // (lineno, cells)
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                    : nl - pos);
        ++lineno;
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.emplace_back(lineno, split_csv_line(line));
    }

    CorrelationMatrix m;
    if (rows.empty()) return m;  // empty document is the empty matrix

    const auto& [header_line, header] = rows.front();
    std::unordered_set<std::string> seen;
    for (const Cell& c : header) {
        if (c.text.empty() || !is_ident_start(c.text[0]))
            throw ParseError(header_line, c.col, "expected a variable name");
        for (char ch : c.text)
            if (!is_ident_char(ch))
                throw ParseError(header_line, c.col,
                                 "invalid variable name '" + c.text + "'");
        if (!seen.insert(c.text).second)
            throw ParseError(header_line, c.col, "duplicate name '" + c.text + "'");
        m.names.push_back(c.text);
    }

    std::size_t n = m.names.size();
    if (rows.size() - 1 != n)
        throw ParseError(rows.back().first, 1,
                         "expected " + std::to_string(n) + " data rows, got " +
                             std::to_string(rows.size() - 1));

    std::vector<std::vector<int>> cell_cols(n);
    std::vector<int> row_lines(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [line_no, cells] = rows[i + 1];
        row_lines[i] = line_no;
        if (cells.size() != n)
            throw ParseError(line_no, 1,
                             "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(cells.size()));
        std::vector<double> row;
        for (const Cell& c : cells) {
            double value = 0;
            auto [ptr, ec] = std::from_chars(c.text.data(),
                                             c.text.data() + c.text.size(), value);
            if (ec != std::errc{} || ptr != c.text.data() + c.text.size())
                throw ParseError(line_no, c.col, "not a number: '" + c.text + "'");
            row.push_back(value);
            cell_cols[i].push_back(c.col);
        }
        m.entries.push_back(std::move(row));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(m.entries[i][j] - m.entries[j][i]) > kSymmetryTolerance)
                throw ParseError(row_lines[j], cell_cols[j][i],
                                 "matrix is not symmetric at (" + m.names[i] + "," +
                                     m.names[j] + ")");
    return m;
}

}  // namespace trendsolve
