#include "trendsolve/ode.hpp"

#include <cctype>
#include <charconv>

#include "trendsolve/error.hpp"
#include "trendsolve/model_io.hpp"

namespace trendsolve {

namespace ode_detail {

struct Expr {
    enum class Kind { Number, Name, Neg, Add, Sub, Mul, Div };
    Kind kind;
    long long number = 0;
    std::string name;
    std::shared_ptr<Expr> a, b;
    int line = 0, col = 0;
};

}  // namespace ode_detail

namespace {

using ode_detail::Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen,
                      Equals, End };
    Kind kind;
    std::string text;
    long long number = 0;
    int col;
};

std::vector<Token> lex(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        switch (c) {
            case '+': out.push_back({Token::Kind::Plus, "+", 0, col}); ++i; continue;
            case '-': out.push_back({Token::Kind::Minus, "-", 0, col}); ++i; continue;
            case '*': out.push_back({Token::Kind::Star, "*", 0, col}); ++i; continue;
            case '/': out.push_back({Token::Kind::Slash, "/", 0, col}); ++i; continue;
            case '(': out.push_back({Token::Kind::LParen, "(", 0, col}); ++i; continue;
            case ')': out.push_back({Token::Kind::RParen, ")", 0, col}); ++i; continue;
            case '=': out.push_back({Token::Kind::Equals, "=", 0, col}); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (i < line.size() && line[i] == '.')
                throw ParseError(lineno, col, "only integer literals are supported");
            std::string text = line.substr(start, i - start);
            long long value = 0;
            std::from_chars(text.data(), text.data() + text.size(), value);
            out.push_back({Token::Kind::Number, text, value, col});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                ++i;
            out.push_back({Token::Kind::Ident, line.substr(start, i - start), 0, col});
            continue;
        }
        throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", 0, static_cast<int>(line.size()) + 1});
    return out;
}

class ExprParser {
public:
    ExprParser(const std::vector<Token>& tokens, int lineno)
        : tokens_(tokens), lineno_(lineno) {}

    ExprPtr parse_expression() {
        ExprPtr left = parse_term();
        while (true) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Plus && t.kind != Token::Kind::Minus) break;
            next();
            ExprPtr right = parse_term();
            left = make(t.kind == Token::Kind::Plus ? Expr::Kind::Add
                                                    : Expr::Kind::Sub,
                        t, left, right);
        }
        return left;
    }

    void expect_end() {
        if (peek().kind != Token::Kind::End)
            fail("unexpected trailing input", peek());
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != Token::Kind::End) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(lineno_, t.col, msg);
    }

private:
    ExprPtr parse_term() {
        ExprPtr left = parse_unary();
        while (true) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Star && t.kind != Token::Kind::Slash) break;
            next();
            ExprPtr right = parse_unary();
            left = make(t.kind == Token::Kind::Star ? Expr::Kind::Mul
                                                    : Expr::Kind::Div,
                        t, left, right);
        }
        return left;
    }

    ExprPtr parse_unary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Minus) {
            next();
            return make(Expr::Kind::Neg, t, parse_unary(), nullptr);
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = next();
        switch (t.kind) {
            case Token::Kind::Number: {
                auto e = make(Expr::Kind::Number, t, nullptr, nullptr);
                e->number = t.number;
                return e;
            }
            case Token::Kind::Ident: {
                if (peek().kind == Token::Kind::LParen)
                    fail("function calls are not supported", peek());
                auto e = make(Expr::Kind::Name, t, nullptr, nullptr);
                e->name = t.text;
                return e;
            }
            case Token::Kind::LParen: {
                ExprPtr inner = parse_expression();
                const Token& close = next();
                if (close.kind != Token::Kind::RParen) fail("expected ')'", close);
                return inner;
            }
            default:
                fail("expected a number, name or '('", t);
        }
    }

    ExprPtr make(Expr::Kind kind, const Token& t, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->a = std::move(a);
        e->b = std::move(b);
        e->line = lineno_;
        e->col = t.col;
        return e;
    }

    const std::vector<Token>& tokens_;
    int lineno_;
    std::size_t pos_ = 0;
};

// One fully distributed source monomial.
struct Expanded {
    int sign = 1;
    std::vector<std::string> states;      // value factors, source order
    std::vector<std::string> eliminated;  // positive constants removed
};

class Expander {
public:
    explicit Expander(const OdeSystem& sys) : sys_(sys) {}

    std::vector<Expanded> expand(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Number: {
                if (e.number == 0)
                    throw ParseError(e.line, e.col, "zero coefficient");
                Expanded m;
                m.sign = e.number < 0 ? -1 : 1;
                if (e.number != 1 && e.number != -1)
                    m.eliminated.push_back(std::to_string(e.number < 0 ? -e.number
                                                                       : e.number));
                return {m};
            }
            case Expr::Kind::Name: {
                Expanded m;
                if (sys_.is_state(e.name)) {
                    m.states.push_back(e.name);
                } else if (sys_.find_param(e.name)) {
                    m.eliminated.push_back(e.name);
                } else {
                    throw ParseError(e.line, e.col,
                                     "unknown name '" + e.name +
                                         "' (not a state or declared parameter)");
                }
                return {m};
            }
            case Expr::Kind::Neg: {
                std::vector<Expanded> out = expand(*e.a);
                for (Expanded& m : out) m.sign = -m.sign;
                return out;
            }
            case Expr::Kind::Add: {
                std::vector<Expanded> out = expand(*e.a);
                std::vector<Expanded> more = expand(*e.b);
                out.insert(out.end(), more.begin(), more.end());
                return out;
            }
            case Expr::Kind::Sub: {
                if (!has_state(*e.a) && !has_state(*e.b)) return expand_one_minus(e);
                std::vector<Expanded> out = expand(*e.a);
                std::vector<Expanded> more = expand(*e.b);
                for (Expanded& m : more) m.sign = -m.sign;
                out.insert(out.end(), more.begin(), more.end());
                return out;
            }
            case Expr::Kind::Mul: {
                std::vector<Expanded> left = expand(*e.a);
                std::vector<Expanded> right = expand(*e.b);
                std::vector<Expanded> out;
                for (const Expanded& l : left)
                    for (const Expanded& r : right) {
                        Expanded m;
                        m.sign = l.sign * r.sign;
                        m.states = l.states;
                        m.states.insert(m.states.end(), r.states.begin(),
                                        r.states.end());
                        m.eliminated = l.eliminated;
                        m.eliminated.insert(m.eliminated.end(), r.eliminated.begin(),
                                            r.eliminated.end());
                        out.push_back(std::move(m));
                    }
                return out;
            }
            case Expr::Kind::Div: {
                std::vector<Expanded> denom = expand(*e.b);
                if (denom.size() != 1 || !denom[0].states.empty() ||
                    denom[0].sign != 1)
                    throw ParseError(e.line, e.col,
                                     "denominators must be products of positive "
                                     "parameters");
                std::vector<Expanded> out = expand(*e.a);
                for (Expanded& m : out)
                    for (const std::string& f : denom[0].eliminated)
                        m.eliminated.push_back("/" + f);
                return out;
            }
        }
        throw ParseError(e.line, e.col, "bad expression");
    }

private:
    bool has_state(const Expr& e) const {
        switch (e.kind) {
            case Expr::Kind::Name: return sys_.is_state(e.name);
            case Expr::Kind::Number: return false;
            case Expr::Kind::Neg: return has_state(*e.a);
            default: return (e.a && has_state(*e.a)) || (e.b && has_state(*e.b));
        }
    }

    // A coefficient-only difference is accepted only in the proportion
    // form (1 - p); anything else has no determinate sign.
    std::vector<Expanded> expand_one_minus(const Expr& e) const {
        const Expr& lhs = *e.a;
        const Expr& rhs = *e.b;
        if (lhs.kind == Expr::Kind::Number && lhs.number == 1 &&
            rhs.kind == Expr::Kind::Name) {
            const OdeSystem::Param* p = sys_.find_param(rhs.name);
            if (p && p->proportion) {
                Expanded one;
                Expanded minus_p;
                minus_p.sign = -1;
                minus_p.eliminated.push_back(rhs.name);
                return {one, minus_p};
            }
            if (p)
                throw ParseError(rhs.line, rhs.col,
                                 "'" + rhs.name +
                                     "' must be declared 'param " + rhs.name +
                                     " prop' to appear in (1 - " + rhs.name + ")");
        }
        throw ParseError(e.line, e.col,
                         "coefficient difference has no determinate sign; only "
                         "(1 - p) with a proportion p is supported");
    }

    const OdeSystem& sys_;
};

std::string render_expanded(const Expanded& m) {
    std::string out = m.sign < 0 ? "-" : "+";
    bool first = true;
    for (const std::string& f : m.eliminated) {
        if (f[0] == '/') { out += f; continue; }
        if (!first) out += "*";
        out += f;
        first = false;
    }
    for (const std::string& s : m.states) {
        if (!first) out += "*";
        out += s;
        first = false;
    }
    if (first) out += "1";
    return out;
}

}  // namespace

bool OdeSystem::is_state(const std::string& name) const {
    for (const StateEquation& eq : equations)
        if (eq.state == name) return true;
    return false;
}

const OdeSystem::Param* OdeSystem::find_param(const std::string& name) const {
    for (const Param& p : params)
        if (p.name == name) return &p;
    return nullptr;
}

OdeSystem parse_ode(const std::string& text) {
    OdeSystem sys;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                    : nl - pos);
        ++lineno;
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

        std::vector<Token> tokens = lex(line, lineno);
        ExprParser p(tokens, lineno);
        if (p.peek().kind == Token::Kind::End) continue;
        const Token& kw = p.next();
        if (kw.kind != Token::Kind::Ident) p.fail("expected 'param' or 'ode'", kw);

        if (kw.text == "param") {
            const Token& name = p.next();
            if (name.kind != Token::Kind::Ident) p.fail("expected a parameter name", name);
            const Token& kind = p.next();
            if (kind.kind != Token::Kind::Ident ||
                (kind.text != "pos" && kind.text != "prop"))
                p.fail("expected 'pos' or 'prop'", kind);
            if (sys.find_param(name.text))
                p.fail("duplicate parameter '" + name.text + "'", name);
            p.expect_end();
            sys.params.push_back({name.text, kind.text == "prop"});
        } else if (kw.text == "ode") {
            const Token& name = p.next();
            if (name.kind != Token::Kind::Ident) p.fail("expected a state name", name);
            if (sys.is_state(name.text))
                p.fail("duplicate state '" + name.text + "'", name);
            if (sys.find_param(name.text))
                p.fail("'" + name.text + "' is already a parameter", name);
            const Token& eq = p.next();
            if (eq.kind != Token::Kind::Equals) p.fail("expected '='", eq);
            ExprPtr rhs = p.parse_expression();
            p.expect_end();
            sys.equations.push_back({name.text, std::move(rhs), lineno});
        } else {
            p.fail("unknown keyword '" + kw.text + "'", kw);
        }
    }
    return sys;
}

TranslationReport translate(const OdeSystem& sys) {
    TranslationReport report;
    Expander expander(sys);

    for (const OdeSystem::StateEquation& eq : sys.equations)
        report.model.variables.push_back(Variable{eq.state, Sign::Pos});

    for (const OdeSystem::StateEquation& eq : sys.equations) {
        std::vector<Expanded> monomials = expander.expand(*eq.rhs);
        TrendEquation trend;
        trend.lhs.push_back(Monomial{Sign::Pos, {Factor{Factor::Slot::D1, eq.state}}});

        std::vector<TranslationReport::MonomialNote> notes;
        for (const Expanded& m : monomials) {
            if (m.states.empty())
                throw ParseError(eq.line, 1,
                                 "constant term in the equation for '" + eq.state +
                                     "' has no trend form");
            Monomial out;
            out.coeff = Sign::Pos;
            for (const std::string& s : m.states)
                out.factors.push_back(Factor{Factor::Slot::Value, s});
            // Negative source monomials move to the left side with
            // positive sign; positive ones stay on the right.
            bool negative = m.sign < 0;
            if (negative) trend.lhs.push_back(out);
            else trend.rhs.push_back(out);

            TranslationReport::MonomialNote note;
            note.source = render_expanded(m);
            note.negative = negative;
            note.eliminated = m.eliminated;
            std::string rendered;
            for (const Factor& f : out.factors) {
                if (!rendered.empty()) rendered += "*";
                rendered += f.var;
            }
            note.emitted = rendered;
            notes.push_back(std::move(note));
        }
        report.model.equations.push_back(std::move(trend));
        report.notes.push_back(std::move(notes));
    }
    return report;
}

std::string render_translation(const TranslationReport& report) {
    return render_model(report.model);
}

}  // namespace trendsolve
