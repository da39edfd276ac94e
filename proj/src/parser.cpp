#include "hpcalc/parser.hpp"

#include <cctype>

namespace hpcalc {

namespace {

struct Token {
    enum class Kind { Number, Ident, Sym, End };
    Kind kind = Kind::End;
    Rational number;
    std::string text; // ident or symbol
    int line = 0, col = 0;
};

class Lexer {
public:
    Lexer(const std::string& text, int line, int col0 = 1) : s_(text), line_(line), col0_(col0) {
        next();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        next();
        return t;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(tok_.line, tok_.col, what);
    }

private:
    void next() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col0_ + static_cast<int>(pos_);
        if (pos_ >= s_.size() || s_[pos_] == '#') {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer num(s_.substr(start, pos_ - start));
            Integer den = 1;
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                den = Integer(s_.substr(dstart, pos_ - dstart));
                if (den == 0) throw parse_error(tok_.line, tok_.col, "zero denominator in rational");
            }
            tok_.kind = Token::Kind::Number;
            tok_.number = Rational(num, den);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        static const std::string symbols = "+-*^()[],=";
        if (symbols.find(c) != std::string::npos) {
            tok_.kind = Token::Kind::Sym;
            tok_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw parse_error(tok_.line, tok_.col, std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
    Token tok_;
    int line_;
    int col0_;
};

ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

class ExprParser {
public:
    explicit ExprParser(Lexer& lex) : lex_(lex) {}

    ExprPtr expression() {
        ExprPtr lhs = term();
        while (is_sym("+") || is_sym("-")) {
            Token op = lex_.take();
            ExprPtr rhs = term();
            Expr e;
            e.kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
            e.a = lhs;
            e.b = rhs;
            e.line = op.line;
            e.col = op.col;
            lhs = make(std::move(e));
        }
        return lhs;
    }

private:
    bool is_sym(const char* s) const {
        return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (is_sym("*")) {
            Token op = lex_.take();
            ExprPtr rhs = unary();
            Expr e;
            e.kind = Expr::Kind::Mul;
            e.a = lhs;
            e.b = rhs;
            e.line = op.line;
            e.col = op.col;
            lhs = make(std::move(e));
        }
        return lhs;
    }

    ExprPtr unary() {
        if (is_sym("-")) {
            Token op = lex_.take();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.a = unary();
            e.line = op.line;
            e.col = op.col;
            return make(std::move(e));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (is_sym("^")) {
            Token op = lex_.take();
            bool neg = false;
            if (is_sym("-")) {
                lex_.take();
                neg = true;
            }
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Number || denominator(t.number) != 1)
                lex_.fail("exponent must be an integer");
            Token numtok = lex_.take();
            Expr e;
            e.kind = Expr::Kind::Pow;
            e.a = base;
            e.exponent = static_cast<int>(numerator(numtok.number)) * (neg ? -1 : 1);
            e.line = op.line;
            e.col = op.col;
            return make(std::move(e));
        }
        return base;
    }

    ExprPtr primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Number) {
            Token n = lex_.take();
            Expr e;
            e.kind = Expr::Kind::Number;
            e.number = n.number;
            e.line = n.line;
            e.col = n.col;
            return make(std::move(e));
        }
        if (t.kind == Token::Kind::Ident) {
            Token id = lex_.take();
            if ((id.text == "d" || id.text == "inv") && is_sym("(")) {
                lex_.take();
                ExprPtr inner = expression();
                expect(")");
                Expr e;
                e.kind = id.text == "d" ? Expr::Kind::Diff : Expr::Kind::Inv;
                e.a = inner;
                e.line = id.line;
                e.col = id.col;
                return make(std::move(e));
            }
            Expr e;
            e.kind = Expr::Kind::Ident;
            e.ident = id.text;
            e.line = id.line;
            e.col = id.col;
            return make(std::move(e));
        }
        if (is_sym("(")) {
            lex_.take();
            ExprPtr inner = expression();
            expect(")");
            return inner;
        }
        lex_.fail("expected a number, identifier, or '('");
    }

    void expect(const char* sym) {
        if (!is_sym(sym)) lex_.fail(std::string("expected '") + sym + "'");
        lex_.take();
    }

    Lexer& lex_;
};

void expect_end(Lexer& lex) {
    if (lex.peek().kind != Token::Kind::End) lex.fail("unexpected trailing input");
}

std::string expect_ident(Lexer& lex, const char* what) {
    if (lex.peek().kind != Token::Kind::Ident) lex.fail(std::string("expected ") + what);
    return lex.take().text;
}

void expect_sym(Lexer& lex, const char* sym) {
    if (lex.peek().kind != Token::Kind::Sym || lex.peek().text != sym)
        lex.fail(std::string("expected '") + sym + "'");
    lex.take();
}

int expect_int(Lexer& lex) {
    bool neg = false;
    if (lex.peek().kind == Token::Kind::Sym && lex.peek().text == "-") {
        lex.take();
        neg = true;
    }
    if (lex.peek().kind != Token::Kind::Number || denominator(lex.peek().number) != 1)
        lex.fail("expected an integer");
    int v = static_cast<int>(numerator(lex.take().number));
    return neg ? -v : v;
}

void expect_keyword(Lexer& lex, const char* word) {
    if (lex.peek().kind != Token::Kind::Ident || lex.peek().text != word)
        lex.fail(std::string("expected '") + word + "'");
    lex.take();
}

MatrixLiteral parse_matrix(Lexer& lex) {
    MatrixLiteral m;
    expect_sym(lex, "[");
    while (true) {
        expect_sym(lex, "[");
        std::vector<ExprPtr> row;
        if (!(lex.peek().kind == Token::Kind::Sym && lex.peek().text == "]")) {
            while (true) {
                ExprParser p(lex);
                row.push_back(p.expression());
                if (lex.peek().kind == Token::Kind::Sym && lex.peek().text == ",") {
                    lex.take();
                    continue;
                }
                break;
            }
        }
        expect_sym(lex, "]");
        m.rows.push_back(std::move(row));
        if (lex.peek().kind == Token::Kind::Sym && lex.peek().text == ",") {
            lex.take();
            continue;
        }
        break;
    }
    expect_sym(lex, "]");
    return m;
}

// first whitespace-delimited word of the line (commands may contain '-')
std::string first_word(const std::string& line, size_t& after) {
    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    after = i;
    return line.substr(start, i - start);
}

const char* kCommands[] = {"check-core",  "check-keylemma", "boundary",
                           "chern1",      "chern0",         "verify-square",
                           "koszul-dualize", "koszul-homology"};

bool is_command(const std::string& w) {
    for (const char* c : kCommands)
        if (w == c) return true;
    return false;
}

} // namespace

SessionSpec parse_session(const std::string& text) {
    SessionSpec spec;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        size_t after = 0;
        std::string word = first_word(line, after);
        if (word.empty() || word[0] == '#') continue;

        Statement st;
        st.line = line_no;
        std::string rest = line.substr(after);
        int col0 = static_cast<int>(after) + 1;
        Lexer lex(rest, line_no, col0);

        if (word == "ring") {
            st.kind = Statement::Kind::Ring;
            st.name = expect_ident(lex, "ring name");
            expect_keyword(lex, "vars");
            while (lex.peek().kind == Token::Kind::Ident) st.vars.push_back(lex.take().text);
            if (st.vars.empty()) lex.fail("expected at least one variable");
            expect_end(lex);
        } else if (word == "evenvar") {
            st.kind = Statement::Kind::EvenVar;
            st.name = expect_ident(lex, "variable name");
            expect_keyword(lex, "deg");
            st.degree = expect_int(lex);
            expect_end(lex);
        } else if (word == "potential" || word == "gpart" || word == "elem") {
            st.kind = word == "potential" ? Statement::Kind::Potential
                                          : (word == "gpart" ? Statement::Kind::GPart
                                                             : Statement::Kind::Elem);
            st.name = expect_ident(lex, "name");
            expect_sym(lex, "=");
            ExprParser p(lex);
            st.expr = p.expression();
            expect_end(lex);
        } else if (word == "mf") {
            st.kind = Statement::Kind::Mf;
            st.name = expect_ident(lex, "name");
            expect_keyword(lex, "A");
            expect_sym(lex, "=");
            st.A = parse_matrix(lex);
            expect_keyword(lex, "B");
            expect_sym(lex, "=");
            st.B = parse_matrix(lex);
            expect_keyword(lex, "pot");
            expect_sym(lex, "=");
            ExprParser p(lex);
            st.expr = p.expression();
            expect_end(lex);
        } else if (word == "class") {
            st.kind = Statement::Kind::Class;
            st.name = expect_ident(lex, "name");
            expect_keyword(lex, "alpha");
            expect_sym(lex, "=");
            ExprParser p(lex);
            st.expr = p.expression();
            expect_keyword(lex, "s");
            expect_sym(lex, "=");
            st.s = expect_int(lex);
            expect_keyword(lex, "l");
            expect_sym(lex, "=");
            st.l = expect_int(lex);
            expect_end(lex);
        } else if (is_command(word)) {
            st.kind = Statement::Kind::Command;
            st.name = word;
            if (word == "boundary" || word == "chern1" || word == "chern0" ||
                word == "verify-square") {
                st.words.push_back(expect_ident(lex, "a declared name"));
                expect_end(lex);
            } else if (word == "koszul-dualize" || word == "koszul-homology") {
                while (true) {
                    ExprParser p(lex);
                    st.args.push_back(p.expression());
                    if (lex.peek().kind == Token::Kind::Sym && lex.peek().text == ",") {
                        lex.take();
                        continue;
                    }
                    break;
                }
                if (word == "koszul-homology") st.n_arg = expect_int(lex);
                expect_end(lex);
            } else {
                expect_end(lex);
            }
        } else {
            throw parse_error(line_no, static_cast<int>(line.find(word)) + 1,
                              "unknown statement '" + word + "'");
        }
        spec.statements.push_back(std::move(st));
    }
    return spec;
}

ExprPtr parse_expression(const std::string& text) {
    Lexer lex(text, 1);
    ExprParser p(lex);
    ExprPtr e = p.expression();
    expect_end(lex);
    return e;
}

} // namespace hpcalc
