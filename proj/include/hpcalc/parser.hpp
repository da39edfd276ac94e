#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hpcalc/rational.hpp"

namespace hpcalc {

struct parse_error : std::runtime_error {
    parse_error(int line, int col, const std::string& what)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression AST: rationals, identifiers, + - * ^, d(expr), inv(expr).
// '*' is mandatory (no juxtaposition); '^' binds tighter than unary minus,
// which binds tighter than '*', which binds tighter than binary +/-.
struct Expr {
    enum class Kind { Number, Ident, Add, Sub, Neg, Mul, Pow, Diff, Inv };
    Kind kind;
    Rational number;   // Number
    std::string ident; // Ident
    ExprPtr a, b;      // operands
    int exponent = 0;  // Pow
    int line = 0, col = 0;
};

struct MatrixLiteral {
    std::vector<std::vector<ExprPtr>> rows;
};

// One line of a command file.
struct Statement {
    enum class Kind { Ring, EvenVar, Potential, GPart, Elem, Mf, Class, Command };
    Kind kind;
    int line = 0;
    std::string name;               // ring/binding name, or the command word
    std::vector<std::string> vars;  // ring variables
    int degree = 0;                 // evenvar degree
    ExprPtr expr;                   // potential/gpart/elem/class alpha/mf pot
    MatrixLiteral A, B;             // mf
    int s = 0, l = 0;               // class
    std::vector<ExprPtr> args;      // command expression arguments
    std::vector<std::string> words; // command name arguments
    int n_arg = 0;                  // koszul-homology truncation bound
};

struct SessionSpec {
    std::vector<Statement> statements;
};

// Parses a full command file (line oriented, '#' comments).
SessionSpec parse_session(const std::string& text);

// Parses a single expression (used by tests and the canonical-form fixpoint).
ExprPtr parse_expression(const std::string& text);

} // namespace hpcalc
