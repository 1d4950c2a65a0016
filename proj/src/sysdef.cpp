#include "cyclelab/sysdef.hpp"

#include <cctype>
#include <sstream>

namespace cyclelab {

PlanarSystem PlanarSystem::substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const {
    PlanarSystem out = *this;
    out.P = P.substitute(bindings);
    out.Q = Q.substitute(bindings);
    SymTab t = merge_tables(out.P.table(), out.Q.table());
    out.P = out.P.remap(t);
    out.Q = out.Q.remap(t);
    out.params = t;
    return out;
}

PerturbedSystem PerturbedSystem::substitute(const std::vector<std::pair<std::string, ParamPoly>>& bindings) const {
    PerturbedSystem out = *this;
    out.f1 = f1.substitute(bindings);
    out.g1 = g1.substitute(bindings);
    SymTab t = merge_tables(out.f1.table(), out.g1.table());
    out.f1 = out.f1.remap(t);
    out.g1 = out.g1.remap(t);
    out.params = t;
    return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
    enum Kind { Ident, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    Lexer(const std::string& text, int line) : s_(text), line_(line) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= s_.size()) return {Token::End, "", line_, col};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::Int, s_.substr(start, pos_ - start), line_, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, s_.substr(start, pos_ - start), line_, col};
        }
        ++pos_;
        switch (c) {
            case '+': return {Token::Plus, "+", line_, col};
            case '-': return {Token::Minus, "-", line_, col};
            case '*': return {Token::Star, "*", line_, col};
            case '^': return {Token::Caret, "^", line_, col};
            case '/': return {Token::Slash, "/", line_, col};
            case '(': return {Token::LParen, "(", line_, col};
            case ')': return {Token::RParen, ")", line_, col};
            default:
                fail(ErrorCode::SyntaxError, "unexpected character '" + std::string(1, c) + "' at line " +
                                                 std::to_string(line_) + ", col " + std::to_string(col));
        }
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_;
};

// expr := term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := base ('^' uint)?
// base := rational | identifier | '(' expr ')' | '-' base
// rational := int ('/' uint)?
class ExprParser {
public:
    ExprParser(const std::string& text, int line, SymTab params)
        : lex_(text, line), params_(std::move(params)) {
        advance();
    }

    PlanarPoly parse() {
        PlanarPoly e = expr();
        expect(Token::End, "end of expression");
        return e;
    }

private:
    Lexer lex_;
    Token cur_{Token::End, "", 0, 0};
    SymTab params_;

    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void syntax(const std::string& what) {
        fail(ErrorCode::SyntaxError, "expected " + what + " at line " + std::to_string(cur_.line) +
                                         ", col " + std::to_string(cur_.col));
    }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k) syntax(what);
    }

    PlanarPoly expr() {
        PlanarPoly acc = term();
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            bool minus = cur_.kind == Token::Minus;
            advance();
            PlanarPoly t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    PlanarPoly term() {
        PlanarPoly acc = factor();
        while (cur_.kind == Token::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    PlanarPoly factor() {
        PlanarPoly b = base();
        if (cur_.kind == Token::Caret) {
            advance();
            expect(Token::Int, "a non-negative integer exponent");
            if (cur_.text.size() > 3) syntax("an exponent below 1000");
            unsigned e = static_cast<unsigned>(std::stoul(cur_.text));
            advance();
            return b.pow(e);
        }
        return b;
    }

    PlanarPoly base() {
        switch (cur_.kind) {
            case Token::Minus: {
                advance();
                return -base();
            }
            case Token::Int: {
                mpz_class num(cur_.text);
                advance();
                if (cur_.kind == Token::Slash) {
                    advance();
                    expect(Token::Int, "a positive integer denominator");
                    mpz_class den(cur_.text);
                    advance();
                    if (den == 0) syntax("a nonzero denominator");
                    return PlanarPoly::constant(params_, rat_from_mpz(num, den));
                }
                return PlanarPoly::constant(params_, Rat(num));
            }
            case Token::Ident: {
                std::string name = cur_.text;
                int line = cur_.line, col = cur_.col;
                advance();
                if (name == "x") return PlanarPoly::var_x(params_);
                if (name == "y") return PlanarPoly::var_y(params_);
                if (!params_->index(name))
                    fail(ErrorCode::UndeclaredIdentifier,
                         "'" + name + "' at line " + std::to_string(line) + ", col " +
                             std::to_string(col) + " is not a declared parameter");
                return PlanarPoly::from_param(ParamPoly::symbol(params_, name));
            }
            case Token::LParen: {
                advance();
                PlanarPoly e = expr();
                expect(Token::RParen, "')'");
                advance();
                return e;
            }
            default:
                syntax("a term");
        }
    }
};

std::vector<std::string> split_identifier_list(const std::string& text, int line) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };
    for (char c : text) {
        if (c == ',') {
            if (cur.empty())
                fail(ErrorCode::SyntaxError, "empty name in list at line " + std::to_string(line));
            flush();
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            cur.push_back(c);
        } else {
            fail(ErrorCode::SyntaxError, "bad character '" + std::string(1, c) + "' in name list at line " +
                                             std::to_string(line));
        }
    }
    flush();
    return out;
}

}  // namespace

PlanarPoly parse_expression(const std::string& text, const SymTab& params) {
    return ExprParser(text, 1, params).parse();
}

PlanarSystem parse_system(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_params = false, have_dx = false, have_dy = false, have_perturb = false;
    SymTab params;
    std::string dx_text, dy_text;
    int dx_line = 0, dy_line = 0;
    std::vector<std::string> perturb;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string body = line.substr(begin, end - begin + 1);

        auto starts = [&](const char* kw) {
            return body.rfind(kw, 0) == 0;
        };
        if (starts("params:")) {
            if (have_params)
                fail(ErrorCode::DuplicateDefinition, "params declared twice (line " + std::to_string(lineno) + ")");
            auto names = split_identifier_list(body.substr(7), lineno);
            for (const auto& n : names)
                if (n == "x" || n == "y")
                    fail(ErrorCode::SyntaxError, "'" + n + "' is a reserved phase variable (line " +
                                                     std::to_string(lineno) + ")");
            for (std::size_t i = 0; i < names.size(); ++i)
                for (std::size_t j = i + 1; j < names.size(); ++j)
                    if (names[i] == names[j])
                        fail(ErrorCode::DuplicateDefinition,
                             "parameter '" + names[i] + "' declared twice (line " + std::to_string(lineno) + ")");
            params = SymbolTable::make(names);
            have_params = true;
        } else if (starts("perturb:")) {
            if (have_perturb)
                fail(ErrorCode::DuplicateDefinition, "perturb declared twice (line " + std::to_string(lineno) + ")");
            perturb = split_identifier_list(body.substr(8), lineno);
            have_perturb = true;
        } else if (starts("dx")) {
            auto eq = body.find('=');
            if (eq == std::string::npos || body.substr(0, eq).find_first_not_of("dx \t") != std::string::npos)
                fail(ErrorCode::SyntaxError, "expected 'dx = <expr>' at line " + std::to_string(lineno));
            if (have_dx)
                fail(ErrorCode::DuplicateDefinition, "dx defined twice (line " + std::to_string(lineno) + ")");
            dx_text = body.substr(eq + 1);
            dx_line = lineno;
            have_dx = true;
        } else if (starts("dy")) {
            auto eq = body.find('=');
            if (eq == std::string::npos || body.substr(0, eq).find_first_not_of("dy \t") != std::string::npos)
                fail(ErrorCode::SyntaxError, "expected 'dy = <expr>' at line " + std::to_string(lineno));
            if (have_dy)
                fail(ErrorCode::DuplicateDefinition, "dy defined twice (line " + std::to_string(lineno) + ")");
            dy_text = body.substr(eq + 1);
            dy_line = lineno;
            have_dy = true;
        } else {
            fail(ErrorCode::SyntaxError, "unrecognized line " + std::to_string(lineno) + ": '" + body + "'");
        }
    }

    if (!have_params) fail(ErrorCode::SyntaxError, "missing 'params:' line");
    if (!have_dx) fail(ErrorCode::SyntaxError, "missing 'dx = <expr>' line");
    if (!have_dy) fail(ErrorCode::SyntaxError, "missing 'dy = <expr>' line");

    PlanarSystem sys;
    sys.params = params;
    sys.P = ExprParser(dx_text, dx_line, params).parse();
    sys.Q = ExprParser(dy_text, dy_line, params).parse();
    for (const auto& p : perturb)
        if (!params->index(p))
            fail(ErrorCode::UndeclaredIdentifier, "perturb names undeclared parameter '" + p + "'");
    sys.perturbation_params = perturb;
    return sys;
}

std::string render_system(const PlanarSystem& sys) {
    std::ostringstream out;
    out << "params:";
    for (std::size_t i = 0; i < sys.params->size(); ++i)
        out << (i == 0 ? " " : ", ") << sys.params->name(i);
    out << "\n";
    out << "dx = " << sys.P.str() << "\n";
    out << "dy = " << sys.Q.str() << "\n";
    if (!sys.perturbation_params.empty()) {
        out << "perturb:";
        for (std::size_t i = 0; i < sys.perturbation_params.size(); ++i)
            out << (i == 0 ? " " : ", ") << sys.perturbation_params[i];
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// canonical families

PlanarSystem kukles_cubic() {
    SymTab t = SymbolTable::make({"a1", "a2", "a3", "a4", "a5", "a6", "a7"});
    auto sym = [&](const char* n) { return ParamPoly::symbol(t, n); };
    auto mono = [&](int i, int j) { return PlanarPoly::monomial(t, i, j, Rat(1)); };
    PlanarSystem sys;
    sys.params = t;
    sys.P = -PlanarPoly::var_y(t);
    sys.Q = PlanarPoly::var_x(t) + mono(2, 0) * sym("a1") + mono(1, 1) * sym("a2") +
            mono(0, 2) * sym("a3") + mono(3, 0) * sym("a4") + mono(2, 1) * sym("a5") +
            mono(1, 2) * sym("a6") + mono(0, 3) * sym("a7");
    return sys;
}

PlanarSystem kukles_cubic(const std::array<Rat, 7>& a) {
    std::vector<std::pair<std::string, ParamPoly>> bind;
    SymTab empty = SymbolTable::make({});
    for (int i = 0; i < 7; ++i)
        bind.emplace_back("a" + std::to_string(i + 1), ParamPoly::constant(empty, a[i]));
    PlanarSystem sys = kukles_cubic().substitute(bind);
    sys.params = SymbolTable::make({});
    sys.P = sys.P.remap(sys.params);
    sys.Q = sys.Q.remap(sys.params);
    return sys;
}

PlanarSystem kukles_deg4() {
    SymTab t = SymbolTable::make({"a", "b", "c"});
    PlanarPoly x = PlanarPoly::var_x(t), y = PlanarPoly::var_y(t);
    PlanarPoly circle = x * x + y * y - PlanarPoly::constant(t, Rat(1));
    PlanarPoly line = x * ParamPoly::symbol(t, "a") + y * ParamPoly::symbol(t, "b") +
                      PlanarPoly::from_param(ParamPoly::symbol(t, "c"));
    PlanarSystem sys;
    sys.params = t;
    sys.P = -y;
    sys.Q = x + y * circle * line;
    sys.perturbation_params = {"a", "b", "c"};
    return sys;
}

std::string odd_coeff_name(int two_i, int two_j) {
    if (two_i < 10 && two_j < 10) return "b" + std::to_string(two_i) + std::to_string(two_j);
    return "b" + std::to_string(two_i) + "_" + std::to_string(two_j);
}

PlanarSystem kukles_odd(int n) {
    if (n < 1) fail(ErrorCode::BadIndex, "kukles_odd requires n >= 1");
    std::vector<std::string> names{"b00"};
    for (int k = 1; k <= n; ++k)
        for (int i = k; i >= 0; --i) names.push_back(odd_coeff_name(2 * i, 2 * (k - i)));
    SymTab t = SymbolTable::make(names);
    PlanarPoly x = PlanarPoly::var_x(t), y = PlanarPoly::var_y(t);
    PlanarPoly circle = PlanarPoly::constant(t, Rat(1)) - x * x - y * y;
    PlanarPoly series = PlanarPoly::from_param(ParamPoly::symbol(t, "b00"));
    for (int k = 1; k <= n; ++k)
        for (int i = k; i >= 0; --i) {
            int j = k - i;
            series = series + PlanarPoly::monomial(t, 2 * i, 2 * j, Rat(1)) *
                                  ParamPoly::symbol(t, odd_coeff_name(2 * i, 2 * j));
        }
    PlanarSystem sys;
    sys.params = t;
    sys.P = -y;
    sys.Q = x + y * circle * series;
    sys.perturbation_params = names;
    return sys;
}

PlanarSystem kukles_odd(int n, const std::map<std::pair<int, int>, Rat>& b) {
    for (const auto& [key, value] : b) {
        auto [ti, tj] = key;
        if (ti < 0 || tj < 0 || ti % 2 != 0 || tj % 2 != 0)
            fail(ErrorCode::BadIndex, "coefficient index (" + std::to_string(ti) + "," +
                                          std::to_string(tj) + ") must be even and non-negative");
        if (ti / 2 + tj / 2 > n)
            fail(ErrorCode::BadIndex, "coefficient index (" + std::to_string(ti) + "," +
                                          std::to_string(tj) + ") exceeds n=" + std::to_string(n));
    }
    PlanarSystem sym = kukles_odd(n);
    std::vector<std::pair<std::string, ParamPoly>> bind;
    SymTab empty = SymbolTable::make({});
    for (const auto& name : sym.params->names()) bind.emplace_back(name, ParamPoly::zero(empty));
    for (const auto& [key, value] : b) {
        auto name = odd_coeff_name(key.first, key.second);
        for (auto& [bn, bv] : bind)
            if (bn == name) bv = ParamPoly::constant(empty, value);
    }
    PlanarSystem sys = sym.substitute(bind);
    sys.params = SymbolTable::make({});
    sys.P = sys.P.remap(sys.params);
    sys.Q = sys.Q.remap(sys.params);
    sys.perturbation_params.clear();
    return sys;
}

KuklesConditionReport kukles_conditions(const std::array<Rat, 7>& a) {
    const Rat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a5 = a[4], &a6 = a[5], &a7 = a[6];
    KuklesConditionReport r;
    r.lambda = a2 * a3 + 3 * a7;
    const Rat& L = r.lambda;
    r.k_alpha = a4 * a2 * a2 + a5 * L;
    r.k_beta = (3 * a7 * L + L * L + a6 * a2 * a2) * a5 - 3 * a7 * L * L - a6 * a2 * a2 * L;
    r.k_gamma = L + a1 * a2 + a5;
    r.k_delta = 9 * a6 * a2 * a2 + 2 * a4 * a4 + 9 * L * L + 27 * a7 * L;
    r.K1 = r.k_alpha == 0 && r.k_beta == 0 && r.k_gamma == 0 && a7 == 0;
    r.K2 = a7 == 0 && a2 == 0 && a5 == 0;
    r.K3 = a7 == 0 && a5 == 0 && a3 == 0 && a1 == 0;
    r.K4 = r.k_alpha == 0 && r.k_beta == 0 && r.k_gamma == 0 && r.k_delta == 0;
    bool common = a2 == 0 && a6 == 0 && a3 == -2 * a1 && a5 == -3 * a7 && -a4 == a1 * a1 / 3;
    if (common && a7 == a4) {
        r.jin_wang = true;
        r.jin_wang_branch = 1;
    }
    if (common && a7 == -a4) {
        r.jin_wang = true;
        r.jin_wang_branch = (a4 == 0) ? 0 : -1;  // both branches coincide at a4 = 0
    }
    return r;
}

// ---------------------------------------------------------------------------
// perturbation form

PerturbedSystem eps_rescale(const PlanarSystem& sys, const std::vector<std::string>& eps_params,
                            bool reverse_time) {
    std::vector<std::size_t> idx;
    for (const auto& name : eps_params) {
        auto i = sys.params->index(name);
        if (!i) fail(ErrorCode::UnknownSymbol, "eps parameter '" + name + "' not declared");
        idx.push_back(*i);
    }

    auto split = [&](const PlanarPoly& F, PlanarPoly& deg0, PlanarPoly& deg1) {
        deg0 = PlanarPoly(F.table());
        deg1 = PlanarPoly(F.table());
        for (const auto& [key, coeff] : F.terms()) {
            ParamPoly c0(coeff.table()), c1(coeff.table());
            for (const auto& [mono, c] : coeff.terms()) {
                int d = 0;
                for (auto i : idx) d += mono[i];
                if (d == 0)
                    c0.add_term(mono, c);
                else if (d == 1)
                    c1.add_term(mono, c);
                else
                    fail(ErrorCode::NonlinearInEps, "monomial of degree " + std::to_string(d) +
                                                        " in the rescaled parameters");
            }
            deg0.add_term(key, c0);
            deg1.add_term(key, c1);
        }
    };

    PlanarPoly p0, p1, q0, q1;
    split(sys.P, p0, p1);
    split(sys.Q, q0, q1);

    SymTab t = sys.params;
    if (p0 != -PlanarPoly::var_y(t) || q0 != PlanarPoly::var_x(t))
        fail(ErrorCode::NotPerturbationOfLinearCenter,
             "the eps^0 part must be exactly xdot = -y, ydot = x");

    PerturbedSystem ps;
    ps.params = t;
    ps.time_reversed = reverse_time;
    if (reverse_time) {
        ps.f1 = -p1;
        ps.g1 = -q1;
    } else {
        ps.f1 = p1;
        ps.g1 = q1;
    }
    ps.vanishes_at_origin = ps.f1.coeff(0, 0).is_zero() && ps.g1.coeff(0, 0).is_zero();
    return ps;
}

PlanarSystem reassemble(const PerturbedSystem& ps) {
    SymTab t = ps.params;
    PlanarPoly hy = PlanarPoly::var_y(t);  // dH/dy
    PlanarPoly hx = PlanarPoly::var_x(t);  // dH/dx
    PlanarSystem sys;
    sys.params = t;
    if (ps.time_reversed) {
        sys.P = -(hy + ps.f1);
        sys.Q = -(-hx + ps.g1);
    } else {
        sys.P = -hy + ps.f1;
        sys.Q = hx + ps.g1;
    }
    return sys;
}

}  // namespace cyclelab
