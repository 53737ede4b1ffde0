#include "koszul/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace koszul {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer for expressions (relations, scalars, moduli). Tracks columns so
// errors point into the source line.

struct Token {
    enum Kind { Number, Name, Op, End } kind = End;
    std::string text;
    size_t col = 0;
};

class Lexer {
public:
    Lexer(const std::string& s, size_t line, size_t col_offset = 0)
        : s_(s), line_(line), off_(col_offset) {
        advance();
    }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, off_ + pos_, msg); }
    size_t line() const { return line_; }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        tok_.col = off_ + pos_ + 1;
        if (pos_ >= s_.size() || s_[pos_] == '#') {
            tok_ = {Token::End, "", tok_.col};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_ = {Token::Number, s_.substr(start, pos_ - start), tok_.col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Name, s_.substr(start, pos_ - start), tok_.col};
            return;
        }
        if (std::string("+-*^/()").find(c) != std::string::npos) {
            ++pos_;
            tok_ = {Token::Op, std::string(1, c), tok_.col};
            return;
        }
        throw ParseError(line_, tok_.col, std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    size_t line_;
    size_t off_;
    size_t pos_ = 0;
    Token tok_;
};

// Recursive-descent parser producing free-algebra polynomials. Generators
// resolve through `gen_index`; the name "t" resolves to the field scalar.
class ExprParser {
public:
    ExprParser(const Field& f, const Presentation* pres, Lexer& lx) : f_(f), pres_(pres), lx_(lx) {}

    NcPoly parse() {
        NcPoly p = expr();
        if (lx_.peek().kind != Token::End)
            throw ParseError(lx_.line(), lx_.peek().col, "trailing input '" + lx_.peek().text + "'");
        return p;
    }

private:
    NcPoly expr() {
        NcPoly acc;
        bool neg = false;
        if (lx_.peek().kind == Token::Op && (lx_.peek().text == "-" || lx_.peek().text == "+")) {
            neg = lx_.next().text == "-";
        }
        NcPoly t = term();
        nc_add_scaled(f_, acc, neg ? f_.from_int(-1) : f_.one(), t);
        while (lx_.peek().kind == Token::Op && (lx_.peek().text == "+" || lx_.peek().text == "-")) {
            bool minus = lx_.next().text == "-";
            NcPoly u = term();
            nc_add_scaled(f_, acc, minus ? f_.from_int(-1) : f_.one(), u);
        }
        return acc;
    }

    NcPoly term() {
        NcPoly acc = factor();
        while (lx_.peek().kind == Token::Op && lx_.peek().text == "*") {
            lx_.next();
            acc = nc_mul(f_, acc, factor());
        }
        return acc;
    }

    NcPoly factor() {
        NcPoly base = atom();
        if (lx_.peek().kind == Token::Op && lx_.peek().text == "^") {
            Token caret = lx_.next();
            Token e = lx_.next();
            if (e.kind != Token::Number)
                throw ParseError(lx_.line(), caret.col, "exponent must be a nonnegative integer");
            long n = std::stol(e.text);
            NcPoly acc = nc_monomial(f_, Word(), f_.one());
            for (long i = 0; i < n; ++i) acc = nc_mul(f_, acc, base);
            return acc;
        }
        return base;
    }

    NcPoly atom() {
        Token t = lx_.next();
        if (t.kind == Token::Number) {
            Rational num(t.text);
            if (lx_.peek().kind == Token::Op && lx_.peek().text == "/") {
                // a '/' directly after a number is a fraction (1/2); keep it
                // distinct from the field-name syntax, which never reaches here
                lx_.next();
                Token d = lx_.next();
                if (d.kind != Token::Number)
                    throw ParseError(lx_.line(), t.col, "expected integer denominator");
                num /= Rational(d.text);
                num.canonicalize();
            }
            num.canonicalize();
            return nc_monomial(f_, Word(), f_.from_rational(num));
        }
        if (t.kind == Token::Name) {
            if (t.text == "t" && (!pres_ || pres_->gen_index("t") < 0)) {
                if (f_.is_rationals())
                    throw ParseError(lx_.line(), t.col, "scalar t used over field Q");
                return nc_monomial(f_, Word(), f_.t());
            }
            if (!pres_) throw ParseError(lx_.line(), t.col, "unexpected name '" + t.text + "'");
            int gi = pres_->gen_index(t.text);
            if (gi < 0)
                throw ParseError(lx_.line(), t.col, "unknown generator name '" + t.text + "'");
            return nc_monomial(f_, Word(1, static_cast<char>(gi)), f_.one());
        }
        if (t.kind == Token::Op && t.text == "(") {
            NcPoly p = expr();
            Token close = lx_.next();
            if (!(close.kind == Token::Op && close.text == ")"))
                throw ParseError(lx_.line(), t.col, "unbalanced parenthesis");
            return p;
        }
        throw ParseError(lx_.line(), t.col,
                         t.kind == Token::End ? "unexpected end of expression"
                                              : "unexpected token '" + t.text + "'");
    }

    const Field& f_;
    const Presentation* pres_;
    Lexer& lx_;
};

NcPoly parse_expr_line(const Field& f, const Presentation* pres, const std::string& s, size_t line,
                       size_t col_offset = 0) {
    Lexer lx(s, line, col_offset);
    ExprParser ep(f, pres, lx);
    return ep.parse();
}

Field parse_field_spec(const std::string& spec, size_t line) {
    std::string s = spec;
    // trim
    auto l = s.find_first_not_of(" \t");
    auto r = s.find_last_not_of(" \t");
    s = (l == std::string::npos) ? "" : s.substr(l, r - l + 1);
    if (s == "Q") return Field::rationals();
    const std::string prefix = "Q[t]/(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
        std::string body = s.substr(prefix.size(), s.size() - prefix.size() - 1);
        // modulus lives in Q[t]; parse over a scratch field where t is a
        // placeholder generator so powers of t come out as words
        Presentation scratch;
        scratch.field = Field::rationals();
        scratch.generators.push_back({"t", 1, false});
        NcPoly p = parse_expr_line(scratch.field, &scratch, body, line);
        std::vector<Rational> coeffs;
        for (const auto& [w, c] : p) {
            size_t deg = w.size();
            if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
            coeffs[deg] += c.c[0];
        }
        if (coeffs.size() < 2) throw ParseError(line, 1, "modulus must have degree >= 1");
        for (const auto& q : coeffs)
            if (q.get_den() != 1)
                throw ParseError(line, 1, "modulus must have integer coefficients");
        if (coeffs.back() != 1) throw ParseError(line, 1, "modulus must be monic");
        return Field::number_field(coeffs);
    }
    throw ParseError(line, 1, "field must be Q or Q[t]/(<monic integer polynomial>)");
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

int Presentation::gen_index(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    return -1;
}

int Presentation::weight_of_word(const Word& w) const {
    int s = 0;
    for (char c : w) s += generators[static_cast<size_t>(c)].weight;
    return s;
}

bool Presentation::weighted() const {
    const Field& f = field;
    for (const auto& rel : relations) {
        std::optional<int> wq;
        size_t g = num_gens();
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j)
                if (!f.is_zero(rel.quadratic[i * g + j])) {
                    int w = generators[i].weight + generators[j].weight;
                    if (wq && *wq != w) return false;
                    wq = w;
                }
        for (size_t i = 0; i < g; ++i)
            if (!f.is_zero(rel.linear[i]) && (!wq || generators[i].weight != *wq)) return false;
        if (!f.is_zero(rel.constant)) return false;  // weight 0 vs quadratic weight >= 2
    }
    return true;
}

bool Presentation::curved() const {
    for (const auto& rel : relations)
        if (!field.is_zero(rel.constant)) return true;
    return false;
}

NcPoly parse_element(const Presentation& p, const std::string& text) {
    return parse_expr_line(p.field, &p, text, 0);
}

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    bool field_seen = false, gens_seen = false;
    enum Section { None, Relations, BimoduleSec } section = None;
    Bimodule* current_bimodule = nullptr;

    std::istringstream is(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        std::vector<std::string> toks = split_ws(line);
        std::string head = toks[0];
        // section keywords may carry a trailing colon
        if (!head.empty() && head.back() == ':') head.pop_back();

        if (head == "field") {
            auto pos = line.find("field");
            p.field = parse_field_spec(line.substr(pos + 5), lineno);
            field_seen = true;
            section = None;
            continue;
        }
        if (head == "generators") {
            if (!field_seen) throw ParseError(lineno, 1, "field must be declared before generators");
            auto pos = line.find(head[0]);
            std::string rest = line.substr(line.find("generators") + 10);
            if (!rest.empty() && rest.front() == ':') rest = rest.substr(1);
            for (const auto& tok : split_ws(rest)) {
                Generator g;
                auto c = tok.find(':');
                if (c == std::string::npos) {
                    g.name = tok;
                } else {
                    g.name = tok.substr(0, c);
                    try {
                        g.weight = std::stoi(tok.substr(c + 1));
                    } catch (...) {
                        throw ParseError(lineno, 1, "bad generator weight in '" + tok + "'");
                    }
                    if (g.weight <= 0)
                        throw ParseError(lineno, 1, "generator weight must be positive");
                    g.weight_declared = true;
                }
                if (g.name.empty() || !std::isalpha(static_cast<unsigned char>(g.name[0])))
                    throw ParseError(lineno, 1, "bad generator name '" + tok + "'");
                if (p.gen_index(g.name) >= 0)
                    throw ParseError(lineno, 1, "duplicate generator name '" + g.name + "'");
                if (g.name == "t" && !p.field.is_rationals())
                    throw ParseError(lineno, 1,
                                     "generator name 't' collides with the field scalar t");
                p.generators.push_back(g);
            }
            if (p.generators.empty()) throw ParseError(lineno, 1, "no generators declared");
            if (p.generators.size() > 120) throw ParseError(lineno, 1, "too many generators");
            gens_seen = true;
            (void)pos;
            section = None;
            continue;
        }
        if (head == "relations") {
            if (!gens_seen) throw ParseError(lineno, 1, "generators must precede relations");
            section = Relations;
            continue;
        }
        if (head == "bimodule") {
            if (!gens_seen) throw ParseError(lineno, 1, "generators must precede bimodule");
            if (toks.size() != 3) throw ParseError(lineno, 1, "usage: bimodule <name> <dim>");
            Bimodule b;
            b.name = toks[1];
            try {
                long d = std::stol(toks[2]);
                if (d <= 0) throw std::invalid_argument("");
                b.dim = static_cast<size_t>(d);
            } catch (...) {
                throw ParseError(lineno, 1, "bimodule dimension must be a positive integer");
            }
            if (p.bimodules.count(b.name))
                throw ParseError(lineno, 1, "duplicate bimodule '" + b.name + "'");
            Matrix z(p.field, b.dim, b.dim);
            b.left.assign(p.num_gens(), z);
            b.right.assign(p.num_gens(), z);
            current_bimodule = &p.bimodules.emplace(b.name, std::move(b)).first->second;
            section = BimoduleSec;
            continue;
        }
        if (head == "attest" && toks.size() == 2 && toks[1] == "koszul") {
            p.attest_koszul = true;
            continue;
        }

        if (section == Relations) {
            NcPoly poly = parse_expr_line(p.field, &p, line, lineno);
            FilteredRelation rel;
            size_t g = p.num_gens();
            rel.quadratic = zero_vec(p.field, g * g);
            rel.linear = zero_vec(p.field, g);
            rel.constant = p.field.zero();
            for (const auto& [w, c] : poly) {
                if (w.size() > 2)
                    throw ParseError(lineno, 1, "relation contains a word of length > 2");
                if (w.size() == 2)
                    p.field.add_in_place(
                        rel.quadratic[static_cast<size_t>(w[0]) * g + static_cast<size_t>(w[1])],
                        c);
                else if (w.size() == 1)
                    p.field.add_in_place(rel.linear[static_cast<size_t>(w[0])], c);
                else
                    p.field.add_in_place(rel.constant, c);
            }
            if (vec_is_zero(p.field, rel.quadratic))
                throw ParseError(lineno, 1, "relation has zero quadratic part");
            p.relations.push_back(std::move(rel));
            continue;
        }
        if (section == BimoduleSec) {
            if ((head == "left" || head == "right") && toks.size() >= 2) {
                std::string gname = toks[1];
                if (!gname.empty() && gname.back() == ':') gname.pop_back();
                int gi = p.gen_index(gname);
                if (gi < 0)
                    throw ParseError(lineno, 1, "unknown generator name '" + gname + "'");
                auto colon = line.find(':', line.find(head) + head.size());
                if (colon == std::string::npos)
                    throw ParseError(lineno, 1, "expected ':' after generator name");
                std::string rows_text = line.substr(colon + 1);
                Bimodule& b = *current_bimodule;
                Matrix m(p.field, b.dim, b.dim);
                std::vector<std::string> rows;
                std::string piece;
                std::istringstream rs(rows_text);
                while (std::getline(rs, piece, ';')) rows.push_back(piece);
                if (rows.size() != b.dim)
                    throw ParseError(lineno, 1, "expected " + std::to_string(b.dim) +
                                                    " matrix rows separated by ';'");
                for (size_t r = 0; r < b.dim; ++r) {
                    std::vector<std::string> entries = split_ws(rows[r]);
                    if (entries.size() != b.dim)
                        throw ParseError(lineno, 1, "expected " + std::to_string(b.dim) +
                                                        " entries per row");
                    for (size_t c = 0; c < b.dim; ++c) {
                        NcPoly e = parse_expr_line(p.field, &p, entries[c], lineno);
                        for (const auto& [w, cf] : e) {
                            if (!w.empty())
                                throw ParseError(lineno, 1, "bimodule entries must be scalars");
                            m.at(r, c) = cf;
                        }
                    }
                }
                (head == "left" ? b.left : b.right)[static_cast<size_t>(gi)] = m;
                continue;
            }
            throw ParseError(lineno, 1, "expected 'left <gen>:' or 'right <gen>:' in bimodule");
        }
        throw ParseError(lineno, 1, "unexpected line '" + toks[0] + "'");
    }
    if (!field_seen) throw ParseError(lineno + 1, 1, "missing field declaration");
    if (!gens_seen) throw ParseError(lineno + 1, 1, "missing generators declaration");
    return p;
}

ValidationReport validate(const Presentation& p) {
    ValidationReport rep;
    rep.num_generators = p.num_gens();
    rep.dim_R = p.relations.size();
    const Field& f = p.field;

    if (!p.relations.empty()) {
        Matrix q(f, p.relations.size(), p.num_gens() * p.num_gens());
        for (size_t i = 0; i < p.relations.size(); ++i) q.set_row(i, p.relations[i].quadratic);
        if (q.rank() != p.relations.size())
            throw KoszulError("linearly dependent quadratic parts");
    }
    rep.weighted = p.weighted();
    rep.curved = p.curved();
    if (!rep.weighted) rep.notes.push_back("not weight-homogeneous; exact weighted slices unavailable");
    if (rep.curved) rep.notes.push_back("curved (some relation has a constant term)");
    if (p.attest_koszul) rep.notes.push_back("user attests gr A is Koszul");

    for (const auto& [name, b] : p.bimodules) {
        for (size_t i = 0; i < p.num_gens(); ++i)
            for (size_t j = 0; j < p.num_gens(); ++j) {
                Matrix lr = b.left[i].mul(b.right[j]);
                Matrix rl = b.right[j].mul(b.left[i]);
                if (!(lr == rl))
                    throw KoszulError("bimodule '" + name +
                                      "': left and right actions do not commute");
            }
    }
    return rep;
}

}  // namespace koszul
