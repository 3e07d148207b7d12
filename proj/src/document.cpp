#include "collage/document.hpp"

#include <algorithm>
#include <sstream>

#include "collage/errors.hpp"

namespace collage {

namespace {

struct Token {
    std::string text;
    std::size_t line = 0, col = 0;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::string cur;
    std::size_t cur_col = 0;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back({cur, line, cur_col});
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '#') { // comment to end of line
            flush();
            while (i < text.size() && text[i] != '\n') ++i;
            --i;
            continue;
        }
        if (ch == '\n') {
            flush();
            ++line;
            col = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
            flush();
            ++col;
            continue;
        }
        if (ch == '{' || ch == '}' || ch == '|' || ch == ':' || ch == '(' || ch == ')' ||
            ch == '=') {
            flush();
            out.push_back({std::string(1, ch), line, col});
            ++col;
            continue;
        }
        if (cur.empty()) cur_col = col;
        cur.push_back(ch);
        ++col;
    }
    flush();
    return out;
}

[[noreturn]] void syntax_error(const Token& t, const std::string& msg) {
    throw SyntaxError(msg + " at " + std::to_string(t.line) + ":" + std::to_string(t.col) +
                      (t.text.empty() ? "" : " near '" + t.text + "'"));
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    CollageDocument run() {
        expect("collage/1");
        CollageDocument doc;
        while (!done()) {
            const Token& t = peek();
            if (t.text == "irrational")
                parse_irrational(doc);
            else if (t.text == "chart")
                parse_chart(doc);
            else if (t.text == "gluing")
                parse_gluing(doc);
            else if (t.text == "point")
                parse_point(doc);
            else if (t.text == "flag")
                parse_flag(doc);
            else if (t.text == "family")
                parse_family(doc);
            else
                syntax_error(t, "expected a section keyword");
        }
        return doc;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek() const {
        if (done()) {
            static Token eof{"<end of input>", 0, 0};
            return eof;
        }
        return toks_[pos_];
    }
    Token next() {
        Token t = peek();
        if (!done()) ++pos_;
        return t;
    }
    void expect(const std::string& text) {
        Token t = next();
        if (t.text != text) syntax_error(t, "expected '" + text + "'");
    }
    bool accept(const std::string& text) {
        if (!done() && peek().text == text) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string ident() {
        Token t = next();
        if (t.text.empty() || !(std::isalpha(static_cast<unsigned char>(t.text[0])) ||
                                t.text[0] == '_'))
            syntax_error(t, "expected an identifier");
        return t.text;
    }

    Rational rational() {
        Token t = next();
        try {
            return parse_rational(t.text);
        } catch (const SyntaxError&) {
            syntax_error(t, "expected a rational number");
        }
    }

    Int integer() {
        Token t = next();
        Rational q;
        try {
            q = parse_rational(t.text);
        } catch (const SyntaxError&) {
            syntax_error(t, "expected an integer");
        }
        if (den(q) != 1) syntax_error(t, "expected an integer");
        return num(q);
    }

    std::size_t count() {
        Int n = integer();
        if (n < 0) syntax_error(toks_[pos_ - 1], "expected a nonnegative count");
        return static_cast<std::size_t>(n);
    }

    void parse_irrational(CollageDocument& doc) {
        expect("irrational");
        std::string name = ident();
        expect("=");
        Rational lo = rational(), hi = rational();
        try {
            doc.irrationals.declare(name, lo, hi);
        } catch (const SemanticError& e) {
            syntax_error(toks_[pos_ - 1], e.what());
        }
    }

    FlaggedInequality parse_ineq(std::size_t dim) {
        FlaggedInequality q;
        IVec slope;
        for (std::size_t i = 0; i < dim; ++i) slope.push_back(integer());
        expect("|");
        Rational c = rational();
        q.strict = accept("strict");
        Int g = vector_gcd(slope);
        if (g > 1) {
            for (auto& x : slope) x /= g;
            c /= Rational(g);
        }
        q.fn = AffineFunction{std::move(slope), std::move(c)};
        return q;
    }

    void parse_chart(CollageDocument& doc) {
        expect("chart");
        DocChart chart;
        chart.name = ident();
        expect("{");
        expect("dim");
        chart.dim = count();
        while (!accept("}")) {
            expect("ineq");
            chart.ineqs.push_back(parse_ineq(chart.dim));
        }
        doc.charts.push_back(std::move(chart));
    }

    std::size_t chart_dim(const CollageDocument& doc, const std::string& name,
                          const Token& at) {
        for (const auto& c : doc.charts)
            if (c.name == name) return c.dim;
        throw SemanticError("unknown chart '" + name + "' at " + std::to_string(at.line) +
                            ":" + std::to_string(at.col));
    }

    void parse_gluing(CollageDocument& doc) {
        expect("gluing");
        DocGluing g;
        g.name = ident();
        expect(":");
        Token at = peek();
        g.from = ident();
        expect("->");
        g.to = ident();
        std::size_t dim_from = chart_dim(doc, g.from, at);
        std::size_t dim_to = chart_dim(doc, g.to, at);
        expect("{");
        for (std::size_t r = 0; r < dim_to; ++r) {
            expect("row");
            IVec row;
            for (std::size_t cidx = 0; cidx < dim_from; ++cidx) row.push_back(integer());
            g.matrix.push_back(std::move(row));
        }
        expect("shift");
        for (std::size_t i = 0; i < dim_to; ++i) g.shift.push_back(rational());
        expect("dom");
        expect("{");
        while (!accept("}")) {
            expect("ineq");
            g.dom.push_back(parse_ineq(dim_from));
        }
        if (accept("cod")) {
            expect("{");
            std::vector<FlaggedInequality> cod;
            while (!accept("}")) {
                expect("ineq");
                cod.push_back(parse_ineq(dim_to));
            }
            g.cod = std::move(cod);
        }
        expect("}");
        doc.gluings.push_back(std::move(g));
    }

    ExtendedScalar extended(const IrrationalTable& table) {
        Token t = next();
        if (t.text == "-inf") return ExtendedScalar::neg_infinity();
        // grammar: term(+term|-term)*, term = rational[*name] | name
        ExtendedScalar acc{Rational(0)};
        const std::string& s = t.text;
        std::size_t i = 0;
        bool any = false;
        while (i < s.size()) {
            int sgn = 1;
            if (s[i] == '+') ++i;
            else if (s[i] == '-') {
                sgn = -1;
                ++i;
            }
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            Rational coeff = 1;
            bool have_number = j > i;
            if (have_number) {
                try {
                    coeff = parse_rational(s.substr(i, j - i));
                } catch (const SyntaxError&) {
                    syntax_error(t, "malformed coordinate literal");
                }
                i = j;
            }
            coeff *= sgn;
            if (i < s.size() && s[i] == '*') ++i;
            if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                std::size_t k = i;
                while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_'))
                    ++k;
                std::string name = s.substr(i, k - i);
                std::size_t idx = table.find(name);
                if (idx == IrrationalTable::npos)
                    throw SemanticError("undeclared irrational '" + name + "' at " +
                                        std::to_string(t.line) + ":" + std::to_string(t.col));
                acc = acc + ExtendedScalar::generator(idx, coeff);
                i = k;
            } else if (have_number) {
                acc = acc + ExtendedScalar(coeff);
            } else {
                syntax_error(t, "malformed coordinate literal");
            }
            any = true;
        }
        if (!any) syntax_error(t, "empty coordinate literal");
        return acc;
    }

    void parse_point(CollageDocument& doc) {
        expect("point");
        DocPoint p;
        p.name = ident();
        expect(":");
        Token at = peek();
        p.chart = ident();
        std::size_t dim = chart_dim(doc, p.chart, at);
        expect("=");
        for (std::size_t i = 0; i < dim; ++i) p.coords.push_back(extended(doc.irrationals));
        if (accept("dir")) {
            IVec d;
            for (std::size_t i = 0; i < dim; ++i) d.push_back(integer());
            p.direction = std::move(d);
        }
        doc.points.push_back(std::move(p));
    }

    void parse_flag(CollageDocument& doc) {
        expect("flag");
        DocFlag f;
        f.name = ident();
        expect(":");
        Token at = peek();
        f.chart = ident();
        std::size_t dim = chart_dim(doc, f.chart, at);
        expect("at");
        f.at_point = ident();
        expect("=");
        while (accept("(")) {
            IVec u;
            for (std::size_t i = 0; i < dim; ++i) u.push_back(integer());
            expect(")");
            f.directions.push_back(std::move(u));
        }
        doc.flags.push_back(std::move(f));
    }

    void parse_family(CollageDocument& doc) {
        expect("family");
        DocFamily fam;
        fam.name = ident();
        expect("{");
        while (!accept("}")) {
            expect("piece");
            DocFamilyPiece piece;
            Token at = peek();
            piece.chart = ident();
            std::size_t dim = chart_dim(doc, piece.chart, at);
            expect("{");
            while (!accept("}")) {
                expect("ineq");
                piece.ineqs.push_back(parse_ineq(dim));
            }
            fam.pieces.push_back(std::move(piece));
        }
        doc.families.push_back(std::move(fam));
    }
};

} // namespace

CollageDocument parse_document(const std::string& text) {
    return Parser(tokenize(text)).run();
}

std::size_t CollageDocument::chart_index(const std::string& name) const {
    for (std::size_t i = 0; i < charts.size(); ++i)
        if (charts[i].name == name) return i;
    throw SemanticError("unknown chart '" + name + "'");
}

const DocPoint& CollageDocument::point(const std::string& name) const {
    for (const auto& p : points)
        if (p.name == name) return p;
    throw SemanticError("unknown point '" + name + "'");
}

const DocFlag& CollageDocument::flag(const std::string& name) const {
    for (const auto& f : flags)
        if (f.name == name) return f;
    throw SemanticError("unknown flag '" + name + "'");
}

Polyhedron CollageDocument::build_chart(std::size_t index) const {
    std::vector<AffineFunction> sys;
    for (const auto& q : charts[index].ineqs) sys.push_back(q.fn);
    return canonicalize(std::move(sys), charts[index].dim);
}

Collage CollageDocument::build_collage() const {
    Collage c;
    for (std::size_t i = 0; i < charts.size(); ++i) c.charts.push_back(build_chart(i));
    for (const auto& g : gluings) {
        Gluing out;
        out.from = chart_index(g.from);
        out.to = chart_index(g.to);
        out.map = AffineMap{g.matrix, g.shift};
        out.dom = make_region(g.dom, charts[out.from].dim);
        out.cod = g.cod ? make_region(*g.cod, charts[out.to].dim)
                        : map_region(out.dom, out.map);
        c.gluings.push_back(std::move(out));
    }
    return c;
}

OpenFamily CollageDocument::build_family(const std::string& name) const {
    const DocFamily* fam = nullptr;
    for (const auto& f : families)
        if (f.name == name) fam = &f;
    if (!fam) throw SemanticError("unknown family '" + name + "'");
    OpenFamily u(charts.size());
    for (const auto& piece : fam->pieces) {
        std::size_t idx = chart_index(piece.chart);
        u[idx].push_back(make_region(piece.ineqs, charts[idx].dim));
    }
    return u;
}

ExtendedPoint CollageDocument::build_point(const DocPoint& p) const {
    return ExtendedPoint{p.coords, p.direction};
}

std::string format_extended(const ExtendedScalar& v, const IrrationalTable& table) {
    if (v.is_neg_infinity()) return "-inf";
    std::string s;
    bool first = true;
    if (v.finite_part() != 0 || v.irrational_coeffs().empty()) {
        s += to_string(v.finite_part());
        first = false;
    }
    for (const auto& [k, c] : v.irrational_coeffs()) {
        std::string term = to_string(c) + "*" + table.at(k).name;
        if (!first && c > 0) s += "+";
        s += term;
        first = false;
    }
    return s;
}

namespace {

void emit_ineqs(std::ostringstream& out, const std::vector<FlaggedInequality>& ineqs,
                const std::string& indent) {
    for (const auto& q : ineqs) {
        out << indent << "ineq";
        for (const auto& x : q.fn.slope) out << " " << to_string(x);
        out << " | " << to_string(q.fn.constant);
        if (q.strict) out << " strict";
        out << "\n";
    }
}

} // namespace

std::string serialize(const CollageDocument& doc) {
    std::ostringstream out;
    out << "collage/1\n";
    for (std::size_t i = 0; i < doc.irrationals.size(); ++i) {
        const auto& g = doc.irrationals.at(i);
        out << "\nirrational " << g.name << " = " << to_string(g.lo) << " "
            << to_string(g.hi) << "\n";
    }
    for (const auto& c : doc.charts) {
        out << "\nchart " << c.name << " {\n  dim " << c.dim << "\n";
        emit_ineqs(out, c.ineqs, "  ");
        out << "}\n";
    }
    for (const auto& g : doc.gluings) {
        out << "\ngluing " << g.name << " : " << g.from << " -> " << g.to << " {\n";
        for (const auto& row : g.matrix) {
            out << "  row";
            for (const auto& x : row) out << " " << to_string(x);
            out << "\n";
        }
        out << "  shift";
        for (const auto& q : g.shift) out << " " << to_string(q);
        out << "\n  dom {\n";
        emit_ineqs(out, g.dom, "    ");
        out << "  }\n";
        if (g.cod) {
            out << "  cod {\n";
            emit_ineqs(out, *g.cod, "    ");
            out << "  }\n";
        }
        out << "}\n";
    }
    for (const auto& p : doc.points) {
        out << "\npoint " << p.name << " : " << p.chart << " =";
        for (std::size_t i = 0; i < p.coords.size(); ++i)
            out << (i ? ", " : " ") << format_extended(p.coords[i], doc.irrationals);
        if (p.direction) {
            out << " dir";
            for (const auto& d : *p.direction) out << " " << to_string(d);
        }
        out << "\n";
    }
    for (const auto& f : doc.flags) {
        out << "\nflag " << f.name << " : " << f.chart << " at " << f.at_point << " =";
        for (const auto& u : f.directions) {
            out << " (";
            for (std::size_t i = 0; i < u.size(); ++i) out << (i ? " " : "") << to_string(u[i]);
            out << ")";
        }
        out << "\n";
    }
    for (const auto& fam : doc.families) {
        out << "\nfamily " << fam.name << " {\n";
        for (const auto& piece : fam.pieces) {
            out << "  piece " << piece.chart << " {\n";
            emit_ineqs(out, piece.ineqs, "    ");
            out << "  }\n";
        }
        out << "}\n";
    }
    return out.str();
}

} // namespace collage
