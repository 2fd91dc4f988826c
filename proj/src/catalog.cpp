#include "nal/catalog.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nal/errors.hpp"
#include "nal/expr_parser.hpp"

namespace nal {

// Defined in the generated catalog_data.cpp.
extern const char* embedded_catalog_text();

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;
    std::string source;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    char get() {
        char c = s[pos++];
        if (c == '\n') { ++line; col = 1; }
        else ++col;
        return c;
    }
    struct Mark { size_t pos; int line, col; };
    Mark mark() const { return {pos, line, col}; }
    void rewind(const Mark& m) { pos = m.pos; line = m.line; col = m.col; }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " [" + source + "]", line, col);
    }
    std::string read_ident() {
        skip_ws();
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            out.push_back(get());
        return out;
    }
    std::string read_string() {
        skip_ws();
        if (eof() || peek() != '"') fail("expected string literal");
        get();
        std::string out;
        while (!eof() && peek() != '"') out.push_back(get());
        if (eof()) fail("unterminated string");
        get();
        return out;
    }
    long read_int() {
        skip_ws();
        bool neg = false;
        if (!eof() && (peek() == '-' || peek() == '+')) neg = (get() == '-');
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            v = v * 10 + (get() - '0');
        return neg ? -v : v;
    }
    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    bool accept(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            get();
            return true;
        }
        return false;
    }
    void optional_colon() { accept(':'); }

    /// Raw text until an unparenthesised ';' or '}' (not consumed).
    /// Expressions are single-line: a newline or comment ends them too.
    std::string read_expr_text(int* at_line) {
        skip_ws();
        *at_line = line;
        std::string out;
        int depth = 0;
        while (!eof()) {
            char c = peek();
            if (c == '\n' || c == '#') break;
            if (depth == 0 && (c == ';' || c == '}' || c == ',' || c == ']')) break;
            if (c == '(') ++depth;
            if (c == ')') { if (depth == 0) break; --depth; }
            out.push_back(get());
        }
        return out;
    }
    /// Skip the remainder of a block whose '{' has been consumed.
    void skip_block() {
        int depth = 1;
        while (!eof() && depth > 0) {
            char c = get();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (c == '"') {
                while (!eof() && peek() != '"') get();
                if (!eof()) get();
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                --depth;
            }
        }
    }
};

std::map<std::string, int> ident_table(const std::vector<std::string>& names) {
    std::map<std::string, int> t;
    for (const std::string& n : names) t[n] = symbols::intern(n);
    return t;
}

std::vector<std::string> parse_name_list(Cursor& c) {
    std::vector<std::string> out;
    c.expect('[');
    if (c.accept(']')) return out;
    while (true) {
        out.push_back(c.read_ident());
        if (c.accept(']')) break;
        c.expect(',');
    }
    return out;
}

Constraints parse_constraint_list(Cursor& c, const std::map<std::string, int>& idents) {
    Constraints con;
    c.expect('[');
    if (c.accept(']')) return con;
    while (true) {
        int at_line = 0;
        std::string text = c.read_expr_text(&at_line);
        Scalar s = ExprParser(text, idents, at_line).parse_scalar();
        if (!s.is_polynomial())
            c.fail("constraint must be a polynomial");
        con.add(s.num());
        if (c.accept(']')) break;
        c.expect(',');
    }
    return con;
}

std::vector<std::pair<std::string, Scalar>> parse_binding_block(
        Cursor& c, const std::map<std::string, int>& idents) {
    std::vector<std::pair<std::string, Scalar>> out;
    c.expect('{');
    while (!c.accept('}')) {
        std::string name = c.read_ident();
        c.expect('=');
        int at_line = 0;
        std::string text = c.read_expr_text(&at_line);
        out.emplace_back(name, ExprParser(text, idents, at_line).parse_scalar());
        c.accept(';');
    }
    return out;
}

std::vector<std::vector<Scalar>> parse_matrix_block(
        Cursor& c, const std::map<std::string, int>& idents, int dim) {
    std::vector<std::vector<Scalar>> rows;
    c.expect('{');
    while (!c.accept('}')) {
        c.read_ident();  // E1 / F1 / any row label
        c.expect('=');
        int at_line = 0;
        std::string text = c.read_expr_text(&at_line);
        rows.push_back(ExprParser(text, idents, at_line).parse_vector(dim));
        c.accept(';');
    }
    return rows;
}

Matrix rows_to_matrix(const std::vector<std::vector<Scalar>>& rows) {
    return Matrix::from_rows(rows);
}

// theta form expression: sum of [coeff *] Delta(i,j) | Nabla(i,j)
Matrix parse_form_expr(const std::string& text, const std::map<std::string, int>& idents,
                       int dim, int at_line) {
    Matrix acc(dim, dim);
    size_t pos = 0;
    auto fail = [&](const std::string& m) { throw ParseError(m, at_line, 1); };
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
        }
        // find Delta( or Nabla( at top level of this term
        size_t dpos = std::string::npos;
        bool nabla = false;
        int depth = 0;
        for (size_t i = pos; i + 6 <= text.size(); ++i) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            if (depth == 0 &&
                (text.compare(i, 6, "Delta(") == 0 || text.compare(i, 6, "Nabla(") == 0)) {
                dpos = i;
                nabla = text.compare(i, 6, "Nabla(") == 0;
                break;
            }
        }
        if (dpos == std::string::npos) fail("expected Delta(i,j) or Nabla(i,j)");
        std::string coeff_text = text.substr(pos, dpos - pos);
        // strip trailing '*'
        while (!coeff_text.empty() &&
               (std::isspace(static_cast<unsigned char>(coeff_text.back())) ||
                coeff_text.back() == '*'))
            coeff_text.pop_back();
        Scalar coeff(1);
        if (!coeff_text.empty())
            coeff = ExprParser(coeff_text, idents, at_line).parse_scalar();
        if (sign < 0) coeff = -coeff;
        size_t close = text.find(')', dpos);
        if (close == std::string::npos) fail("unterminated Delta/Nabla");
        std::string args = text.substr(dpos + 6, close - dpos - 6);
        size_t comma = args.find(',');
        if (comma == std::string::npos) fail("Delta/Nabla needs two indices");
        int fi = std::stoi(args.substr(0, comma));
        int fj = std::stoi(args.substr(comma + 1));
        if (fi < 1 || fj < 1 || fi > dim || fj > dim || fi == fj)
            fail("Delta/Nabla index out of range");
        Matrix base = nabla ? nabla_form(fi, fj, dim) : delta_form(fi, fj, dim);
        acc = acc + base.mul_scalar(coeff);
        pos = close + 1;
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        // next must be +/- or end; handled at loop top
    }
    return acc;
}

} // namespace

class CatalogParser {
public:
    CatalogParser(const std::string& text, const std::string& source) : c_{text} {
        c_.source = source;
    }

    Catalog parse() {
        Catalog cat;
        while (true) {
            c_.skip_ws();
            if (c_.eof()) break;
            std::string kind = c_.read_ident();
            if (kind == "algebra") parse_algebra(&cat);
            else if (kind == "degeneration") parse_degeneration(&cat);
            else if (kind == "certificate") parse_certificate(&cat);
            else if (kind == "extension_case") parse_extension(&cat);
            else c_.fail("unknown block kind '" + kind + "'");
        }
        return cat;
    }

private:
    Cursor c_;

    void parse_algebra(Catalog* cat) {
        CatalogEntry e;
        e.name = c_.read_string();
        c_.expect('{');
        std::map<std::string, int> idents;
        std::vector<std::tuple<int, int, std::vector<Scalar>>> rows;
        while (!c_.accept('}')) {
            std::string field = c_.read_ident();
            c_.optional_colon();
            if (field == "dim") {
                e.dim = static_cast<int>(c_.read_int());
            } else if (field == "symmetry") {
                std::string s = c_.read_ident();
                if (s == "none") e.symmetry = Symmetry::None;
                else if (s == "commutative") e.symmetry = Symmetry::Commutative;
                else if (s == "anticommutative") e.symmetry = Symmetry::Anticommutative;
                else c_.fail("unknown symmetry '" + s + "'");
            } else if (field == "params") {
                e.params = parse_name_list(c_);
                idents = ident_table(e.params);
                for (const std::string& p : e.params)
                    e.param_ids.push_back(idents[p]);
            } else if (field == "constraints") {
                e.constraints = parse_constraint_list(c_, idents);
            } else if (field == "provenance") {
                e.provenance = c_.read_string();
            } else if (field == "table") {
                if (e.dim == 0) c_.fail("table before dim");
                c_.expect('{');
                while (!c_.accept('}')) {
                    c_.expect('(');
                    int i = static_cast<int>(c_.read_int());
                    c_.expect(',');
                    int j = static_cast<int>(c_.read_int());
                    c_.expect(')');
                    c_.expect('=');
                    int at_line = 0;
                    std::string text = c_.read_expr_text(&at_line);
                    auto v = ExprParser(text, idents, at_line).parse_vector(e.dim);
                    if (i < 1 || j < 1 || i > e.dim || j > e.dim)
                        c_.fail("table index out of range");
                    rows.emplace_back(i, j, std::move(v));
                    c_.accept(';');
                }
            } else if (field == "relation") {
                CatalogEntry::Relation r;
                c_.expect('{');
                while (!c_.accept('}')) {
                    std::string f = c_.read_ident();
                    c_.optional_colon();
                    if (f == "to") r.to = c_.read_string();
                    else if (f == "bind") r.bind = parse_binding_block(c_, idents);
                    else if (f == "witness") {
                        r.witness = rows_to_matrix(parse_matrix_block(c_, idents, e.dim));
                        r.has_witness = true;
                    } else c_.fail("unknown relation field '" + f + "'");
                    c_.accept(';');
                }
                e.relations.push_back(std::move(r));
            } else if (field == "aut_shape") {
                CatalogEntry::AutShape s;
                c_.expect('{');
                std::map<std::string, int> shape_idents = idents;
                while (!c_.accept('}')) {
                    std::string f = c_.read_ident();
                    c_.optional_colon();
                    if (f == "entries") {
                        s.entries = parse_name_list(c_);
                        for (const std::string& n : s.entries) {
                            int id = symbols::intern(n);
                            s.entry_ids.push_back(id);
                            shape_idents[n] = id;
                        }
                    } else if (f == "constraints") {
                        s.entry_constraints = parse_constraint_list(c_, shape_idents);
                    } else if (f == "at") {
                        s.at = parse_binding_block(c_, idents);
                    } else if (f == "matrix") {
                        s.matrix = rows_to_matrix(parse_matrix_block(c_, shape_idents, e.dim));
                    } else c_.fail("unknown aut_shape field '" + f + "'");
                    c_.accept(';');
                }
                e.aut_shapes.push_back(std::move(s));
            } else if (field == "opposite") {
                e.opposite.present = true;
                c_.expect('{');
                while (!c_.accept('}')) {
                    std::string f = c_.read_ident();
                    c_.optional_colon();
                    if (f == "self") {
                        e.opposite.self = true;
                    } else if (f == "witness") {
                        e.opposite.self_witness =
                            rows_to_matrix(parse_matrix_block(c_, idents, e.dim));
                    } else if (f == "to") {
                        e.opposite.to = c_.read_string();
                    } else if (f == "bind") {
                        e.opposite.bind = parse_binding_block(c_, idents);
                    } else c_.fail("unknown opposite field '" + f + "'");
                    c_.accept(';');
                }
            } else {
                c_.fail("unknown algebra field '" + field + "'");
            }
            c_.accept(';');
        }
        build_tensor(&e, rows);
        e.table_rows = std::move(rows);
        if (cat->entries_.count(e.name)) c_.fail("duplicate algebra '" + e.name + "'");
        cat->order_.push_back(e.name);
        cat->entries_[e.name] = std::move(e);
    }

    void build_tensor(CatalogEntry* e, const std::vector<std::tuple<int, int, std::vector<Scalar>>>& rows) {
        if (e->dim <= 0) c_.fail("algebra '" + e->name + "' missing dim");
        StructureTensor t(e->dim);
        t.params() = e->param_ids;
        t.constraints() = e->constraints;
        std::vector<bool> seen(static_cast<size_t>(e->dim) * e->dim, false);
        auto put = [&](int i, int j, const std::vector<Scalar>& v, bool negate) {
            size_t slot = static_cast<size_t>(i - 1) * e->dim + (j - 1);
            std::vector<Scalar> val = v;
            if (negate)
                for (Scalar& s : val) s = -s;
            if (seen[slot]) {
                for (int k = 0; k < e->dim; ++k)
                    if (!(t.at(i - 1, j - 1, k) == val[static_cast<size_t>(k)]))
                        c_.fail("conflicting table rows for (" + std::to_string(i) + "," +
                                std::to_string(j) + ") under declared symmetry");
                return;
            }
            seen[slot] = true;
            for (int k = 0; k < e->dim; ++k) t.at(i - 1, j - 1, k) = val[static_cast<size_t>(k)];
        };
        for (const auto& [i, j, v] : rows) {
            put(i, j, v, false);
            if (i != j && e->symmetry == Symmetry::Commutative) put(j, i, v, false);
            if (e->symmetry == Symmetry::Anticommutative) {
                if (i == j) {
                    bool zero = true;
                    for (const Scalar& s : v) zero = zero && s.is_zero();
                    if (!zero) c_.fail("nonzero diagonal under anticommutative symmetry");
                } else {
                    put(j, i, v, true);
                }
            }
        }
        e->tensor = std::move(t);
    }

    void parse_degeneration(Catalog* cat) {
        DegenerationBlock b;
        b.name = c_.read_string();
        c_.expect('{');
        auto body_start = c_.mark();
        std::map<std::string, int> idents{{"t", symbols::t()}};
        try {
            while (!c_.accept('}')) {
                std::string f = c_.read_ident();
                c_.optional_colon();
                if (f == "from") b.from = c_.read_string();
                else if (f == "to") b.to = c_.read_string();
                else if (f == "params") {
                    b.params = parse_name_list(c_);
                    for (const std::string& p : b.params) {
                        int id = symbols::intern(p);
                        b.param_ids.push_back(id);
                        idents[p] = id;
                    }
                } else if (f == "constraints") {
                    b.constraints = parse_constraint_list(c_, idents);
                } else if (f == "index") {
                    b.index = parse_binding_block(c_, idents);
                } else if (f == "target_bind") {
                    b.target_bind = parse_binding_block(c_, idents);
                } else if (f == "basis") {
                    b.basis_rows = parse_matrix_block(c_, idents, 3);
                } else {
                    c_.fail("unknown degeneration field '" + f + "'");
                }
                c_.accept(';');
            }
        } catch (const ParseError& pe) {
            b.parse_failed = true;
            b.parse_error = pe.what();
            c_.rewind(body_start);
            c_.skip_block();
        }
        cat->degenerations_.push_back(std::move(b));
    }

    void parse_certificate(Catalog* cat) {
        CertificateBlock b;
        b.name = c_.read_string();
        c_.expect('{');
        std::map<std::string, int> idents;
        while (!c_.accept('}')) {
            std::string f = c_.read_ident();
            c_.optional_colon();
            if (f == "from") b.from = c_.read_string();
            else if (f == "to") b.to = c_.read_string();
            else if (f == "conditions") {
                c_.expect('[');
                while (!c_.accept(']')) {
                    std::string a1 = c_.read_ident();   // A<p>
                    c_.expect('*');
                    std::string a2 = c_.read_ident();   // A<q>
                    c_.expect('<');
                    c_.expect('=');
                    c_.skip_ws();
                    int r;
                    if (!c_.eof() && c_.peek() == '0') {
                        c_.get();
                        r = 4;
                    } else {
                        std::string a3 = c_.read_ident();
                        r = std::stoi(a3.substr(1));
                    }
                    auto subspace_index = [this](const std::string& s) {
                        if (s.size() < 2 || s[0] != 'A') c_.fail("expected A<k> in condition");
                        return std::stoi(s.substr(1));
                    };
                    b.conditions.push_back({subspace_index(a1), subspace_index(a2), r});
                    c_.accept(',');
                }
            } else if (f == "staged_basis") {
                b.staged_rows = parse_matrix_block(c_, idents, 3);
            } else {
                c_.fail("unknown certificate field '" + f + "'");
            }
            c_.accept(';');
        }
        cat->certificates_.push_back(std::move(b));
    }

    void parse_extension(Catalog* cat) {
        ExtensionCaseBlock b;
        b.name = c_.read_string();
        c_.expect('{');
        std::map<std::string, int> idents;
        b.theta.forms.assign(3, Matrix(3, 3));
        while (!c_.accept('}')) {
            std::string f = c_.read_ident();
            c_.optional_colon();
            if (f == "params") {
                b.params = parse_name_list(c_);
                for (const std::string& p : b.params) {
                    int id = symbols::intern(p);
                    b.param_ids.push_back(id);
                    idents[p] = id;
                }
            } else if (f == "constraints") {
                b.constraints = parse_constraint_list(c_, idents);
            } else if (f == "bplus") {
                b.bplus = c_.read_string();
            } else if (f == "bind") {
                b.bind = parse_binding_block(c_, idents);
            } else if (f == "prewitness") {
                b.prewitness_rows = parse_matrix_block(c_, idents, 3);
            } else if (f == "theta") {
                c_.expect('{');
                while (!c_.accept('}')) {
                    std::string slot = c_.read_ident();  // B1..B3
                    if (slot.size() != 2 || slot[0] != 'B') c_.fail("expected B<k> in theta");
                    int k = slot[1] - '0';
                    if (k < 1 || k > 3) c_.fail("theta slot out of range");
                    c_.expect('=');
                    int at_line = 0;
                    std::string text = c_.read_expr_text(&at_line);
                    b.theta.forms[static_cast<size_t>(k - 1)] =
                        parse_form_expr(text, idents, 3, at_line);
                    c_.accept(';');
                }
            } else if (f == "result") {
                b.result = c_.read_string();
            } else if (f == "result_bind") {
                b.result_bind = parse_binding_block(c_, idents);
            } else if (f == "rescale") {
                std::string v = c_.read_ident();
                b.rescale = (v == "true");
            } else {
                c_.fail("unknown extension_case field '" + f + "'");
            }
            c_.accept(';');
        }
        cat->cases_.push_back(std::move(b));
    }
};

Catalog Catalog::parse_text(const std::string& text, const std::string& source_name) {
    CatalogParser p(text, source_name);
    return p.parse();
}

Catalog Catalog::load_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.path().extension() == ".cat") files.push_back(de.path());
    std::sort(files.begin(), files.end());
    Catalog cat;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        cat.absorb(parse_text(ss.str(), f.filename().string()));
    }
    return cat;
}

void Catalog::absorb(Catalog&& other) {
    for (const std::string& n : other.order_) {
        if (entries_.count(n)) throw Error("duplicate catalog entry " + n);
        order_.push_back(n);
        entries_[n] = std::move(other.entries_[n]);
    }
    for (auto& d : other.degenerations_) degenerations_.push_back(std::move(d));
    for (auto& c : other.certificates_) certificates_.push_back(std::move(c));
    for (auto& c : other.cases_) cases_.push_back(std::move(c));
}

const Catalog& Catalog::builtin() {
    static Catalog cat = [] {
        const char* env = std::getenv("NAL_CATALOG");
        if (env != nullptr && *env != '\0') return load_directory(env);
        return parse_text(embedded_catalog_text(), "<builtin>");
    }();
    return cat;
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw UnknownName(name);
    return it->second;
}

const CatalogEntry* Catalog::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> Catalog::entry_names() const { return order_; }

const DegenerationBlock* Catalog::find_degeneration(const std::string& name) const {
    for (const auto& d : degenerations_)
        if (d.name == name) return &d;
    return nullptr;
}

const CertificateBlock* Catalog::find_certificate(const std::string& name) const {
    for (const auto& c : certificates_)
        if (c.name == name) return &c;
    return nullptr;
}

StructureTensor Catalog::instantiate(const CatalogEntry& e,
                                     const std::map<std::string, Scalar>& bindings) {
    std::map<int, Scalar> by_id;
    for (const auto& [name, val] : bindings) {
        int id;
        if (!symbols::lookup(name, &id))
            throw UnknownName("parameter " + name + " of " + e.name);
        bool declared = false;
        for (int pid : e.param_ids) declared = declared || pid == id;
        if (!declared)
            throw UnknownName("parameter " + name + " is not declared by " + e.name);
        by_id[id] = val;
    }
    return e.tensor.substitute(by_id);
}

StructureTensor Catalog::instantiate(const std::string& name,
                                     const std::map<std::string, Scalar>& bindings) const {
    return instantiate(entry(name), bindings);
}

DegenerationData Catalog::resolve(const DegenerationBlock& block) const {
    if (block.parse_failed)
        throw Error("witness block " + block.name + " did not parse: " + block.parse_error);
    DegenerationData d;
    d.name = block.name;
    const CatalogEntry& from = entry(block.from);
    const CatalogEntry& to = entry(block.to);
    d.from = from.tensor;
    std::map<std::string, Scalar> target;
    for (const auto& [n, v] : block.target_bind) target[n] = v;
    d.to = instantiate(to, target);
    for (const auto& [n, v] : block.index) {
        int id;
        if (!symbols::lookup(n, &id) ||
            std::find(from.param_ids.begin(), from.param_ids.end(), id) ==
                from.param_ids.end())
            throw Error(block.name + ": index binds unknown parameter " + n);
        d.index[id] = v;
    }
    for (int pid : from.param_ids)
        if (!d.index.count(pid))
            throw Error(block.name + ": index does not bind parameter " + symbols::name(pid));
    d.basis = Matrix::from_rows(block.basis_rows);
    d.free_params = block.param_ids;
    d.constraints = block.constraints;
    d.constraints.merge(to.constraints);
    return d;
}

FlagCondition Catalog::resolve(const CertificateBlock& block) const {
    FlagCondition f;
    f.conditions = block.conditions;
    f.staged_basis = Matrix::from_rows(block.staged_rows);
    return f;
}

std::string Catalog::render(const CatalogEntry& e) const {
    std::ostringstream os;
    os << "algebra \"" << e.name << "\" {\n";
    os << "  dim: " << e.dim << "\n";
    os << "  symmetry: "
       << (e.symmetry == Symmetry::None
               ? "none"
               : e.symmetry == Symmetry::Commutative ? "commutative" : "anticommutative")
       << "\n";
    if (!e.params.empty()) {
        os << "  params: [";
        for (size_t i = 0; i < e.params.size(); ++i)
            os << (i ? ", " : "") << e.params[i];
        os << "]\n";
    }
    if (!e.constraints.empty()) {
        os << "  constraints: [";
        auto list = e.constraints.str_list();
        for (size_t i = 0; i < list.size(); ++i) os << (i ? ", " : "") << list[i];
        os << "]\n";
    }
    if (!e.provenance.empty()) os << "  provenance: \"" << e.provenance << "\"\n";
    os << "  table {";
    bool first = true;
    for (const auto& [i, j, v] : e.table_rows) {
        os << (first ? " " : " ; ") << "(" << i << "," << j << ") = ";
        bool any = false;
        std::ostringstream rhs;
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            if (any) rhs << " + ";
            if (v[k].is_one()) rhs << "e" << (k + 1);
            else rhs << "(" << v[k].str() << ")*e" << (k + 1);
            any = true;
        }
        os << (any ? rhs.str() : "0");
        first = false;
    }
    os << " }\n}\n";
    return os.str();
}

StructureTensor load_algebra_argument(const std::string& arg, const Catalog& cat,
                                      std::string* resolved_name) {
    // name(k=v,...) form
    auto paren = arg.find('(');
    if (paren != std::string::npos && arg.back() == ')') {
        std::string name = arg.substr(0, paren);
        std::string args = arg.substr(paren + 1, arg.size() - paren - 2);
        std::map<std::string, Scalar> bind;
        std::map<std::string, int> idents;
        const CatalogEntry& e = cat.entry(name);
        for (const auto& p : e.params) idents[p] = symbols::intern(p);
        size_t pos = 0;
        while (pos < args.size()) {
            size_t eq = args.find('=', pos);
            if (eq == std::string::npos) throw Error("malformed binding list: " + args);
            size_t comma = args.find(',', eq);
            if (comma == std::string::npos) comma = args.size();
            std::string key = args.substr(pos, eq - pos);
            std::string val = args.substr(eq + 1, comma - eq - 1);
            bind[key] = parse_scalar_expr(val, idents);
            pos = comma + 1;
        }
        if (resolved_name) *resolved_name = arg;
        return Catalog::instantiate(e, bind);
    }
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        Catalog file_cat = Catalog::parse_text(ss.str(), arg);
        auto names = file_cat.entry_names();
        if (names.empty()) throw Error("no algebra block in " + arg);
        if (resolved_name) *resolved_name = names.front();
        return file_cat.entry(names.front()).tensor;
    }
    if (resolved_name) *resolved_name = arg;
    return cat.entry(arg).tensor;
}

Matrix parse_witness_text(const std::string& text) {
    Cursor cur{text};
    cur.source = "<witness>";
    std::string kind = cur.read_ident();
    if (kind != "witness") cur.fail("expected a witness block");
    cur.expect('{');
    std::map<std::string, int> idents;
    std::vector<std::vector<Scalar>> rows;
    while (!cur.accept('}')) {
        std::string f = cur.read_ident();
        cur.optional_colon();
        if (f == "params") {
            for (const std::string& p : parse_name_list(cur))
                idents[p] = symbols::intern(p);
        } else if (f == "matrix") {
            cur.expect('{');
            std::vector<std::string> labels;
            std::vector<std::string> texts;
            std::vector<int> lines;
            while (!cur.accept('}')) {
                cur.read_ident();
                cur.expect('=');
                int at_line = 0;
                texts.push_back(cur.read_expr_text(&at_line));
                lines.push_back(at_line);
                cur.accept(';');
            }
            int dim = static_cast<int>(texts.size());
            for (size_t k = 0; k < texts.size(); ++k)
                rows.push_back(ExprParser(texts[k], idents, lines[k]).parse_vector(dim));
        } else {
            cur.fail("unknown witness field '" + f + "'");
        }
        cur.accept(';');
    }
    if (rows.empty()) throw Error("witness file has no matrix block");
    return Matrix::from_rows(rows);
}

} // namespace nal
