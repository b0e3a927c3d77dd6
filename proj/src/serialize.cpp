#include "tsf/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tsf/young.hpp"

namespace tsf::io {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void malformed(const std::string& what) { throw Error("malformed-file", what); }

std::size_t parse_count(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) malformed("expected a count, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        malformed("count out of range: " + s);
    }
}

std::vector<std::size_t> parse_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_count(trim(tok)));
    return out;
}

// "(i1,...,in)" 1-based -> 0-based.
Index parse_index(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') malformed("bad index " + s);
    Index idx;
    std::string body = s.substr(1, s.size() - 2);
    if (trim(body).empty()) return idx;
    for (auto v : parse_list(body)) {
        if (v == 0) malformed("indices are 1-based: " + s);
        idx.push_back(v - 1);
    }
    return idx;
}

std::string index_string(const Index& idx) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k] + 1;
    os << ")";
    return os.str();
}

// The line "(i,...) = v".
std::pair<Index, std::string> split_entry(const std::string& line) {
    auto eq = line.find('=');
    if (eq == std::string::npos) malformed("entry without '=': " + line);
    return {parse_index(trim(line.substr(0, eq))), trim(line.substr(eq + 1))};
}

void write_form_entries(std::ostringstream& os, const MultiForm& w) {
    for (auto& [key, v] : w.entries()) os << index_string(w.index(key)) << " = " << v.to_string() << "\n";
}

MultiForm read_form_entries(Reader& r, FieldRef f, int arity, std::size_t dim) {
    FormBuilder b(f, arity, dim);
    std::set<Index> seen;
    while (!r.done() && r.peek().front() == '(') {
        auto [idx, value] = split_entry(r.next());
        if (static_cast<int>(idx.size()) != arity) malformed("entry arity differs from form arity at " + index_string(idx));
        for (auto i : idx)
            if (i >= dim) throw Error("index-out-of-range", index_string(idx) + " exceeds dimension " + std::to_string(dim));
        if (!seen.insert(idx).second) malformed("repeated entry " + index_string(idx));
        b.add(idx, parse_scalar(f, value));
    }
    return b.finish();
}

Pattern parse_pattern(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') malformed("bad pattern " + s);
    Pattern p;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok == "*")
            p.push_back(kFree);
        else {
            auto v = parse_count(tok);
            if (v == 0) malformed("pins are 1-based: " + s);
            p.push_back(static_cast<int>(v) - 1);
        }
    }
    return p;
}

void expect_header(Reader& r, const std::string& header) {
    if (r.done() || r.peek() != header) throw Error("malformed-header", "expected '" + header + "'");
    r.next();
}

void write_space_body(std::ostringstream& os, const LambdaSpace& v) {
    os << field_line(v.field()) << "\n";
    os << "dim " << v.dim() << "\n";
    os << "tuple " << tuple_to_string(v.tuple()) << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << "form " << i + 1 << " " << v.shape(i).to_string() << "\n";
        os << "projected: true\n";
        write_form_entries(os, v.form(i));
    }
}

}  // namespace

// ---------------------------------------------------------------- fields and reader

std::string field_line(FieldRef f) {
    switch (f->kind()) {
        case Field::Kind::rationals: return "field Q";
        case Field::Kind::prime: return "field F " + std::to_string(f->characteristic());
        case Field::Kind::extension: {
            std::ostringstream os;
            os << "field F " << f->characteristic() << "^" << f->degree() << " modulus=[";
            for (std::size_t i = 0; i < f->modulus().size(); ++i) os << (i ? "," : "") << f->modulus()[i];
            os << "]";
            return os.str();
        }
    }
    return "field ?";
}

FieldRef parse_field_line(const std::string& line_in) {
    std::string line = trim(line_in);
    if (line.rfind("field ", 0) != 0) malformed("expected a field line, got '" + line + "'");
    std::string rest = trim(line.substr(6));
    if (rest == "Q") return Field::rationals();
    if (rest.rfind("F ", 0) != 0) malformed("unknown field '" + rest + "'");
    rest = trim(rest.substr(2));
    auto caret = rest.find('^');
    if (caret == std::string::npos) {
        auto p = static_cast<std::int64_t>(parse_count(rest));
        if (!is_prime(p)) throw Error("invalid-field", std::to_string(p) + " is not prime");
        return Field::prime(p);
    }
    auto p = static_cast<std::int64_t>(parse_count(trim(rest.substr(0, caret))));
    auto sp = rest.find(' ', caret);
    if (sp == std::string::npos) malformed("extension field needs modulus=[...]");
    auto s = parse_count(trim(rest.substr(caret + 1, sp - caret - 1)));
    std::string mod = trim(rest.substr(sp + 1));
    if (mod.rfind("modulus=[", 0) != 0 || mod.back() != ']') malformed("bad modulus '" + mod + "'");
    std::vector<std::int64_t> coeffs;
    for (auto c : parse_list(mod.substr(9, mod.size() - 10))) coeffs.push_back(static_cast<std::int64_t>(c));
    if (coeffs.size() != s + 1) throw Error("invalid-field", "modulus degree differs from s");
    if (!is_prime(p)) throw Error("invalid-field", std::to_string(p) + " is not prime");
    return Field::extension(p, coeffs);
}

Matrix parse_columns(FieldRef f, std::size_t rows, const std::string& text) {
    std::vector<Vector> cols;
    std::stringstream ss(text);
    std::string col;
    while (std::getline(ss, col, ';')) {
        Vector v;
        // Extension-field values carry their own commas inside brackets.
        std::string tok;
        int depth = 0;
        for (char c : col + ",") {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                v.push_back(parse_scalar(f, trim(tok)));
                tok.clear();
            } else {
                tok += c;
            }
        }
        if (v.size() != rows)
            throw Error("dimension-mismatch", "vector has " + std::to_string(v.size()) + " entries, expected " +
                                                  std::to_string(rows));
        cols.push_back(std::move(v));
    }
    return Matrix::from_dense_columns(f, rows, cols);
}

Reader::Reader(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        lines_.push_back(line);
    }
}

const std::string& Reader::peek() const {
    if (done()) malformed("unexpected end of file");
    return lines_[pos_];
}

std::string Reader::next() {
    const std::string& s = peek();
    ++pos_;
    return s;
}

std::string Reader::expect(const std::string& key) {
    std::string line = next();
    if (line == key) return "";
    if (line.rfind(key + " ", 0) != 0) malformed("expected '" + key + "', got '" + line + "'");
    return trim(line.substr(key.size() + 1));
}

std::string header_of(const std::string& text) {
    Reader r(text);
    return r.done() ? "" : r.peek();
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("io-error", "cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("io-error", "cannot write " + p.string());
    out << text;
}

// ---------------------------------------------------------------- spaces

bool SpaceLoad::projected_any() const {
    return std::any_of(projected_on_load.begin(), projected_on_load.end(), [](bool b) { return b; });
}

std::string write_space(const LambdaSpace& v) {
    std::ostringstream os;
    os << "lambda-space v1\n";
    write_space_body(os, v);
    return os.str();
}

SpaceLoad read_space(Reader& r) {
    expect_header(r, "lambda-space v1");
    FieldRef f = parse_field_line(r.next());
    std::size_t dim = parse_count(r.expect("dim"));
    PartitionTuple tuple = parse_tuple(r.expect("tuple"));
    SpaceLoad out;
    std::vector<LambdaForm> forms;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        std::string head = r.expect("form");
        auto sp = head.find(' ');
        if (sp == std::string::npos || parse_count(head.substr(0, sp)) != i + 1) malformed("form sections out of order");
        if (Partition::parse(head.substr(sp + 1)) != tuple[i]) malformed("form shape differs from the tuple");
        std::string flag = r.expect("projected:");
        if (flag != "true" && flag != "false") malformed("projected must be true or false");
        require_characteristic(f, tuple[i].size());
        MultiForm w = read_form_entries(r, f, tuple[i].size(), dim);
        if (flag == "true") {
            if (!tuple[i].empty() && young_projector_apply(w, tuple[i]) != w)
                throw Error("not-canonical", "form " + std::to_string(i + 1) + " is not projector-fixed");
        } else {
            w = young_projector_apply(w, tuple[i]);
        }
        out.projected_on_load.push_back(flag == "false");
        forms.push_back({tuple[i], std::make_shared<const MultiForm>(std::move(w))});
    }
    out.space = LambdaSpace(f, dim, std::move(forms), LambdaSpace::Input::trusted);
    return out;
}

SpaceLoad read_space(const std::string& text) {
    Reader r(text);
    auto s = read_space(r);
    if (!r.done()) malformed("trailing content: " + r.peek());
    return s;
}

// ---------------------------------------------------------------- matrices

std::string write_matrix(const Matrix& m) {
    std::ostringstream os;
    os << "lambda-matrix v1\n" << field_line(m.field()) << "\n";
    os << "rows " << m.rows() << "\ncols " << m.cols() << "\n";
    auto rows = m.row_lists();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto& [j, v] : rows[i]) os << "(" << i + 1 << "," << j + 1 << ") = " << v.to_string() << "\n";
    return os.str();
}

Matrix read_matrix(Reader& r) {
    expect_header(r, "lambda-matrix v1");
    FieldRef f = parse_field_line(r.next());
    std::size_t rows = parse_count(r.expect("rows"));
    std::size_t cols = parse_count(r.expect("cols"));
    Matrix m(f, rows, cols);
    std::set<Index> seen;
    while (!r.done() && r.peek().front() == '(') {
        auto [idx, value] = split_entry(r.next());
        if (idx.size() != 2) malformed("matrix entries need two indices");
        if (idx[0] >= rows || idx[1] >= cols) throw Error("index-out-of-range", index_string(idx));
        if (!seen.insert(idx).second) malformed("repeated entry " + index_string(idx));
        m.set(idx[0], idx[1], parse_scalar(f, value));
    }
    return m;
}

Matrix read_matrix(const std::string& text) {
    Reader r(text);
    auto m = read_matrix(r);
    if (!r.done()) malformed("trailing content: " + r.peek());
    return m;
}

// ---------------------------------------------------------------- embeddings

std::string certificate_text(const LinearEmbedding& e) {
    std::ostringstream os;
    os << "certificate\n";
    const bool shaped = e.matrix.rows() == e.target.dim() && e.matrix.cols() == e.source.dim() &&
                        e.source.tuple() == e.target.tuple();
    os << "rank: " << (shaped ? rank(e.matrix) : 0) << " of " << e.source.dim() << "\n";
    for (std::size_t i = 0; shaped && i < e.source.size(); ++i)
        os << "form " << i + 1 << " " << e.source.shape(i).to_string() << ": "
           << (pullback(e.target.form(i), e.matrix) == e.source.form(i) ? "pullback exact" : "pullback differs") << "\n";
    auto check = is_embedding(e.matrix, e.source, e.target);
    os << "verdict: " << (check.ok ? "certified" : "failed " + check.describe()) << "\n";
    return os.str();
}

std::string write_embedding(const LinearEmbedding& e) {
    std::ostringstream os;
    os << "lambda-embedding v1\nsource\n" << write_space(e.source) << "target\n" << write_space(e.target);
    os << "matrix\n" << write_matrix(e.matrix) << certificate_text(e);
    return os.str();
}

LinearEmbedding read_embedding(Reader& r) {
    expect_header(r, "lambda-embedding v1");
    r.expect("source");
    LinearEmbedding e;
    e.source = read_space(r).space;
    r.expect("target");
    e.target = read_space(r).space;
    r.expect("matrix");
    e.matrix = read_matrix(r);
    if (e.matrix.field() != e.source.field() || e.source.field() != e.target.field())
        throw Error("mixed-fields", "embedding parts over different fields");
    std::string recorded;
    if (r.done() || r.peek() != "certificate") malformed("embedding without certificate");
    for (;;) {
        std::string line = r.next();
        recorded += line + "\n";
        if (line.rfind("verdict:", 0) == 0) break;
    }
    if (recorded != certificate_text(e)) throw Error("certificate-mismatch", "recorded certificate disagrees with recomputation");
    return e;
}

LinearEmbedding read_embedding(const std::string& text) {
    Reader r(text);
    auto e = read_embedding(r);
    if (!r.done()) malformed("trailing content: " + r.peek());
    return e;
}

// ---------------------------------------------------------------- block structures

std::string write_block_structure(const BlockStructure& b) {
    std::ostringstream os;
    os << "block-structure v1\n" << field_line(b.field) << "\n";
    os << "base " << b.base_dim << "\nfree " << b.free_dim << "\ntuple " << tuple_to_string(b.tuple) << "\n";
    for (std::size_t i = 0; i < b.residuals.size(); ++i)
        for (auto& [pat, w] : b.residuals[i]) {
            os << "block " << i + 1 << " " << pattern_to_string(pat) << "\n";
            write_form_entries(os, w);
        }
    return os.str();
}

BlockStructure read_block_structure(const std::string& text) {
    Reader r(text);
    expect_header(r, "block-structure v1");
    BlockStructure b;
    b.field = parse_field_line(r.next());
    b.base_dim = parse_count(r.expect("base"));
    b.free_dim = parse_count(r.expect("free"));
    b.tuple = parse_tuple(r.expect("tuple"));
    b.residuals.resize(b.tuple.size());
    while (!r.done()) {
        std::string head = r.expect("block");
        auto sp = head.find(' ');
        if (sp == std::string::npos) malformed("block line needs an entry and a pattern");
        std::size_t entry = parse_count(head.substr(0, sp));
        if (entry == 0 || entry > b.tuple.size()) throw Error("index-out-of-range", "tuple entry " + head);
        Pattern p = parse_pattern(trim(head.substr(sp + 1)));
        if (static_cast<int>(p.size()) != b.tuple[entry - 1].size()) malformed("pattern length differs from |lambda|");
        for (int v : p)
            if (v != kFree && static_cast<std::size_t>(v) >= b.base_dim) throw Error("index-out-of-range", "pin in " + head);
        auto w = read_form_entries(r, b.field, free_slots(p), b.free_dim);
        if (!b.residuals[entry - 1].emplace(p, std::move(w)).second) malformed("repeated block " + head);
    }
    for (std::size_t i = 0; i < b.tuple.size(); ++i)
        if (b.residuals[i].size() != all_patterns(b.tuple[i].size(), b.base_dim).size())
            malformed("tuple entry " + std::to_string(i + 1) + " is missing blocks");
    return b;
}

std::string write_restriction_point(const RestrictionPoint& p) {
    std::ostringstream os;
    os << "restriction-point v1\n" << field_line(p.field) << "\n";
    os << "n " << p.n << "\ntuple " << tuple_to_string(p.tuple) << "\n";
    for (std::size_t i = 0; i < p.forms.size(); ++i) {
        os << "form " << i + 1 << " " << p.tuple[i].to_string() << "\n";
        write_form_entries(os, p.forms[i]);
    }
    return os.str();
}

// ---------------------------------------------------------------- requests

std::string write_request(const fraisse::Request<LinearEmbedding>& q) {
    std::ostringstream os;
    os << "lambda-request v1\nfrom " << q.from << "\nto " << q.to << "\n";
    os << "x\n" << write_space(q.iota.source) << "y\n" << write_space(q.iota.target);
    os << "alpha\n" << write_matrix(q.alpha.matrix) << "iota\n" << write_matrix(q.iota.matrix);
    os << "beta\n" << write_matrix(q.beta.matrix);
    return os.str();
}

fraisse::Request<LinearEmbedding> read_request(const std::string& text, const LambdaInstance& inst,
                                               const LambdaTower& t) {
    Reader r(text);
    expect_header(r, "lambda-request v1");
    fraisse::Request<LinearEmbedding> q;
    q.from = parse_count(r.expect("from"));
    q.to = parse_count(r.expect("to"));
    if (q.from > q.to || q.to > t.depth()) throw Error("invalid-level", "request levels outside the tower");
    r.expect("x");
    LambdaSpace x = read_space(r).space;
    r.expect("y");
    LambdaSpace y = read_space(r).space;
    r.expect("alpha");
    q.alpha = {x, fraisse::level(inst, t, q.from), read_matrix(r)};
    r.expect("iota");
    q.iota = {x, y, read_matrix(r)};
    r.expect("beta");
    q.beta = {y, fraisse::level(inst, t, q.to), read_matrix(r)};
    if (!r.done()) malformed("trailing content: " + r.peek());
    for (auto* e : {&q.alpha, &q.iota, &q.beta})
        if (e->matrix.rows() != e->target.dim() || e->matrix.cols() != e->source.dim())
            throw Error("dimension-mismatch", "request matrix shape");
    return q;
}

// ---------------------------------------------------------------- towers

namespace {

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

}  // namespace

void save_tower(const std::filesystem::path& dir, const LambdaInstance& inst, const LambdaTower& t) {
    std::filesystem::create_directories(dir);
    std::ostringstream m;
    m << "tower v1\n" << field_line(inst.field()) << "\n";
    m << "tuple " << tuple_to_string(inst.tuple()) << "\n";
    m << "depth " << t.depth() << "\nschedule " << join(t.schedule) << "\n";
    m << "lazy " << (t.lazy ? "true" : "false") << "\n";
    for (std::size_t n = 1; n <= t.depth(); ++n) {
        std::string name = "level-" + std::to_string(n) + ".sp";
        write_file(dir / name, write_space(fraisse::level(inst, t, n)));
        m << "level " << n << " " << name << "\n";
    }
    for (std::size_t n = 1; n < t.depth(); ++n) {
        std::string name = "transition-" + std::to_string(n) + ".mat";
        write_file(dir / name, write_matrix(fraisse::transition(inst, t, n, n + 1).matrix));
        m << "transition " << n << " " << name << "\n";
    }
    for (std::size_t k = 0; k < t.log.size(); ++k) {
        std::string name = "request-" + std::to_string(k + 1) + ".req";
        write_file(dir / name, write_request(t.log[k]));
        m << "request " << k + 1 << " " << name << "\n";
    }
    for (auto& [d, q] : t.witnesses) {
        std::string name = "witness-" + std::to_string(d) + ".req";
        write_file(dir / name, write_request(q));
        m << "witness " << d << " " << name << "\n";
    }
    write_file(dir / "manifest", m.str());
}

TowerBundle load_tower(const std::filesystem::path& dir) {
    Reader r(read_file(dir / "manifest"));
    expect_header(r, "tower v1");
    FieldRef f = parse_field_line(r.next());
    PartitionTuple tuple = parse_tuple(r.expect("tuple"));
    std::size_t depth = parse_count(r.expect("depth"));
    auto schedule = parse_list(r.expect("schedule"));
    std::string lazy = r.expect("lazy");
    if (lazy != "true" && lazy != "false") malformed("lazy must be true or false");
    TowerBundle b{LambdaInstance(f, tuple), {}};
    b.tower = fraisse::build_tower(b.inst, depth, schedule, lazy == "true");
    if (b.tower.schedule != schedule) malformed("schedule longer than depth");
    std::size_t levels = 0, transitions = 0, requests = 0;
    while (!r.done()) {
        std::istringstream line(r.next());
        std::string kind, file;
        std::size_t k = 0;
        if (!(line >> kind >> k >> file)) malformed("bad manifest line");
        std::string text = read_file(dir / file);
        if (kind == "level") {
            if (k != ++levels) malformed("levels out of order");
            if (read_space(text).space != fraisse::level(b.inst, b.tower, k))
                throw Error("tower-mismatch", "saved level " + std::to_string(k) + " differs from the rebuild");
        } else if (kind == "transition") {
            if (k != ++transitions) malformed("transitions out of order");
            if (read_matrix(text) != fraisse::transition(b.inst, b.tower, k, k + 1).matrix)
                throw Error("tower-mismatch", "saved transition " + std::to_string(k) + " differs from the rebuild");
        } else if (kind == "request" || kind == "witness") {
            auto q = read_request(text, b.inst, b.tower);
            if (!fraisse::replay(b.inst, b.tower, q))
                throw Error("replay-failure", kind + " " + std::to_string(k) + " does not replay");
            if (kind == "request") {
                if (k != ++requests) malformed("requests out of order");
                b.tower.log.push_back(std::move(q));
            } else {
                b.tower.witnesses.emplace(k, std::move(q));
            }
        } else {
            malformed("unknown manifest entry " + kind);
        }
    }
    if (levels != depth || transitions + 1 != std::max<std::size_t>(depth, 1))
        malformed("manifest does not list every level and transition");
    return b;
}

}  // namespace tsf::io
