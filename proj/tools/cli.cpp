#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include "tsf/serialize.hpp"
#include "tsf/universal.hpp"
#include "tsf/young.hpp"

namespace tsf::cli {

namespace fs = std::filesystem;

namespace {

std::size_t max_dim() {
    const char* env = std::getenv("TSF_MAX_DIM");
    if (!env || !*env) return 64;
    std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos) throw Error("invalid-environment", "TSF_MAX_DIM=" + s);
    return std::stoull(s);
}

void guard_dim(std::size_t d, const std::string& what) {
    const std::size_t cap = max_dim();
    if (d > cap)
        throw CapacityError("max-dim-exceeded", what + " has dimension " + std::to_string(d) + ", TSF_MAX_DIM is " +
                                                    std::to_string(cap));
}

std::vector<std::int64_t> smallest_irreducible(std::int64_t p, int s) {
    std::int64_t q = 1;
    for (int i = 0; i < s; ++i) q *= p;
    for (std::int64_t code = 0; code < q; ++code) {
        std::vector<std::int64_t> poly;
        for (std::int64_t c = code, i = 0; i < s; ++i, c /= p) poly.push_back(c % p);
        poly.push_back(1);
        if (is_irreducible_mod_p(p, poly)) return poly;
    }
    throw Error("invalid-field", "no irreducible polynomial found");
}

// "Q", "F3", "F3^2"; extension moduli default to the first irreducible in
// code order.
FieldRef parse_field(const std::string& text, const std::string& modulus) {
    if (text == "Q") return Field::rationals();
    if (text.size() < 2 || text[0] != 'F') throw Error("invalid-field", text);
    std::string body = text.substr(1);
    auto caret = body.find('^');
    try {
        std::int64_t p = std::stoll(body.substr(0, caret));
        if (!is_prime(p)) throw Error("invalid-field", std::to_string(p) + " is not prime");
        if (caret == std::string::npos) return Field::prime(p);
        int s = std::stoi(body.substr(caret + 1));
        if (s < 1) throw Error("invalid-field", text);
        if (s == 1) return Field::prime(p);
        std::vector<std::int64_t> m;
        if (modulus.empty()) {
            m = smallest_irreducible(p, s);
        } else {
            std::stringstream ss(modulus);
            std::string tok;
            while (std::getline(ss, tok, ',')) m.push_back(std::stoll(tok));
        }
        return Field::extension(p, m);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("invalid-field", text);
    }
}

LambdaSpace load_space(const std::string& path, std::ostream* notes = nullptr) {
    auto s = io::read_space(io::read_file(path));
    guard_dim(s.space.dim(), path);
    if (notes)
        for (std::size_t i = 0; i < s.projected_on_load.size(); ++i)
            if (s.projected_on_load[i]) *notes << "projected on load: form " << i + 1 << "\n";
    return s.space;
}

// A matrix file, or inline columns "1,0;0,1".
Matrix load_vectors(FieldRef f, std::size_t rows, const std::string& arg) {
    if (fs::is_regular_file(arg)) {
        Matrix m = io::read_matrix(io::read_file(arg));
        if (m.field() != f) throw Error("mixed-fields", arg);
        if (m.rows() != rows) throw Error("dimension-mismatch", arg + " has the wrong number of rows");
        return m;
    }
    return io::parse_columns(f, rows, arg);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_file(path, text);
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || std::stoull(tok) == 0)
            throw Error("malformed-argument", "expected 1-based indices, got '" + text + "'");
        out.push_back(std::stoull(tok));
    }
    return out;
}

std::size_t predicted_universal_dim(const PartitionTuple& t, std::size_t d) {
    if (t.empty()) return d;
    std::size_t total = 0;
    for (auto& l : t) total += universal_block_count(l.size(), d) * static_cast<std::size_t>(l.size());
    return total;
}

std::string verdict_line(const LinearEmbedding& e) {
    return is_embedding(e.matrix, e.source, e.target).ok ? "certified" : "failed";
}

// ---------------------------------------------------------------- commands

int cmd_check(const std::string& path, std::ostream& out) {
    if (fs::is_directory(path)) {
        auto b = io::load_tower(path);
        out << "ok: tower depth " << b.tower.depth() << ", " << b.tower.log.size() << " requests and "
            << b.tower.witnesses.size() << " witnesses replayed\n";
        return 0;
    }
    std::string text = io::read_file(path);
    std::string header = io::header_of(text);
    if (header == "lambda-space v1") {
        std::ostringstream notes;
        auto v = load_space(path, &notes);
        out << notes.str() << "ok: lambda-space dim " << v.dim() << " tuple " << tuple_to_string(v.tuple()) << " over "
            << v.field()->name() << "\n";
    } else if (header == "lambda-matrix v1") {
        auto m = io::read_matrix(text);
        out << "ok: lambda-matrix " << m.rows() << " x " << m.cols() << "\n";
    } else if (header == "lambda-embedding v1") {
        auto e = io::read_embedding(text);
        guard_dim(e.target.dim(), path);
        auto c = is_embedding(e.matrix, e.source, e.target);
        if (!c.ok) throw Error("certificate-failure", c.describe());
        out << "ok: embedding " << e.source.dim() << " -> " << e.target.dim() << " certified\n";
    } else if (header == "block-structure v1") {
        auto b = io::read_block_structure(text);
        out << "ok: block-structure base " << b.base_dim << " free " << b.free_dim << "\n";
    } else {
        throw Error("malformed-header", "unknown artifact '" + header + "'");
    }
    return 0;
}

int cmd_universal(const std::string& tuple_text, std::size_t d, FieldRef f, const std::string& out_path,
                  std::ostream& out) {
    PartitionTuple t = parse_tuple(tuple_text);
    for (auto& l : t) require_characteristic(f, l.size());
    guard_dim(predicted_universal_dim(t, d), "universal space");
    emit(out, out_path, io::write_space(universal_lambda_space(t, d, f).space));
    return 0;
}

int cmd_embed(const std::string& src_path, const std::string& dst_path, const std::string& out_path,
              std::ostream& out) {
    LambdaSpace w = load_space(src_path), v = load_space(dst_path);
    if (w.tuple() != v.tuple()) throw Error("tuple-mismatch", "source and target tuples differ");
    if (w.field() != v.field()) throw Error("mixed-fields", "source and target fields differ");
    std::optional<UniversalLambdaSpace> u;
    for (std::size_t d = 0; predicted_universal_dim(v.tuple(), d) <= v.dim(); ++d) {
        if (predicted_universal_dim(v.tuple(), d) != v.dim()) continue;
        auto cand = universal_lambda_space(v.tuple(), d, v.field());
        if (cand.space == v) {
            u = std::move(cand);
            break;
        }
        if (v.tuple().empty()) break;
    }
    if (!u) throw Error("unsupported-target", dst_path + " is not a universal space written by 'universal'");
    auto e = embed_finite_space(w, *u);
    if (!out_path.empty()) io::write_file(out_path, io::write_embedding(e));
    out << io::certificate_text(e);
    return 0;
}

int cmd_shift(const std::string& path, const std::string& pins_text, const std::string& out_path,
              const std::string& base_out, std::ostream& out) {
    LambdaSpace v = load_space(path);
    std::vector<SparseColumn> cols;
    for (auto i : parse_indices(pins_text)) {
        if (i > v.dim()) throw Error("index-out-of-range", "pin " + std::to_string(i));
        cols.push_back({{i - 1, v.field()->one()}});
    }
    Matrix pins = Matrix::from_columns(v.field(), v.dim(), cols);
    auto pb = PinnedBase::make(v, pins);
    if (!base_out.empty()) io::write_file(base_out, io::write_space(pullback_space(v, pins)));
    emit(out, out_path, io::write_block_structure(shift_structure(pb)));
    return 0;
}

int cmd_unshift(const std::string& base_path, const std::string& blocks_path, const std::string& out_path,
                std::ostream& out) {
    LambdaSpace u = load_space(base_path);
    auto b = io::read_block_structure(io::read_file(blocks_path));
    guard_dim(b.base_dim + b.free_dim, blocks_path);
    emit(out, out_path, io::write_space(unshift(u, b)));
    return 0;
}

int cmd_amalgamate(const std::vector<std::string>& spaces, const std::string& maps, const std::string& prefix,
                   std::ostream& out) {
    LambdaSpace x = load_space(spaces[0]), y = load_space(spaces[1]), z = load_space(spaces[2]);
    auto comma = maps.find(',');
    if (comma == std::string::npos) throw Error("malformed-argument", "--maps needs F,G");
    LinearEmbedding f{x, y, load_vectors(x.field(), y.dim(), maps.substr(0, comma))};
    LinearEmbedding g{x, z, load_vectors(x.field(), z.dim(), maps.substr(comma + 1))};
    certify(f);
    certify(g);
    auto a = amalgamate(f, g);
    guard_dim(a.space.dim(), "amalgam");
    if (compose(a.y, f).matrix != compose(a.z, g).matrix) throw Error("certificate-failure", "square does not commute");
    io::write_file(prefix + ".sp", io::write_space(a.space));
    io::write_file(prefix + "-y.emb", io::write_embedding(a.y));
    io::write_file(prefix + "-z.emb", io::write_embedding(a.z));
    out << "amalgam dim " << a.space.dim() << "\nsquare: commutes\ny: " << verdict_line(a.y)
        << "\nz: " << verdict_line(a.z) << "\n";
    return 0;
}

int cmd_tower_build(const std::string& tuple_text, FieldRef f, std::size_t depth, const std::string& schedule_text,
                    bool lazy, const std::string& dir, std::ostream& out) {
    LambdaInstance inst(f, parse_tuple(tuple_text));
    auto schedule = parse_indices(schedule_text);
    if (schedule.size() < depth) throw Error("invalid-schedule", "schedule shorter than depth");
    LambdaTower t;
    t.lazy = lazy;
    for (std::size_t n = 0; n < depth; ++n) {
        fraisse::grow_level(inst, t, schedule[n]);
        guard_dim(fraisse::level(inst, t, n + 1).dim(), "level " + std::to_string(n + 1));
    }
    io::save_tower(dir, inst, t);
    for (std::size_t n = 1; n <= depth; ++n) out << "level " << n << ": dim " << fraisse::level(inst, t, n).dim() << "\n";
    return 0;
}

// iota is an embedding file, or a matrix with --x and --y.
int cmd_tower_extend(const std::string& dir, const std::string& iota_arg, const std::string& x_path,
                     const std::string& y_path, std::size_t n, const std::string& alpha_arg, std::ostream& out) {
    auto b = io::load_tower(dir);
    LinearEmbedding iota;
    if (fs::is_regular_file(iota_arg) && io::header_of(io::read_file(iota_arg)) == "lambda-embedding v1") {
        iota = io::read_embedding(io::read_file(iota_arg));
    } else {
        if (x_path.empty() || y_path.empty()) throw Error("malformed-argument", "a matrix iota needs --x and --y");
        iota.source = load_space(x_path);
        iota.target = load_space(y_path);
        iota.matrix = load_vectors(iota.source.field(), iota.target.dim(), iota_arg);
    }
    if (iota.source.field() != b.inst.field() || iota.source.tuple() != b.inst.tuple())
        throw Error("tuple-mismatch", "request spaces differ from the tower's field or tuple");
    certify(iota);
    if (n > b.tower.depth()) throw Error("invalid-level", std::to_string(n));
    LambdaSpace lvl = fraisse::level(b.inst, b.tower, n);
    LinearEmbedding alpha{iota.source, lvl, n == 0 ? Matrix(lvl.field(), 0, iota.source.dim())
                                                    : load_vectors(lvl.field(), lvl.dim(), alpha_arg)};
    if (n == 0 && iota.source.dim() != 0) throw Error("dimension-mismatch", "level 0 is the zero space");
    certify(alpha);
    const auto r = fraisse::extend_embedding(b.inst, b.tower, n, alpha, iota);
    guard_dim(fraisse::level(b.inst, b.tower, b.tower.depth()).dim(), "grown tower");
    io::save_tower(dir, b.inst, b.tower);
    out << "request " << b.tower.log.size() << ": level " << r.from << " -> level " << r.to << "\n"
        << "beta: " << verdict_line(r.beta) << "\ntriangle: commutes\n";
    return 0;
}

int cmd_tower_replay(const std::string& dir, std::ostream& out) {
    auto b = io::load_tower(dir);
    out << "replayed " << b.tower.log.size() << " requests and " << b.tower.witnesses.size() << " witnesses\n";
    return 0;
}

int cmd_pi(const std::string& path, const std::string& tuple_arg, const std::string& out_path, std::ostream& out) {
    LambdaSpace v = load_space(path);
    emit(out, out_path, io::write_restriction_point(classifying_map(v, load_vectors(v.field(), v.dim(), tuple_arg))));
    return 0;
}

int cmd_orbit(const std::string& dir, const std::string& vs_arg, const std::string& ws_arg, std::size_t n,
              std::size_t budget, std::ostream& out) {
    auto b = io::load_tower(dir);
    if (n > b.tower.depth()) throw Error("invalid-level", std::to_string(n));
    LambdaSpace v = fraisse::level(b.inst, b.tower, n);
    Matrix vs = load_vectors(v.field(), v.dim(), vs_arg), ws = load_vectors(v.field(), v.dim(), ws_arg);
    auto r = orbit_test(b.inst, b.tower, n, vs, ws, budget);
    out << r.reason << "\n";
    if (r.fragment) {
        auto [a, c] = fragment_images(*r.fragment, Matrix::inclusion(v.field(), r.fragment->partial.left.source.dim(),
                                                                        vs.cols()));
        auto shift = fraisse::transition(b.inst, b.tower, n, r.fragment->partial.left_level);
        auto shift2 = fraisse::transition(b.inst, b.tower, n, r.fragment->partial.right_level);
        bool sends = a == shift.matrix * vs && c == shift2.matrix * ws;
        out << "fragment: left level " << r.fragment->partial.left_level << ", right level "
            << r.fragment->partial.right_level << ", dim " << r.fragment->partial.left.source.dim() << "\n"
            << "fragment sends v to w: " << (sends ? "true" : "false") << "\n";
    }
    return r.verdict == OrbitVerdict::inconclusive ? 2 : 0;
}

int cmd_witness(const std::string& dir, const std::string& ws_arg, const std::string& pins_arg, std::size_t n,
                std::size_t d, std::size_t budget, bool save, std::ostream& out) {
    auto b = io::load_tower(dir);
    if (n > b.tower.depth()) throw Error("invalid-level", std::to_string(n));
    LambdaSpace v = fraisse::level(b.inst, b.tower, n);
    Matrix ws = load_vectors(v.field(), v.dim(), ws_arg);
    if (pins_arg.empty()) {
        auto w = oligomorphic_witness(b.inst, b.tower, n, ws, d, budget);
        out << "absorber: level " << w.absorber.to << ", dim " << w.absorber.beta.source.dim() << "\n"
            << "fragment: " << w.fragment.partial.steps << " steps\ninside: " << (w.inside ? "true" : "false") << "\n";
    } else {
        auto w = pinned_oligomorphic_witness(b.inst, b.tower, n, load_vectors(v.field(), v.dim(), pins_arg), ws, d,
                                             budget);
        out << "absorber: level " << w.absorber.to << ", dim " << w.absorber.beta.source.dim() << "\n"
            << "fixes pins: " << (w.fixes_pins ? "true" : "false") << "\ninside: " << (w.inside ? "true" : "false")
            << "\n";
    }
    if (save) io::save_tower(dir, b.inst, b.tower);
    return 0;
}

int cmd_witt_embed(const std::string& path, const std::string& out_path, std::ostream& out) {
    auto e = witt_embed_quadratic(load_space(path));
    if (!out_path.empty()) io::write_file(out_path, io::write_embedding(e));
    out << io::certificate_text(e);
    return 0;
}

int cmd_witt_extend(const std::string& path, const std::string& m_arg, const std::string& m2_arg,
                    const std::string& out_path, std::ostream& out) {
    LambdaSpace v = load_space(path);
    Matrix m = load_vectors(v.field(), v.dim(), m_arg), m2 = load_vectors(v.field(), v.dim(), m2_arg);
    Matrix g = witt_extend(v, m, m2);
    if (!out_path.empty()) io::write_file(out_path, io::write_matrix(g));
    else out << io::write_matrix(g);
    out << "isometry: " << (is_isometry(v, g) && g * m == m2 ? "certified" : "failed") << "\n";
    return 0;
}

// Every n-dimensional structure over a finite field, embedded into the
// d-universal space; shards take disjoint contiguous ranges of points.
int cmd_sweep(const std::string& tuple_text, std::size_t n, std::size_t d, FieldRef f, std::size_t shards,
              std::ostream& out) {
    if (!f->is_finite()) throw Error("invalid-field", "sweeps need a finite field");
    if (shards == 0) throw Error("malformed-argument", "shards must be positive");
    PartitionTuple t = parse_tuple(tuple_text);
    for (auto& l : t) require_characteristic(f, l.size());
    guard_dim(predicted_universal_dim(t, d), "universal space");
    guard_dim(n, "structure");
    // Warm every cache before the threads start.
    auto u = universal_lambda_space(t, d, f);
    std::vector<std::vector<MultiForm>> bases;
    std::size_t coords = 0;
    for (auto& l : t) {
        bases.push_back(projector_image_basis(l, n, f));
        coords += bases.back().size();
    }
    const auto q = static_cast<std::uint64_t>(f->order());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < coords; ++i) {
        if (total > (std::uint64_t{1} << 40) / q) throw CapacityError("sweep-too-large", "more than 2^40 structure points");
        total *= q;
    }
    auto elements = f->elements();
    std::atomic<std::uint64_t> certified{0};
    std::vector<std::string> failures(shards);
    auto work = [&](std::size_t s) {
        try {
            for (std::uint64_t i = total * s / shards; i < total * (s + 1) / shards; ++i) {
                std::uint64_t code = i;
                std::vector<MultiForm> forms;
                for (std::size_t k = 0; k < t.size(); ++k) {
                    MultiForm w(f, t[k].size(), n);
                    for (auto& b : bases[k]) {
                        w = w + b.scaled(elements[code % q]);
                        code /= q;
                    }
                    forms.push_back(std::move(w));
                }
                LambdaSpace x(f, n, t, std::move(forms), LambdaSpace::Input::trusted);
                auto e = embed_finite_space(x, u);
                if (is_embedding(e.matrix, e.source, e.target).ok) ++certified;
            }
        } catch (const std::exception& e) {
            failures[s] = e.what();
        }
    };
    std::vector<std::thread> threads;
    for (std::size_t s = 1; s < shards; ++s) threads.emplace_back(work, s);
    work(0);
    for (auto& th : threads) th.join();
    for (auto& msg : failures)
        if (!msg.empty()) throw Error("sweep-failure", msg);
    out << "sweep: " << total << " structures, " << certified.load() << " certified, " << shards << " shards\n";
    return certified.load() == total ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact tensor-space computations"};
    app.require_subcommand(1);
    std::string out_path, field_text = "Q", modulus;
    std::size_t budget = 4, level = 0;
    std::function<int()> action;

    auto add_field = [&](CLI::App* c) {
        c->add_option("--field", field_text, "Q, Fp or Fp^s")->capture_default_str();
        c->add_option("--modulus", modulus, "extension modulus, low to high");
    };
    auto field = [&] { return parse_field(field_text, modulus); };

    std::string a1, a2, a3, a4;
    std::size_t n1 = 0, n2 = 0;
    bool flag = false;
    std::vector<std::string> files;

    auto* check = app.add_subcommand("check", "validate a file, embedding certificate or tower directory");
    check->add_option("file", a1)->required();
    check->callback([&] { action = [&] { return cmd_check(a1, out); }; });

    auto* universal = app.add_subcommand("universal", "write a d-universal space");
    universal->add_option("tuple", a1)->required();
    universal->add_option("d", n1)->required();
    add_field(universal);
    universal->add_option("-o,--out", out_path);
    universal->callback([&] { action = [&] { return cmd_universal(a1, n1, field(), out_path, out); }; });

    auto* embed = app.add_subcommand("embed", "embed a space into a universal space");
    embed->add_option("src", a1)->required();
    embed->add_option("dst", a2)->required();
    embed->add_option("-o,--out", out_path);
    embed->callback([&] { action = [&] { return cmd_embed(a1, a2, out_path, out); }; });

    auto* shift = app.add_subcommand("shift", "block structure over pinned coordinates");
    shift->add_option("space", a1)->required();
    shift->add_option("--pins", a2, "1-based coordinates")->required();
    shift->add_option("--base-out", a3);
    shift->add_option("-o,--out", out_path);
    shift->callback([&] { action = [&] { return cmd_shift(a1, a2, out_path, a3, out); }; });

    auto* unshift_cmd = app.add_subcommand("unshift", "reassemble a space from its pinned part and blocks");
    unshift_cmd->add_option("base", a1)->required();
    unshift_cmd->add_option("blocks", a2)->required();
    unshift_cmd->add_option("-o,--out", out_path);
    unshift_cmd->callback([&] { action = [&] { return cmd_unshift(a1, a2, out_path, out); }; });

    auto* amalg = app.add_subcommand("amalgamate", "amalgamate Y and Z over X");
    amalg->add_option("spaces", files)->required()->expected(3);
    amalg->add_option("--maps", a1, "F,G: X -> Y and X -> Z")->required();
    amalg->add_option("-o,--out", out_path, "prefix for W.sp, W-y.emb, W-z.emb")->required();
    amalg->callback([&] { action = [&] { return cmd_amalgamate(files, a1, out_path, out); }; });

    auto* tower = app.add_subcommand("tower", "build, extend and replay towers");
    tower->require_subcommand(1);
    auto* build = tower->add_subcommand("build", "build a tower directory");
    build->add_option("tuple", a1)->required();
    build->add_option("--depth", n1)->required();
    build->add_option("--schedule", a2)->required();
    build->add_flag("--lazy", flag);
    add_field(build);
    build->add_option("-o,--out", out_path)->required();
    build->callback([&] { action = [&] { return cmd_tower_build(a1, field(), n1, a2, flag, out_path, out); }; });
    auto* extend = tower->add_subcommand("extend", "resolve an extension request and log it");
    extend->add_option("dir", a1)->required();
    extend->add_option("iota", a2, "X -> Y: embedding file, matrix file or inline columns")->required();
    extend->add_option("--x", a4);
    extend->add_option("--y", out_path);
    extend->add_option("--level", level);
    extend->add_option("--alpha", a3, "X -> level, file or inline columns");
    extend->callback([&] { action = [&] { return cmd_tower_extend(a1, a2, a4, out_path, level, a3, out); }; });
    auto* replay = tower->add_subcommand("replay", "rebuild and replay every logged request");
    replay->add_option("dir", a1)->required();
    replay->callback([&] { action = [&] { return cmd_tower_replay(a1, out); }; });

    auto* pi = app.add_subcommand("pi", "classifying map of a tuple");
    pi->add_option("space", a1)->required();
    pi->add_option("--tuple", a2)->required();
    pi->add_option("-o,--out", out_path);
    pi->callback([&] { action = [&] { return cmd_pi(a1, a2, out_path, out); }; });

    auto* orbit = app.add_subcommand("orbit", "decide whether two tuples share an orbit");
    orbit->add_option("dir", a1)->required();
    orbit->add_option("v", a2)->required();
    orbit->add_option("w", a3)->required();
    orbit->add_option("--level", level)->required();
    orbit->add_option("--budget", budget)->capture_default_str();
    orbit->callback([&] { action = [&] { return cmd_orbit(a1, a2, a3, level, budget, out); }; });

    auto* witness = app.add_subcommand("witness", "move a subspace into the cached absorber");
    witness->add_option("dir", a1)->required();
    witness->add_option("w", a2)->required();
    witness->add_option("--pins", a3);
    witness->add_option("--level", level)->required();
    witness->add_option("--bound", n1)->required();
    witness->add_option("--budget", budget)->capture_default_str();
    witness->add_flag("--save", flag, "store the absorber in the manifest");
    witness->callback([&] { action = [&] { return cmd_witness(a1, a2, a3, level, n1, budget, flag, out); }; });

    auto* witt = app.add_subcommand("witt", "quadratic-space oracle");
    witt->require_subcommand(1);
    auto* wembed = witt->add_subcommand("embed", "embed into a hyperbolic space");
    wembed->add_option("space", a1)->required();
    wembed->add_option("-o,--out", out_path);
    wembed->callback([&] { action = [&] { return cmd_witt_embed(a1, out_path, out); }; });
    auto* wextend = witt->add_subcommand("extend", "extend an isometry of subspaces");
    wextend->add_option("space", a1)->required();
    wextend->add_option("m", a2)->required();
    wextend->add_option("m2", a3)->required();
    wextend->add_option("-o,--out", out_path);
    wextend->callback([&] { action = [&] { return cmd_witt_extend(a1, a2, a3, out_path, out); }; });

    auto* sweep = app.add_subcommand("sweep", "embed every structure of a given dimension");
    sweep->add_option("tuple", a1)->required();
    sweep->add_option("--n", n1)->required();
    sweep->add_option("--bound", n2)->required();
    sweep->add_option("--shards", level, "worker threads")->default_val(1);
    add_field(sweep);
    sweep->callback([&] { action = [&] { return cmd_sweep(a1, n1, n2, field(), level, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 1;
    }
    try {
        return action();
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tsf::cli
