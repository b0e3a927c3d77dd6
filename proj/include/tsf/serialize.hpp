#ifndef TSF_SERIALIZE_HPP
#define TSF_SERIALIZE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "tsf/homogeneity.hpp"
#include "tsf/relative.hpp"

namespace tsf::io {

// Text artifacts. Every writer is canonical: entries sorted by index tuple,
// rationals normalized, finite-field values as codes (F_p) or coefficient
// lists (F_{p^s}), indices 1-based. Readers throw Error("malformed-file")
// on anything they cannot parse.

std::string field_line(FieldRef f);
FieldRef parse_field_line(const std::string& line);

// Vectors given as "1,0,2;0,1,1": columns separated by ';'.
Matrix parse_columns(FieldRef f, std::size_t rows, const std::string& text);

// Line cursor shared by all readers; skips blank lines and '#' comments.
class Reader {
public:
    explicit Reader(const std::string& text);
    bool done() const { return pos_ >= lines_.size(); }
    const std::string& peek() const;
    std::string next();
    // Next line must start with key; returns the rest, trimmed.
    std::string expect(const std::string& key);
    std::size_t line_number() const { return pos_; }

private:
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
};

struct SpaceLoad {
    LambdaSpace space;
    std::vector<bool> projected_on_load;  // per tuple entry: the loader applied the projector
    bool projected_any() const;
};

std::string write_space(const LambdaSpace& v);
SpaceLoad read_space(Reader& r);
SpaceLoad read_space(const std::string& text);

std::string write_matrix(const Matrix& m);
Matrix read_matrix(Reader& r);
Matrix read_matrix(const std::string& text);

// Source, target, matrix and a certificate section. The reader recomputes
// the certificate and rejects files whose recorded one disagrees.
std::string write_embedding(const LinearEmbedding& e);
LinearEmbedding read_embedding(Reader& r);
LinearEmbedding read_embedding(const std::string& text);
std::string certificate_text(const LinearEmbedding& e);

std::string write_block_structure(const BlockStructure& b);
BlockStructure read_block_structure(const std::string& text);

std::string write_restriction_point(const RestrictionPoint& p);

// X, Y and the three matrices; the levels come from the tower.
std::string write_request(const fraisse::Request<LinearEmbedding>& q);
fraisse::Request<LinearEmbedding> read_request(const std::string& text, const LambdaInstance& inst,
                                               const LambdaTower& t);

// First non-comment line of a file.
std::string header_of(const std::string& text);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

// ---------------------------------------------------------------- tower manifests

// A directory with "manifest" plus level, transition, request and witness
// files. Loading rebuilds the tower from the recorded parameters and
// rejects the directory unless every saved level and transition matches and
// every request replays.
struct TowerBundle {
    LambdaInstance inst;
    LambdaTower tower;
};

void save_tower(const std::filesystem::path& dir, const LambdaInstance& inst, const LambdaTower& t);
TowerBundle load_tower(const std::filesystem::path& dir);

}  // namespace tsf::io

#endif
