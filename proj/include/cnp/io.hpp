#pragma once

// File formats (JSON with exact element strings), SVG rendering and run
// manifests. Floats only appear in "shadow" fields and in SVG output.

#include "cnp/ammann.hpp"
#include "cnp/survey.hpp"
#include "cnp/verify.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cnp {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json slope_to_json(const Slope& e);
Slope slope_from_json(const json& j);

json matrix_to_json(const FieldMatrix& m);
FieldMatrix matrix_from_json(const FieldPtr& f, const json& j);
// A matrix file is a JSON array of rows of element strings.
FieldMatrix load_matrix(const FieldPtr& f, const std::string& path);

json patch_to_json(const Patch& p);
Patch patch_from_json(const json& j);

json atlas_to_json(const Atlas& a);
json tileset_to_json(const Tileset& ts);
Tileset tileset_from_json(const json& j);

json thickness_to_json(const ThicknessEstimate& t);
json continuity_to_json(const ContinuityReport& r);
json shadow_to_json(const ShadowReport& r);
json walk_to_json(const WalkReport& r);
json suite_to_json(const SuiteReport& r);

// Fixed 12 digit rendering of an exact value.
double shadow(const FieldElement& x);
std::string fixed12(double x);

struct SvgStyle {
    double scale = 40;
    bool lines = false;        // dashed decoration lines
    bool outline_only = false;
    int core = -1;             // >= 0: only tiles inside the complete core of this size
};

// Tiles filled per type; decorations (parallel to p.tiles) drawn dashed.
std::string render_patch(const Patch& p, const SvgStyle& style = {},
                         const std::vector<DecoratedTile>* decorations = nullptr);
// One cell per decorated tile in a grid.
std::string render_tileset(const Tileset& ts, const SvgStyle& style = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

uint64_t fnv1a(const std::string& data);
std::string hex64(uint64_t h);

struct RunManifest {
    std::vector<std::string> argv;
    std::vector<uint64_t> seeds;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    std::string version;

    json to_json() const;
};

extern const char* const kToolVersion;

}  // namespace cnp
