#pragma once

// Random 4 -> 2 slopes over real quadratic fields: how many are
// characterized by their subperiods and how many admit a fine projection.

#include "cnp/projection.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cnp {

struct SurveyConfig {
    int k = 3;            // coefficient bound
    int samples = 999;
    uint64_t seed = 1;
    int validity_k = 6;   // patch size for the validity check of fine candidates
    int threads = 0;      // 0: CNP_THREADS or hardware concurrency
};

struct QuadraticDraw {
    std::vector<Integer> poly;  // c0, c1, c2
    bool larger_root = true;
    std::array<Integer, 2> x, y;  // r0 + r1 a
    std::array<std::vector<Integer>, 2> u_v;  // integer parts of u and v
};

struct SurveyRecord {
    int index = 0;
    QuadraticDraw draw;
    Slope slope;
    int subperiods = 0;
    bool characterized = false;
    bool fine_found = false;
    std::string detail;   // reason or error text
    double seconds = 0;   // not part of the reproducible content

    std::string verdict() const;
};

struct SurveyResult {
    SurveyConfig config;
    int total = 0;
    int not_characterized = 0;
    int fine_found = 0;
    std::vector<SurveyRecord> records;

    double not_characterized_fraction() const;
    double fine_fraction() const;
    // Everything except timings, one line per record.
    std::string fingerprint() const;
};

QuadraticDraw draw_quadratic(int k, std::mt19937_64& rng);
Slope slope_from_draw(const QuadraticDraw& d);
// Redraws until the generators have rank two.
QuadraticDraw sample_draw(int k, std::mt19937_64& rng);
Slope sample_slope(int k, std::mt19937_64& rng);

// One sample through subperiods, characterization, fine projection and
// validity.
SurveyRecord survey_one(const Slope& e, int validity_k, uint64_t seed);

SurveyResult run_survey(const SurveyConfig& cfg);

// Header: seed_index,minpoly,root,generators,subperiods,verdict,detail,seconds
std::string survey_csv(const SurveyResult& r, bool with_timing = true);

}  // namespace cnp
