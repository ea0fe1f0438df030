#pragma once

#include <string>

#include "singuline/box.hpp"

namespace singuline {

enum class CurveMode { Resultant, Discriminant };
enum class DomainKind { Box, Global };

// Pipeline configuration shared by isolation, topology and the CLI.
struct Config {
    CurveMode mode = CurveMode::Resultant;
    DomainKind domain = DomainKind::Box;
    Box2 box{DInterval(-1, 1), DInterval(-1, 1)};

    int max_depth = 40;        // per-box subdivision depth cap
    long max_boxes = 1000000;  // processed-box cap per subdivision run
    int max_precision_bits = 1024;

    double eps_inflation = 1e-2;     // relative, before each Krawczyk test
    double final_diam_target = 1e-3; // refinement target for reported boxes

    bool check_assumptions_only = false;
    bool oracle_cross_check = false;
    bool allow_unverified_assumptions = false;
    int jobs = 1;
    bool timing = true;

    std::string out_path;
    std::string svg_path;
};

} // namespace singuline
