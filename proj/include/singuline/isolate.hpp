#pragma once

#include <memory>
#include <vector>

#include "singuline/assumptions.hpp"
#include "singuline/box.hpp"
#include "singuline/chart.hpp"
#include "singuline/config.hpp"
#include "singuline/krawczyk.hpp"

namespace singuline {

// Contraction record of the accepting Krawczyk test.
struct KrawczykCertificate {
    Box2 domain;     // inflated box the operator ran on
    Box2 K;          // operator image, strictly inside domain
    Box2 contracted; // K intersected with the accepted subdivision box
    double eps_inflation = 0;
};

// One certified singularity enclosure: the unique zero of (s11, s10) in box
// is a node or ordinary cusp of f (s22 does not vanish on box).
struct CandidateBox {
    Box2 box; // chart coordinates
    ChartId chart = ChartId::Identity;
    KrawczykCertificate certificate;
    Interval f_val, s11_val, s10_val, s22_val; // cached at certification time
    Box2 mapped; // original coordinates; infinite endpoints at chart boundary
    std::shared_ptr<const CheckerPolys> system; // chart system for later stages
};

// Boxes inflated by factor (1+eps) about their centers, then overlapping or
// edge-adjacent boxes merged into bounding boxes until stable.
std::vector<Box2> inflate_and_cluster(std::vector<Box2> boxes, double eps);

struct IsolateStats {
    long boxes_processed = 0;
    long discarded = 0;
    int max_depth_reached = 0;
    long cluster_merges = 0;
    double min_box_diameter = std::numeric_limits<double>::infinity();
};

// Subdivision isolation over B0 on a prebuilt system (no assumption gate):
// discard when 0 is outside any of f, s11, s10 over the box; accept when the
// Krawczyk test on (s11, s10) contracts strictly and s22 excludes 0;
// otherwise quadrisect. Raises BudgetExhausted if any box stalls.
std::vector<CandidateBox> isolate_system(const std::shared_ptr<const CheckerPolys>& sys,
                                         const Box2& B0, const Config& cfg,
                                         IsolateStats* stats = nullptr);

// Full-contract isolation in a box: verifies the genericity assumptions on
// B0 first (unless cfg.allow_unverified_assumptions), then isolates.
std::vector<CandidateBox> isolate_in_box(const MPoly& P, const MPoly& Q, const Box2& B0,
                                         const Config& cfg, IsolateStats* stats = nullptr);

// Isolation over all of R^2 via three charts, each reduced to [-1,1]^2;
// results are mapped back, cross-chart duplicates merged (overlap clusters
// re-certified by one Krawczyk call on an enclosing box), and sorted by
// chart then box order.
std::vector<CandidateBox> isolate_global(const MPoly& P, const MPoly& Q, const Config& cfg,
                                         IsolateStats* stats = nullptr);

// Repeated Krawczyk contraction of a certified box toward its zero until the
// diameter target or the iteration cap is reached.
Box2 refine_box(const CheckerPolys& sys, Box2 box, double target_diam, int max_iter = 64);

} // namespace singuline
