#include "singuline/isolate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace singuline {

namespace {

bool finite_box(const Box2& b) {
    return std::isfinite(b.x.lo) && std::isfinite(b.x.hi) && std::isfinite(b.y.lo) &&
           std::isfinite(b.y.hi);
}

// Connected components under closed-box overlap, members sorted, components
// ordered by smallest member.
std::vector<std::vector<size_t>> overlap_components(const std::vector<Box2>& boxes) {
    size_t n = boxes.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<size_t>> out;
    for (size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<size_t> stack{i}, members;
        seen[i] = true;
        while (!stack.empty()) {
            size_t a = stack.back();
            stack.pop_back();
            members.push_back(a);
            for (size_t b = 0; b < n; ++b)
                if (!seen[b] && boxes[a].overlaps(boxes[b])) {
                    seen[b] = true;
                    stack.push_back(b);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

Box2 hull_of(const std::vector<Box2>& boxes, const std::vector<size_t>& idx) {
    Box2 h = boxes[idx.front()];
    for (size_t k = 1; k < idx.size(); ++k) h = Box2::hull(h, boxes[idx[k]]);
    return h;
}

struct SystemEval {
    CompiledPoly f, s11, s10, s22;
    explicit SystemEval(const CheckerPolys& sys)
        : f(sys.f, 2), s11(sys.s11, 2), s10(sys.s10, 2), s22(sys.s22, 2) {}
};

CandidateBox make_candidate(const std::shared_ptr<const CheckerPolys>& sys,
                            const SystemEval& ev, const Box2& accepted_box,
                            const KrawczykResult2<DInterval>& kr, double eps) {
    CandidateBox c;
    c.box = kr.K; // any zero of (s11, s10) in the inflated domain lies in K
    c.chart = sys->chart;
    c.certificate = {kr.domain, kr.K, Box2::intersect(kr.K, accepted_box), eps};
    c.f_val = ev.f.eval(c.box, 2);
    c.s11_val = ev.s11.eval(c.box, 2);
    c.s10_val = ev.s10.eval(c.box, 2);
    c.s22_val = ev.s22.eval(c.box, 2);
    c.mapped = back_map_box(c.box, sys->chart);
    c.system = sys;
    return c;
}

// Merge overlapping certified enclosures: the members of a cluster enclose
// the same zero (two boxes both containing it must intersect), so one
// Krawczyk run on the cluster hull re-certifies uniqueness for the union.
void merge_overlaps(std::vector<CandidateBox>& cands,
                    const std::shared_ptr<const CheckerPolys>& sys, const SystemEval& ev,
                    const Config& cfg, IsolateStats& st) {
    for (int pass = 0; pass < 10; ++pass) {
        std::vector<Box2> boxes;
        boxes.reserve(cands.size());
        for (const auto& c : cands) boxes.push_back(c.box);
        auto comps = overlap_components(boxes);
        if (comps.size() == cands.size()) return;
        std::vector<CandidateBox> next;
        for (const auto& comp : comps) {
            if (comp.size() == 1) {
                next.push_back(cands[comp.front()]);
                continue;
            }
            ++st.cluster_merges;
            std::vector<Box2> members;
            for (size_t i : comp) members.push_back(cands[i].box);
            bool merged = false;
            for (int attempt = 0; attempt < 4 && !merged; ++attempt) {
                Box2 hull = members.front();
                for (size_t k = 1; k < members.size(); ++k) hull = Box2::hull(hull, members[k]);
                auto kr = krawczyk2(ev.s11, ev.s10, hull, cfg.eps_inflation, 1);
                if (kr.certified && !ev.s22.eval(kr.K, 2).contains_zero()) {
                    next.push_back(make_candidate(sys, ev, hull, kr, cfg.eps_inflation));
                    merged = true;
                    break;
                }
                for (auto& m : members) {
                    try {
                        m = contract(m, ev.s11, ev.s10, 1);
                    } catch (const Error&) {
                        // keep the box; contraction is best-effort here
                    }
                }
            }
            if (!merged) {
                // Keep the tightest member: it certifies the zero on its own.
                size_t best = comp.front();
                for (size_t i : comp)
                    if (cands[i].box.width_d() < cands[best].box.width_d()) best = i;
                next.push_back(cands[best]);
            }
        }
        cands = std::move(next);
    }
}

void sort_candidates(std::vector<CandidateBox>& cands) {
    std::sort(cands.begin(), cands.end(), [](const CandidateBox& a, const CandidateBox& b) {
        if (a.chart != b.chart) return static_cast<int>(a.chart) < static_cast<int>(b.chart);
        auto key = [](const CandidateBox& c) {
            return std::array<double, 4>{c.box.x.lo, c.box.x.hi, c.box.y.lo, c.box.y.hi};
        };
        return key(a) < key(b);
    });
}

} // namespace

std::vector<Box2> inflate_and_cluster(std::vector<Box2> boxes, double eps) {
    for (auto& b : boxes) {
        // factor (1 + eps) about the center: pad each side by eps * width / 2
        double px = eps * b.x.width_d() / 2, py = eps * b.y.width_d() / 2;
        b.x = b.x + DInterval::from_double_pair(-px, px);
        b.y = b.y + DInterval::from_double_pair(-py, py);
    }
    for (;;) {
        auto comps = overlap_components(boxes);
        if (comps.size() == boxes.size()) return boxes;
        std::vector<Box2> next;
        next.reserve(comps.size());
        for (const auto& comp : comps) next.push_back(hull_of(boxes, comp));
        boxes = std::move(next);
    }
}

std::vector<CandidateBox> isolate_system(const std::shared_ptr<const CheckerPolys>& sys,
                                         const Box2& B0, const Config& cfg,
                                         IsolateStats* stats) {
    SystemEval ev(*sys);
    IsolateStats local;
    IsolateStats& st = stats ? *stats : local;

    struct Item {
        Box2 box;
        int depth;
    };
    struct Accepted {
        Box2 box;
        KrawczykResult2<DInterval> kr;
    };
    std::vector<Accepted> accepted;
    std::vector<Box2> stalled;
    std::deque<Item> work;
    work.push_back({B0, 0});
    long processed = 0;

    auto step = [&](const Box2& B, int depth, bool expandable) {
        try {
            if (!ev.f.eval(B, 2).contains_zero() || !ev.s11.eval(B, 2).contains_zero() ||
                !ev.s10.eval(B, 2).contains_zero()) {
                ++st.discarded;
                st.min_box_diameter = std::min(st.min_box_diameter, B.width_d());
                return;
            }
            auto kr = krawczyk2(ev.s11, ev.s10, B, cfg.eps_inflation, 1);
            if (kr.certified && !ev.s22.eval(B, 2).contains_zero()) {
                accepted.push_back({B, kr});
                st.min_box_diameter = std::min(st.min_box_diameter, B.width_d());
                return;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PrecisionExhausted) throw;
            // cannot decide at this width, refine
        }
        if (!expandable || depth >= cfg.max_depth) {
            stalled.push_back(B);
            return;
        }
        for (const Box2& child : B.split4()) work.push_back({child, depth + 1});
    };

    while (!work.empty()) {
        if (processed >= cfg.max_boxes) {
            for (const auto& it : work) step(it.box, it.depth, false);
            break;
        }
        Item it = work.front();
        work.pop_front();
        ++processed;
        ++st.boxes_processed;
        st.max_depth_reached = std::max(st.max_depth_reached, it.depth);
        step(it.box, it.depth, true);
    }
    if (!stalled.empty())
        raise(ErrorCode::BudgetExhausted,
              "isolation budget exhausted with " + std::to_string(stalled.size()) +
                  " undecided boxes");

    std::vector<CandidateBox> out;
    out.reserve(accepted.size());
    for (const auto& a : accepted)
        out.push_back(make_candidate(sys, ev, a.box, a.kr, cfg.eps_inflation));
    merge_overlaps(out, sys, ev, cfg, st);
    sort_candidates(out);
    return out;
}

std::vector<CandidateBox> isolate_in_box(const MPoly& P, const MPoly& Q, const Box2& B0,
                                         const Config& cfg, IsolateStats* stats) {
    auto sys = std::make_shared<const CheckerPolys>(make_checker_polys(P, Q));
    if (!cfg.allow_unverified_assumptions) {
        AssumptionVerdict v = check_assumptions(*sys, B0, {cfg.max_depth, cfg.max_boxes});
        if (v.status != AssumptionVerdict::Status::Verified)
            raise(ErrorCode::AssumptionNotVerified,
                  "genericity assumptions not verified: " +
                      std::to_string(v.stalled_boxes.size()) + " stalled boxes");
    }
    return isolate_system(sys, B0, cfg, stats);
}

std::vector<CandidateBox> isolate_global(const MPoly& P, const MPoly& Q, const Config& cfg,
                                         IsolateStats* stats) {
    const Box2 unit{DInterval(-1, 1), DInterval(-1, 1)};
    std::vector<CandidateBox> all;
    std::shared_ptr<const CheckerPolys> identity_sys;

    for (ChartId chart : {ChartId::Identity, ChartId::ChartU, ChartId::ChartV}) {
        auto sys = std::make_shared<const CheckerPolys>(make_checker_polys(P, Q, chart));
        if (chart == ChartId::Identity) identity_sys = sys;
        if (!cfg.allow_unverified_assumptions) {
            AssumptionVerdict v =
                check_assumptions(*sys, unit, {cfg.max_depth, cfg.max_boxes});
            if (v.status != AssumptionVerdict::Status::Verified)
                raise(ErrorCode::AssumptionNotVerified,
                      std::string("genericity assumptions not verified in ") +
                          chart_name(chart));
        }
        auto cands = isolate_system(sys, unit, cfg, stats);
        if (chart != ChartId::Identity && !cands.empty()) {
            // Pull enclosures off the chart boundary where possible so the
            // back-mapped boxes come out finite.
            SystemEval ev(*sys);
            int axis = chart_clear_axis(chart);
            for (auto& c : cands) {
                for (int i = 0; i < 8; ++i) {
                    const DInterval& w = axis == 0 ? c.box.x : c.box.y;
                    if (!w.contains_zero()) break;
                    Box2 nb;
                    try {
                        nb = contract(c.box, ev.s11, ev.s10, 1);
                    } catch (const Error&) {
                        break;
                    }
                    if (nb.width_d() >= c.box.width_d()) break;
                    c.box = nb;
                }
                c.mapped = back_map_box(c.box, chart);
            }
        }
        all.insert(all.end(), cands.begin(), cands.end());
    }

    // Cross-chart duplicates: overlapping finite back-mapped enclosures hold
    // the same singularity; merge each overlap cluster and re-certify once on
    // the enclosing box in original coordinates.
    SystemEval idev(*identity_sys);
    for (int pass = 0; pass < 10; ++pass) {
        std::vector<size_t> fin;
        for (size_t i = 0; i < all.size(); ++i)
            if (finite_box(all[i].mapped)) fin.push_back(i);
        std::vector<Box2> fboxes;
        for (size_t i : fin) fboxes.push_back(all[i].mapped);
        auto comps = overlap_components(fboxes);
        if (comps.size() == fin.size()) break;
        std::vector<CandidateBox> next;
        for (size_t i = 0; i < all.size(); ++i)
            if (!finite_box(all[i].mapped)) next.push_back(all[i]);
        for (const auto& comp : comps) {
            if (comp.size() == 1) {
                next.push_back(all[fin[comp.front()]]);
                continue;
            }
            if (stats) ++stats->cluster_merges;
            Box2 hull = fboxes[comp.front()];
            for (size_t k = 1; k < comp.size(); ++k) hull = Box2::hull(hull, fboxes[comp[k]]);
            auto kr = krawczyk2(idev.s11, idev.s10, hull, cfg.eps_inflation, 1);
            if (kr.certified && !idev.s22.eval(kr.K, 2).contains_zero()) {
                next.push_back(make_candidate(identity_sys, idev, hull, kr, cfg.eps_inflation));
            } else {
                size_t best = fin[comp.front()];
                for (size_t k : comp) {
                    size_t i = fin[k];
                    if (all[i].mapped.width_d() < all[best].mapped.width_d()) best = i;
                }
                next.push_back(all[best]);
            }
        }
        all = std::move(next);
    }
    sort_candidates(all);
    return all;
}

Box2 refine_box(const CheckerPolys& sys, Box2 box, double target_diam, int max_iter) {
    CompiledPoly c11(sys.s11, 2), c10(sys.s10, 2);
    for (int i = 0; i < max_iter && box.width_d() > target_diam; ++i) {
        Box2 nb = contract(box, c11, c10, 1);
        if (nb.width_d() >= box.width_d()) break; // precision floor reached
        box = nb;
    }
    return box;
}

} // namespace singuline
