#include "singuline/compiled.hpp"

namespace singuline {

CompiledPoly::Tensor CompiledPoly::make_tensor(const MPoly& p, int nvars) {
    Tensor t;
    if (p.is_zero()) return t;
    t.nx = p.deg_x() + 1;
    t.ny = p.deg_y() + 1;
    t.nz = nvars == 3 ? p.deg_z() + 1 : 1;
    t.c.assign(size_t(t.nx) * t.ny * t.nz, mpq_class(0));
    for (const auto& [e, q] : p.terms())
        t.c[(size_t(e.ex) * t.ny + e.ey) * t.nz + e.ez] = q;
    return t;
}

CompiledPoly::CompiledPoly(const MPoly& p, int nvars) : source_(p) {
    if (nvars == 0)
        nvars_ = p.deg_z() > 0 ? 3 : 2;
    else if (nvars == 2 || nvars == 3)
        nvars_ = nvars;
    else
        raise(ErrorCode::InvalidInput, "nvars must be 2 or 3");
    if (nvars_ == 2 && p.deg_z() > 0)
        raise(ErrorCode::ArityMismatch, "polynomial involves z but nvars is 2");
    base_ = make_tensor(p, nvars_);
    static const char vnames[3] = {'x', 'y', 'z'};
    std::vector<MPoly> firsts;
    for (int v = 0; v < nvars_; ++v) {
        firsts.push_back(derivative(p, vnames[v]));
        first_.push_back(make_tensor(firsts.back(), nvars_));
    }
    for (int v = 0; v < nvars_; ++v)
        for (int w = v; w < nvars_; ++w)
            second_.push_back(make_tensor(derivative(firsts[size_t(v)], vnames[w]), nvars_));
}

} // namespace singuline
