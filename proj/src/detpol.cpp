#include "singuline/detpol.hpp"

namespace singuline {

BiPoly bareiss_det(std::vector<std::vector<BiPoly>> M) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return BiPoly::constant(1);
    int sign = 1;
    BiPoly prev = BiPoly::constant(1);
    for (int k = 0; k < n - 1; ++k) {
        if (M[size_t(k)][size_t(k)].is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M[size_t(i)][size_t(k)].is_zero()) {
                    swap = i;
                    break;
                }
            if (swap < 0) return BiPoly();
            std::swap(M[size_t(k)], M[size_t(swap)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                M[size_t(i)][size_t(j)] =
                    (M[size_t(k)][size_t(k)] * M[size_t(i)][size_t(j)] -
                     M[size_t(i)][size_t(k)] * M[size_t(k)][size_t(j)])
                        .exact_div(prev);
            M[size_t(i)][size_t(k)] = BiPoly();
        }
        prev = M[size_t(k)][size_t(k)];
    }
    return sign < 0 ? -M[size_t(n - 1)][size_t(n - 1)] : M[size_t(n - 1)][size_t(n - 1)];
}

ZPoly detpol_subres(const ZPoly& P, const ZPoly& Q, int j) {
    const int p = zdeg(P), q = zdeg(Q);
    if (p < 1 || q < 1 || j < 0 || j > std::min(p, q) || j >= std::max(p, q))
        raise(ErrorCode::InvalidInput, "determinantal subresultant index out of range");
    const int ncols = p + q - j;
    const int nsq = p + q - 2 * j - 1;
    auto coeff_of = [](const ZPoly& a, int deg) {
        return deg >= 0 && deg < static_cast<int>(a.size()) ? a[size_t(deg)] : BiPoly();
    };
    std::vector<std::vector<BiPoly>> rows;
    for (int k = q - j - 1; k >= 0; --k) {
        std::vector<BiPoly> row{size_t(ncols), BiPoly()};
        for (int c = 0; c < ncols; ++c) row[size_t(c)] = coeff_of(P, p + q - j - 1 - c - k);
        rows.push_back(std::move(row));
    }
    for (int k = p - j - 1; k >= 0; --k) {
        std::vector<BiPoly> row{size_t(ncols), BiPoly()};
        for (int c = 0; c < ncols; ++c) row[size_t(c)] = coeff_of(Q, p + q - j - 1 - c - k);
        rows.push_back(std::move(row));
    }
    ZPoly S(static_cast<size_t>(j) + 1);
    for (int t = 0; t <= j; ++t) {
        std::vector<std::vector<BiPoly>> M(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) {
            for (int c = 0; c < nsq; ++c) M[r].push_back(rows[r][size_t(c)]);
            M[r].push_back(rows[r][size_t(ncols - 1 - t)]);
        }
        S[size_t(t)] = bareiss_det(std::move(M));
    }
    return ztrim(std::move(S));
}

} // namespace singuline
