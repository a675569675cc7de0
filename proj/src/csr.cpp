#include "hyperips/csr.hpp"

#include <algorithm>
#include <cmath>

#include "hyperips/errors.hpp"
#include "hyperips/ode.hpp"

namespace hyperips {

double Csr::at(std::size_t r, std::size_t c) const {
    auto b = col.begin() + long(off[r]), e = col.begin() + long(off[r + 1]);
    auto it = std::lower_bound(b, e, uint32_t(c));
    if (it != e && *it == c) return val[std::size_t(it - col.begin())];
    return 0.0;
}

void Csr::matvec(const double* x, double* y) const {
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t k = off[r]; k < off[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

void Csr::left_matvec(const double* x, double* y) const {
    for (std::size_t r = 0; r < rows; ++r) {
        const double xr = x[r];
        if (xr == 0.0) continue;
        for (std::size_t k = off[r]; k < off[r + 1]; ++k) y[col[k]] += xr * val[k];
    }
}

Csr Csr::transpose() const {
    Csr t;
    t.rows = cols;
    t.cols = rows;
    t.off.assign(cols + 1, 0);
    for (uint32_t c : col) ++t.off[c + 1];
    for (std::size_t i = 0; i < cols; ++i) t.off[i + 1] += t.off[i];
    t.col.resize(nnz());
    t.val.resize(nnz());
    std::vector<std::size_t> cur(t.off.begin(), t.off.end() - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = off[r]; k < off[r + 1]; ++k) {
            std::size_t p = cur[col[k]]++;
            t.col[p] = uint32_t(r);
            t.val[p] = val[k];
        }
    return t;
}

bool Csr::is_symmetric(double tol) const {
    if (rows != cols) return false;
    Csr t = transpose();
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t ka = off[r], kb = t.off[r];
        const std::size_t ea = off[r + 1], eb = t.off[r + 1];
        while (ka < ea || kb < eb) {
            uint32_t ca = ka < ea ? col[ka] : UINT32_MAX;
            uint32_t cb = kb < eb ? t.col[kb] : UINT32_MAX;
            if (ca == cb) {
                if (std::abs(val[ka] - t.val[kb]) > tol) return false;
                ++ka, ++kb;
            } else if (ca < cb) {
                if (std::abs(val[ka]) > tol) return false;
                ++ka;
            } else {
                if (std::abs(t.val[kb]) > tol) return false;
                ++kb;
            }
        }
    }
    return true;
}

std::vector<double> Csr::row_sums() const {
    std::vector<double> s(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = off[r]; k < off[r + 1]; ++k) s[r] += val[k];
    return s;
}

std::vector<double> Csr::col_sums() const {
    std::vector<double> s(cols, 0.0);
    for (std::size_t k = 0; k < nnz(); ++k) s[col[k]] += val[k];
    return s;
}

Csr csr_from_triples(std::size_t rows, std::size_t cols, std::vector<Triple> triples) {
    std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    Csr m;
    m.rows = rows;
    m.cols = cols;
    m.off.assign(rows + 1, 0);
    m.col.reserve(triples.size());
    m.val.reserve(triples.size());
    for (std::size_t i = 0; i < triples.size();) {
        std::size_t j = i;
        double acc = 0.0;
        while (j < triples.size() && triples[j].r == triples[i].r && triples[j].c == triples[i].c)
            acc += triples[j++].v;
        m.col.push_back(triples[i].c);
        m.val.push_back(acc);
        ++m.off[triples[i].r + 1];
        i = j;
    }
    for (std::size_t r = 0; r < rows; ++r) m.off[r + 1] += m.off[r];
    return m;
}

double frobenius_theta(const Csr& a) {
    double s = 0.0;
    for (double v : a.val) s += v * v;
    return s / double(a.rows);
}

std::vector<double> diag_of_square(const Csr& a) {
    // (A^2)_mm = <row m of A, row m of A^T>; both index lists are sorted
    Csr t = a.transpose();
    std::vector<double> d(a.rows, 0.0);
    for (std::size_t m = 0; m < a.rows; ++m) {
        std::size_t ka = a.off[m], kb = t.off[m];
        while (ka < a.off[m + 1] && kb < t.off[m + 1]) {
            if (a.col[ka] == t.col[kb]) d[m] += a.val[ka++] * t.val[kb++];
            else if (a.col[ka] < t.col[kb]) ++ka;
            else ++kb;
        }
    }
    return d;
}

DiagR2Stats diag_r2_stats(const Csr& a) {
    auto d = diag_of_square(a);
    double s = 0.0, s2 = 0.0;
    for (double x : d) s += x, s2 += x * x;
    const double n = double(a.rows);
    return {s / n, std::sqrt(s2 / n)};
}

SpectralNormResult spectral_norm(const Csr& a, double tol, std::size_t max_iter) {
    const std::size_t n = a.cols;
    SpectralNormResult res;
    if (n == 0 || a.nnz() == 0) return {0.0, true, 0};
    Csr at = a.transpose();

    std::vector<double> v(n, 1.0 / std::sqrt(double(n))), av(a.rows), w(n);
    auto iterate_from = [&](std::vector<double>& vec) {
        double sigma_prev = -1.0;
        for (std::size_t it = 1; it <= max_iter; ++it) {
            a.matvec(vec.data(), av.data());
            double sigma = 0.0;
            for (double x : av) sigma += x * x;
            sigma = std::sqrt(sigma); // = ||A v||, current singular value estimate
            if (sigma == 0.0) { res.iterations += it; return 0.0; }
            at.matvec(av.data(), w.data());
            double nw = 0.0;
            for (double x : w) nw += x * x;
            nw = std::sqrt(nw);
            for (std::size_t i = 0; i < n; ++i) vec[i] = w[i] / nw;
            if (sigma_prev >= 0 && std::abs(sigma - sigma_prev) <= tol * std::max(1.0, sigma)) {
                res.iterations += it;
                res.converged = true;
                return sigma;
            }
            sigma_prev = sigma;
        }
        res.iterations += max_iter;
        return sigma_prev;
    };

    res.value = iterate_from(v);
    if (res.value == 0.0 && a.nnz() > 0) {
        // all-ones start was orthogonal to the range; deterministic restart
        res.converged = false;
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = 1.0 + 0.61803398875 * double(i % 7 + 1);
            nrm += v[i] * v[i];
        }
        nrm = std::sqrt(nrm);
        for (auto& x : v) x /= nrm;
        res.value = iterate_from(v);
    }
    return res;
}

std::vector<double> expm_action(const Csr& a, std::vector<double> v, double t, double tol) {
    if (a.rows != a.cols || v.size() != a.rows)
        fail(Errc::ParameterDomain, "expm_action: dimension mismatch");
    if (t == 0.0 || a.nnz() == 0) {
        if (t != 0.0) return v; // zero matrix: exp(tA) = I
        return v;
    }
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    std::vector<double> dy;
    ode_integrate([&](double, const std::vector<double>& y, std::vector<double>& d) {
        d.resize(y.size());
        a.matvec(y.data(), d.data());
    }, v, 0.0, t, opt);
    return v;
}

} // namespace hyperips
