#ifndef HYPERIPS_CSR_HPP
#define HYPERIPS_CSR_HPP

#include <cstdint>
#include <vector>

namespace hyperips {

// Compressed sparse row matrix, square unless stated otherwise.  Column
// indices are strictly increasing within each row and duplicate entries are
// merged at build time.
struct Csr {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> off; // size rows+1
    std::vector<uint32_t> col;
    std::vector<double> val;

    std::size_t nnz() const { return col.size(); }
    double at(std::size_t r, std::size_t c) const; // 0 when absent (binary search)

    // y = A^T applied? no: y[r] = sum_c A[r][c] * x[c]
    void matvec(const double* x, double* y) const;
    // y[c] += sum_r x[r] * A[r][c]  (left action x^T A, used by the master equation)
    void left_matvec(const double* x, double* y) const;

    Csr transpose() const;
    bool is_symmetric(double tol) const;

    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;
};

struct Triple {
    uint32_t r, c;
    double v;
};

// Builds a CSR matrix from unordered triples; duplicates are summed.
Csr csr_from_triples(std::size_t rows, std::size_t cols, std::vector<Triple> triples);

// Frobenius-based size functional theta = (1/N) * sum_ij A_ij^2
double frobenius_theta(const Csr& a);

// Diagonal of A*A: d[m] = sum_k A[m][k] * A[k][m]
std::vector<double> diag_of_square(const Csr& a);

struct DiagR2Stats {
    double mean; // (1/N) sum_m (A^2)_mm
    double rms;  // sqrt((1/N) sum_m ((A^2)_mm)^2)
};
DiagR2Stats diag_r2_stats(const Csr& a);

struct SpectralNormResult {
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

// Largest singular value via power iteration on A^T A.  Deterministic: the
// start vector is all-ones; if the iteration collapses to zero while A has
// nonzero entries, it restarts once from a fixed perturbed vector.  On
// reaching max_iter the current estimate is returned with converged=false.
SpectralNormResult spectral_norm(const Csr& a, double tol = 1e-10, std::size_t max_iter = 50000);

// w = exp(tA) v computed by integrating u' = A u with the adaptive RK pair;
// no dense exponential is ever formed.
std::vector<double> expm_action(const Csr& a, std::vector<double> v, double t, double tol = 1e-10);

} // namespace hyperips

#endif
