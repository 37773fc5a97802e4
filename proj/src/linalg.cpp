#include "nkg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nkg {

// Row-major compact band storage: row i keeps columns i-kl .. i+kl+ku
// contiguously at ab[i*ldab + (j - i + kl)]. The trailing kl slots per row
// are fill space for the bandwidth growth caused by row interchanges, so
// elimination updates and back-substitution sweep contiguous memory.

BandedMatrix::BandedMatrix(int dim, int lower_bandwidth, int upper_bandwidth)
    : n_(dim), kl_(lower_bandwidth), ku_(upper_bandwidth) {
    if (dim < 1 || lower_bandwidth < 0 || upper_bandwidth < 0)
        throw std::invalid_argument("BandedMatrix: bad shape");
    ldab_ = 2 * kl_ + ku_ + 1;
    ab_.assign(static_cast<size_t>(ldab_) * n_, 0.0);
}

double& BandedMatrix::at(int i, int j) {
    if (!in_band(i, j)) throw std::invalid_argument("BandedMatrix::at outside band");
    return ab_[static_cast<size_t>(i) * ldab_ + (j - i + kl_)];
}

double BandedMatrix::get(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("BandedMatrix::get outside matrix");
    if (i - j > kl_ || j - i > ku_) return 0.0;
    return ab_[static_cast<size_t>(i) * ldab_ + (j - i + kl_)];
}

void BandedMatrix::set_zero() { std::fill(ab_.begin(), ab_.end(), 0.0); }

double BandedMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) {
        const int lo = std::max(0, i - kl_);
        const int hi = std::min(n_ - 1, i + ku_);
        const double* row = &ab_[static_cast<size_t>(i) * ldab_];
        for (int j = lo; j <= hi; ++j) m = std::max(m, std::abs(row[j - i + kl_]));
    }
    return m;
}

void BandedFactorization::compute(const BandedMatrix& a, Pivoting mode) {
    n_ = a.n_;
    kl_ = a.kl_;
    ku_ = a.ku_;
    ku_eff_ = a.kl_ + a.ku_;
    ldab_ = a.ldab_;
    ab_ = a.ab_; // reuses capacity on repeated calls with the same shape
    pivots_.assign(static_cast<size_t>(a.n_), 0);

    const double tol = 1e-14 * a.max_abs();
    const int ld = ldab_;
    double* ab = ab_.data();
    auto entry = [&](int i, int j) -> double& {
        return ab[static_cast<size_t>(i) * ld + (j - i + kl_)];
    };

    for (int j = 0; j < n_; ++j) {
        const int last_row = std::min(n_ - 1, j + kl_);
        int p = j;
        if (mode == Pivoting::Partial) {
            double best = std::abs(entry(j, j));
            for (int i = j + 1; i <= last_row; ++i) {
                const double v = std::abs(entry(i, j));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
        }
        if (!(std::abs(entry(p, j)) > tol))
            throw SingularMatrixError(
                p, "banded factorization: singular pivot in row " + std::to_string(p) +
                       " (column " + std::to_string(j) + ")");
        pivots_[static_cast<size_t>(j)] = p;

        const int width = std::min(n_ - 1, j + ku_eff_) - j; // columns j+1 .. j+width
        if (p != j) {
            double* rj = &entry(j, j);
            double* rp = &entry(p, j);
            for (int k = 0; k <= width; ++k) std::swap(rj[k], rp[k]);
        }
        const double inv = 1.0 / entry(j, j);
        const double* src = &entry(j, j) + 1;
        for (int i = j + 1; i <= last_row; ++i) {
            double* row = &entry(i, j);
            const double l = row[0] * inv;
            row[0] = l;
            for (int k = 0; k < width; ++k) row[1 + k] -= l * src[k];
        }
    }
}

BandedFactorization BandedFactorization::factorize(const BandedMatrix& a, Pivoting mode) {
    BandedFactorization f;
    f.compute(a, mode);
    return f;
}

void BandedFactorization::solve_in_place(std::span<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("BandedFactorization::solve: rhs length mismatch");
    const double* ab = ab_.data();
    const int ld = ldab_;
    auto entry = [&](int i, int j) -> double {
        return ab[static_cast<size_t>(i) * ld + (j - i + kl_)];
    };
    // Forward: apply interchanges and L.
    for (int j = 0; j < n_; ++j) {
        const int p = pivots_[static_cast<size_t>(j)];
        if (p != j) std::swap(rhs[static_cast<size_t>(j)], rhs[static_cast<size_t>(p)]);
        const double xj = rhs[static_cast<size_t>(j)];
        if (xj != 0.0) {
            const int last_row = std::min(n_ - 1, j + kl_);
            for (int i = j + 1; i <= last_row; ++i)
                rhs[static_cast<size_t>(i)] -= entry(i, j) * xj;
        }
    }
    // Backward: U x = y, each row a contiguous span.
    for (int i = n_ - 1; i >= 0; --i) {
        const int width = std::min(n_ - 1, i + ku_eff_) - i;
        const double* row = &ab[static_cast<size_t>(i) * ld + kl_];
        double s = rhs[static_cast<size_t>(i)];
        for (int k = 1; k <= width; ++k) s -= row[k] * rhs[static_cast<size_t>(i + k)];
        rhs[static_cast<size_t>(i)] = s / row[0];
    }
}

std::vector<double> BandedFactorization::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

} // namespace nkg
