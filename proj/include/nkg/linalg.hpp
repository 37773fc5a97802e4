#pragma once

#include <span>
#include <vector>

#include "nkg/errors.hpp"

namespace nkg {

/// Square banded matrix in LAPACK-style band storage: entry (i, j) with
/// -ku <= i - j <= kl lives at ab[kl + ku + i - j + j*ldab]. The leading kl
/// rows of each column are reserved as fill space so a factorization with
/// row interchanges (upper bandwidth growing to kl + ku) fits in place.
class BandedMatrix {
public:
    BandedMatrix(int dim, int lower_bandwidth, int upper_bandwidth);

    int dim() const noexcept { return n_; }
    int lower_bandwidth() const noexcept { return kl_; }
    int upper_bandwidth() const noexcept { return ku_; }

    bool in_band(int i, int j) const noexcept {
        return i >= 0 && j >= 0 && i < n_ && j < n_ && i - j <= kl_ && j - i <= ku_;
    }

    /// Mutable access; (i, j) must lie inside the band.
    double& at(int i, int j);
    /// Value semantics for any (i, j) inside the matrix; zero off the band.
    double get(int i, int j) const;

    void set_zero();
    double max_abs() const noexcept;

    std::span<const double> storage() const noexcept { return ab_; }
    int storage_stride() const noexcept { return ldab_; }

private:
    friend class BandedFactorization;
    int n_;
    int kl_;
    int ku_;
    int ldab_;
    std::vector<double> ab_;
};

enum class Pivoting {
    Partial, ///< row interchanges; robust on any nonsingular band
    None     ///< classic elimination down the diagonal, as in band Thomas solvers
};

/// In-place banded LU. Throws SingularMatrixError when a pivot magnitude
/// falls below 1e-14 * max|A|, naming the pivot row.
class BandedFactorization {
public:
    BandedFactorization() = default; ///< empty; call compute() before solving

    static BandedFactorization factorize(const BandedMatrix& a,
                                         Pivoting mode = Pivoting::Partial);

    /// (Re)factorize, reusing this object's storage when shapes match.
    void compute(const BandedMatrix& a, Pivoting mode = Pivoting::Partial);

    /// Solve A x = rhs. Throws std::invalid_argument on a length mismatch.
    std::vector<double> solve(std::span<const double> rhs) const;
    void solve_in_place(std::span<double> rhs) const;

    int dim() const noexcept { return n_; }

private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;     // original upper bandwidth
    int ku_eff_ = 0; // kl_ + ku_ after fill
    int ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> pivots_;
};

/// Free-function forms of the two operations.
inline BandedFactorization factorize(const BandedMatrix& a, Pivoting mode = Pivoting::Partial) {
    return BandedFactorization::factorize(a, mode);
}
inline std::vector<double> solve(const BandedFactorization& f, std::span<const double> rhs) {
    return f.solve(rhs);
}

} // namespace nkg
