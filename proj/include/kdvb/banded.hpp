#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdvb {

/// Raised when a pivot vanishes to working precision during band_solve.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, std::size_t pivot_index)
        : std::runtime_error(what), pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Square matrix with `kl` sub-diagonals and `ku` super-diagonals.
/// Storage is by diagonal; entries outside the band read as zero and cannot be
/// written.
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const noexcept { return n_; }
    std::size_t lower() const noexcept { return kl_; }
    std::size_t upper() const noexcept { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return i < n_ && j < n_ && j + kl_ >= i && i + ku_ >= j;
    }

    /// Zero for out-of-band (i, j).
    double get(std::size_t i, std::size_t j) const;

    /// Throws std::out_of_range for out-of-band (i, j).
    double& at(std::size_t i, std::size_t j);

    void add(std::size_t i, std::size_t j, double value) { at(i, j) += value; }

private:
    std::size_t n_;
    std::size_t kl_;
    std::size_t ku_;
    // Row-major per diagonal: entry (i, j) lives at (ku + i - j) * n + j.
    std::vector<double> data_;
};

std::vector<double> band_matvec(const BandedMatrix& m, std::span<const double> x);

/// Gaussian elimination with partial pivoting on a copy of the band.
/// Throws SingularMatrixError when a pivot is below n * eps * max|a_ij|.
std::vector<double> band_solve(const BandedMatrix& m, std::span<const double> rhs);

}  // namespace kdvb
