#include "kdvb/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kdvb {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku) {
    if (n == 0) throw std::invalid_argument("BandedMatrix: dimension must be positive");
    if (kl >= n || ku >= n) {
        throw std::invalid_argument("BandedMatrix: bandwidths must be smaller than the dimension");
    }
    data_.assign((kl + ku + 1) * n, 0.0);
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    if (!in_band(i, j)) return 0.0;
    return data_[(ku_ + i - j) * n_ + j];
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j)) {
        std::ostringstream msg;
        msg << "BandedMatrix: entry (" << i << ", " << j << ") is outside the band";
        throw std::out_of_range(msg.str());
    }
    return data_[(ku_ + i - j) * n_ + j];
}

std::vector<double> band_matvec(const BandedMatrix& m, std::span<const double> x) {
    const std::size_t n = m.size();
    if (x.size() != n) throw std::invalid_argument("band_matvec: dimension mismatch");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > m.lower() ? i - m.lower() : 0;
        const std::size_t hi = std::min(n - 1, i + m.upper());
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += m.get(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

namespace {

// LU workspace in the LAPACK gbtrf layout: column-major, kl extra rows above
// the band hold the fill-in produced by row interchanges.
class BandLU {
public:
    explicit BandLU(const BandedMatrix& m)
        : n_(m.size()), kl_(m.lower()), ku_(m.upper()), kv_(kl_ + ku_),
          ld_(2 * kl_ + ku_ + 1), ab_(ld_ * n_, 0.0), piv_(n_) {
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t lo = j > ku_ ? j - ku_ : 0;
            const std::size_t hi = std::min(n_ - 1, j + kl_);
            for (std::size_t i = lo; i <= hi; ++i) {
                const double v = m.get(i, j);
                entry(i, j) = v;
                scale_ = std::max(scale_, std::abs(v));
            }
        }
    }

    void factor() {
        const double tiny = static_cast<double>(n_) * std::numeric_limits<double>::epsilon() * scale_;
        std::size_t ju = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t km = std::min(kl_, n_ - 1 - j);
            std::size_t p = j;
            double best = std::abs(entry(j, j));
            for (std::size_t i = j + 1; i <= j + km; ++i) {
                if (std::abs(entry(i, j)) > best) {
                    best = std::abs(entry(i, j));
                    p = i;
                }
            }
            piv_[j] = p;
            if (!(best > tiny)) {
                std::ostringstream msg;
                msg << "band_solve: matrix is singular to working precision at pivot " << j;
                throw SingularMatrixError(msg.str(), j);
            }
            ju = std::max(ju, std::min(p + ku_, n_ - 1));
            if (p != j) {
                for (std::size_t c = j; c <= ju; ++c) std::swap(entry(p, c), entry(j, c));
            }
            const double pivot = entry(j, j);
            for (std::size_t i = j + 1; i <= j + km; ++i) {
                const double l = entry(i, j) / pivot;
                entry(i, j) = l;
                if (l == 0.0) continue;
                for (std::size_t c = j + 1; c <= ju; ++c) entry(i, c) -= l * entry(j, c);
            }
        }
    }

    void solve(std::vector<double>& b) const {
        for (std::size_t j = 0; j < n_; ++j) {
            if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
            const std::size_t km = std::min(kl_, n_ - 1 - j);
            for (std::size_t i = j + 1; i <= j + km; ++i) b[i] -= entry(i, j) * b[j];
        }
        for (std::size_t jj = n_; jj-- > 0;) {
            b[jj] /= entry(jj, jj);
            const std::size_t lo = jj > kv_ ? jj - kv_ : 0;
            for (std::size_t i = lo; i < jj; ++i) b[i] -= entry(i, jj) * b[jj];
        }
    }

private:
    double& entry(std::size_t i, std::size_t j) { return ab_[j * ld_ + kv_ + i - j]; }
    double entry(std::size_t i, std::size_t j) const { return ab_[j * ld_ + kv_ + i - j]; }

    std::size_t n_, kl_, ku_, kv_, ld_;
    std::vector<double> ab_;
    std::vector<std::size_t> piv_;
    double scale_ = 0.0;
};

}  // namespace

std::vector<double> band_solve(const BandedMatrix& m, std::span<const double> rhs) {
    if (rhs.size() != m.size()) throw std::invalid_argument("band_solve: dimension mismatch");
    BandLU lu(m);
    lu.factor();
    std::vector<double> x(rhs.begin(), rhs.end());
    lu.solve(x);
    return x;
}

}  // namespace kdvb
