#include "kdvb/banded.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace kdvb;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const BandedMatrix& m) {
    Dense d(m.size(), std::vector<double>(m.size(), 0.0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m.get(i, j);
    return d;
}

// Textbook Gaussian elimination with partial pivoting on the full matrix.
std::vector<double> dense_solve(Dense a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(BandedMatrix(0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BandedMatrix(3, 3, 1), std::invalid_argument);
    BandedMatrix m(5, 1, 2);
    CHECK(m.in_band(3, 2));
    CHECK_FALSE(m.in_band(3, 1));
    CHECK(m.in_band(1, 3));
    CHECK_FALSE(m.in_band(1, 4));
    CHECK(m.get(4, 0) == 0.0);
    CHECK_THROWS_AS(m.at(4, 0), std::out_of_range);
    m.add(2, 3, 1.5);
    m.add(2, 3, 0.5);
    CHECK(m.get(2, 3) == 2.0);
}

TEST_CASE("random banded systems agree with a dense oracle") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_int_distribution<int> size(6, 60);
    std::uniform_int_distribution<int> width(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(size(rng));
        const auto kl = static_cast<std::size_t>(width(rng));
        const auto ku = static_cast<std::size_t>(width(rng));
        BandedMatrix m(n, kl, ku);
        // Diagonal of modulus 1..2 keeps the condition number modest; the rows
        // are still far from dominant, so pivots get swapped.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m.in_band(i, j)) m.at(i, j) = i == j ? std::copysign(1.0 + std::abs(val(rng)), val(rng)) : val(rng);
        std::vector<double> x_true(n), rhs(n);
        for (auto& v : x_true) v = val(rng);

        const Dense d = to_dense(m);
        const std::vector<double> prod = band_matvec(m, x_true);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += d[i][j] * x_true[j];
            CHECK(std::abs(prod[i] - s) <= 1e-14);
            rhs[i] = s;
        }

        const std::vector<double> x = band_solve(m, rhs);
        const std::vector<double> oracle = dense_solve(d, rhs);
        double scale = 1.0;
        for (double v : oracle) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(x[i] - oracle[i]) <= 1e-10 * scale);
            CHECK(std::abs(x[i] - x_true[i]) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("pivoting handles a zero leading entry") {
    BandedMatrix m(3, 1, 1);
    m.at(0, 0) = 0.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = 0.0;
    m.at(1, 2) = 2.0;
    m.at(2, 1) = 3.0;
    m.at(2, 2) = 1.0;
    const std::vector<double> b{1.0, 5.0, 7.0};
    const std::vector<double> x = band_solve(m, b);
    const std::vector<double> back = band_matvec(m, x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(b[i]));
}

TEST_CASE("singular matrix is reported") {
    BandedMatrix m(4, 1, 1);
    for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 1.0;
    m.at(2, 2) = 0.0;
    m.at(2, 1) = 0.0;
    const std::vector<double> b(4, 1.0);
    CHECK_THROWS_AS(band_solve(m, b), SingularMatrixError);
}

TEST_CASE("size mismatches are rejected") {
    BandedMatrix m(4, 1, 1);
    const std::vector<double> b(3, 1.0);
    CHECK_THROWS(band_solve(m, b));
    CHECK_THROWS(band_matvec(m, b));
}
