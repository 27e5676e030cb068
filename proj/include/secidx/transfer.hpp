#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "secidx/model.hpp"

namespace secidx {

/// Attack-to-output transfer matrix G(z) = C (zI - A)^{-1} B_a + D_a.
/// Columns: actuators first, then unprotected sensors.
/// Throws ValidationError if zI - A is singular; resample z in that case.
Eigen::MatrixXcd eval_G(const Realization& r, std::complex<double> z);

struct RankResult {
    int rank = 0;
    bool borderline = false;  // a pivot landed within 10x of the threshold
};

/// Numeric rank via Gaussian elimination with partial pivoting; the pivot
/// threshold is 1e-9 * max(1, largest absolute entry).
RankResult numeric_rank(Eigen::MatrixXcd m);

/// Evaluates G at a fixed batch of generic sample points (modulus in
/// [1.1, 2.5], random phase, eigenvalues rejected) so normal ranks of many
/// column subsets can be answered against the same points.
class NormrankEvaluator {
public:
    NormrankEvaluator(const Realization& r, std::uint64_t seed, int samples = 3);

    /// Normal rank of the selected columns: max rank over the sample points.
    /// Column ids: 0..n_u-1 actuators, n_u..n_u+n_y-1 unprotected sensors.
    RankResult normrank(const std::vector<int>& cols) const;

    int total_columns() const { return n_cols_; }

private:
    std::vector<Eigen::MatrixXcd> samples_;
    int n_cols_ = 0;
};

/// One-shot convenience wrapper.
int normrank(const Realization& r, const std::vector<int>& cols, std::uint64_t seed = 0);

}  // namespace secidx
