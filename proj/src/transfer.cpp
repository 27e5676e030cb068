#include "secidx/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace secidx {

Eigen::MatrixXcd eval_G(const Realization& r, std::complex<double> z) {
    const int nx = r.n_x();
    const int nu = r.n_u();
    const int ny = r.n_y;
    const int nout = r.n_outputs();
    Eigen::MatrixXcd zia = -r.a.cast<std::complex<double>>();
    zia.diagonal().array() += z;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(zia);
    if (!lu.isInvertible())
        throw ValidationError("zI - A is singular at the sample point; resample z");

    Eigen::MatrixXcd ba = Eigen::MatrixXcd::Zero(nx, nu + ny);
    ba.leftCols(nu) = r.b.cast<std::complex<double>>();
    Eigen::MatrixXcd g = r.c.cast<std::complex<double>>() * lu.solve(ba);
    // D_a: identity block mapping unprotected-sensor attacks onto their rows.
    for (int j = 0; j < ny; ++j) g(j, nu + j) += 1.0;
    return g;
}

RankResult numeric_rank(Eigen::MatrixXcd m) {
    RankResult res;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return res;
    const double maxabs = m.cwiseAbs().maxCoeff();
    const double thr = 1e-9 * std::max(1.0, maxabs);
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = r;
        double best = std::abs(m(r, c));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            double v = std::abs(m(i, c));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best > 0.1 * thr && best < 10.0 * thr) res.borderline = true;
        if (best <= thr) continue;  // column has no usable pivot
        if (piv != r) m.row(piv).swap(m.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            std::complex<double> f = m(i, c) / m(r, c);
            if (f != std::complex<double>(0.0)) m.row(i) -= f * m.row(r);
        }
        ++res.rank;
        ++r;
    }
    return res;
}

NormrankEvaluator::NormrankEvaluator(const Realization& r, std::uint64_t seed, int samples) {
    n_cols_ = r.n_u() + r.n_y;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> modulus(1.1, 2.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    Eigen::VectorXcd eigs;
    if (r.n_x() > 0) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(r.a, false);
        eigs = es.eigenvalues();
    }
    samples_.reserve(samples);
    int guard = 0;
    while (static_cast<int>(samples_.size()) < samples) {
        double mod = modulus(rng), ph = phase(rng);
        std::complex<double> z = std::polar(mod, ph);
        bool near_eig = false;
        for (Eigen::Index i = 0; i < eigs.size(); ++i)
            if (std::abs(z - eigs(i)) < 1e-6) near_eig = true;
        if (near_eig && ++guard < 1000) continue;
        samples_.push_back(eval_G(r, z));
    }
}

RankResult NormrankEvaluator::normrank(const std::vector<int>& cols) const {
    if (cols.empty()) return {0, false};
    RankResult best;
    for (const auto& g : samples_) {
        Eigen::MatrixXcd sub(g.rows(), static_cast<Eigen::Index>(cols.size()));
        for (size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = g.col(cols[k]);
        RankResult r = numeric_rank(std::move(sub));
        if (r.rank > best.rank) best.rank = r.rank;
        best.borderline = best.borderline || r.borderline;
    }
    return best;
}

int normrank(const Realization& r, const std::vector<int>& cols, std::uint64_t seed) {
    return NormrankEvaluator(r, seed).normrank(cols).rank;
}

}  // namespace secidx
