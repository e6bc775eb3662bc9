#include <cmath>
#include <limits>

#include "ccr/averaging.hpp"
#include "ccr/errors.hpp"
#include "ccr/parallel.hpp"
#include "ccr/reduction.hpp"

namespace ccr {

NullSpaceReport analyze_gram(const Eigen::MatrixXd& gram_mu, const Eigen::MatrixXd& gram_omega) {
    if (gram_mu.rows() != gram_mu.cols() || gram_omega.rows() != gram_mu.rows() ||
        gram_omega.cols() != gram_mu.cols())
        throw DomainError("Gram matrices must be square and of equal size");
    NullSpaceReport rep;
    const Eigen::Index n = gram_mu.rows();
    if (n == 0) return rep;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_mu);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    rep.gram_mu_eigvals.assign(lambda.data(), lambda.data() + n);
    const double top = lambda.cwiseAbs().maxCoeff();
    const double threshold = kRankThreshold * top;

    double largest_null = 0.0, smallest_kept = std::numeric_limits<double>::infinity();
    std::vector<Eigen::Index> null_dirs;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (top == 0.0 || lambda[i] < threshold) {
            null_dirs.push_back(i);
            largest_null = std::max(largest_null, std::abs(lambda[i]));
        } else {
            smallest_kept = std::min(smallest_kept, lambda[i]);
        }
    }
    rep.rank = int(n - Eigen::Index(null_dirs.size()));
    if (null_dirs.empty())
        rep.gap_ratio = smallest_kept / threshold;
    else if (rep.rank == 0)
        rep.gap_ratio = std::numeric_limits<double>::infinity();
    else
        rep.gap_ratio = smallest_kept / std::max(largest_null, std::numeric_limits<double>::min());

    // A direction with mu-norm^2 lambda can carry |Omega(f_j, v)| up to
    // 2 sqrt(mu_jj lambda) without contradicting null(mu) in null(Omega).
    const double omega_tol = kNullTolerance * std::max(top, gram_omega.cwiseAbs().maxCoeff());
    for (Eigen::Index i : null_dirs) {
        const double leak = (gram_omega * eig.eigenvectors().col(i)).cwiseAbs().maxCoeff();
        rep.gram_omega_on_null.push_back(leak);
        if (leak > omega_tol + 2.0 * std::sqrt(std::max(lambda[i], 0.0) * top)) rep.inclusion_holds = false;
    }
    if (rep.gap_ratio < 10.0) {
        rep.ill_conditioned = true;
        rep.warning = "spectral gap around the rank threshold is below 10; the numerical rank is ambiguous";
    }
    return rep;
}

NullSpaceReport null_space_analysis(const std::vector<FieldVector>& fields, GroupKind group,
                                    const QuadratureConfig& quad) {
    if (fields.size() > 40) throw DomainError("null-space analysis is limited to 40 fields");
    const std::size_t n = fields.size();
    Eigen::MatrixXcd b(n, n);

    if (group == GroupKind::BHP) {
        const auto seqs = parallel_map<ReducedSequence>(n, [&](std::size_t i) {
            return project_bhp(fields[i], quad.n_max, quad);
        });
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                cplx s{};
                for (std::size_t k = 0; k < seqs[i].entries.size(); ++k)
                    s += std::conj(seqs[i].entries[k]) * seqs[j].entries[k];
                b(i, j) = s;
            }
        }
    } else {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
        const auto vals = parallel_map<cplx>(pairs.size(), [&](std::size_t p) {
            return average_bform_circle(fields[pairs[p].first], fields[pairs[p].second], quad).value;
        });
        // The averaged form is Hermitian because the Haar measure is
        // inversion invariant.
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [i, j] = pairs[p];
            b(i, j) = vals[p];
            b(j, i) = std::conj(vals[p]);
            if (i == j) b(i, i) = vals[p].real();
        }
    }
    const Eigen::MatrixXd gram_mu = b.real();
    const Eigen::MatrixXd gram_omega = -2.0 * b.imag();
    return analyze_gram(gram_mu, gram_omega);
}

}  // namespace ccr
