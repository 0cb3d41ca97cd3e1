#pragma once

#include <functional>
#include <string>
#include <vector>

#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/tridiag.hpp"

namespace prolate {

struct CyclicPairSpec {
    RecurrenceCoefficients coeffs;
    std::string label;
};

// Off-diagonals alpha_0 .. alpha_{N-2} of the N x N scaling matrix (Imaginary phase).
RecurrenceCoefficients build_scaling(int N);
CyclicPairSpec archimedean_pair(int count);

// Restriction of D^2 to even / odd indices.
SymmetricTridiagonal build_parity_square(const CyclicPairSpec& pair, Parity parity, int N);

SymmetricTridiagonal build_prolate_explicit(double lambda, Parity parity, int N);

// Formal prolate -D^2 + lambda2 * grading, restricted to a parity block.
SymmetricTridiagonal build_prolate_generic(const CyclicPairSpec& pair, double lambda2, Parity parity, int N);

// Normalization shared by the explicit and semilocal prolate matrices:
// generic(lambda2 = 8 pi lambda^2) + (2 pi lambda^2 - 1/4) I.
SymmetricTridiagonal prolate_from_pair(const CyclicPairSpec& pair, double lambda, Parity parity, int N);

// Recurrence coefficients of the HT measure of S, to the given depth.
CyclicPairSpec semilocal_pair(const PlaceSet& S, int depth, const NumericRecurrenceOptions& opt = {});

SymmetricTridiagonal build_prolate_semilocal(const PlaceSet& S, double lambda, Parity parity, int N,
                                             const NumericRecurrenceOptions& opt = {});

struct SemilocalEigenvalue {
    std::size_t index = 0;
    double value = 0.0;
    double doubled = 0.0;     // nearest eigenvalue at 2N
    double refined = 0.0;     // same index, a_n^S from halved quadrature panels
    bool stable = false;      // both shifts below tol
};

struct SemilocalStability {
    int N = 0;
    std::vector<SemilocalEigenvalue> rows;   // nonnegative eigenvalues, lowest first
    std::size_t stable_count() const;
};

// Truncation-doubling and quadrature-refinement check of the semilocal prolate
// at sizes N and 2N (depth 4N + 1); reports up to `count` nonnegative eigenvalues.
SemilocalStability semilocal_stability(const PlaceSet& S, double lambda, Parity parity, int N, double tol,
                                       std::size_t count = 12);

using ProlateBuilder = std::function<SymmetricTridiagonal(double lambda, Parity parity, int N)>;

struct ConvergeOptions {
    int start_N = 64;
    int max_N = 1 << 20;
    double floor = 0.0;        // only eigenvalues >= floor are tracked
    double boundary_fraction = 0.05;
};

// Doubles N until k eigenvalues above `floor` persist under N -> 2N within tol.
Spectrum converge_spectrum(const ProlateBuilder& builder, double lambda, Parity parity, std::size_t k, double tol,
                           const ConvergeOptions& opt = {});

struct TrackedEigenvalue {
    std::size_t index = 0;     // position in the smaller truncation
    double value = 0.0;
    double partner = 0.0;      // nearest eigenvalue of the larger truncation
    bool converged = false;
};

// Eigenvalues of `small` in [lo, hi) with their nearest partners in `large`.
std::vector<TrackedEigenvalue> compare_truncations(const SymmetricTridiagonal& small, const SymmetricTridiagonal& large,
                                                   double lo, double hi, double tol, double boundary_fraction = 0.05);

double spectral_distance(const RecurrenceCoefficients& coeffs, std::size_t n, std::size_t m);

// Super-diagonal entries (f(j) - f(j+1)) a_j of the antisymmetric [D, f].
std::vector<double> commutator_with_diagonal(const RecurrenceCoefficients& coeffs, const std::vector<double>& f);

struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
};
NormBounds commutator_norm_bounds(const std::vector<double>& entries);

// min and max over 1 <= n <= n_max of a_n log(1 + 1/n) for the archimedean a_n
NormBounds archimedean_metric_bounds(int n_max);

// <W_lambda h_{2m}, h_{2n}> for m, n < size, by x-space quadrature. The matrix only couples
// m to m and m +- 2, so it splits into the blocks m = 2k (even) and m = 2k + 1 (odd).
class XspaceOperator {
public:
    explicit XspaceOperator(int size);

    int size() const { return size_; }
    double element(int m, int n, double lambda) const;
    std::vector<std::vector<double>> matrix(double lambda) const;
    // rejects couplings other than m -> m, m +- 2
    SymmetricTridiagonal parity_block(double lambda, Parity parity) const;
    double refinement_gap() const { return gap_; }

private:
    int size_;
    std::vector<std::vector<double>> kinetic_;   // coefficient of pi lambda^2
    std::vector<std::vector<double>> rest_;
    double gap_ = 0.0;
};

double xspace_matrix_element(int m, int n, double lambda);

}  // namespace prolate
