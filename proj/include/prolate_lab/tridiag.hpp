#pragma once

#include <cstddef>
#include <vector>

namespace prolate {

struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;    // length N-1
    std::vector<int> conjugation;   // +-1 diagonal similarity applied to reach offdiag >= 0; empty if none

    std::size_t size() const { return diag.size(); }
    double inf_norm() const;
    void validate() const;
};

// Flips signs so that every off-diagonal entry is nonnegative, recording the flips.
void normalize_offdiag_signs(SymmetricTridiagonal& t);

struct Spectrum {
    std::vector<double> eigenvalues;   // ascending
    int truncation_N = 0;
    int converged_count = 0;
    double tolerance = 0.0;
};

// Number of eigenvalues strictly below x.
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

// Eigenvalue with ascending index `index` (0-based) by bisection.
double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index);

// k smallest eigenvalues; full QL when k == N.
Spectrum eig_tridiag(const SymmetricTridiagonal& t, std::size_t k);

// All eigenvalues in [lo, hi), ascending, with their global indices.
struct IndexedEigenvalues {
    std::vector<double> values;
    std::size_t first_index = 0;
};
IndexedEigenvalues eigenvalues_in_range(const SymmetricTridiagonal& t, double lo, double hi);
IndexedEigenvalues eigenvalues_by_index(const SymmetricTridiagonal& t, std::size_t first, std::size_t count);

struct EigenFirstComponents {
    std::vector<double> values;   // ascending
    std::vector<double> first;    // first component of the unit eigenvector
};

// Implicit-shift QL on all eigenvalues, tracking first eigenvector components.
EigenFirstComponents ql_implicit(const SymmetricTridiagonal& t);

}  // namespace prolate
