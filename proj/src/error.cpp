#include "prolate_lab/error.hpp"

namespace prolate {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Pole: return "pole";
        case ErrorKind::OutOfRange: return "out-of-range";
        case ErrorKind::Overflow: return "overflow";
        case ErrorKind::Index: return "index";
        case ErrorKind::Length: return "length";
        case ErrorKind::NonPositiveDeterminant: return "nonpositive-determinant";
        case ErrorKind::Instability: return "instability";
        case ErrorKind::NonzeroRemainder: return "nonzero-remainder";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::BudgetExceeded: return "budget-exceeded";
        case ErrorKind::QuadratureFailure: return "quadrature-failure";
        case ErrorKind::MissingFourierEigenvalue: return "missing-fourier-eigenvalue";
        case ErrorKind::NonzeroTail: return "nonzero-input-tail";
        case ErrorKind::BandwidthOverflow: return "bandwidth-overflow";
        case ErrorKind::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace prolate
