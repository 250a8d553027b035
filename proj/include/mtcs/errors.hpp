#pragma once

#include <stdexcept>
#include <string>

namespace mtcs {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

// Operands live on Hilbert spaces of incompatible dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

// An operation requiring a Hermitian input received a non-Hermitian matrix.
struct NotHermitian : Error {
    using Error::Error;
};

// A matrix failed the density-matrix invariants (unit trace, positivity).
struct InvalidState : Error {
    using Error::Error;
};

// The Fock cutoff is too small for the requested state; the population that
// would live above the truncation exceeds the documented threshold.
struct TruncationError : Error {
    using Error::Error;
};

struct ZeroMeanPhotonNumber : Error {
    using Error::Error;
};

// g2(0) is undefined for the vacuum (nbar = theta = 0).
struct DegenerateState : Error {
    using Error::Error;
};

struct SingularCovariance : Error {
    using Error::Error;
};

// Purity >= 1 with a nonvanishing temperature derivative: the Gaussian QFI
// purity term has no finite limit.
struct PurityOverflow : Error {
    using Error::Error;
};

// The Wigner grid does not cover the state support.
struct GridTooSmall : Error {
    using Error::Error;
};

struct NonPositiveFisher : Error {
    using Error::Error;
};

}  // namespace mtcs
