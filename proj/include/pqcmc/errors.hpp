#pragma once

#include <stdexcept>
#include <string>

namespace pqcmc {

/// Root of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short stable identifier, used by the CLI for machine-parsable errors.
  virtual const char* kind() const noexcept { return "error"; }
};

#define PQCMC_DEFINE_ERROR(Name, Base, Kind)                         \
  class Name : public Base {                                         \
   public:                                                           \
    using Base::Base;                                                \
    const char* kind() const noexcept override { return Kind; }      \
  };

PQCMC_DEFINE_ERROR(DimensionError, Error, "dimension")
PQCMC_DEFINE_ERROR(SingularMatrix, Error, "singular-matrix")
PQCMC_DEFINE_ERROR(NotFullRank, Error, "not-full-rank")
PQCMC_DEFINE_ERROR(InvalidArgument, Error, "invalid-argument")
PQCMC_DEFINE_ERROR(UnknownParameterSet, Error, "unknown-parameter-set")
PQCMC_DEFINE_ERROR(UncorrectableError, Error, "uncorrectable")
PQCMC_DEFINE_ERROR(IssuerValidationError, Error, "issuer-validation")
PQCMC_DEFINE_ERROR(MalformedReconstructionValue, Error, "malformed-reconstruction-value")
PQCMC_DEFINE_ERROR(RetryNeeded, Error, "retry-needed")
PQCMC_DEFINE_ERROR(PointNotOnCurve, Error, "point-not-on-curve")
PQCMC_DEFINE_ERROR(NotCompressible, Error, "not-compressible")
PQCMC_DEFINE_ERROR(NonResidue, Error, "non-residue")
PQCMC_DEFINE_ERROR(CryptoBackendError, Error, "crypto-backend")

// Wire-format errors. Each decode failure mode has its own type.
PQCMC_DEFINE_ERROR(DecodeError, Error, "decode")
PQCMC_DEFINE_ERROR(BadMagic, DecodeError, "bad-magic")
PQCMC_DEFINE_ERROR(TruncatedInput, DecodeError, "truncated")
PQCMC_DEFINE_ERROR(NonzeroPadding, DecodeError, "nonzero-padding")
PQCMC_DEFINE_ERROR(TrailingData, DecodeError, "trailing-data")
PQCMC_DEFINE_ERROR(UnknownTag, DecodeError, "unknown-tag")
PQCMC_DEFINE_ERROR(DuplicateTag, DecodeError, "duplicate-tag")
PQCMC_DEFINE_ERROR(OutOfOrderTag, DecodeError, "out-of-order-tag")
PQCMC_DEFINE_ERROR(MissingField, DecodeError, "missing-field")
PQCMC_DEFINE_ERROR(InvalidField, DecodeError, "invalid-field")

#undef PQCMC_DEFINE_ERROR

}  // namespace pqcmc
