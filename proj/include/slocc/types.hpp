#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slocc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SLOCC_DEFINE_ERROR(Name)                 \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

SLOCC_DEFINE_ERROR(InvalidArgument);
SLOCC_DEFINE_ERROR(ZeroState);
SLOCC_DEFINE_ERROR(SectorMismatch);
SLOCC_DEFINE_ERROR(ShapeMismatch);
SLOCC_DEFINE_ERROR(IndexOutOfRange);
SLOCC_DEFINE_ERROR(PartyOutOfRange);
SLOCC_DEFINE_ERROR(NotQubitSector);
SLOCC_DEFINE_ERROR(NotInWeylChamber);
SLOCC_DEFINE_ERROR(NotCritical);
SLOCC_DEFINE_ERROR(NotSymmetric);
SLOCC_DEFINE_ERROR(NotAntisymmetric);
SLOCC_DEFINE_ERROR(ConvergenceFailure);
SLOCC_DEFINE_ERROR(Divergent);
SLOCC_DEFINE_ERROR(UnknownFamily);
SLOCC_DEFINE_ERROR(UnknownDemo);
SLOCC_DEFINE_ERROR(ParseError);

#undef SLOCC_DEFINE_ERROR

}  // namespace slocc
