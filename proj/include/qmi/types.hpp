#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qmi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSquare : Error {
    explicit NotSquare(const std::string& msg) : Error(msg) {}
};
struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(msg) {}
};
struct NotPositive : Error {
    explicit NotPositive(const std::string& msg) : Error(msg) {}
};
struct NegativeEigenvalue : Error {
    explicit NegativeEigenvalue(const std::string& msg) : Error(msg) {}
};
struct TraceNotOne : Error {
    explicit TraceNotOne(const std::string& msg) : Error(msg) {}
};
struct DimMismatch : Error {
    explicit DimMismatch(const std::string& msg) : Error(msg) {}
};
struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};
struct NotDistribution : Error {
    explicit NotDistribution(const std::string& msg) : Error(msg) {}
};
struct RankOutOfRange : Error {
    explicit RankOutOfRange(const std::string& msg) : Error(msg) {}
};
struct BlockShapeMismatch : Error {
    explicit BlockShapeMismatch(const std::string& msg) : Error(msg) {}
};
struct DecompositionMismatch : Error {
    explicit DecompositionMismatch(const std::string& msg) : Error(msg) {}
};
struct UnknownChannel : Error {
    explicit UnknownChannel(const std::string& msg) : Error(msg) {}
};
struct ParamOutOfRange : Error {
    explicit ParamOutOfRange(const std::string& msg) : Error(msg) {}
};
struct EmptyStateSet : Error {
    explicit EmptyStateSet(const std::string& msg) : Error(msg) {}
};
struct EmptyFamily : Error {
    explicit EmptyFamily(const std::string& msg) : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace qmi
