#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: rejected files, out-of-range parameters, failed preconditions.
// The CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A numerical routine failed to produce a usable result. Exit code 2.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

class NonHermitianError : public ValidationError {
public:
    explicit NonHermitianError(const std::string& msg) : ValidationError(msg) {}
};

class NoConvergenceError : public NumericalError {
public:
    explicit NoConvergenceError(const std::string& msg) : NumericalError(msg) {}
};

class DimensionOverflowError : public ValidationError {
public:
    explicit DimensionOverflowError(const std::string& msg) : ValidationError(msg) {}
};

class NotPsdError : public ValidationError {
public:
    explicit NotPsdError(const std::string& msg) : ValidationError(msg) {}
};

class InvalidEpsilonError : public ValidationError {
public:
    explicit InvalidEpsilonError(const std::string& msg) : ValidationError(msg) {}
};

class EpsilonTooLargeError : public ValidationError {
public:
    explicit EpsilonTooLargeError(const std::string& msg) : ValidationError(msg) {}
};

class DeltaTooLargeError : public ValidationError {
public:
    explicit DeltaTooLargeError(const std::string& msg) : ValidationError(msg) {}
};

class PreconditionViolatedError : public ValidationError {
public:
    explicit PreconditionViolatedError(const std::string& msg) : ValidationError(msg) {}
};

class NotCommutingError : public ValidationError {
public:
    explicit NotCommutingError(const std::string& msg) : ValidationError(msg) {}
};

class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

} // namespace qsd
