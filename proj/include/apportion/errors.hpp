#pragma once

#include <stdexcept>
#include <string>

namespace apportion {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain arguments.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

// Raw-entry input above the order the eigenstructure code handles.
class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

// Request lies outside the hypotheses of the construction being asked for.
class OutOfScope : public Error {
public:
    using Error::Error;
};

// Requested constant is not in the (known part of the) constant set.
class ConstantNotAchievable : public Error {
public:
    ConstantNotAchievable(const std::string& what, std::string constants)
        : Error(what), constants_(std::move(constants)) {}
    const std::string& constants() const noexcept { return constants_; }

private:
    std::string constants_;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A constructed certificate failed its own re-verification.
class VerificationFailed : public Error {
public:
    using Error::Error;
};

// Certificate requested for a matrix classified as not apportionable.
class NotApportionableError : public Error {
public:
    using Error::Error;
};

// Certificate requested for a matrix the classifier cannot decide.
class UnknownVerdictError : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

}  // namespace apportion
