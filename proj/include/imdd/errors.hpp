#ifndef IMDD_ERRORS_HPP
#define IMDD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace imdd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// extinction ratio must be a positive number of dB
class NonPositiveER : public Error {
public:
    using Error::Error;
};

// |sigma_j^2 - sigma_i^2| below the relative epsilon; the general quadratic
// is 0/0 there and the AWGN closed form applies instead
class EqualVariances : public Error {
public:
    using Error::Error;
};

// the two scaled densities never cross: one MAP region is empty
class NegativeDiscriminant : public Error {
public:
    using Error::Error;
};

class ZeroProbability : public Error {
public:
    using Error::Error;
};

// adjacent MAP regions collapsed; threshold slicing is invalid for this model
class NonMonotoneThresholds : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class SolverFailure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& msg)
        : Error("config error: field '" + field + "': " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

} // namespace imdd

#endif
