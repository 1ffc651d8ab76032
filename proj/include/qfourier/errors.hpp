#pragma once

#include <stdexcept>
#include <string>

namespace qfourier {

// Base class for every error this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class domain_error : public error {
public:
    using error::error;
};

// Evaluation exactly at a pole, or an overflow driven by one.
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Deformation parameter q outside the admissible window of an operation.
class validity_error : public error {
public:
    using error::error;
};

// A series or iteration failed to converge within its budget.
class convergence_error : public error {
public:
    using error::error;
};

// Dimension outside the supported range or mismatched between arguments.
class dimension_error : public error {
public:
    using error::error;
};

// A quantity that must be non-negative came out negative beyond its error bar.
class negative_base_error : public error {
public:
    using error::error;
};

// A sampling grid too coarse for the feature it is meant to resolve.
class grid_error : public error {
public:
    using error::error;
};

} // namespace qfourier
