#pragma once

#include <stdexcept>
#include <string>

namespace stagetree {

// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundSymbol : public Error {
public:
    using Error::Error;
};

class UnknownVertex : public Error {
public:
    using Error::Error;
};

class NotSameStage : public Error {
public:
    using Error::Error;
};

class ForeignSymbol : public Error {
public:
    using Error::Error;
};

class InvalidSimplexPoint : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

} // namespace stagetree
