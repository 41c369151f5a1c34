#pragma once

#include <stdexcept>
#include <string>

namespace torusdamp {

// Base for every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidBoard : public Error {
public:
    using Error::Error;
};

class NoDamping : public Error {
public:
    NoDamping() : Error("board has no damping polygons") {}
};

class NotBoundaryGeodesic : public Error {
public:
    using Error::Error;
};

class CflViolation : public Error {
public:
    using Error::Error;
};

class UnderResolved : public Error {
public:
    using Error::Error;
};

class EmptyShell : public Error {
public:
    using Error::Error;
};

class EigenFailure : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

}  // namespace torusdamp
