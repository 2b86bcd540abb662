#pragma once

#include <stdexcept>
#include <string>

namespace revdet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class EmptyDocument : public Error {
public:
    using Error::Error;
};

class EmptyTree : public Error {
public:
    using Error::Error;
};

class UnknownDocument : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class CyclicNetwork : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class EmptyTextPool : public Error {
public:
    using Error::Error;
};

}  // namespace revdet
