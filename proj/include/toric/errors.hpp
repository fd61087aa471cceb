#pragma once

#include <stdexcept>
#include <string>

namespace toric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedHom : public Error {
 public:
  using Error::Error;
};

class NotStronglyConvex : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotSubfanOfAffineSpace : public Error {
 public:
  using Error::Error;
};

class NotSmooth : public Error {
 public:
  using Error::Error;
};

class FantastackPreconditionViolated : public Error {
 public:
  using Error::Error;
};

class UnsupportedRank : public Error {
 public:
  using Error::Error;
};

}  // namespace toric
