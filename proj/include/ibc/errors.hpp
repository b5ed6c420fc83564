// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ibc {

// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define IBC_ERROR_CLASS(Name)                          \
  class Name : public Error {                          \
   public:                                             \
    Name() : Error(#Name) {}                           \
    explicit Name(const std::string& m) : Error(m) {}  \
  }

IBC_ERROR_CLASS(DivisionByZero);
IBC_ERROR_CLASS(ParamMismatch);
IBC_ERROR_CLASS(SearchExhausted);
IBC_ERROR_CLASS(HashToPointFailure);
IBC_ERROR_CLASS(ZeroEvaluation);
IBC_ERROR_CLASS(InvalidIdentity);
IBC_ERROR_CLASS(RngFailure);
IBC_ERROR_CLASS(AuthenticationFailure);
IBC_ERROR_CLASS(MalformedCiphertext);
IBC_ERROR_CLASS(MalformedEncoding);
IBC_ERROR_CLASS(InsufficientEntropy);
IBC_ERROR_CLASS(FrameMalformed);
IBC_ERROR_CLASS(ReplayDetected);
IBC_ERROR_CLASS(NotEstablished);
IBC_ERROR_CLASS(HandshakeFailure);

#undef IBC_ERROR_CLASS

}  // namespace ibc
