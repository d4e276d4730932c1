#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rotframe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidAxisError : Error {
  using Error::Error;
};

struct InvalidExpressionError : Error {
  using Error::Error;
};

struct NotAnMsrError : Error {
  using Error::Error;
};

struct AveragingFailureError : Error {
  using Error::Error;
};

struct NotOmegaInvariantError : Error {
  using Error::Error;
};

struct NoSurfaceError : Error {
  using Error::Error;
};

struct MeshError : Error {
  using Error::Error;
};

// Root search failed; carries the sampled (r, g_tt) profile for diagnosis.
struct RootNotFoundError : Error {
  RootNotFoundError(const std::string& msg, std::vector<std::pair<double, double>> samples)
      : Error(msg), profile(std::move(samples)) {}
  std::vector<std::pair<double, double>> profile;
};

struct SuperluminalBoostError : Error {
  using Error::Error;
};

// Pointwise division by a (near-)vanishing field; carries the offending nodes.
struct DivisionSingularityError : Error {
  DivisionSingularityError(const std::string& msg, std::vector<std::array<double, 3>> where)
      : Error(msg), nodes(std::move(where)) {}
  std::vector<std::array<double, 3>> nodes;
};

struct DomainError : Error {
  using Error::Error;
};

struct BracketExhaustionError : Error {
  BracketExhaustionError(const std::string& msg, std::vector<std::pair<double, double>> trace)
      : Error(msg), scan_trace(std::move(trace)) {}
  std::vector<std::pair<double, double>> scan_trace;
};

struct ExprParseError : Error {
  ExprParseError(const std::string& msg, std::size_t byte_offset, std::string expected_tokens)
      : Error(msg + " at offset " + std::to_string(byte_offset) +
              (expected_tokens.empty() ? "" : " (expected " + expected_tokens + ")")),
        offset(byte_offset),
        expected(std::move(expected_tokens)) {}
  std::size_t offset;
  std::string expected;
};

}  // namespace rotframe
