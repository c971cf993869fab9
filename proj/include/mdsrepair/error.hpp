#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdsrepair {

/// Every failure the library reports. The enumerator name doubles as the
/// stable error name printed by the command-line tool.
enum class ErrorKind {
  NonPrime,
  ReduciblePolynomial,
  DegreeMismatch,
  UnsupportedSize,
  DivisionByZero,
  LevelMismatch,
  AmbientMismatch,
  BadShape,
  WrongAmbient,
  WrongNodeDim,
  TooFewNodes,
  PointOutsideNode,
  DuplicatePoint,
  NotSpanning,
  NotMds,
  BadParameters,
  NotARepairMatrix,
  BadRank,
  BudgetExceeded,
  InternalInconsistency,
  EllTooSmall,
  Nondivisible,
  QuotientTooSmall,
  LengthOutOfRange,
  RExceedsQ,
  ZeroB,
  NotACodeword,
  MalformedInput,
  Overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::vector<std::int64_t> args = {});

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }
  /// Numeric payload, e.g. (min, max) for LengthOutOfRange or the candidate
  /// count for BudgetExceeded.
  const std::vector<std::int64_t>& args() const noexcept { return args_; }

 private:
  ErrorKind kind_;
  std::vector<std::int64_t> args_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail,
                       std::vector<std::int64_t> args = {});

}  // namespace mdsrepair
