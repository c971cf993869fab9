#include "mdsrepair/error.hpp"

namespace mdsrepair {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::WrongAmbient: return "WrongAmbient";
    case ErrorKind::WrongNodeDim: return "WrongNodeDim";
    case ErrorKind::TooFewNodes: return "TooFewNodes";
    case ErrorKind::PointOutsideNode: return "PointOutsideNode";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::NotSpanning: return "NotSpanning";
    case ErrorKind::NotMds: return "NotMds";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NotARepairMatrix: return "NotARepairMatrix";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::EllTooSmall: return "EllTooSmall";
    case ErrorKind::Nondivisible: return "Nondivisible";
    case ErrorKind::QuotientTooSmall: return "QuotientTooSmall";
    case ErrorKind::LengthOutOfRange: return "LengthOutOfRange";
    case ErrorKind::RExceedsQ: return "RExceedsQ";
    case ErrorKind::ZeroB: return "ZeroB";
    case ErrorKind::NotACodeword: return "NotACodeword";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail, std::vector<std::int64_t> args)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      args_(std::move(args)) {}

void fail(ErrorKind kind, const std::string& detail, std::vector<std::int64_t> args) {
  throw Error(kind, detail, std::move(args));
}

}  // namespace mdsrepair
