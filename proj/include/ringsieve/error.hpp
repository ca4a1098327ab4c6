#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringsieve {

enum class ErrorKind {
  InvalidInput,
  CarrierTooLarge,
  IllFormedConstants,
  NotAssociative,
  NotCommutative,
  NoUnit,
  ZeroRing,
  NotLocal,
  UniqueMinimalIdeal,
  AlreadyChainLocalProduct,
  SearchSpaceTooLarge,
  RankDeficient,
  BadUnit,
  NotAnIdeal,
  PeriodTooLarge,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorKind::IllFormedConstants: return "IllFormedConstants";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NoUnit: return "NoUnit";
    case ErrorKind::ZeroRing: return "ZeroRing";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::UniqueMinimalIdeal: return "UniqueMinimalIdeal";
    case ErrorKind::AlreadyChainLocalProduct: return "AlreadyChainLocalProduct";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::PeriodTooLarge: return "PeriodTooLarge";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ringsieve
