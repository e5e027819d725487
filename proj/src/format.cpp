#include "wcopt/format.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "wcopt/error.hpp"

namespace wcopt {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error(Errc::invalid_argument, "format_double: conversion failed");
  return std::string(buffer, end);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(Errc::invalid_argument, "parse_double: malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace wcopt
