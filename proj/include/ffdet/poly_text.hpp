#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ffdet/field.hpp"

namespace ffdet {

class PolyT;
class BiPoly;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), msg_(what), pos_(pos) {}
  size_t position() const { return pos_; }
  /// The message without the position suffix.
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  size_t pos_;
};

/// Parses an expression in x, y, t (and z, the field generator, when a > 1)
/// with integer constants, + - * ^ and parentheses.
BiPoly parse_bipoly(const FieldDesc& f, std::string_view text);
/// Same grammar restricted to the variable t.
PolyT parse_poly_t(const FieldDesc& f, std::string_view text);

/// "3*t^2 + t + 4"; "0" for zero.
std::string format_poly_t(const PolyT& p);
std::string format_bipoly(const BiPoly& p);

/// A plane curve specification "p=<prime>;a=<deg>;f=<poly in x,y,t>".
struct CurveSpec {
  FieldDesc field;
  std::string poly_text;
};
CurveSpec parse_curve_spec(std::string_view text);
std::string format_curve_spec(const FieldDesc& f, const BiPoly& poly);

}  // namespace ffdet
