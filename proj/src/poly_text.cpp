#include "ffdet/poly_text.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "ffdet/bipoly.hpp"
#include "ffdet/poly_t.hpp"

namespace ffdet {

namespace {

class Parser {
 public:
  Parser(const FieldDesc& f, std::string_view s, bool allow_xy) : f_(f), s_(s), allow_xy_(allow_xy) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BiPoly constant(FqElem c) const {
    BiPoly r(f_);
    r.add_term(0, 0, PolyT::constant(f_, c));
    return r;
  }

  BiPoly expr() {
    BiPoly r = term();
    for (;;) {
      if (accept('+')) {
        r = r + term();
      } else if (accept('-')) {
        r = r - term();
      } else {
        return r;
      }
    }
  }

  BiPoly term() {
    BiPoly r = unary();
    while (accept('*')) r = r * unary();
    return r;
  }

  BiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BiPoly power() {
    BiPoly base = atom();
    if (accept('^')) {
      skip_ws();
      const size_t at = pos_;
      const uint64_t e = integer();
      if (e > 4096) throw ParseError("exponent too large", at);
      BiPoly r = constant(f_.one());
      for (uint64_t i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  uint64_t integer() {
    skip_ws();
    const size_t start = pos_;
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) throw ParseError("integer literal too large", start);
      v = v * 10 + static_cast<uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", start);
    return v;
  }

  BiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly r = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const uint64_t v = integer();
      return constant(f_.from_int(static_cast<int64_t>(v % f_.p())));
    }
    const size_t at = pos_++;
    BiPoly r(f_);
    switch (c) {
      case 't':
        r.add_term(0, 0, PolyT::monomial(f_, f_.one(), 1));
        return r;
      case 'x':
      case 'y':
        if (!allow_xy_) throw ParseError(std::string("variable '") + c + "' not allowed here", at);
        r.add_term(c == 'x' ? 1 : 0, c == 'y' ? 1 : 0, PolyT::constant(f_, f_.one()));
        return r;
      case 'z':
        if (f_.degree() == 1) throw ParseError("generator 'z' only exists in extension fields", at);
        return constant(f_.generator());
      default:
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }
  }

  const FieldDesc& f_;
  std::string_view s_;
  bool allow_xy_;
  size_t pos_ = 0;
};

// Coefficient text for use as a factor in front of a monomial: "" for one,
// bare for a single term, parenthesized otherwise.
std::string coeff_prefix(const PolyT& c) {
  if (c.is_one()) return "";
  int nonzero = 0;
  for (auto e : c.coeffs())
    if (!e.is_zero()) ++nonzero;
  const std::string s = format_poly_t(c);
  if (nonzero == 1 && s.find(" + ") == std::string::npos) return s + "*";
  return "(" + s + ")*";
}

std::string mono(const char* var, int e) {
  if (e == 0) return "";
  std::string s = var;
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

BiPoly parse_bipoly(const FieldDesc& f, std::string_view text) { return Parser(f, text, true).parse(); }

PolyT parse_poly_t(const FieldDesc& f, std::string_view text) {
  BiPoly b = Parser(f, text, false).parse();
  return b.coeff(0, 0);
}

std::string format_poly_t(const PolyT& p) {
  if (p.is_zero()) return "0";
  const FieldDesc& f = p.field();
  std::string out;
  for (int i = p.size(); i-- > 0;) {
    const FqElem c = p.coeff(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string cs = f.elem_to_string(c);
    if (i == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += mono("t", i);
    }
  }
  return out;
}

std::string format_bipoly(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<BiPoly::Key, PolyT>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::string out;
  for (const auto& [k, c] : terms) {
    if (!out.empty()) out += " + ";
    std::string m = mono("x", k.first);
    const std::string my = mono("y", k.second);
    if (!m.empty() && !my.empty()) m += "*";
    m += my;
    if (m.empty()) {
      out += format_poly_t(c);
    } else {
      out += coeff_prefix(c) + m;
    }
  }
  return out;
}

CurveSpec parse_curve_spec(std::string_view text) {
  uint64_t p = 0, a = 1;
  bool have_p = false;
  std::string poly;
  bool have_f = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", pos);
    std::string key;
    for (char ch : item.substr(0, eq))
      if (!std::isspace(static_cast<unsigned char>(ch))) key += ch;
    std::string_view value = item.substr(eq + 1);
    auto parse_uint = [&](std::string_view v) {
      uint64_t r = 0;
      bool any = false;
      for (size_t i = 0; i < v.size(); ++i) {
        const char ch = v[i];
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          throw ParseError("expected integer for '" + key + "'", pos + eq + 1 + i);
        r = r * 10 + static_cast<uint64_t>(ch - '0');
        any = true;
        if (r > (1u << 30)) throw ParseError("integer too large for '" + key + "'", pos + eq + 1 + i);
      }
      if (!any) throw ParseError("missing value for '" + key + "'", pos + eq + 1);
      return r;
    };
    if (key == "p") {
      p = parse_uint(value);
      have_p = true;
    } else if (key == "a") {
      a = parse_uint(value);
    } else if (key == "f") {
      poly = std::string(value);
      have_f = true;
    } else {
      throw ParseError("unknown key '" + key + "'", pos);
    }
    pos = end + 1;
  }
  if (!have_p) throw ParseError("missing 'p='", text.size());
  if (!have_f) throw ParseError("missing 'f='", text.size());
  CurveSpec spec;
  try {
    spec.field = FieldDesc::make(static_cast<uint32_t>(p), static_cast<uint32_t>(a));
  } catch (const FieldError& e) {
    throw ParseError(e.what(), 0);
  }
  spec.poly_text = poly;
  // validate the polynomial now so positions refer to the whole spec
  const size_t fpos = text.find("f=");
  try {
    (void)parse_bipoly(spec.field, poly);
  } catch (const ParseError& e) {
    throw ParseError("in f: " + e.message(), (fpos == std::string_view::npos ? 0 : fpos + 2) + e.position());
  }
  return spec;
}

std::string format_curve_spec(const FieldDesc& f, const BiPoly& poly) {
  return "p=" + std::to_string(f.p()) + ";a=" + std::to_string(f.degree()) + ";f=" + format_bipoly(poly);
}

}  // namespace ffdet
