#include "pdlab/poly_parse.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace pdlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  PowerSumPoly parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", "");
    PowerSumPoly out;
    bool first = true;
    while (pos_ < s_.size()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", token_at(pos_));
      }
      first = false;
      term(sign, out);
      skip_ws();
    }
    return out;
  }

 private:
  void term(double sign, PowerSumPoly& out) {
    double coeff = sign;
    std::vector<int> factors;
    for (;;) {
      skip_ws();
      if (pos_ == s_.size()) throw ParseError("expected a factor", "<end>");
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        coeff *= number();
      } else if (s_.substr(pos_, 3) == "phi") {
        factors.push_back(subscript());
      } else {
        throw ParseError("unexpected token", token_at(pos_));
      }
      skip_ws();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    out.add_term(std::move(factors), coeff);
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == 'e' ||
            s_[pos_] == 'E' ||
            ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    const std::string tok(s_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw ParseError("malformed number", tok);
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", tok);
    }
  }

  int subscript() {
    const std::size_t start = pos_;
    pos_ += 3;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string tok(s_.substr(start, pos_ - start));
    if (pos_ == digits) throw ParseError("phi needs an integer subscript", token_at(start));
    int k = 0;
    auto [p, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, k);
    if (ec != std::errc() || k < 2) throw ParseError("subscript must be an integer >= 2", tok);
    return k;
  }

  std::string token_at(std::size_t at) const {
    std::size_t end = at;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end])) && s_[end] != '+' &&
           s_[end] != '-' && s_[end] != '*')
      ++end;
    if (end == at && at < s_.size()) ++end;
    return std::string(s_.substr(at, end - at));
  }

  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PowerSumPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace pdlab
