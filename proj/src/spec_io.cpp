#include "ineq/spec_io.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq::funclib {

using nlohmann::json;

json to_json(const FunctionSpec& spec) {
  json j;
  j["family"] = family_name(spec.family());
  switch (spec.family()) {
    case Family::NonNegSum: {
      json terms = json::array();
      for (const auto& t : spec.children()) terms.push_back(to_json(t));
      j["terms"] = std::move(terms);
      break;
    }
    case Family::Scale:
      j["coefficients"] = spec.coefficients();
      j["inner"] = to_json(spec.children().front());
      break;
    default:
      j["coefficients"] = spec.coefficients();
  }
  j["domain_upper"] = spec.domain_upper();
  return j;
}

namespace {

std::vector<double> coeffs(const json& j, std::size_t n) {
  if (!j.contains("coefficients") || !j["coefficients"].is_array() || j["coefficients"].size() != n) {
    throw DomainError("function spec: '" + j.value("family", std::string{"?"}) + "' needs " + std::to_string(n) +
                      " coefficients");
  }
  return j["coefficients"].get<std::vector<double>>();
}

FunctionSpec build(const std::string& family, const std::vector<double>& c, double upper) {
  if (family == "Power") return FunctionSpec::power(c.at(0), c.at(1), upper);
  if (family == "Affine") return FunctionSpec::affine(c.at(0), c.at(1), upper);
  if (family == "Exponential") return FunctionSpec::exponential(c.at(0), c.at(1), upper);
  if (family == "Constant") return FunctionSpec::constant(c.at(0), upper);
  throw DomainError("function spec: unknown family '" + family + "'");
}

std::size_t arity(const std::string& family) { return family == "Constant" ? 1 : 2; }

class Parser {
 public:
  Parser(std::string_view text, double upper) : text_(text), upper_(upper) {}

  FunctionSpec parse() {
    auto spec = node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return spec;
  }

 private:
  FunctionSpec node() {
    const std::string name = word();
    if (name == "NonNegSum") {
      expect('[');
      std::vector<FunctionSpec> terms{node()};
      while (accept(',')) terms.push_back(node());
      expect(']');
      return FunctionSpec::sum(std::move(terms));
    }
    expect('(');
    if (name == "Scale") {
      const double lambda = number();
      expect(',');
      auto inner = node();
      expect(')');
      return FunctionSpec::scale(lambda, std::move(inner));
    }
    std::vector<double> c{number()};
    while (accept(',')) c.push_back(number());
    expect(')');
    if (c.size() != arity(name)) fail("wrong coefficient count for " + name);
    return build(name, c, upper_);
  }

  std::string word() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a family name");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_space();
    double v = 0.0;
    const auto* first = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("function spec parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  double upper_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family")) throw DomainError("function spec: expected an object with 'family'");
  const auto family = j["family"].get<std::string>();
  const double upper = j.at("domain_upper").get<double>();
  if (family == "NonNegSum") {
    std::vector<FunctionSpec> terms;
    for (const auto& t : j.at("terms")) terms.push_back(spec_from_json(t));
    return FunctionSpec::sum(std::move(terms)).with_domain(upper);
  }
  if (family == "Scale") {
    return FunctionSpec::scale(coeffs(j, 1)[0], spec_from_json(j.at("inner"))).with_domain(upper);
  }
  return build(family, coeffs(j, arity(family)), upper);
}

FunctionSpec parse_spec(std::string_view text, double domain_upper) { return Parser(text, domain_upper).parse(); }

}  // namespace ineq::funclib
