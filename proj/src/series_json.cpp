#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>

#include "smallparts/qseries.hpp"

namespace smallparts {

std::string to_json(const QSeries& a) {
  std::string out = "{\"unit\": 24, \"precision\": ";
  out += a.is_exact() ? "null" : std::to_string(a.precision());
  out += ", \"terms\": [";
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out += ", ";
    first = false;
    out += "[";
    out += std::to_string(t.index);
    out += ", ";
    out += t.coeff.get_num().get_str();
    out += ", ";
    out += t.coeff.get_den().get_str();
    out += "]";
  }
  out += "]}";
  return out;
}

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// Collects the series fields while keeping every number as its literal text,
// so arbitrarily long integers survive parsing.
class SeriesReader : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::optional<std::string> unit;
  std::optional<std::string> precision;
  bool precision_null = false;
  bool saw_terms = false;
  std::vector<std::array<std::string, 3>> terms;
  std::string error;

  bool null() override {
    if (depth_ == 1 && key_ == "precision") {
      precision_null = true;
      return true;
    }
    return fail("unexpected null");
  }
  bool boolean(bool) override { return fail("unexpected boolean"); }
  bool number_integer(number_integer_t v) override { return number(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return number(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override {
    if (!is_integer_literal(s)) return fail("non-integer number " + s);
    return number(s);
  }
  bool string(string_t& s) override { return fail("unexpected string \"" + s + "\""); }
  bool binary(binary_t&) override { return fail("unexpected binary value"); }
  bool start_object(std::size_t) override {
    if (depth_ != 0) return fail("nested object");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ == 1 && key_ == "terms") {
      saw_terms = true;
      ++depth_;
      return true;
    }
    if (depth_ == 2) {
      ++depth_;
      current_.clear();
      return true;
    }
    return fail("unexpected array");
  }
  bool end_array() override {
    if (depth_ == 3) {
      if (current_.size() != 3) return fail("each term must be [index, num, den]");
      terms.push_back({current_[0], current_[1], current_[2]});
    }
    --depth_;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    return fail("at byte " + std::to_string(position) + ": " + ex.what());
  }

 private:
  bool number(const std::string& s) {
    if (depth_ == 3) {
      current_.push_back(s);
      return true;
    }
    if (depth_ == 1 && key_ == "unit") {
      unit = s;
      return true;
    }
    if (depth_ == 1 && key_ == "precision") {
      precision = s;
      return true;
    }
    return fail("unexpected number " + s);
  }
  bool fail(const std::string& message) {
    if (error.empty()) error = message;
    return false;
  }

  int depth_ = 0;
  std::string key_;
  std::vector<std::string> current_;
};

std::int64_t parse_int64(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

QSeries series_from_json(const std::string& text) {
  SeriesReader reader;
  const bool ok = nlohmann::json::sax_parse(text, &reader);
  if (!ok) throw Error(ErrorKind::ParseError, "series JSON: " + reader.error);
  if (!reader.unit || *reader.unit != "24") throw Error(ErrorKind::ParseError, "series JSON must declare unit 24");
  if (!reader.saw_terms) throw Error(ErrorKind::ParseError, "series JSON lacks terms");
  if (!reader.precision && !reader.precision_null) throw Error(ErrorKind::ParseError, "series JSON lacks precision");
  const std::int64_t precision =
      reader.precision_null ? QSeries::kExact : parse_int64(*reader.precision, "precision");
  std::vector<QSeries::Term> terms;
  terms.reserve(reader.terms.size());
  std::int64_t last = 0;
  for (const auto& [index_text, num_text, den_text] : reader.terms) {
    const std::int64_t index = parse_int64(index_text, "index");
    Integer num(num_text, 10);
    Integer den(den_text, 10);
    if (den <= 0) throw Error(ErrorKind::ParseError, "nonpositive denominator at index " + index_text);
    Rational c = make_rational(num, den);
    if (c.get_num() != num || c.get_den() != den) {
      throw Error(ErrorKind::ParseError, "coefficient at index " + index_text + " is not in lowest terms");
    }
    if (sgn(c) == 0) throw Error(ErrorKind::ParseError, "stored zero at index " + index_text);
    if (!terms.empty() && index <= last) throw Error(ErrorKind::ParseError, "terms not strictly increasing");
    if (index >= precision) throw Error(ErrorKind::ParseError, "term at or beyond precision");
    last = index;
    terms.push_back(QSeries::Term{index, std::move(c)});
  }
  return make_sorted(std::move(terms), precision);
}

}  // namespace smallparts
