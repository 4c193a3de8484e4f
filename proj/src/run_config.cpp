#include "smallparts/run_config.hpp"

#include <fstream>
#include <sstream>

namespace smallparts {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ParseError, "config key '" + key + "' expects an integer, got '" + value + "'");
}

}  // namespace

IndexRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  IndexRange r;
  if (colon == std::string::npos) {
    r = IndexRange{0, parse_int(trim(text), "range")};
  } else {
    r = IndexRange{parse_int(trim(text.substr(0, colon)), "range"), parse_int(trim(text.substr(colon + 1)), "range")};
  }
  if (r.hi < r.lo) throw Error(ErrorKind::ParseError, "range '" + text + "' is empty");
  return r;
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream out;
  out << "suite = " << c.suite << "\n";
  if (c.out) out << "out = " << *c.out << "\n";
  out << "format = " << c.format << "\n";
  out << "jobs = " << c.jobs << "\n";
  out << "oracle_ceiling = " << c.oracle_ceiling << "\n";
  if (c.range) out << "range = " << c.range->lo << ":" << c.range->hi << "\n";
  if (c.ell) out << "ell = " << *c.ell << "\n";
  if (c.m) out << "m = " << *c.m << "\n";
  if (c.cache_dir) out << "cache_dir = " << *c.cache_dir << "\n";
  for (const auto& [name, prec] : c.precision) out << "prec." << name << " = " << prec << "\n";
  return out.str();
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError, "config line " + std::to_string(number) + " has no '='");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "suite") {
      c.suite = value;
    } else if (key == "out") {
      c.out = value;
    } else if (key == "format") {
      if (value != "json" && value != "csv") throw Error(ErrorKind::ParseError, "format must be json or csv");
      c.format = value;
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(parse_int(value, key));
    } else if (key == "oracle_ceiling") {
      c.oracle_ceiling = parse_int(value, key);
    } else if (key == "range") {
      c.range = parse_range(value);
    } else if (key == "ell") {
      c.ell = parse_int(value, key);
    } else if (key == "m") {
      c.m = static_cast<int>(parse_int(value, key));
    } else if (key == "cache_dir") {
      c.cache_dir = value;
    } else if (key.rfind("prec.", 0) == 0 && key.size() > 5) {
      c.precision[key.substr(5)] = parse_int(value, key);
    } else {
      throw Error(ErrorKind::ParseError, "unknown config key '" + key + "' on line " + std::to_string(number));
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write config " + path.string());
  out << to_config_text(config);
}

}  // namespace smallparts
