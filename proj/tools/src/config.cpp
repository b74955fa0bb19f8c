#include "csgreen/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace csgreen::cli {

namespace {

std::string trim(const std::string& s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto begin = std::find_if_not(s.begin(), s.end(), is_space);
  auto end = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
  return begin < end ? std::string(begin, end) : std::string();
}

double parse_real(const std::string& text, long line, const char* key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string(key) + ": not a number: '" + text + "'");
  }
}

long parse_integer(const std::string& text, long line, const char* key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line,
                     std::string(key) + ": not an integer: '" + text + "'");
  }
}

/// Split a multi-number value on whitespace or commas.
std::vector<std::string> split_fields(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::string> fields;
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool seen_dimension = false, seen_l = false, seen_b = false;
  std::map<int, double> coeffs;

  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value': '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, key + ": empty value");

    if (key == "dimension") {
      const long v = parse_integer(value, line_no, "dimension");
      if (v < 2) throw ParseError(line_no, "dimension must be >= 2");
      cfg.dimension = static_cast<int>(v);
      seen_dimension = true;
    } else if (key == "l") {
      const long v = parse_integer(value, line_no, "l");
      if (v < 0) throw ParseError(line_no, "l must be >= 0");
      cfg.l = static_cast<int>(v);
      seen_l = true;
    } else if (key == "b") {
      const double v = parse_real(value, line_no, "b");
      if (!(v > 0)) throw ParseError(line_no, "b must be > 0");
      cfg.b = v;
      seen_b = true;
    } else if (key.rfind("coeff.", 0) == 0) {
      const std::string suffix = key.substr(6);
      long power = 0;
      try {
        std::size_t used = 0;
        power = std::stol(suffix, &used);
        if (used != suffix.size() || suffix.empty()) {
          throw std::invalid_argument(suffix);
        }
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad coefficient key '" + key + "'");
      }
      if (power < -1) {
        throw ParseError(line_no,
                         "coefficient power must be >= -1 (only a single 1/r "
                         "term below the polynomial part)");
      }
      coeffs[static_cast<int>(power)] = parse_real(value, line_no, key.c_str());
    } else if (key == "blocks") {
      const long v = parse_integer(value, line_no, "blocks");
      if (v < 0) throw ParseError(line_no, "blocks must be >= 0");
      cfg.blocks = v;
    } else if (key == "k_max") {
      const long v = parse_integer(value, line_no, "k_max");
      if (v < 1) throw ParseError(line_no, "k_max must be >= 1");
      cfg.k_max = v;
    } else if (key == "tol") {
      const double v = parse_real(value, line_no, "tol");
      if (!(v > 0)) throw ParseError(line_no, "tol must be > 0");
      cfg.tol = v;
    } else if (key == "window") {
      const auto fields = split_fields(value);
      if (fields.size() != 2) {
        throw ParseError(line_no, "window needs two values: E_lo E_hi");
      }
      cfg.e_lo = parse_real(fields[0], line_no, "window");
      cfg.e_hi = parse_real(fields[1], line_no, "window");
      if (!(cfg.e_lo < cfg.e_hi)) {
        throw ParseError(line_no, "window needs E_lo < E_hi");
      }
      cfg.has_window = true;
    } else if (key == "sweep") {
      const auto fields = split_fields(value);
      if (fields.size() != 3) {
        throw ParseError(line_no, "sweep needs three values: b_min b_max steps");
      }
      cfg.b_min = parse_real(fields[0], line_no, "sweep");
      cfg.b_max = parse_real(fields[1], line_no, "sweep");
      cfg.sweep_steps = parse_integer(fields[2], line_no, "sweep");
      if (!(cfg.b_min > 0) || !(cfg.b_max >= cfg.b_min)) {
        throw ParseError(line_no, "sweep needs 0 < b_min <= b_max");
      }
      if (cfg.sweep_steps < 1) {
        throw ParseError(line_no, "sweep needs steps >= 1");
      }
      if (cfg.sweep_steps == 1 && cfg.b_max != cfg.b_min) {
        throw ParseError(line_no, "sweep with 1 step needs b_min == b_max");
      }
      cfg.has_sweep = true;
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }

  std::string missing;
  if (!seen_dimension) missing += " dimension";
  if (!seen_l) missing += " l";
  if (!seen_b) missing += " b";
  if (!missing.empty()) {
    throw ParseError(0, "required keys missing:" + missing);
  }
  cfg.coefficients.assign(coeffs.begin(), coeffs.end());
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace csgreen::cli
