#include "garling/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace garling {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed " + what + " JSON: " + e.what());
  }
}

Weights weights_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("weight descriptor needs a string \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "power") {
    if (!j.contains("theta") || !j.contains("length")) {
      throw std::invalid_argument("power weights need \"theta\" and \"length\"");
    }
    return Weights::power(j["theta"].get<double>(), j["length"].get<std::int64_t>());
  }
  if (kind == "harmonic") {
    if (!j.contains("length")) throw std::invalid_argument("harmonic weights need \"length\"");
    return Weights::harmonic(j["length"].get<std::int64_t>());
  }
  if (kind == "explicit") {
    if (!j.contains("values") || !j["values"].is_array()) {
      throw std::invalid_argument("explicit weights need a \"values\" array");
    }
    std::vector<double> values;
    values.reserve(j["values"].size());
    for (const auto& v : j["values"]) values.push_back(v.get<double>());
    return Weights::from_values(std::move(values));
  }
  throw std::invalid_argument("unknown weight kind: " + kind);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": " + s);
  }
  if (pos != s.size()) throw std::invalid_argument("cannot parse " + what + ": " + s);
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": " + s);
  }
  if (pos != s.size()) throw std::invalid_argument("cannot parse " + what + ": " + s);
  return v;
}

}  // namespace

Weights weights_from_descriptor(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty weight descriptor");
  if (text[0] == '@') return weights_from_json(parse_json(slurp(text.substr(1)), "weights"));
  if (text[0] == '{') return weights_from_json(parse_json(text, "weights"));
  const std::vector<std::string> parts = split(text, ':');
  if (parts[0] == "power" && parts.size() == 3) {
    return Weights::power(parse_double(parts[1], "theta"), parse_int(parts[2], "length"));
  }
  if (parts[0] == "harmonic" && parts.size() == 2) {
    return Weights::harmonic(parse_int(parts[1], "length"));
  }
  throw std::invalid_argument("unrecognized weight descriptor: " + text +
                              " (expected power:THETA:LEN, harmonic:LEN, @file.json, or JSON)");
}

SparseVector vector_from_text(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty vector descriptor");
  const json j = parse_json(text[0] == '@' ? slurp(text.substr(1)) : text, "vector");
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw std::invalid_argument("vector JSON needs an \"entries\" array");
  }
  std::vector<Entry> entries;
  entries.reserve(j["entries"].size());
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("vector entries must be [index, value] pairs");
    }
    entries.push_back(Entry{e[0].get<std::int64_t>(), e[1].get<double>()});
  }
  return SparseVector(std::move(entries));
}

}  // namespace garling
