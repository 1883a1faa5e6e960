/*
 * Copyright 2026 The dylink2vec Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dylink2vec/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace dylink2vec {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Config::Config(std::vector<OptionSpec> schema) : schema_(std::move(schema)) {}

const OptionSpec& Config::spec(const std::string& key) const {
  auto it = std::find_if(schema_.begin(), schema_.end(),
                         [&](const OptionSpec& o) { return o.key == key; });
  if (it == schema_.end()) throw ConfigError("unknown config key '" + key + "'");
  return *it;
}

void Config::set(const std::string& key, const std::string& value) {
  spec(key);
  values_[key] = value;
}

bool Config::is_set(const std::string& key) const {
  spec(key);
  return values_.count(key) > 0;
}

void Config::load(std::istream& in, const std::string& source) {
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto where = source + ":" + std::to_string(lineno);
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected `key = value`");
    const std::string key = trim(s.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    try {
      set(full, trim(s.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  load(in, path);
}

void Config::set_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be section.key=value: " + assignment);
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string Config::get_string(const std::string& key) const {
  const auto& o = spec(key);
  auto it = values_.find(key);
  return it == values_.end() ? o.default_value : it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size()) throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  return x;
}

std::int64_t Config::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  std::int64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
  }
  return x;
}

bool Config::get_bool(const std::string& key) const {
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

std::string Config::describe() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& o : schema_) width = std::max(width, o.key.size());
  for (const auto& o : schema_) {
    out << "  " << o.key << std::string(width - o.key.size() + 2, ' ') << o.help
        << " [default: " << (o.default_value.empty() ? "\"\"" : o.default_value) << "]\n";
  }
  return out.str();
}

}  // namespace dylink2vec
