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

// Flat key-value configuration with sections:
//
//   # comment
//   [embedding]
//   l = 100
//
// Keys are addressed as `section.key`. Only keys declared in the schema are
// accepted.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dylink2vec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptionSpec {
  std::string key;  // section.key
  std::string default_value;
  std::string help;
};

class Config {
 public:
  explicit Config(std::vector<OptionSpec> schema);

  /// Reads INI text; unknown keys throw ConfigError naming the key.
  void load(std::istream& in, const std::string& source = "<config>");
  void load_file(const std::string& path);
  /// `section.key=value`.
  void set_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool is_set(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  const std::vector<OptionSpec>& schema() const { return schema_; }
  /// Schema listing with defaults, for --help.
  std::string describe() const;

 private:
  const OptionSpec& spec(const std::string& key) const;

  std::vector<OptionSpec> schema_;
  std::map<std::string, std::string> values_;
};

}  // namespace dylink2vec
