#pragma once

// Flat key=value run configuration with a typed schema per command.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace silt::cli {

enum class FieldType { real, integer, text, real_list };

struct FieldSpec {
  std::string key;
  FieldType type = FieldType::real;
  std::string default_value;
  std::string help;
};

struct FieldError {
  std::string field;
  std::string message;
};

/// Invalid configuration; carries one diagnostic per offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  ConfigError(std::string field, std::string message);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

const std::vector<std::string>& command_names();
/// Schema of a command (common keys included). Throws ConfigError for unknown commands.
const std::vector<FieldSpec>& schema(const std::string& command);

class RunConfig {
 public:
  RunConfig(std::string command, std::map<std::string, std::string> values);

  const std::string& command() const noexcept { return command_; }
  /// Effective values (defaults filled in), sorted by key.
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t seed() const;
  const std::string& text(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  bool has(const std::string& key) const { return values_.contains(key) && !values_.at(key).empty(); }

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

/// Reads "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Splits "key=value" overrides into the map (later entries win).
void apply_overrides(std::map<std::string, std::string>& values, const std::vector<std::string>& overrides);

/// Fills defaults, checks types and ranges. Keys "grid.<key>" are accepted by
/// the sweep command for any key of its base command. Throws ConfigError.
RunConfig validate(const std::string& command, std::map<std::string, std::string> values);

/// "1e-3,2e-3" -> {1e-3, 2e-3}; throws std::invalid_argument on junk.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace silt::cli
