#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orlicz {

/// Locale-independent decimal parsing; throws InputError mentioning `context`.
double parse_real(std::string_view text, std::string_view context);
std::size_t parse_count(std::string_view text, std::string_view context);

/// Shortest representation that round-trips to the same double.
std::string format_real(double value);
/// `significant` digits, general notation.
std::string format_real(double value, int significant);
/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::vector<std::string> split_words(std::string_view text);

/// Whole-file helpers; both throw InputError naming `path` on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Ordered `key = value` text, one entry per line, `#` starts a comment.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text, std::string source = "<text>");
  /// Throws InputError naming `path` if it cannot be read.
  static KeyValueConfig load(const std::string& path);

  [[nodiscard]] bool has(std::string_view key) const;
  [[nodiscard]] const std::string& get(std::string_view key) const;
  [[nodiscard]] std::string get_or(std::string_view key, std::string fallback) const;
  [[nodiscard]] double number(std::string_view key) const;
  [[nodiscard]] double number_or(std::string_view key, double fallback) const;
  [[nodiscard]] std::size_t count_or(std::string_view key, std::size_t fallback) const;
  [[nodiscard]] std::vector<double> numbers(std::string_view key) const;
  [[nodiscard]] std::vector<std::string> words(std::string_view key) const;

  void set(std::string key, std::string value);
  [[nodiscard]] std::string to_text() const;

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  [[nodiscard]] const std::string& source() const { return source_; }

 private:
  [[nodiscard]] const std::string* find(std::string_view key) const;

  std::vector<std::pair<std::string, std::string>> entries_;
  std::string source_ = "<text>";
};

}  // namespace orlicz
