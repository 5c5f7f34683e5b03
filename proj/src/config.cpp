#include "orlicz/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

double parse_real(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw InputError(std::string(context) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view context) {
  text = trim(text);
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc{} && ptr == end && !text.empty()) return value;
  // Accept integral values written as reals, e.g. "1e5".
  const double real = parse_real(text, context);
  if (real < 0.0 || real != std::floor(real) || real > 1e18) {
    throw InputError(std::string(context) + ": expected a nonnegative integer, got '" +
                     std::string(text) + "'");
  }
  return static_cast<std::size_t>(real);
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string format_real(double value, int significant) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, significant);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 512> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::fixed, decimals);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : format_real(value, decimals);
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text, std::string source) {
  KeyValueConfig cfg;
  cfg.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(cfg.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw InputError(cfg.source_ + ":" + std::to_string(line_no) + ": empty key");
    }
    if (cfg.find(key) != nullptr) {
      throw InputError(cfg.source_ + ":" + std::to_string(line_no) + ": duplicate key '" +
                       std::string(key) + "'");
    }
    cfg.entries_.emplace_back(std::string(key), std::string(value));
  }
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << text;
  if (!out) throw InputError("cannot write file '" + path + "'");
}

KeyValueConfig KeyValueConfig::load(const std::string& path) { return parse(read_text_file(path), path); }

const std::string* KeyValueConfig::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

bool KeyValueConfig::has(std::string_view key) const { return find(key) != nullptr; }

const std::string& KeyValueConfig::get(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  throw InputError(source_ + ": missing key '" + std::string(key) + "'");
}

std::string KeyValueConfig::get_or(std::string_view key, std::string fallback) const {
  if (const auto* v = find(key)) return *v;
  return fallback;
}

double KeyValueConfig::number(std::string_view key) const {
  return parse_real(get(key), source_ + ": key '" + std::string(key) + "'");
}

double KeyValueConfig::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::size_t KeyValueConfig::count_or(std::string_view key, std::size_t fallback) const {
  return has(key) ? parse_count(get(key), source_ + ": key '" + std::string(key) + "'") : fallback;
}

std::vector<double> KeyValueConfig::numbers(std::string_view key) const {
  std::vector<double> out;
  for (const auto& w : split_words(get(key))) {
    out.push_back(parse_real(w, source_ + ": key '" + std::string(key) + "'"));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::words(std::string_view key) const {
  return split_words(get(key));
}

void KeyValueConfig::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace orlicz
