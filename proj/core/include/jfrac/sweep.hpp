#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jfrac {

// Flat key=value settings for one suite; list values are comma separated.
class SweepConfig {
 public:
  // Loads the defaults of the named suite; throws ConfigError if unknown.
  explicit SweepConfig(const std::string& suite);

  const std::string& suite() const { return suite_; }

  // Overrides one key; throws ConfigError on unknown keys or bad numbers.
  void set(const std::string& key, const std::string& value);
  // Lines "key = value"; '#' starts a comment.
  void load_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;

  std::uint64_t seed() const { return seed_; }
  const std::string& output() const { return output_; }

  // Range checks for the suite; ConfigError names the offending key.
  void validate() const;

  static const std::vector<std::string>& suites();

 private:
  std::string suite_;
  std::map<std::string, std::vector<double>> values_;
  std::uint64_t seed_ = 1;
  std::string output_;
};

struct SweepRow {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  double measured = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double max_ratio = 0.0;
  int failures = 0;
  double wall_seconds = 0.0;
};

SweepReport run_suite(const SweepConfig& config);

std::string format_real(double x);
void write_csv(const SweepReport& report, std::ostream& os);
// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const SweepReport& report, const std::string& path);

}  // namespace jfrac
