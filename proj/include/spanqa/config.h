#ifndef SPANQA_CONFIG_H
#define SPANQA_CONFIG_H

#include <map>
#include <string>
#include <vector>

#include "spanqa/errors.h"

namespace spanqa {

// key=value configuration; '#' starts a comment. CLI flags override file
// entries.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback)
      const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback)
      const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace spanqa

#endif  // SPANQA_CONFIG_H
