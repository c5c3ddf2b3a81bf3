#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace descent {

// Named time series of scalar monitors. Channels keep insertion order so the
// CSV column layout is reproducible.
class DiagnosticsSeries {
 public:
  void append(const std::string& channel, double time, double value);

  bool has(const std::string& channel) const;
  const std::vector<std::pair<double, double>>& channel(const std::string& name) const;
  const std::vector<std::string>& channel_names() const { return order_; }

  // max_t |v(t) - v(0)|
  double drift(const std::string& channel) const;
  double max_abs(const std::string& channel) const;
  double last(const std::string& channel) const;

  // Wide CSV (time, one column per channel); requires aligned time stamps.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::pair<double, double>>> data_;
};

}  // namespace descent
