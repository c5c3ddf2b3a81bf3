#include "descent/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace descent {

void DiagnosticsSeries::append(const std::string& channel, double time, double value) {
  auto it = data_.find(channel);
  if (it == data_.end()) {
    order_.push_back(channel);
    it = data_.emplace(channel, std::vector<std::pair<double, double>>{}).first;
  }
  if (!it->second.empty() && time < it->second.back().first)
    throw std::invalid_argument("DiagnosticsSeries: time stamps must be monotone in '" + channel + "'");
  it->second.emplace_back(time, value);
}

bool DiagnosticsSeries::has(const std::string& channel) const { return data_.count(channel) > 0; }

const std::vector<std::pair<double, double>>& DiagnosticsSeries::channel(const std::string& name) const {
  auto it = data_.find(name);
  if (it == data_.end()) throw std::out_of_range("DiagnosticsSeries: no channel '" + name + "'");
  return it->second;
}

double DiagnosticsSeries::drift(const std::string& name) const {
  const auto& samples = channel(name);
  if (samples.empty()) return 0.0;
  const double first = samples.front().second;
  double d = 0.0;
  for (const auto& [t, v] : samples) d = std::max(d, std::abs(v - first));
  return d;
}

double DiagnosticsSeries::max_abs(const std::string& name) const {
  double m = 0.0;
  for (const auto& [t, v] : channel(name)) m = std::max(m, std::abs(v));
  return m;
}

double DiagnosticsSeries::last(const std::string& name) const {
  const auto& samples = channel(name);
  if (samples.empty()) throw std::out_of_range("DiagnosticsSeries: channel '" + name + "' is empty");
  return samples.back().second;
}

void DiagnosticsSeries::write_csv(std::ostream& out) const {
  if (order_.empty()) return;
  const auto& reference = channel(order_.front());

  out << "time";
  for (const std::string& name : order_) out << "," << name;
  out << "\n";

  char buf[40];
  for (std::size_t row = 0; row < reference.size(); ++row) {
    std::snprintf(buf, sizeof(buf), "%.17g", reference[row].first);
    out << buf;
    for (const std::string& name : order_) {
      const auto& samples = channel(name);
      if (samples.size() != reference.size() || samples[row].first != reference[row].first)
        throw std::runtime_error("DiagnosticsSeries: channels not sampled on a common time axis");
      std::snprintf(buf, sizeof(buf), "%.17g", samples[row].second);
      out << "," << buf;
    }
    out << "\n";
  }
}

}  // namespace descent
