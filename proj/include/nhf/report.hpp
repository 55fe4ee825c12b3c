#ifndef NHF_REPORT_HPP
#define NHF_REPORT_HPP

#include <string>
#include <vector>

namespace nhf {

/// One named check: the worst relative violation seen and whether it stayed
/// within tolerance. `witness` is a short human-readable description of the
/// sample that produced the worst violation.
struct Check {
  std::string name;
  bool pass = true;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::string witness;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string title) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<Check>& checks() const { return checks_; }

  /// Adds a tolerance check. NaN violations always fail.
  Check& add(std::string name, double worst_violation, double tolerance,
             std::string witness = {});
  /// Adds a yes/no check; a failure records violation 1.
  Check& add_flag(std::string name, bool ok, std::string witness = {});
  void append(const Report& other, const std::string& prefix = {});

  const Check* find(const std::string& name) const;
  bool pass() const;

 private:
  std::string title_;
  std::vector<Check> checks_;
};

/// Running maximum of a violation with the sample that caused it.
class WorstCase {
 public:
  void observe(double violation, std::string witness = {});
  void observe(double violation, int trial);
  double value() const { return value_; }
  const std::string& witness() const { return witness_; }

 private:
  bool replaces(double violation) const;

  double value_ = 0.0;
  std::string witness_;
  bool first_ = true;
};

}  // namespace nhf

#endif  // NHF_REPORT_HPP
