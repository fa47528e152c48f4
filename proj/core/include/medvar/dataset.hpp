#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace medvar {

enum class Role { Treatment, Outcome, Mediator, Other };

/// Maps a column label to its role in the analysis.
using RoleMap = std::map<std::string, Role>;

/// A T x K panel of observations, one row per period (oldest first),
/// with column labels and optional role bindings.
struct Dataset {
  Eigen::MatrixXd values;           // T x K
  std::vector<std::string> names;   // K column labels
  RoleMap roles;                    // may be empty until bound

  long rows() const { return values.rows(); }
  long cols() const { return values.cols(); }

  /// Index of a labelled column; throws std::invalid_argument if unknown.
  int column_index(const std::string& label) const;

  std::string treatment() const;               // throws if no role bound
  std::string outcome() const;                 // throws if no role bound
  std::vector<std::string> mediators() const;  // possibly empty

  /// Checks finiteness, label/shape agreement, and role consistency
  /// (exactly one treatment and one outcome when roles are bound, all
  /// referring to distinct existing columns). Throws on violation.
  void validate() const;

  /// True when there are enough rows to estimate a lag-p model:
  /// T >= K*p + p + 1.
  bool has_rows_for(int p) const;
};

/// Parses a role assignment of the form "X=rate,Y=ip,M=ebp". Keys are
/// X (treatment), Y (outcome), M (mediator, may repeat with different
/// labels), O (other). Unknown keys or duplicate labels are an error.
RoleMap parse_role_spec(const std::string& spec);

/// Loads a CSV file (header row, '.' decimal, ',' separator) and binds
/// the given roles. Throws std::runtime_error naming the offending
/// row/column on malformed input.
Dataset load_dataset(const std::string& path, const RoleMap& roles = {});

/// Writes the dataset as CSV with full round-trip precision.
void write_dataset_csv(const Dataset& data, const std::string& path);

}  // namespace medvar
