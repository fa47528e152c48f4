#include "medvar/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "io_detail.hpp"

namespace medvar {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

int Dataset::column_index(const std::string& label) const {
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end())
    throw std::invalid_argument("unknown column label: \"" + label + "\"");
  return static_cast<int>(it - names.begin());
}

std::string Dataset::treatment() const {
  for (const auto& [label, role] : roles)
    if (role == Role::Treatment) return label;
  throw std::invalid_argument("no treatment role bound");
}

std::string Dataset::outcome() const {
  for (const auto& [label, role] : roles)
    if (role == Role::Outcome) return label;
  throw std::invalid_argument("no outcome role bound");
}

std::vector<std::string> Dataset::mediators() const {
  std::vector<std::string> out;
  for (const auto& [label, role] : roles)
    if (role == Role::Mediator) out.push_back(label);
  return out;
}

void Dataset::validate() const {
  if (static_cast<long>(names.size()) != values.cols())
    throw std::invalid_argument("dataset has " + std::to_string(values.cols()) +
                                " columns but " + std::to_string(names.size()) +
                                " labels");
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw std::invalid_argument("duplicate column label: \"" + names[i] + "\"");
  if (!values.allFinite())
    throw std::invalid_argument("dataset contains non-finite entries");

  if (roles.empty()) return;
  int n_treat = 0, n_out = 0;
  for (const auto& [label, role] : roles) {
    column_index(label);  // throws on unknown label
    if (role == Role::Treatment) ++n_treat;
    if (role == Role::Outcome) ++n_out;
  }
  if (n_treat != 1)
    throw std::invalid_argument("roles must bind exactly one treatment");
  if (n_out != 1)
    throw std::invalid_argument("roles must bind exactly one outcome");
  if (treatment() == outcome())
    throw std::invalid_argument("treatment and outcome must be distinct columns");
}

bool Dataset::has_rows_for(int p) const {
  return rows() >= cols() * static_cast<long>(p) + p + 1;
}

RoleMap parse_role_spec(const std::string& spec) {
  RoleMap roles;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("role entry \"" + item + "\" is not KEY=label");
    std::string key = trim(item.substr(0, eq));
    std::string label = trim(item.substr(eq + 1));
    if (label.empty())
      throw std::invalid_argument("role entry \"" + item + "\" has empty label");
    Role role;
    if (key == "X") role = Role::Treatment;
    else if (key == "Y") role = Role::Outcome;
    else if (key == "M") role = Role::Mediator;
    else if (key == "O") role = Role::Other;
    else throw std::invalid_argument("unknown role key \"" + key + "\" (use X, Y, M, O)");
    if (roles.count(label))
      throw std::invalid_argument("label \"" + label + "\" bound to more than one role");
    roles[label] = role;
  }
  return roles;
}

Dataset load_dataset(const std::string& path, const RoleMap& roles) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  std::vector<std::string> header = split_csv_line(line);
  if (header.empty() || (header.size() == 1 && header[0].empty()))
    throw std::runtime_error(path + ": empty header row");
  const size_t k = header.size();

  std::vector<double> buffer;
  long row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    auto cells = split_csv_line(line);
    if (cells.size() != k)
      throw std::runtime_error(path + ": row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(k));
    for (size_t c = 0; c < k; ++c) {
      const std::string& cell = cells[c];
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw std::runtime_error(path + ": non-numeric cell \"" + cell +
                                 "\" at row " + std::to_string(row) +
                                 ", column \"" + header[c] + "\"");
      buffer.push_back(v);
    }
  }
  if (row < 2)
    throw std::runtime_error(path + ": fewer than 2 data rows");

  Dataset data;
  data.names = header;
  data.roles = roles;
  data.values.resize(row, static_cast<long>(k));
  for (long r = 0; r < row; ++r)
    for (size_t c = 0; c < k; ++c)
      data.values(r, static_cast<long>(c)) = buffer[r * k + c];
  data.validate();
  return data;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ostringstream out;
  for (size_t c = 0; c < data.names.size(); ++c) {
    if (c) out << ',';
    out << data.names[c];
  }
  out << '\n';
  for (long r = 0; r < data.rows(); ++r) {
    for (long c = 0; c < data.cols(); ++c) {
      if (c) out << ',';
      out << detail::format_double(data.values(r, c));
    }
    out << '\n';
  }
  detail::write_file(path, out.str());
}

}  // namespace medvar
