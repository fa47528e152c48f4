#include "medvar/dmi.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "io_detail.hpp"

namespace medvar {

namespace {
constexpr double kDegenerateWindow = 1e-14;
}

double dmi_at(const DecompositionTable& table, const IrfPath& irf,
              const std::string& mediator, const std::string& outcome, int n, int H) {
  if (n < 0 || n > H)
    throw std::invalid_argument("need 0 <= n <= H");
  if (H > irf.horizon)
    throw std::invalid_argument("H exceeds the impulse-response horizon");
  if (n == H) return 0.0;  // terminal horizon: no further contribution

  auto y_it = std::find(irf.names.begin(), irf.names.end(), outcome);
  if (y_it == irf.names.end())
    throw std::invalid_argument("unknown outcome label: \"" + outcome + "\"");
  const long y = y_it - irf.names.begin();

  double num = 0.0, den = 0.0;
  for (int h = n + 1; h <= H; ++h) {
    const double irf_y = irf.theta(h, y);
    const double med_y = table.contribution_of(n, h, mediator)(y);
    num += irf_y * med_y;
    den += irf_y * irf_y;
  }
  if (den < kDegenerateWindow)
    throw std::runtime_error(
        "degenerate window at n = " + std::to_string(n) +
        ": the impulse response is numerically zero over horizons " +
        std::to_string(n + 1) + ".." + std::to_string(H));
  return num / den;
}

DmiSeries dmi_series(const DecompositionTable& table, const IrfPath& irf,
                     const std::string& mediator, const std::string& outcome, int H) {
  for (int n = 0; n < H; ++n)
    if (!table.cells.count(n))
      throw std::invalid_argument("table is missing the decomposition front n = " +
                                  std::to_string(n) + "; build it with all n = 0..H-1");
  DmiSeries series;
  series.horizon = H;
  series.mediator = mediator;
  series.outcome = outcome;
  series.values.resize(H + 1);
  for (int n = 0; n <= H; ++n)
    series.values[n] = dmi_at(table, irf, mediator, outcome, n, H);
  return series;
}

void write_dmi_csv(const DmiSeries& series, const std::string& path) {
  std::ostringstream out;
  out << "n,dmi\n";
  for (size_t n = 0; n < series.values.size(); ++n)
    out << n << ',' << detail::format_double(series.values[n]) << '\n';
  detail::write_file(path, out.str());
}

std::string dmi_to_json_text(const DmiSeries& series) {
  nlohmann::json j;
  j["mediator"] = series.mediator;
  j["outcome"] = series.outcome;
  j["H"] = series.horizon;
  j["values"] = series.values;
  return j.dump() + "\n";
}

}  // namespace medvar
