#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <tuple>

#include "ppmgm/error.hpp"
#include "ppmgm/harness.hpp"

namespace ppmgm {
namespace {

auto sort_key(const RunRecord& r) {
  return std::tie(r.experiment, r.method, r.sigma, r.param_name, r.param_value, r.run_index);
}

bool same_group(const RunRecord& a, const RunRecord& b) {
  return a.experiment == b.experiment && a.method == b.method && a.sigma == b.sigma &&
         a.param_name == b.param_name && a.param_value == b.param_value;
}

// Linear interpolation between order statistics; `sorted` is non-empty.
double percentile(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void sort_records(std::vector<RunRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const RunRecord& a, const RunRecord& b) { return sort_key(a) < sort_key(b); });
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.experiment + ',' + r.method + ',' + std::to_string(r.n) + ',' +
           format_double(r.sigma) + ',' + r.param_name + ',' + format_double(r.param_value) + ',' +
           std::to_string(r.run_index) + ',' + format_double(r.result_overlap) + ',' +
           std::to_string(r.iterations_run) + ',' + format_double(r.wall_seconds) + ',' +
           r.status + '\n';
  }
  return out;
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  write_file(path, to_csv(records));
}

void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  write_file(path, to_csv(rows));
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& input) {
  std::vector<RunRecord> records = input;
  sort_records(records);
  std::vector<SummaryRow> rows;
  for (std::size_t begin = 0; begin < records.size();) {
    std::size_t end = begin + 1;
    while (end < records.size() && same_group(records[begin], records[end])) ++end;

    const RunRecord& head = records[begin];
    SummaryRow row{head.experiment, head.method, head.n, head.sigma, head.param_name,
                   head.param_value};
    std::vector<double> values;
    for (std::size_t i = begin; i < end; ++i) {
      ++row.runs;
      if (records[i].status == "ok") {
        values.push_back(records[i].result_overlap);
      } else {
        ++row.failures;
      }
    }
    if (!values.empty()) {
      std::sort(values.begin(), values.end());
      double total = 0.0;
      for (double v : values) total += v;
      row.mean_overlap = total / static_cast<double>(values.size());
      row.p05_overlap = percentile(values, 0.05);
      row.p95_overlap = percentile(values, 0.95);
    }
    rows.push_back(std::move(row));
    begin = end;
  }
  return rows;
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kSummaryCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.experiment + ',' + r.method + ',' + std::to_string(r.n) + ',' +
           format_double(r.sigma) + ',' + r.param_name + ',' + format_double(r.param_value) + ',' +
           std::to_string(r.runs) + ',' + std::to_string(r.failures) + ',' +
           format_double(r.mean_overlap) + ',' + format_double(r.p05_overlap) + ',' +
           format_double(r.p95_overlap) + '\n';
  }
  return out;
}

}  // namespace ppmgm
