#include "otsclust/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otsclust {

using nlohmann::json;

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open '" + path + "' for reading");
  return in;
}

json parse_json(const std::string& text, const std::string& where) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) raise(Errc::io_error, "malformed JSON in " + where);
  return parsed;
}

std::string format_g17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json matrix_to_json_rows(const std::vector<double>& flat, std::size_t s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s; ++j) row.push_back(flat[i * s + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_series_jsonl(std::ostream& out, const std::vector<OrdinalSeries>& data) {
  json header = {{"format", "ots-jsonl"}, {"version", 1}};
  if (!data.empty() && data.front().range.labels) header["labels"] = *data.front().range.labels;
  out << header.dump() << '\n';
  for (const auto& series : data) {
    json obj = {{"id", series.id}, {"n", series.n()}, {"states", series.states}};
    out << obj.dump() << '\n';
  }
}

void write_series_jsonl(const std::string& path, const std::vector<OrdinalSeries>& data) {
  auto out = open_output(path);
  write_series_jsonl(out, data);
  if (!out) raise(Errc::io_error, "failed writing '" + path + "'");
}

std::vector<OrdinalSeries> read_series_jsonl(std::istream& in) {
  std::vector<OrdinalSeries> data;
  std::optional<std::vector<std::string>> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj = parse_json(line, "series line " + std::to_string(line_no));
    if (obj.contains("format")) {
      if (obj["format"] != "ots-jsonl")
        raise(Errc::io_error, "unsupported series file format tag");
      if (obj.contains("labels")) labels = obj["labels"].get<std::vector<std::string>>();
      continue;
    }
    if (!obj.contains("id") || !obj.contains("n") || !obj.contains("states"))
      raise(Errc::io_error, "series line " + std::to_string(line_no) +
                                " must carry id, n and states");
    data.push_back(validate_series(obj["id"].get<std::string>(),
                                   obj["states"].get<std::vector<int>>(), obj["n"].get<int>(),
                                   labels));
  }
  return data;
}

std::vector<OrdinalSeries> read_series_jsonl(const std::string& path) {
  auto in = open_input(path);
  return read_series_jsonl(in);
}

std::vector<OrdinalSeries> read_series_csv(std::istream& in) {
  std::vector<OrdinalSeries> data;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;  // first row is the id,n,states header
      continue;
    }
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos)
      raise(Errc::io_error, "CSV series row needs id,n,states columns");
    const std::string id = line.substr(0, first);
    const int n = std::stoi(line.substr(first + 1, second - first - 1));
    std::istringstream states_in(line.substr(second + 1));
    std::vector<int> states;
    int value;
    while (states_in >> value) states.push_back(value);
    data.push_back(validate_series(id, std::move(states), n));
  }
  return data;
}

std::vector<OrdinalSeries> read_series_file(const std::string& path) {
  auto in = open_input(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return read_series_csv(in);
  return read_series_jsonl(in);
}

void write_labels_json(const std::string& path, const std::vector<std::string>& ids,
                       const std::vector<std::string>& labels) {
  if (ids.size() != labels.size())
    raise(Errc::size_mismatch, "ids and labels have different lengths");
  json obj = {{"format", "ots-labels"}, {"version", 1}};
  json map = json::object();
  for (std::size_t i = 0; i < ids.size(); ++i) map[ids[i]] = labels[i];
  obj["labels"] = std::move(map);
  auto out = open_output(path);
  out << obj.dump(2) << '\n';
}

std::vector<std::string> read_labels_json(const std::string& path,
                                          const std::vector<std::string>& ids) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json obj = parse_json(buffer.str(), "'" + path + "'");
  if (!obj.contains("labels")) raise(Errc::io_error, "labels file lacks a labels object");
  std::vector<std::string> labels;
  labels.reserve(ids.size());
  for (const auto& id : ids) {
    if (!obj["labels"].contains(id))
      raise(Errc::io_error, "labels file misses an entry for series '" + id + "'");
    labels.push_back(obj["labels"][id].get<std::string>());
  }
  return labels;
}

void write_matrix_json(const std::string& path, const DistanceMatrix& matrix) {
  const std::size_t s = matrix.size();
  json obj = {{"format", "ots-distmat"},
              {"version", 1},
              {"metric", metric_name(matrix.metric())},
              {"lags", matrix.lags().lags()},
              {"ids", matrix.ids()},
              {"marginal", matrix_to_json_rows(matrix.marginals_flat(), s)},
              {"serial", matrix_to_json_rows(matrix.serials_flat(), s)},
              {"total", matrix_to_json_rows(matrix.totals(), s)}};
  auto out = open_output(path);
  out << obj.dump(2) << '\n';
}

DistanceMatrix read_matrix_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json obj = parse_json(buffer.str(), "'" + path + "'");
  for (const char* key : {"metric", "lags", "ids", "marginal", "serial"})
    if (!obj.contains(key)) raise(Errc::io_error, "distance matrix file misses '" + std::string(key) + "'");

  DistanceMatrix matrix(obj["ids"].get<std::vector<std::string>>(),
                        metric_from_name(obj["metric"].get<std::string>()),
                        LagSet(obj["lags"].get<std::vector<int>>()));
  const std::size_t s = matrix.size();
  const auto marginal = obj["marginal"];
  const auto serial = obj["serial"];
  if (marginal.size() != s || serial.size() != s)
    raise(Errc::io_error, "component matrices do not match the id list");
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      DistanceRecord rec;
      rec.marginal = marginal[i][j].get<double>();
      rec.serial = serial[i][j].get<double>();
      matrix.set(i, j, rec);
    }
  }
  return matrix;
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& matrix) {
  const std::size_t s = matrix.size();
  for (std::size_t j = 0; j < s; ++j) out << (j ? "," : "") << matrix.ids()[j];
  out << '\n';
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j)
      out << (j ? "," : "") << format_g17(matrix.total(i, j));
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const DistanceMatrix& matrix) {
  auto out = open_output(path);
  write_matrix_csv(out, matrix);
}

void write_partition_json(const std::string& path, const FuzzyPartition& partition,
                          const std::vector<std::string>& ids, const ClusterConfig& config,
                          Metric metric, const LagSet& lags) {
  json memberships = json::array();
  for (std::size_t i = 0; i < partition.size; ++i) {
    json row = json::array();
    for (int c = 0; c < partition.clusters; ++c) row.push_back(partition.membership(i, c));
    memberships.push_back(std::move(row));
  }
  json medoid_ids = json::array();
  for (std::size_t m : partition.medoids) medoid_ids.push_back(ids[m]);

  json obj = {{"format", "ots-partition"},
              {"version", 1},
              {"ids", ids},
              {"memberships", memberships},
              {"medoid_indices", partition.medoids},
              {"medoids", medoid_ids},
              {"beta", partition.beta ? json(*partition.beta) : json(nullptr)},
              {"objective", partition.objective},
              {"iterations", partition.iterations},
              {"converged", partition.converged},
              {"config",
               {{"clusters", config.clusters},
                {"fuzziness", config.fuzziness},
                {"max_iter", config.max_iter},
                {"seed", config.seed},
                {"weighted", config.weighted},
                {"metric", metric_name(metric)},
                {"lags", lags.lags()}}}};
  auto out = open_output(path);
  out << obj.dump(2) << '\n';
}

PartitionFile read_partition_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json obj = parse_json(buffer.str(), "'" + path + "'");
  for (const char* key : {"ids", "memberships", "medoid_indices"})
    if (!obj.contains(key)) raise(Errc::io_error, "partition file misses '" + std::string(key) + "'");

  PartitionFile file;
  file.ids = obj["ids"].get<std::vector<std::string>>();
  const auto rows = obj["memberships"];
  file.partition.size = rows.size();
  file.partition.clusters = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  for (const auto& row : rows)
    for (const auto& v : row) file.partition.memberships.push_back(v.get<double>());
  file.partition.medoids = obj["medoid_indices"].get<std::vector<std::size_t>>();
  if (obj.contains("beta") && !obj["beta"].is_null())
    file.partition.beta = obj["beta"].get<double>();
  if (obj.contains("objective")) file.partition.objective = obj["objective"].get<double>();
  if (obj.contains("iterations")) file.partition.iterations = obj["iterations"].get<int>();
  if (obj.contains("converged")) file.partition.converged = obj["converged"].get<bool>();
  return file;
}

void write_lag_report_json(const std::string& path, const LagSelectionReport& report,
                           const std::vector<std::string>& ids) {
  json per_series = json::object();
  for (std::size_t i = 0; i < ids.size() && i < report.per_series_max_lag.size(); ++i)
    per_series[ids[i]] = report.per_series_max_lag[i];
  json obj = {{"format", "ots-lagreport"},
              {"version", 1},
              {"per_series_max_lag", per_series},
              {"skipped", report.skipped},
              {"chosen_max_lag", report.chosen_max_lag},
              {"lags", report.lag_set.lags()},
              {"fallback", report.fallback},
              {"corrected_alpha", report.corrected_alpha}};
  auto out = open_output(path);
  out << obj.dump(2) << '\n';
}

void write_embedding_csv(std::ostream& out, const Embedding2D& embedding,
                         const std::vector<std::string>& ids) {
  out << "id,x,y\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << ids[i] << ',' << format_g17(embedding.x[i]) << ',' << format_g17(embedding.y[i])
        << '\n';
  out << "# stress," << format_g17(embedding.stress) << '\n';
  out << "# r2," << format_g17(embedding.r_squared) << '\n';
}

void write_embedding_csv(const std::string& path, const Embedding2D& embedding,
                         const std::vector<std::string>& ids) {
  auto out = open_output(path);
  write_embedding_csv(out, embedding, ids);
}

}  // namespace otsclust
