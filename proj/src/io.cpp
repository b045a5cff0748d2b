#include "stochord/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace stochord::io {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_real(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
  return v;
}

std::optional<std::int64_t> to_integer(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Table {
  std::vector<std::vector<double>> keys;  // one vector per key column
  std::vector<std::string> mass;
  std::vector<std::size_t> lines;
};

Table read_table(std::istream& in, const std::vector<std::string>& header) {
  Table t;
  t.keys.resize(header.size() - 1);
  std::string line;
  std::size_t no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw InputError("line " + std::to_string(no) + ": expected header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw InputError("line " + std::to_string(no) + ": expected " +
                       std::to_string(header.size()) + " fields");
    }
    for (std::size_t k = 0; k + 1 < header.size(); ++k) t.keys[k].push_back(to_real(fields[k], no));
    t.mass.push_back(fields.back());
    t.lines.push_back(no);
  }
  if (!seen_header) throw InputError("empty input");
  if (t.mass.empty()) throw InputError("no data rows");
  return t;
}

// Integer weights if every mass token is an integer; probabilities otherwise.
std::optional<std::vector<std::int64_t>> as_weights(const Table& t, bool require_weights) {
  std::vector<std::int64_t> w;
  for (std::size_t k = 0; k < t.mass.size(); ++k) {
    const auto v = to_integer(t.mass[k]);
    if (!v) {
      if (require_weights) {
        throw InputError("line " + std::to_string(t.lines[k]) +
                         ": exact mode needs integer weights, got '" + t.mass[k] + "'");
      }
      return std::nullopt;
    }
    w.push_back(*v);
  }
  return w;
}

std::optional<std::vector<std::int64_t>> json_weights(const json& arr, bool require_weights) {
  std::vector<std::int64_t> w;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      if (require_weights) throw InputError("exact mode needs integer weights");
      return std::nullopt;
    }
    w.push_back(v.get<std::int64_t>());
  }
  return w;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

bool is_json(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

template <class T>
std::vector<T> json_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(std::string("missing array '") + key + "'");
  }
  try {
    return j.at(key).get<std::vector<T>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("'") + key + "': " + e.what());
  }
}

}  // namespace

UnivariateDist parse_univariate_csv(std::istream& in, bool require_weights) {
  const Table t = read_table(in, {"value", "prob"});
  if (auto w = as_weights(t, require_weights)) {
    std::vector<std::pair<double, std::int64_t>> atoms;
    for (std::size_t k = 0; k < w->size(); ++k) atoms.emplace_back(t.keys[0][k], (*w)[k]);
    return UnivariateDist::from_weighted_atoms(std::move(atoms));
  }
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t k = 0; k < t.mass.size(); ++k) {
    atoms.emplace_back(t.keys[0][k], to_real(t.mass[k], t.lines[k]));
  }
  return UnivariateDist::from_atoms(std::move(atoms));
}

BivariateDist parse_bivariate_csv(std::istream& in, bool require_weights) {
  const Table t = read_table(in, {"x", "y", "prob"});
  if (auto w = as_weights(t, require_weights)) {
    std::vector<BivariateDist::WeightedCell> cells;
    for (std::size_t k = 0; k < w->size(); ++k) cells.push_back({t.keys[0][k], t.keys[1][k], (*w)[k]});
    return BivariateDist::from_weighted_cells(cells);
  }
  std::vector<BivariateDist::Cell> cells;
  for (std::size_t k = 0; k < t.mass.size(); ++k) {
    cells.push_back({t.keys[0][k], t.keys[1][k], to_real(t.mass[k], t.lines[k])});
  }
  return BivariateDist::from_cells(cells);
}

UnivariateDist read_univariate(const std::string& path, bool require_weights) {
  if (is_json(path)) {
    const json j = load_json(path);
    auto support = json_array<double>(j, "support");
    if (!j.contains("probs")) throw InputError("missing array 'probs'");
    if (auto w = json_weights(j.at("probs"), require_weights)) {
      return UnivariateDist::from_weights(std::move(support), std::move(*w));
    }
    return UnivariateDist::from_probs(std::move(support), json_array<double>(j, "probs"));
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_univariate_csv(in, require_weights);
}

BivariateDist read_bivariate(const std::string& path, bool require_weights) {
  if (is_json(path)) {
    const json j = load_json(path);
    auto xs = json_array<double>(j, "x_support");
    auto ys = json_array<double>(j, "y_support");
    if (!j.contains("pmf") || !j.at("pmf").is_array()) throw InputError("missing array 'pmf'");
    std::vector<std::vector<std::int64_t>> wrows;
    bool integral = true;
    for (const auto& row : j.at("pmf")) {
      auto w = json_weights(row, require_weights);
      if (!w) {
        integral = false;
        break;
      }
      wrows.push_back(std::move(*w));
    }
    if (integral) return BivariateDist::from_weights(std::move(xs), std::move(ys), wrows);
    return BivariateDist::from_pmf(std::move(xs), std::move(ys),
                                   json_array<std::vector<double>>(j, "pmf"));
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_bivariate_csv(in, require_weights);
}

void write_univariate_csv(std::ostream& out, const UnivariateDist& q) {
  out << std::setprecision(17) << "value,prob\n";
  for (std::size_t i = 0; i < q.size(); ++i) {
    out << q.support()[i] << ',';
    if (q.has_weights()) {
      out << q.weights()[i];
    } else {
      out << q.probs()[i];
    }
    out << '\n';
  }
}

void write_bivariate_csv(std::ostream& out, const BivariateDist& r) {
  out << std::setprecision(17) << "x,y,prob\n";
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) {
      out << r.x_support()[i] << ',' << r.y_support()[j] << ',';
      if (r.has_weights()) {
        out << r.weight_at(i, j);
      } else {
        out << r.at(i, j);
      }
      out << '\n';
    }
  }
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c = 0;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace stochord::io
