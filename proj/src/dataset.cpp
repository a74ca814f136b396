#include "cod/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace cod {

namespace {

constexpr const char *kTruthColumn = "__outlier";

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_row(const std::string &line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

double parse_number(const std::string &cell, std::size_t row, std::size_t col) {
  const char *begin = cell.c_str();
  char *end = nullptr;
  const double value = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size())
    throw Error("row " + std::to_string(row) + ", column " + std::to_string(col) +
                ": non-numeric feature value '" + cell + "'");
  if (!std::isfinite(value))
    throw Error("row " + std::to_string(row) + ", column " + std::to_string(col) +
                ": non-finite feature value '" + cell + "'");
  return value;
}

}  // namespace

std::string to_string(OutlierTag tag) {
  switch (tag) {
    case OutlierTag::none: return "none";
    case OutlierTag::attribute: return "attribute";
    case OutlierTag::klass: return "class";
  }
  return "none";
}

OutlierTag parse_outlier_tag(const std::string &text) {
  if (text == "none") return OutlierTag::none;
  if (text == "attribute") return OutlierTag::attribute;
  if (text == "class") return OutlierTag::klass;
  throw Error("unknown outlier tag '" + text + "'");
}

void LabeledDataset::validate() const {
  if (size() == 0) throw Error("dataset has no samples");
  if (dims() == 0) throw Error("dataset has no features");
  if (labels.size() != size()) throw Error("label count does not match sample count");
  if (n_classes < 1) throw Error("dataset has no classes");
  std::vector<bool> seen(static_cast<std::size_t>(n_classes), false);
  for (int l : labels) {
    if (l < 1 || l > n_classes) throw Error("label out of range: " + std::to_string(l));
    seen[static_cast<std::size_t>(l - 1)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error("a class id has no samples");
  for (double v : features.values())
    if (!std::isfinite(v)) throw Error("non-finite feature value");
}

LabelColumn LabelColumn::parse(const std::string &text) {
  LabelColumn col;
  if (!text.empty() && std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c); }))
    col.index = static_cast<std::size_t>(std::stoull(text));
  else
    col.name = text;
  return col;
}

LabeledDataset parse_dataset(std::istream &in, const LabelColumn &label_column,
                             std::vector<OutlierTag> *truth) {
  std::string line;
  if (!std::getline(in, line)) throw Error("empty dataset: missing header row");
  const std::vector<std::string> header = split_row(line);

  std::size_t label_idx = label_column.index;
  if (label_column.name) {
    const auto it = std::find(header.begin(), header.end(), *label_column.name);
    if (it == header.end()) throw Error("label column '" + *label_column.name + "' not found");
    label_idx = static_cast<std::size_t>(it - header.begin());
  } else if (label_idx >= header.size()) {
    throw Error("label column index " + std::to_string(label_idx) + " out of range");
  }
  const auto truth_it = std::find(header.begin(), header.end(), kTruthColumn);
  const std::size_t truth_idx =
      truth_it == header.end() ? header.size() : static_cast<std::size_t>(truth_it - header.begin());
  if (truth_idx == label_idx) throw Error("label column cannot be the ground-truth column");

  std::vector<std::size_t> feature_cols;
  LabeledDataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_idx || c == truth_idx) continue;
    feature_cols.push_back(c);
    ds.feature_names.push_back(header[c]);
  }
  if (feature_cols.empty()) throw Error("dataset has no feature columns");

  std::vector<double> values;
  std::unordered_map<std::string, int> class_ids;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size())
      throw Error("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                  " cells, got " + std::to_string(cells.size()));
    for (std::size_t c : feature_cols) values.push_back(parse_number(cells[c], row, c));
    const std::string &label = cells[label_idx];
    auto [it, inserted] = class_ids.try_emplace(label, static_cast<int>(class_ids.size()) + 1);
    if (inserted) ds.class_names.push_back(label);
    ds.labels.push_back(it->second);
    if (truth) {
      if (truth_idx < header.size())
        truth->push_back(parse_outlier_tag(cells[truth_idx]));
      else
        truth->push_back(OutlierTag::none);
    }
  }
  if (ds.labels.empty()) throw Error("empty dataset: no data rows");

  ds.n_classes = static_cast<int>(class_ids.size());
  ds.features = Matrix(ds.labels.size(), feature_cols.size());
  std::copy(values.begin(), values.end(), ds.features.row(0).data());
  ds.validate();
  return ds;
}

LabeledDataset load_dataset(const std::filesystem::path &path, const LabelColumn &label_column,
                            std::vector<OutlierTag> *truth) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  if (truth) truth->clear();
  return parse_dataset(in, label_column, truth);
}

LabeledDataset normalize_features(const LabeledDataset &ds) {
  const std::size_t n = ds.size();
  if (n < 2) throw Error("normalization needs at least 2 samples");
  LabeledDataset out = ds;
  for (std::size_t j = 0; j < ds.dims(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += ds.features(i, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = ds.features(i, j) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    for (std::size_t i = 0; i < n; ++i)
      out.features(i, j) = sd > 0.0 ? (ds.features(i, j) - mean) / sd : 0.0;
  }
  return out;
}

LabeledDataset select_features(const LabeledDataset &ds, const std::vector<std::size_t> &columns) {
  LabeledDataset out;
  out.labels = ds.labels;
  out.n_classes = ds.n_classes;
  out.class_names = ds.class_names;
  out.features = Matrix(ds.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= ds.dims()) throw Error("feature index out of range");
    if (!ds.feature_names.empty()) out.feature_names.push_back(ds.feature_names[columns[c]]);
    for (std::size_t i = 0; i < ds.size(); ++i) out.features(i, c) = ds.features(i, columns[c]);
  }
  return out;
}

MultiViewDataset split_views(const LabeledDataset &ds, std::size_t n_views, std::uint64_t seed) {
  if (n_views == 0) throw Error("number of views must be positive");
  if (ds.dims() < n_views)
    throw Error("cannot split " + std::to_string(ds.dims()) + " features into " +
                std::to_string(n_views) + " views");
  std::vector<std::size_t> order(ds.dims());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  MultiViewDataset mv;
  const std::size_t base = ds.dims() / n_views;
  const std::size_t extra = ds.dims() % n_views;
  std::size_t pos = 0;
  for (std::size_t v = 0; v < n_views; ++v) {
    const std::size_t len = base + (v < extra ? 1 : 0);
    std::vector<std::size_t> cols(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                  order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    std::sort(cols.begin(), cols.end());
    pos += len;
    mv.views.push_back(select_features(ds, cols));
    mv.view_feature_indices.push_back(std::move(cols));
  }
  return mv;
}

void write_dataset(std::ostream &out, const LabeledDataset &ds, const std::vector<OutlierTag> *truth) {
  if (truth && truth->size() != ds.size()) throw Error("truth size does not match dataset");
  for (std::size_t j = 0; j < ds.dims(); ++j) {
    out << (j < ds.feature_names.size() ? ds.feature_names[j] : "f" + std::to_string(j)) << ',';
  }
  out << "label";
  if (truth) out << ',' << kTruthColumn;
  out << '\n';
  std::ostringstream cell;
  cell << std::setprecision(17);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.dims(); ++j) {
      cell.str("");
      cell << ds.features(i, j);
      out << cell.str() << ',';
    }
    const int l = ds.labels[i];
    if (static_cast<std::size_t>(l - 1) < ds.class_names.size())
      out << ds.class_names[static_cast<std::size_t>(l - 1)];
    else
      out << l;
    if (truth) out << ',' << to_string((*truth)[i]);
    out << '\n';
  }
}

}  // namespace cod
