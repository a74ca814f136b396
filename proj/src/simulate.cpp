#include "cod/simulate.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace cod {

namespace {

struct NamedFractions {
  const char *name;
  double class_frac;
  double attr_frac;
};

constexpr NamedFractions kNamedConfigs[] = {
    {"8-2", 0.08, 0.02}, {"5-5", 0.05, 0.05}, {"2-8", 0.02, 0.08},
    {"0-8", 0.00, 0.08}, {"0-5", 0.00, 0.05}, {"0-2", 0.00, 0.02},
};

void check_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw Error("outlier fraction must be in [0, 1)");
}

/// Labels and features of one or more views that share sample indices.
struct Views {
  std::vector<LabeledDataset *> views;
  std::vector<OutlierTag> *truth;
};

std::vector<std::size_t> untagged(const std::vector<OutlierTag> &truth) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] == OutlierTag::none) out.push_back(i);
  return out;
}

std::size_t uniform_index(std::mt19937_64 &rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void swap_classes(Views &target, double fraction, std::mt19937_64 &rng) {
  check_fraction(fraction);
  const LabeledDataset &first = *target.views.front();
  const std::size_t count = outlier_count(fraction, first.size());
  if (count == 0) return;
  if (first.n_classes < 2) throw Error("class outliers need at least 2 classes");

  // Pools of untouched samples per class, read from the first view's labels.
  std::vector<std::vector<std::size_t>> pool(static_cast<std::size_t>(first.n_classes));
  for (std::size_t i : untagged(*target.truth))
    pool[static_cast<std::size_t>(first.labels[i] - 1)].push_back(i);
  std::size_t available = 0;
  for (auto &p : pool) {
    std::shuffle(p.begin(), p.end(), rng);
    available += p.size();
  }
  if (available < count) throw Error("not enough samples for the requested class outliers");

  const std::size_t n_views = target.views.size();
  auto pick_views = [&]() -> std::uint64_t {
    if (n_views == 1) return 1;
    const std::uint64_t subsets = (std::uint64_t{1} << n_views) - 1;
    return std::uniform_int_distribution<std::uint64_t>(1, subsets)(rng);
  };
  auto take = [&](std::size_t cls) {
    const std::size_t i = pool[cls].back();
    pool[cls].pop_back();
    (*target.truth)[i] = OutlierTag::klass;
    return i;
  };

  std::size_t remaining = count;
  while (remaining >= 2) {
    std::vector<std::size_t> nonempty;
    for (std::size_t c = 0; c < pool.size(); ++c)
      if (!pool[c].empty()) nonempty.push_back(c);
    if (nonempty.size() < 2) break;
    const std::size_t a = uniform_index(rng, nonempty.size());
    std::size_t b = uniform_index(rng, nonempty.size() - 1);
    if (b >= a) ++b;
    const std::size_t i = take(nonempty[a]);
    const std::size_t j = take(nonempty[b]);
    const std::uint64_t mask = pick_views();
    for (std::size_t v = 0; v < n_views; ++v)
      if (mask >> v & 1U) std::swap(target.views[v]->labels[i], target.views[v]->labels[j]);
    remaining -= 2;
  }
  // Odd leftover (or no two classes left to pair): move to another class.
  while (remaining > 0) {
    std::vector<std::size_t> nonempty;
    for (std::size_t c = 0; c < pool.size(); ++c)
      if (!pool[c].empty()) nonempty.push_back(c);
    const std::size_t cls = nonempty[uniform_index(rng, nonempty.size())];
    const std::size_t i = take(cls);
    std::size_t to = uniform_index(rng, pool.size() - 1);
    if (to >= cls) ++to;
    const std::uint64_t mask = pick_views();
    for (std::size_t v = 0; v < n_views; ++v)
      if (mask >> v & 1U) target.views[v]->labels[i] = static_cast<int>(to) + 1;
    --remaining;
  }
}

void corrupt_attributes(Views &target, double fraction, std::mt19937_64 &rng) {
  check_fraction(fraction);
  const std::size_t n = target.views.front()->size();
  const std::size_t count = outlier_count(fraction, n);
  if (count == 0) return;
  std::vector<std::size_t> candidates = untagged(*target.truth);
  if (candidates.size() < count) throw Error("not enough samples for the requested attribute outliers");
  std::shuffle(candidates.begin(), candidates.end(), rng);
  candidates.resize(count);
  std::sort(candidates.begin(), candidates.end());

  for (LabeledDataset *view : target.views) {
    Matrix &x = view->features;
    std::vector<double> lo(x.cols()), hi(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
      lo[j] = hi[j] = x(0, j);
      for (std::size_t i = 1; i < n; ++i) {
        lo[j] = std::min(lo[j], x(i, j));
        hi[j] = std::max(hi[j], x(i, j));
      }
    }
    for (std::size_t i : candidates) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        const double range = hi[j] > lo[j] ? hi[j] - lo[j] : 1.0;
        const double offset = std::uniform_real_distribution<double>(range, 2.0 * range)(rng);
        x(i, j) = std::bernoulli_distribution(0.5)(rng) ? hi[j] + offset : lo[j] - offset;
      }
    }
  }
  for (std::size_t i : candidates) (*target.truth)[i] = OutlierTag::attribute;
}

Views views_of(LabeledDataset &ds, std::vector<OutlierTag> &truth) { return {{&ds}, &truth}; }

Views views_of(MultiViewDataset &mv, std::vector<OutlierTag> &truth) {
  if (mv.views.empty()) throw Error("multi-view dataset has no views");
  Views v{{}, &truth};
  for (auto &view : mv.views) v.views.push_back(&view);
  return v;
}

template <typename Result, typename Data>
Result corrupt(const Data &data, double class_frac, double attr_frac, std::uint64_t seed) {
  Result out{data, std::vector<OutlierTag>(data.size(), OutlierTag::none)};
  Views target = views_of(out.data, out.truth);
  std::mt19937_64 rng(seed);
  swap_classes(target, class_frac, rng);
  corrupt_attributes(target, attr_frac, rng);
  return out;
}

}  // namespace

std::size_t outlier_count(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

void OutlierConfig::validate() const {
  if (!(class_frac >= 0.0 && attr_frac >= 0.0)) throw Error("outlier fractions must be non-negative");
  if (!(class_frac + attr_frac < 1.0)) throw Error("outlier fractions must sum to less than 1");
}

OutlierConfig named_config(const std::string &name, std::uint64_t seed) {
  for (const auto &entry : kNamedConfigs)
    if (name == entry.name)
      return {entry.name, entry.class_frac, entry.attr_frac, seed, ViewsMode::single};
  throw Error("unknown outlier configuration '" + name + "'");
}

const std::vector<std::string> &config_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto &entry : kNamedConfigs) out.emplace_back(entry.name);
    return out;
  }();
  return names;
}

CorruptedDataset inject_attribute_outliers(const LabeledDataset &ds, double fraction, std::uint64_t seed) {
  return corrupt<CorruptedDataset>(ds, 0.0, fraction, seed);
}

CorruptedMultiView inject_attribute_outliers(const MultiViewDataset &mv, double fraction,
                                             std::uint64_t seed) {
  return corrupt<CorruptedMultiView>(mv, 0.0, fraction, seed);
}

CorruptedDataset inject_class_outliers(const LabeledDataset &ds, double fraction, std::uint64_t seed) {
  return corrupt<CorruptedDataset>(ds, fraction, 0.0, seed);
}

CorruptedMultiView inject_class_outliers(const MultiViewDataset &mv, double fraction, std::uint64_t seed) {
  return corrupt<CorruptedMultiView>(mv, fraction, 0.0, seed);
}

CorruptedDataset build_experiment_instance(const LabeledDataset &ds, const OutlierConfig &config) {
  config.validate();
  return corrupt<CorruptedDataset>(ds, config.class_frac, config.attr_frac, config.seed);
}

CorruptedMultiView build_experiment_instance(const MultiViewDataset &mv, const OutlierConfig &config) {
  config.validate();
  return corrupt<CorruptedMultiView>(mv, config.class_frac, config.attr_frac, config.seed);
}

}  // namespace cod
