// SPDX-License-Identifier: Apache-2.0
#include "wxnet/select.hpp"

#include "wxnet/error.hpp"
#include "wxnet/random.hpp"
#include "wxnet/scaler.hpp"
#include "wxnet/text_format.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <tuple>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace wxnet {

using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
void require_increasing(const std::vector<T> &v, const char *name) {
  if (v.empty())
    throw ConfigError(std::string("grid: ") + name + " is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > T{0}))
      throw ConfigError(std::string("grid: ") + name + " must be positive");
    if (i && !(v[i] > v[i - 1]))
      throw ConfigError(std::string("grid: ") + name +
                        " must be strictly increasing");
  }
}

json loss_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

} // namespace

void Grid::validate() const {
  require_increasing(learning_rates, "learning_rates");
  require_increasing(hidden_sizes, "hidden_sizes");
  for (double lr : learning_rates)
    if (!std::isfinite(lr))
      throw ConfigError("grid: learning rates must be finite");
}

Grid Grid::full() {
  Grid g;
  for (std::size_t h = 32; h <= 1024; h += 8)
    g.hidden_sizes.push_back(h);
  g.learning_rates.push_back(0.01);
  for (int i = 1; i <= 16; ++i)
    g.learning_rates.push_back(i / 20.0);
  return g;
}

Grid Grid::desk() {
  return {{0.01, 0.05, 0.1, 0.2}, {16, 32, 64, 128}};
}

std::size_t PairResult::divergent_folds() const {
  return static_cast<std::size_t>(
    std::count(diverged.begin(), diverged.end(), true));
}

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n,
                                                    std::size_t k,
                                                    std::uint64_t seed) {
  if (k < 2)
    throw ConfigError("k-fold: K must be at least 2");
  if (n < k)
    throw SizeError("k-fold: " + std::to_string(n) +
                    " samples cannot fill " + std::to_string(k) + " folds");
  const auto order = permutation(n, seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return folds;
}

double default_fold_trainer(const ArchSpec &arch, const TrainConfig &cfg,
                            const WindowedSet &train, const WindowedSet &val) {
  try {
    const auto result = fit(arch, cfg, train);
    const double loss =
      squared_loss(val.targets, predict(result.params, val.features));
    return std::isfinite(loss) ? loss : kInf;
  } catch (const DivergenceError &) {
    return kInf;
  }
}

std::size_t choose_pair(const std::vector<PairResult> &pairs) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto &p = pairs[i];
    if (p.fully_divergent())
      continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto &b = pairs[*best];
    const auto key = [](const PairResult &r) {
      return std::tuple(r.mean_loss, r.hidden, r.learning_rate);
    };
    if (key(p) < key(b))
      best = i;
  }
  if (!best)
    throw SelectionError("every grid pair diverged on every fold");
  return *best;
}

CvResult grid_search(const ArchSpec &arch, const Grid &grid,
                     const WindowedSet &train, const TrainConfig &cfg,
                     const CvOptions &opts) {
  grid.validate();
  arch.validate();
  if (!opts.trainer)
    throw ConfigError("grid search needs a fold trainer");
  const auto folds = kfold_indices(train.size(), opts.k,
                                   derive_seed(opts.seed, {4}));

  // Materialize the per-fold train/validation sets once; every pair reuses
  // them read-only.
  struct FoldData {
    WindowedSet train, val;
  };
  std::vector<FoldData> fold_data(opts.k);
  const std::optional<MinMaxScaler> global_scaler =
    opts.per_fold_scaler ? std::nullopt
                         : std::optional<MinMaxScaler>(fit_scaler(train));
  for (std::size_t f = 0; f < opts.k; ++f) {
    std::vector<std::size_t> rest;
    for (std::size_t g = 0; g < opts.k; ++g)
      if (g != f)
        rest.insert(rest.end(), folds[g].begin(), folds[g].end());
    WindowedSet tr = subset(train, rest);
    WindowedSet va = subset(train, folds[f]);
    const MinMaxScaler scaler = global_scaler ? *global_scaler : fit_scaler(tr);
    fold_data[f] = {scaler.transform(tr), scaler.transform(va)};
  }

  CvResult result;
  result.grid = grid;
  result.k = opts.k;
  result.seed = opts.seed;
  const std::size_t n_lr = grid.learning_rates.size();
  result.pairs.resize(grid.pairs());
  for (std::size_t p = 0; p < result.pairs.size(); ++p) {
    auto &pr = result.pairs[p];
    pr.hidden = grid.hidden_sizes[p / n_lr];
    pr.learning_rate = grid.learning_rates[p % n_lr];
    pr.fold_losses.assign(opts.k, 0.0);
    pr.diverged.assign(opts.k, false);
  }

  const std::size_t tasks = result.pairs.size() * opts.k;
  std::vector<double> losses(tasks, 0.0);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks;) {
      const std::size_t p = t / opts.k, f = t % opts.k;
      try {
        TrainConfig c = cfg;
        c.learning_rate = result.pairs[p].learning_rate;
        c.seed = derive_seed(opts.seed, {3, p, f});
        losses[t] = opts.trainer(arch.with_hidden(result.pairs[p].hidden), c,
                                 fold_data[f].train, fold_data[f].val);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  std::size_t threads = opts.threads ? opts.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i)
      pool.emplace_back(worker);
  }
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);

  for (std::size_t p = 0; p < result.pairs.size(); ++p) {
    auto &pr = result.pairs[p];
    double sum = 0.0;
    for (std::size_t f = 0; f < opts.k; ++f) {
      double v = losses[p * opts.k + f];
      if (!std::isfinite(v))
        v = kInf;
      pr.fold_losses[f] = v;
      pr.diverged[f] = std::isinf(v);
      sum += v;
    }
    pr.mean_loss = sum / static_cast<double>(opts.k);
  }
  result.chosen = choose_pair(result.pairs);
  return result;
}

Grid parse_grid_json(const std::string &text) {
  Grid g;
  try {
    const json j = json::parse(text);
    g.learning_rates = j.at("learning_rates").get<std::vector<double>>();
    g.hidden_sizes = j.at("hidden_sizes").get<std::vector<std::size_t>>();
  } catch (const json::exception &e) {
    throw ParseError(std::string("grid file: ") + e.what());
  }
  g.validate();
  return g;
}

Grid load_grid_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open grid file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grid_json(ss.str());
}

std::string grid_to_json(const Grid &grid) {
  json j = {{"learning_rates", grid.learning_rates},
            {"hidden_sizes", grid.hidden_sizes}};
  return j.dump(2) + "\n";
}

std::string cv_result_to_json(const CvResult &result) {
  json pairs = json::array();
  for (const auto &p : result.pairs) {
    json folds = json::array();
    for (double v : p.fold_losses)
      folds.push_back(loss_or_null(v));
    pairs.push_back({{"learning_rate", p.learning_rate},
                     {"hidden", p.hidden},
                     {"mean_val_loss", loss_or_null(p.mean_loss)},
                     {"fold_val_losses", folds},
                     {"diverged", p.diverged},
                     {"divergent_folds", p.divergent_folds()}});
  }
  const auto &best = result.best();
  json j = {{"schema_version", 1},
            {"k", result.k},
            {"seed", result.seed},
            {"grid",
             {{"learning_rates", result.grid.learning_rates},
              {"hidden_sizes", result.grid.hidden_sizes}}},
            {"pairs", pairs},
            {"chosen",
             {{"learning_rate", best.learning_rate},
              {"hidden", best.hidden},
              {"mean_val_loss", loss_or_null(best.mean_loss)}}}};
  return j.dump(2) + "\n";
}

void write_cv_heatmap_csv(std::ostream &out, const CvResult &result) {
  const std::size_t n_lr = result.grid.learning_rates.size();
  out << "hidden";
  for (double lr : result.grid.learning_rates)
    out << ',' << format_double(lr);
  out << '\n';
  for (std::size_t h = 0; h < result.grid.hidden_sizes.size(); ++h) {
    out << result.grid.hidden_sizes[h];
    for (std::size_t l = 0; l < n_lr; ++l)
      out << ',' << format_double(result.pairs[h * n_lr + l].mean_loss);
    out << '\n';
  }
}

} // namespace wxnet
