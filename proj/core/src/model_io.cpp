// SPDX-License-Identifier: Apache-2.0
#include "wxnet/model_io.hpp"

#include "wxnet/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wxnet {

using nlohmann::ordered_json;

std::string model_to_json(const ModelParams &params,
                          const MinMaxScaler *scaler) {
  const ArchSpec &a = params.arch;
  ordered_json tensors = ordered_json::array();
  for (const auto &[name, m] : named_tensors(params)) {
    tensors.push_back({{"name", name},
                       {"rows", m->rows()},
                       {"cols", m->cols()},
                       {"data", std::vector<double>(m->data().begin(),
                                                    m->data().end())}});
  }
  ordered_json j = {
    {"schema_version", 1},
    {"arch",
     {{"kind", std::string(to_string(a.kind))},
      {"input_dim", a.input_dim},
      {"hidden_dim", a.hidden_dim},
      {"output_dim", a.output_dim},
      {"seq_len", a.seq_len},
      {"lstm_variant", std::string(to_string(a.lstm_variant))}}},
    {"params", tensors}};
  if (scaler && scaler->fitted())
    j["scaler"] = {{"min", scaler->mins()}, {"max", scaler->maxs()}};
  return j.dump() + "\n";
}

ModelBundle model_from_json(const std::string &text) {
  try {
    const auto j = ordered_json::parse(text);
    const auto &ja = j.at("arch");
    ArchSpec arch;
    arch.kind = parse_model_kind(ja.at("kind").get<std::string>());
    arch.input_dim = ja.at("input_dim").get<std::size_t>();
    arch.hidden_dim = ja.at("hidden_dim").get<std::size_t>();
    arch.output_dim = ja.at("output_dim").get<std::size_t>();
    arch.seq_len = ja.at("seq_len").get<std::size_t>();
    arch.lstm_variant =
      parse_lstm_variant(ja.at("lstm_variant").get<std::string>());

    ModelBundle bundle{zero_params(arch), std::nullopt};
    auto slots = named_tensors(bundle.params);
    const auto &jp = j.at("params");
    if (jp.size() != slots.size())
      throw ParseError("model file has " + std::to_string(jp.size()) +
                       " tensors, architecture needs " +
                       std::to_string(slots.size()));
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const auto &e = jp.at(t);
      const auto name = e.at("name").get<std::string>();
      if (name != slots[t].first)
        throw ParseError("tensor " + std::to_string(t) + " is '" + name +
                         "', expected '" + slots[t].first + "'");
      const auto rows = e.at("rows").get<std::size_t>();
      const auto cols = e.at("cols").get<std::size_t>();
      Matrix &m = *slots[t].second;
      if (rows != m.rows() || cols != m.cols())
        throw ParseError("tensor '" + name + "' is " + std::to_string(rows) +
                         "x" + std::to_string(cols) + ", expected " +
                         m.shape_string());
      m = Matrix(rows, cols, e.at("data").get<std::vector<double>>());
    }
    if (j.contains("scaler"))
      bundle.scaler =
        MinMaxScaler(j["scaler"].at("min").get<std::vector<double>>(),
                     j["scaler"].at("max").get<std::vector<double>>());
    return bundle;
  } catch (const ordered_json::exception &e) {
    throw ParseError(std::string("model file: ") + e.what());
  } catch (const ShapeError &e) {
    throw ParseError(std::string("model file: ") + e.what());
  } catch (const ConfigError &e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path &path, const ModelParams &params,
                const MinMaxScaler *scaler) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << model_to_json(params, scaler);
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

ModelBundle load_model(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open model file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

} // namespace wxnet
