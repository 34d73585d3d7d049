// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"
#include "wxnet/error.hpp"
#include "wxnet/model_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace wxnet;
using namespace wxnet::testing;

TEST(ModelIo, RoundTripIsBitExact) {
  Rng rng(3);
  const MinMaxScaler scaler({0, 1, 2, 3, 4, 5, 6}, {1, 2, 3.5, 4, 5, 6, 7e3});
  for (auto arch : {ArchSpec::mlp(5), ArchSpec::rnn(4),
                    ArchSpec::lstm(3, LstmVariant::PaperExact),
                    ArchSpec::lstm(3, LstmVariant::Standard)}) {
    const auto p = random_params(arch, rng, 1.0 / 3.0);
    const auto bundle = model_from_json(model_to_json(p, &scaler));
    EXPECT_TRUE(bundle.params == p) << to_string(arch.kind);
    ASSERT_TRUE(bundle.scaler);
    EXPECT_TRUE(*bundle.scaler == scaler);
    EXPECT_FALSE(model_from_json(model_to_json(p)).scaler);
  }
}

TEST(ModelIo, FileRoundTrip) {
  const auto p = init_params(ArchSpec::mlp(6), 1);
  const auto path = std::filesystem::temp_directory_path() / "wxnet_model.json";
  save_model(path, p);
  EXPECT_TRUE(load_model(path).params == p);
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), IoError);
}

TEST(ModelIo, RejectsMalformed) {
  EXPECT_THROW(model_from_json("{"), ParseError);
  EXPECT_THROW(model_from_json("{\"schema_version\": 1}"), ParseError);
  std::string text = model_to_json(init_params(ArchSpec::mlp(2), 1));
  const auto pos = text.find("\"rows\":21");
  ASSERT_NE(pos, std::string::npos) << text.substr(0, 400);
  text.replace(pos, 9, "\"rows\":20");
  EXPECT_THROW(model_from_json(text), ParseError);
}
