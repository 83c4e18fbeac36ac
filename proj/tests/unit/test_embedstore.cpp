/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "scdaxes/embedstore.hpp"
#include "scdaxes/errors.hpp"
#include "scdaxes/random.hpp"
#include "test_support.hpp"

namespace scdaxes {
namespace {

using testing::make_store;
using testing::TempDir;
using testing::write_file;

std::string le_floats(std::initializer_list<float> values) {
  std::string bytes;
  for (float v : values) {
    char buf[4];
    std::memcpy(buf, &v, 4);  // host is little-endian in every supported build
    bytes.append(buf, 4);
  }
  return bytes;
}

TEST(EmbeddingStore, SmallestWellFormedStore) {
  TempDir tmp;
  write_file(tmp / "s/meta.json", R"({"dim":2,"count":1,"row_ids":["a"]})");
  write_file(tmp / "s/embeddings.f32", le_floats({1.0f, 2.0f}));
  const EmbeddingStore s = load_store(tmp / "s");
  ASSERT_EQ(s.dim(), 2u);
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s.row(s.index_of("a"))[0], 1.0f);
  EXPECT_EQ(s.row(s.index_of("a"))[1], 2.0f);
}

TEST(EmbeddingStore, ByteLengthMismatchIsRejected) {
  TempDir tmp;
  write_file(tmp / "s/meta.json", R"({"dim":2,"count":1,"row_ids":["a"]})");
  write_file(tmp / "s/embeddings.f32", le_floats({1.0f, 2.0f, 3.0f}));
  EXPECT_THROW(load_store(tmp / "s"), FormatError);
}

TEST(EmbeddingStore, MetaErrors) {
  TempDir tmp;
  const auto payload = le_floats({1.0f, 2.0f});
  const char* bad_meta[] = {
      R"({"dim":2,"count":1})",
      R"({"dim":0,"count":1,"row_ids":["a"]})",
      R"({"dim":2,"count":2,"row_ids":["a"]})",
      R"({"dim":2,"count":1,"row_ids":["a"],"dtype":"f16"})",
      R"({"dim":"2","count":1,"row_ids":["a"]})",
      R"(not json)",
  };
  for (const char* meta : bad_meta) {
    write_file(tmp / "s/meta.json", meta);
    write_file(tmp / "s/embeddings.f32", payload);
    EXPECT_THROW(load_store(tmp / "s"), FormatError) << meta;
  }
  EXPECT_THROW(load_store(tmp / "missing"), FormatError);
}

TEST(EmbeddingStore, ConstructorInvariants) {
  EXPECT_THROW(EmbeddingStore(0, {}, {}), FormatError);
  EXPECT_THROW(EmbeddingStore(2, {"a"}, {1.0f}), FormatError);
  EXPECT_THROW(EmbeddingStore(1, {"a", "a"}, {1.0f, 2.0f}), FormatError);
  EXPECT_THROW(EmbeddingStore(1, {"a"}, {std::numeric_limits<float>::quiet_NaN()}),
               FormatError);
  EXPECT_THROW(EmbeddingStore(1, {"a"}, {std::numeric_limits<float>::infinity()}),
               FormatError);
  EXPECT_NO_THROW(EmbeddingStore(3, {}, {}));
}

TEST(EmbeddingStore, LookupAndGather) {
  const auto s = make_store({"x", "y", "z"}, {{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(s.find("y"), std::optional<RowIndex>(1));
  EXPECT_FALSE(s.find("w").has_value());
  EXPECT_THROW(s.index_of("w"), FormatError);
  const std::vector<RowIndex> rows = {2, 0};
  const Eigen::MatrixXd g = s.gather(rows);
  EXPECT_EQ(g(0, 0), 5.0);
  EXPECT_EQ(g(1, 1), 2.0);
  EXPECT_EQ(s.to_matrix().rows(), 3);
}

EmbeddingStore random_store(std::uint64_t seed, std::size_t n, std::size_t d) {
  Xoshiro256 rng(seed);
  std::vector<std::string> ids;
  std::vector<float> data;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("occ_" + std::to_string(i));
    for (std::size_t j = 0; j < d; ++j) data.push_back(static_cast<float>(rng.normal() * 1e3));
  }
  // Awkward values for text round-tripping.
  data[0] = std::numeric_limits<float>::denorm_min();
  data[1] = -0.0f;
  data[2] = std::numeric_limits<float>::max();
  data[3] = 0.1f;
  return EmbeddingStore(d, std::move(ids), std::move(data));
}

TEST(EmbeddingStore, BinaryRoundTripIsBitExact) {
  TempDir tmp;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_store(seed, 37, 5);
    save_store(s, tmp / "bin");
    EXPECT_TRUE(load_store(tmp / "bin") == s);
  }
}

TEST(EmbeddingStore, CsvRoundTripIsBitExact) {
  TempDir tmp;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_store(seed, 37, 5);
    save_store_csv(s, tmp / "s.csv");
    EXPECT_TRUE(load_store(tmp / "s.csv") == s);
  }
}

TEST(EmbeddingStore, ThreeByFourCsvRoundTrip) {
  TempDir tmp;
  const auto s = make_store({"r0", "r1", "r2"},
                            {{0.1f, -2.5f, 3e-8f, 1.0f / 3.0f},
                             {7.0f, 0.0f, -0.0f, 65504.0f},
                             {1e30f, -1e-30f, 2.0f, 0.7f}});
  save_store_csv(s, tmp / "s.csv");
  EXPECT_EQ(testing::read_file(tmp / "s.csv").substr(0, 15), "id,v0,v1,v2,v3\n");
  EXPECT_TRUE(load_store(tmp / "s.csv") == s);
}

TEST(EmbeddingStore, CsvErrors) {
  TempDir tmp;
  const char* bad[] = {
      "",
      "name,v0\na,1\n",
      "id,v1\na,1\n",
      "id,v0,v1\na,1\n",
      "id,v0\na,xyz\n",
      "id,v0\na,nan\n",
      "id,v0\na,1\na,2\n",
  };
  for (const char* text : bad) {
    write_file(tmp / "s.csv", text);
    EXPECT_THROW(load_store(tmp / "s.csv"), FormatError) << text;
  }
}

TEST(EmbeddingStore, CsvRowLimit) {
  TempDir tmp;
  std::string text = "id,v0\n";
  for (std::size_t i = 0; i <= kMaxCsvRows; ++i) text += "r" + std::to_string(i) + ",1\n";
  write_file(tmp / "s.csv", text);
  EXPECT_THROW(load_store(tmp / "s.csv"), FormatError);
}

}  // namespace
}  // namespace scdaxes
