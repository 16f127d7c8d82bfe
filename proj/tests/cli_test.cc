// Copyright 2026 The eqquant Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <sstream>
#include <string>

#include "eqq/cli/commands.h"
#include "eqq/io/image.h"
#include "eqq/io/weight_store.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace eqq {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;
using ::testing::StartsWith;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(const std::string& command, const CliOptions& options) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = RunCommand(command, options, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("eqq_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliOptions Toy(int n = 4) {
  CliOptions o;
  o.preset = "toy";
  o.group_order = n;
  o.seed = 11;
  return o;
}

std::string Pattern(int seed) {
  PnmImage img;
  img.width = 15;
  img.height = 15;
  img.channels = 3;
  img.pixels.resize(675);
  for (int i = 0; i < 675; ++i) img.pixels[i] = (i * (7 + seed)) % 256;
  return EncodePnm(img);
}

TEST(CliTest, PlanPrintsEveryLayer) {
  const CliRun r = Cli("plan", Toy());
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, StartsWith("layer\tinput\tkernel\tstride\tpadding\toutput"));
  EXPECT_THAT(r.out, HasSubstr("block1.dw\t15\t3\t2\t0\t7"));
}

TEST(CliTest, EvenInputIsInvalid) {
  CliOptions o = Toy();
  o.input_size = 96;
  const CliRun r = Cli("plan", o);
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_THAT(r.err, HasSubstr("96"));
}

TEST(CliTest, UnknownCommand) {
  EXPECT_EQ(Cli("train", Toy()).code, kExitInvalid);
}

TEST(CliTest, AuditPassesForEquivariantAndFailsForConventional) {
  const CliRun ok = Cli("audit", Toy());
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_THAT(ok.out, HasSubstr("logits"));
  CliOptions o = Toy();
  o.variant = "conventional";
  const CliRun bad = Cli("audit", o);
  EXPECT_EQ(bad.code, kExitCheckFailed);
  EXPECT_FALSE(bad.err.empty());
  CliOptions odd = Toy();
  odd.angles = {45.0};
  EXPECT_EQ(Cli("audit", odd).code, kExitInvalid);
}

TEST(CliTest, BuildNeedsOutput) {
  EXPECT_EQ(Cli("build", Toy()).code, kExitInvalid);
}

TEST(CliTest, BuildIsDeterministic) {
  const fs::path dir = ScratchDir("build");
  CliOptions a = Toy();
  a.out_path = (dir / "a.eqw").string();
  CliOptions b = a;
  b.out_path = (dir / "b.eqw").string();
  const CliRun ra = Cli("build", a);
  const CliRun rb = Cli("build", b);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(ReadFileBytes(a.out_path), ReadFileBytes(b.out_path));
}

TEST(CliTest, QuantizeReportAndContainerAreDeterministic) {
  const fs::path dir = ScratchDir("quantize");
  CliOptions o = Toy();
  o.out_path = (dir / "q1.eqw").string();
  const CliRun r1 = Cli("quantize", o);
  ASSERT_EQ(r1.code, kExitOk) << r1.err;
  o.out_path = (dir / "q2.eqw").string();
  const CliRun r2 = Cli("quantize", o);
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(ReadFileBytes((dir / "q1.eqw").string()),
            ReadFileBytes((dir / "q2.eqw").string()));
  EXPECT_THAT(r1.out, HasSubstr("mean_relative"));
  EXPECT_THAT(r1.out, HasSubstr("block_scale_spread"));

  // The quantized container loads and runs.
  CliOptions infer = Toy();
  infer.weights_path = (dir / "q1.eqw").string();
  WriteFileBytes((dir / "x.pgm").string(), Pattern(1));
  infer.image_path = (dir / "x.pgm").string();
  const CliRun ri = Cli("infer", infer);
  EXPECT_EQ(ri.code, kExitOk) << ri.err;
  EXPECT_THAT(ri.out, HasSubstr("predicted\t"));
}

TEST(CliTest, QuantizeRejectsBadBits) {
  CliOptions o = Toy();
  o.out_path = (ScratchDir("bits") / "q.eqw").string();
  o.bits = 1;
  EXPECT_EQ(Cli("quantize", o).code, kExitInvalid);
}

TEST(CliTest, MissingWeightsFileIsIoError) {
  CliOptions o = Toy();
  o.weights_path = "/nonexistent/w.eqw";
  EXPECT_EQ(Cli("audit", o).code, kExitIo);
}

TEST(CliTest, CorruptContainerIsIoError) {
  const fs::path dir = ScratchDir("corrupt");
  WriteFileBytes((dir / "w.eqw").string(), "JUNKJUNKJUNK");
  CliOptions o = Toy();
  o.weights_path = (dir / "w.eqw").string();
  EXPECT_EQ(Cli("audit", o).code, kExitIo);
}

TEST(CliTest, EvaluatePerfectManifest) {
  const fs::path dir = ScratchDir("evaluate");
  CliOptions build = Toy();
  build.out_path = (dir / "m.eqw").string();
  ASSERT_EQ(Cli("build", build).code, kExitOk);
  std::string manifest;
  for (int i = 0; i < 5; ++i) {
    const std::string name = "img" + std::to_string(i) + ".pgm";
    WriteFileBytes((dir / name).string(), Pattern(i));
    CliOptions infer = Toy();
    infer.weights_path = build.out_path;
    infer.image_path = (dir / name).string();
    const CliRun r = Cli("infer", infer);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const size_t at = r.out.find("predicted\t");
    ASSERT_NE(at, std::string::npos);
    manifest += name + "," + r.out.substr(at + 10, 1) + "\n";
  }
  WriteFileBytes((dir / "labels.csv").string(), manifest);
  CliOptions eval = Toy();
  eval.weights_path = build.out_path;
  eval.dataset_path = (dir / "labels.csv").string();
  const CliRun r = Cli("evaluate", eval);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, HasSubstr("5\t5\t1.0000"));
}

TEST(CliTest, EmptyManifestIsInvalid) {
  const fs::path dir = ScratchDir("empty");
  WriteFileBytes((dir / "labels.csv").string(), "");
  CliOptions o = Toy();
  o.dataset_path = (dir / "labels.csv").string();
  EXPECT_EQ(Cli("evaluate", o).code, kExitInvalid);
}

TEST(CliTest, ExportTwiceWarns) {
  const fs::path dir = ScratchDir("export");
  CliOptions o = Toy();
  o.out_path = (dir / "c.eqw").string();
  ASSERT_EQ(Cli("export-conventional", o).code, kExitOk);
  CliOptions again = Toy();
  again.weights_path = o.out_path;
  again.out_path = (dir / "c2.eqw").string();
  const CliRun r = Cli("export-conventional", again);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(ReadFileBytes(o.out_path), ReadFileBytes(again.out_path));
}

}  // namespace
}  // namespace eqq
