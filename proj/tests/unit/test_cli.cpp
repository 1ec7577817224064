// Copyright 2026 The benign-rf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(BENIGN_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_path(const std::string& name) {
  return std::string(BENIGN_SOURCE_DIR) + "/configs/" + name;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("benign_cli_" + std::to_string(::getpid()) + name);
  std::ofstream(p) << body;
  return p;
}

TEST(Cli, Success) {
  const fs::path cfg = write_temp("ok.cfg", "n = 30\nd = 4\ns = 40\nm_test = 50\nm_eps = 4\n");
  EXPECT_EQ(run("run --config " + cfg.string()), 0);
  EXPECT_EQ(run("diagnose --config " + config_path("regime_b3.cfg")), 0);
  EXPECT_EQ(run("conclab relu_moments"), 0);
  EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, ContractErrors) {
  const fs::path bad = write_temp("bad.cfg", "n = 30\nd = 4\ns = 40\nwidth = 3\n");
  EXPECT_EQ(run("run --config " + bad.string()), 1);
  EXPECT_EQ(run("run --config " + config_path("baseline.cfg") + " --tol -1"), 1);
  EXPECT_EQ(run("conclab no_such_lemma"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST(Cli, IoErrors) {
  EXPECT_EQ(run("run --config /nonexistent/cfg"), 2);
  EXPECT_EQ(run("sweep --config " + config_path("descent.grid") + " --out /nonexistent_dir/x.csv"), 2);
}

TEST(Cli, SeedOverrideChangesOutput) {
  const fs::path cfg = write_temp("seed.cfg", "n = 30\nd = 4\ns = 40\nm_test = 50\nm_eps = 4\n");
  const fs::path a = write_temp("a.csv", ""), b = write_temp("b.csv", ""), c = write_temp("c.csv", "");
  ASSERT_EQ(run("run --config " + cfg.string() + " --seed 5 --out " + a.string()), 0);
  ASSERT_EQ(run("run --config " + cfg.string() + " --seed 5 --out " + b.string()), 0);
  ASSERT_EQ(run("run --config " + cfg.string() + " --seed 6 --out " + c.string()), 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
}

}  // namespace
