// Copyright 2026 The Ambient Corpus Authors
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

#include <doctest.h>

#include "ambient/label_store.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "process.hpp"

// After Eigen: <httplib.h> pulls in <resolv.h>, whose `_res` macro collides
// with Eigen parameter names.
#include <httplib.h>
#include <json.hpp>

using testutil::run;

namespace {
const std::string kCli = AMBIENT_CLI;
}

TEST_CASE("version and usage errors") {
  const auto v = run({kCli, "--version"});
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("0.3.0") != std::string::npos);
  CHECK(run({kCli}).exit_code != 0);
  CHECK(run({kCli, "ingest", "--anchor", "solar"}).exit_code != 0);
}

TEST_CASE("ingest, measure, train, classify and evaluate from the command line") {
  testutil::TempDir dir;
  const auto corpus = testutil::data_path("corpus_fixture.jsonl");
  const auto lexicon = testutil::data_path("lexicon_fixture.tsv");
  const auto labels = dir.file("labels.jsonl");
  testutil::spit(labels, testutil::slurp(testutil::data_path("labels_fixture.jsonl")));

  auto r = run({kCli, "ingest", "--corpus", corpus, "--anchor", "solar", "--lang", "en", "--gazetteer",
                testutil::data_path("gazetteer.tsv"), "--epoch", "2020-01-01", "--out", dir.file("ingest")});
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("matched 14") != std::string::npos);

  r = run({kCli, "ingest", "--corpus", corpus, "--anchor", "two words", "--epoch", "2020-01-01", "--out",
           dir.file("x")});
  CHECK(r.exit_code == 2);
  r = run({kCli, "ingest", "--corpus", corpus, "--anchor", "solar", "--epoch", "someday", "--out", dir.file("x")});
  CHECK(r.exit_code == 2);

  r = run({kCli, "sample", "--corpus", dir.file("ingest"), "-n", "5", "--seed", "3"});
  CHECK(r.exit_code == 0);
  CHECK(testutil::lines_of(r.output).size() == 5);
  CHECK(run({kCli, "sample", "--corpus", dir.file("ingest"), "-n", "500", "--seed", "3"}).exit_code == 1);

  testutil::write_fixture_embeddings(dir.file("emb.bin"));
  r = run({kCli, "train", "--embeddings", dir.file("emb.bin"), "--labels", labels, "--seed", "7", "--epochs", "200",
           "--model-out", dir.file("model.json")});
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("f1") != std::string::npos);

  const auto merged = dir.file("final.jsonl");
  testutil::spit(merged, testutil::slurp(labels));
  r = run({kCli, "classify", "--embeddings", dir.file("emb.bin"), "--model", dir.file("model.json"), "--labels-out",
           merged, "--at", "2021-01-01"});
  REQUIRE(r.exit_code == 0);
  const auto store = ambient::LabelStore::load(merged);
  CHECK(store.get("s04")->source == ambient::LabelSource::Human);
  CHECK(store.get("s19")->at == 1609459200);

  r = run({kCli, "evaluate", "--pred", merged, "--truth", labels});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("f1        1") != std::string::npos);

  r = run({kCli, "sentiment-series", "--corpus", dir.file("ingest"), "--labels", merged, "--lexicon", lexicon, "--out",
           dir.file("series.jsonl"), "--plot", dir.file("series.svg")});
  CHECK(r.exit_code == 0);
  CHECK(testutil::slurp(dir.file("series.svg")).find("<svg") != std::string::npos);
  r = run({kCli, "sentiment-series", "--corpus", dir.file("ingest"), "--labels", labels, "--lexicon", lexicon, "--out",
           dir.file("series2.jsonl")});
  CHECK(r.exit_code == 2);  // s19 and s20 have no label

  r = run({kCli, "wordshift", "--corpus", dir.file("ingest"), "--labels", merged, "--lexicon", lexicon, "--top", "5",
           "--out", dir.file("shift.jsonl"), "--plot", dir.file("shift.svg")});
  CHECK(r.exit_code == 0);
  CHECK(testutil::lines_of(testutil::slurp(dir.file("shift.jsonl"))).size() == 6);
  r = run({kCli, "wordshift", "--lexicon", lexicon, "--out", dir.file("s.jsonl")});
  CHECK(r.exit_code == 2);
  r = run({kCli, "wordshift", "--corpus", dir.file("ingest"), "--labels", merged, "--lexicon", lexicon, "--lens",
           "0:10", "--out", dir.file("s.jsonl")});
  CHECK(r.exit_code == 1);

  r = run({kCli, "rtd", "--corpus", dir.file("ingest"), "--labels", merged, "--out", dir.file("rtd")});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("divergence 0.") != std::string::npos);
}

TEST_CASE("serve answers on an ephemeral port and holds the store lock") {
  testutil::TempDir dir;
  auto r = run({kCli, "ingest", "--corpus", testutil::data_path("corpus_fixture.jsonl"), "--anchor", "solar",
                "--epoch", "2020-01-01", "--out", dir.file("ingest")});
  REQUIRE(r.exit_code == 0);
  const auto labels = dir.file("labels.jsonl");
  testutil::Child server({kCli, "serve", "--corpus", dir.file("ingest"), "--labels", labels, "--bind",
                          "127.0.0.1:0", "--seed", "1"});
  const int port = testutil::port_from_banner(server.read_line());
  httplib::Client cli("127.0.0.1", port);
  auto next = cli.Get("/api/next");
  REQUIRE(next);
  const std::string id = nlohmann::json::parse(next->body)["id"];
  auto post = cli.Post("/api/label", nlohmann::json{{"id", id}, {"label", "NR"}}.dump(), "application/json");
  REQUIRE(post);
  CHECK(post->status == 200);

  CHECK(run({kCli, "serve", "--corpus", dir.file("ingest"), "--labels", labels, "--bind", "127.0.0.1:0"}).exit_code ==
        2);
  CHECK(run({kCli, "sentiment-series", "--corpus", dir.file("ingest"), "--labels", labels, "--lexicon",
             testutil::data_path("lexicon_fixture.tsv"), "--out", dir.file("o.jsonl")})
            .exit_code == 2);

  server.kill(SIGTERM);
  const int status = server.wait();
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(ambient::LabelStore::load(labels).label_of(id) == ambient::Label::NR);
}

TEST_CASE("run prints each stage") {
  testutil::TempDir dir;
  const auto config = testutil::write_fixture_config(dir);
  auto r = run({kCli, "run", "--config", config});
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("measure\n") != std::string::npos);
  r = run({kCli, "run", "--config", config});
  CHECK(r.output.find("measure (cached)") != std::string::npos);
}
