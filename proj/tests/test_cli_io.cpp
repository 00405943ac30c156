#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "kcube/io.hpp"
#include "kcube/construction.hpp"

using namespace kcube;

namespace {

std::string tmp_path(const std::string& name) {
  return "/tmp/kcube_test_" + name;
}

int run_cli(const std::string& args) {
  std::string cmd = "./kcube " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("instance json round trip") {
  InstanceFile f;
  f.shape = CubeShape{3, 4};
  f.matching = make_matching(f.shape, {make_edge(f.shape, Vertex{0, 0, 0}, Vertex{1, 0, 0})});
  f.endpoints = {Vertex{1, 2, 3}, Vertex{2, 2, 3}};
  f.lemma = "lemma11";
  auto j = to_json(f);
  InstanceFile g = instance_from_json(j);
  CHECK(g.shape == f.shape);
  CHECK(g.matching == f.matching);
  CHECK(g.endpoints == f.endpoints);
  CHECK(g.lemma == f.lemma);
}

TEST_CASE("malformed instances are rejected") {
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"n":3,"k":4})")), InputError);
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(
                      R"({"schema":"kcube-ham/1","n":3})")),
                  InputError);
  CHECK_THROWS_AS(
      instance_from_json(nlohmann::json::parse(
          R"({"schema":"kcube-ham/1","n":2,"k":4,"matching":[[[0,0],[2,0]]]})")),
      InputError);
}

TEST_CASE("certificate json round trip") {
  CertificateFile c;
  c.kind = "cycle";
  c.instance.shape = CubeShape{2, 4};
  c.sequences = {{Vertex{0, 0}, Vertex{1, 0}, Vertex{1, 1}, Vertex{0, 1}}};
  c.verified = true;
  auto j = to_json(c);
  CertificateFile d = certificate_from_json(j);
  CHECK(d.kind == "cycle");
  CHECK(d.sequences == c.sequences);
  CHECK(d.verified);
}

TEST_CASE("dot rendering mentions clusters") {
  CubeShape s{2, 4};
  std::vector<Vertex> cyc = {Vertex{0, 0}, Vertex{1, 0}, Vertex{1, 1}, Vertex{0, 1}};
  std::string dot = cycle_to_dot(s, cyc);
  CHECK(dot.find("cluster_0") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
}

TEST_CASE("cli construct, verify, tamper, exit codes") {
  // empty matching at n=5 (bound 4n-20 = 0)
  {
    std::ofstream f(tmp_path("empty.json"));
    f << "[]";
  }
  REQUIRE(run_cli("construct --n 5 --k 4 --matching " + tmp_path("empty.json") +
                  " --out " + tmp_path("cert.json")) == 0);

  // verify the emitted certificate
  CHECK(run_cli("verify --n 5 --k 4 --matching " + tmp_path("empty.json") +
                " --certificate " + tmp_path("cert.json")) == 0);

  // tamper: swap two vertices
  {
    auto j = read_json_file(tmp_path("cert.json"));
    std::swap(j["sequences"][0][3], j["sequences"][0][9]);
    write_json_file(tmp_path("tampered.json"), j);
  }
  CHECK(run_cli("verify --n 5 --k 4 --matching " + tmp_path("empty.json") +
                " --certificate " + tmp_path("tampered.json")) != 0);

  // |M| = 1 at n = 5 violates the bound: exit 2
  {
    std::ofstream f(tmp_path("size1.json"));
    f << R"([[[0,0,0,0,0],[1,0,0,0,0]]])";
  }
  CHECK(run_cli("construct --n 5 --k 4 --matching " + tmp_path("size1.json")) == 2);

  // malformed json: exit 4
  {
    std::ofstream f(tmp_path("bad.json"));
    f << "{nope";
  }
  CHECK(run_cli("construct --n 5 --k 4 --matching " + tmp_path("bad.json")) == 4);
}

TEST_CASE("cli construct with a lemma selector") {
  {
    nlohmann::json j;
    j["schema"] = kSchemaTag;
    j["n"] = 4;
    j["k"] = 4;
    j["matching"] = nlohmann::json::array();
    j["endpoints"] = {{0, 0, 0, 0}, {0, 0, 0, 1}};
    write_json_file(tmp_path("l11.json"), j);
  }
  CHECK(run_cli("construct --n 4 --k 4 --matching " + tmp_path("l11.json") +
                " --lemma lemma11 --out " + tmp_path("l11cert.json")) == 0);
  auto cj = read_json_file(tmp_path("l11cert.json"));
  CHECK(cj["kind"] == "m-path");
  CHECK(cj["verified"] == true);
}

TEST_CASE("cli enumerate counts") {
  CHECK(run_cli("enumerate --n 1 --k 4 --count") == 0);
  // frozen regression count for the 9-vertex torus
  int rc = std::system("./kcube enumerate --n 2 --k 3 --count > /tmp/kcube_test_q23.txt 2>&1");
  REQUIRE(WIFEXITED(rc));
  REQUIRE(WEXITSTATUS(rc) == 0);
  std::ifstream in("/tmp/kcube_test_q23.txt");
  std::string line;
  std::getline(in, line);
  CHECK(line == "solutions: 48");
  // oversize region refused: exit 3
  CHECK(run_cli("enumerate --n 3 --k 4 --count") == 3);
}

TEST_CASE("cli byte-identical outputs at seed 0") {
  {
    std::ofstream f(tmp_path("empty.json"));
    f << "[]";
  }
  REQUIRE(run_cli("construct --n 5 --k 4 --matching " + tmp_path("empty.json") +
                  " --seed 0 --out " + tmp_path("c1.json")) == 0);
  REQUIRE(run_cli("construct --n 5 --k 4 --matching " + tmp_path("empty.json") +
                  " --seed 0 --out " + tmp_path("c2.json")) == 0);
  std::ifstream a(tmp_path("c1.json")), b(tmp_path("c2.json"));
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("theorem3 via cli at n=6 with dot output") {
  {
    std::ofstream f(tmp_path("m4.json"));
    f << R"([[[0,0,0,0,0,0],[0,1,0,0,0,0]],
             [[1,2,3,0,1,2],[1,2,3,0,1,3]],
             [[2,2,2,2,2,2],[2,2,2,3,2,2]],
             [[3,0,1,1,0,3],[3,0,1,1,1,3]]])";
  }
  CHECK(run_cli("construct --n 6 --k 4 --matching " + tmp_path("m4.json") +
                " --policy relaxed --base-n 5 --out " + tmp_path("m4cert.json") +
                " --trace " + tmp_path("m4trace.txt")) == 0);
  CHECK(run_cli("verify --n 6 --k 4 --matching " + tmp_path("m4.json") +
                " --certificate " + tmp_path("m4cert.json")) == 0);
  CHECK(run_cli("construct --n 6 --k 4 --matching " + tmp_path("m4.json") +
                " --format dot --out " + tmp_path("m4.dot")) == 0);
  std::ifstream dot(tmp_path("m4.dot"));
  std::string d((std::istreambuf_iterator<char>(dot)), std::istreambuf_iterator<char>());
  CHECK(d.find("graph hamcycle") != std::string::npos);
}
