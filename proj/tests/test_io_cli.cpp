#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hochkit/corpus.hpp"
#include "hochkit/io.hpp"

using namespace hochkit;

namespace {

Field<Rational> K;

std::string data_path(const std::string& name) { return std::string(HOCHKIT_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(HOCHKIT_BIN) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("category files round-trip bit-exactly") {
  std::vector<FinLinCat<Rational>> cats = {
      corpus::ground_field_cat(K),     corpus::dual_numbers_cat(K),
      corpus::upper_triangular_cat(K), corpus::a2_incidence(K),
      corpus::pseudocircle_incidence(K), corpus::small_dg_cat(K),
      corpus::contractible_object_cat(K),
      arrow_category(diagonal_bimodule(corpus::a2_incidence(K)))};
  for (auto& c : cats) {
    Json j1 = write_category(c);
    auto c2 = read_category(j1, K);
    Json j2 = write_category(c2);
    CHECK(json_text(j1) == json_text(j2));
    CHECK(validate_category(c2).ok() == validate_category(c).ok());
  }
}

TEST_CASE("prime-field category files round-trip") {
  Field<Fp> k5(5);
  auto c = corpus::dual_numbers_cat(k5);
  Json j1 = write_category(c);
  CHECK(j1["scalars"] == "fp:5");
  auto c2 = read_category(j1, k5);
  CHECK(json_text(write_category(c2)) == json_text(j1));
  CHECK_THROWS_AS(read_category(j1, Field<Fp>(7)), ValidationError);
  CHECK_THROWS_AS((read_category<Rational>(j1, K)), ValidationError);
}

TEST_CASE("bimodule files round-trip") {
  auto a2 = corpus::a2_incidence(K);
  auto m = diagonal_bimodule(a2);
  Json j1 = write_bimodule(m);
  auto m2 = read_bimodule(j1, K);
  CHECK(validate_bimodule(m2).ok());
  CHECK(json_text(write_bimodule(m2)) == json_text(j1));
  // the read-back coefficients feed the engine identically
  auto h1 = hochschild_complex(a2, m, HochschildOptions{2, true, false, 200000});
  auto h2 = hochschild_complex(a2, m2, HochschildOptions{2, true, false, 200000});
  for (int n = 0; n <= 3; ++n) CHECK(h1.dim(n) == h2.dim(n));
}

TEST_CASE("bundled data files parse and validate") {
  auto a2 = read_category(load_json(data_path("a2.json")), K);
  CHECK(validate_category(a2).ok());
  CHECK(a2.censoring.has_value());
  auto broken = read_category(load_json(data_path("a2_broken.json")), K);
  auto rep = validate_category(broken);
  CHECK_FALSE(rep.ok());
  bool names_triple = false;
  for (auto& v : rep.items)
    if (v.detail.find("p0") != std::string::npos) names_triple = true;
  CHECK(names_triple);

  auto bundle = read_space(load_json(data_path("pseudocircle.json")), K, std::string(HOCHKIT_DATA_DIR));
  CHECK(bundle.space.opens.size() == 7);
  CHECK(bundle.basis.cat.total_dim() == 8);

  auto keps = read_space(load_json(data_path("two_chain_keps.json")), K, std::string(HOCHKIT_DATA_DIR));
  CHECK(keps.has_presheaf);
  CHECK(validate_presheaf(keps.basis.presheaf).ok());
  // matches the in-code corpus presheaf
  auto c1 = incidence_category(corpus::keps_two_chain(K));
  CHECK(keps.basis.cat.total_dim() == c1.total_dim());
}

TEST_CASE("cochain files bind to the complex coordinates") {
  auto c = read_category(load_json(data_path("dual_numbers.json")), K);
  auto H = hochschild_complex(c, diagonal_bimodule(c), HochschildOptions{3, true, false, 200000});
  auto phi = read_cochain(load_json(data_path("deform_xsq.json")), H);
  CHECK(phi.degree == 2);
  // evaluates to 1 on (e, e)
  bool found = false;
  for (auto& run : H.runs[2 - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != 2) continue;
    const auto& T = blk.tensors[run.tensor];
    for (size_t km = 0; km < run.ms.size(); ++km) {
      Rational v = phi.coords(run.offset + static_cast<Index>(km));
      if (T[0] == 1 && T[1] == 1 && run.ms[km] == 0) {
        CHECK(v == 1);
        found = true;
      } else {
        CHECK(is_zero(v));
      }
    }
  }
  CHECK(found);
}

TEST_CASE("cli: hh, compare, mv, gs-compare, deform, validate exit codes") {
  CHECK(run_cli("hh " + data_path("dual_numbers.json") + " --window 3") == 0);
  CHECK(run_cli("hh " + data_path("a2.json") + " --normalized") == 0);
  CHECK(run_cli("compare " + data_path("a2.json") + " --opposite") == 0);
  CHECK(run_cli("compare " + data_path("a2.json") + " " + data_path("dual_numbers.json")) == 3);
  CHECK(run_cli("mv " + data_path("pseudocircle_cover.json") + " --window 2") == 0);
  CHECK(run_cli("gs-compare " + data_path("two_chain_keps.json") + " --window 2") == 0);
  CHECK(run_cli("deform " + data_path("dual_numbers.json") + " --cochain " +
                data_path("deform_xsq.json")) == 0);
  CHECK(run_cli("deform " + data_path("dual_numbers.json") + " --enumerate") == 0);
  CHECK(run_cli("validate " + data_path("a2.json")) == 0);
  CHECK(run_cli("validate " + data_path("a2_broken.json")) == 2);
  CHECK(run_cli("hh " + data_path("dual_numbers.json") + " --scalars fp:5") == 2);
  CHECK(run_cli("hh " + data_path("dual_numbers.json") + " --window 12") == 2);
  CHECK(run_cli("hh " + data_path("dual_numbers.json") + " --window 3 --max-dim 4") == 4);
  CHECK(run_cli("hh no_such_file.json") == 2);
  CHECK(run_cli("suite") == 0);
}

TEST_CASE("cli: reports are byte-identical across runs") {
  std::string out1 = "/tmp/hochkit_rep1.json";
  std::string out2 = "/tmp/hochkit_rep2.json";
  CHECK(run_cli("hh " + data_path("a2.json") + " --window 3 --out " + out1) == 0);
  CHECK(run_cli("hh " + data_path("a2.json") + " --window 3 --out " + out2) == 0);
  std::string r1 = slurp(out1), r2 = slurp(out2);
  CHECK_FALSE(r1.empty());
  CHECK(r1 == r2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  CHECK(run_cli("mv " + data_path("pseudocircle_cover.json") + " --out " + out1) == 0);
  CHECK(run_cli("mv " + data_path("pseudocircle_cover.json") + " --out " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("cli: prime-field run end to end") {
  // write an fp:5 category file and compute over F_5
  Field<Fp> k5(5);
  auto c = corpus::dual_numbers_cat(k5);
  std::string path = "/tmp/hochkit_fp5.json";
  save_text(path, json_text(write_category(c)));
  CHECK(run_cli("hh " + path + " --window 2 --scalars fp:5") == 0);
  CHECK(run_cli("hh " + path + " --window 2") == 0);
  std::remove(path.c_str());
}
