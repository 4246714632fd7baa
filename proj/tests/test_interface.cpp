#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "vanlat/counterexample.hpp"
#include "vanlat/json_io.hpp"

#include "test_util.hpp"

using namespace vanlat;
using namespace vanlat::testutil;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(VANLAT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp_file(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << content;
}

std::string data_path() { return std::string(VANLAT_DATA_DIR) + "/counterexample.json"; }

Json plane_doc() {
    IMat g(2, 2);
    g(0, 1) = 1;
    g(1, 0) = -1;
    BilinearLattice plane = make_lattice(Symmetry::alternating, std::move(g));
    Json doc;
    doc["lattice"] = json_of(plane);
    doc["seeds"] = Json::array({json_of(unit_vec(2, 0)), json_of(unit_vec(2, 1))});
    return doc;
}

}  // namespace

TEST_CASE("integers and rationals survive the JSON round trip") {
    Int big = (Int(1) << 100) + 17;
    Int neg = -big;
    REQUIRE(read_int(json_of(big), "x") == big);
    REQUIRE(read_int(json_of(neg), "x") == neg);
    REQUIRE(read_int(Json(42), "x") == 42);
    Rat q = make_rat(int_of(-7), (Int(1) << 80));
    REQUIRE(read_rat(json_of(q), "x") == q);
    REQUIRE(read_rat(Json(-3), "x") == Rat(-3));
    REQUIRE_THROWS_AS(read_int(Json("12a"), "x"), std::invalid_argument);
    REQUIRE_THROWS_AS(read_int(Json(1.5), "x"), std::invalid_argument);
    REQUIRE_THROWS_AS(read_ll(json_of(big), "x"), std::invalid_argument);
}

TEST_CASE("structured values survive the JSON round trip") {
    SplitMix64 rng(3);
    IMat m = random_imat(rng, 3, 4, -9, 9);
    REQUIRE(read_imat(json_of_mat(m), "m") == m);

    BilinearLattice l = hyperbolic_lattice(2);
    BilinearLattice back = read_lattice(json_of(l), "lattice");
    REQUIRE(back.gram == l.gram);
    REQUIRE(back.symmetry == l.symmetry);

    Presentation p{3, {FreeWord{{0, 2}}, FreeWord{{1, 1}, {2, -4}}}};
    Presentation pb = read_presentation(json_of(p), "p");
    REQUIRE(pb.generators == p.generators);
    REQUIRE(pb.relators == p.relators);

    Cocycle c;
    c.values = {random_qvec(rng, 3, -5, 5), random_qvec(rng, 3, -5, 5)};
    REQUIRE(read_cocycle(json_of(c), "c").values == c.values);

    FreeWord w{{0, 3}, {2, -1}};
    REQUIRE(read_word(json_of(w), "w") == w);
}

TEST_CASE("malformed documents are rejected with a field diagnostic") {
    Json bad_sym = json_of(hyperbolic_lattice(1));
    bad_sym["symmetry"] = "skew";
    REQUIRE_THROWS_WITH(read_lattice(bad_sym, "lattice"),
                        Catch::Matchers::ContainsSubstring("lattice.symmetry"));

    Json ragged = Json::array({Json::array({"1", "0"}), Json::array({"1"})});
    REQUIRE_THROWS_WITH(read_imat(ragged, "gram"), Catch::Matchers::ContainsSubstring("gram"));

    Json wrong_rank = json_of(hyperbolic_lattice(1));
    wrong_rank["rank"] = "5";
    REQUIRE_THROWS_WITH(read_lattice(wrong_rank, "lattice"),
                        Catch::Matchers::ContainsSubstring("rank"));

    Json bad_word = Json::array({Json::array({"0"})});
    REQUIRE_THROWS_AS(read_word(bad_word, "w"), std::invalid_argument);

    Json mismatched = json_of(hyperbolic_lattice(1));
    mismatched["symmetry"] = "symmetric";
    REQUIRE_THROWS_AS(read_lattice(mismatched, "lattice"), std::invalid_argument);
}

TEST_CASE("bounds strings parse with defaults for omitted keys") {
    Bounds d = parse_bounds("");
    REQUIRE(d.depth == 8);
    REQUIRE(d.size == 2048);
    Bounds b = parse_bounds("depth=3,size=10,exp=7,wordlen=2");
    REQUIRE(b.depth == 3);
    REQUIRE(b.size == 10);
    REQUIRE(b.exponent == 7);
    REQUIRE(b.wordlen == 2);
    Bounds s = parse_bounds("size=5");
    REQUIRE(s.size == 5);
    REQUIRE(s.depth == 8);
    REQUIRE_THROWS_AS(parse_bounds("size=0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_bounds("flux=3"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_bounds("size=x"), std::invalid_argument);
}

TEST_CASE("the shipped problem document matches the built-in example") {
    Json doc;
    std::ifstream f(data_path());
    REQUIRE(f.good());
    f >> doc;
    ProblemInput in = load_problem(doc);
    REQUIRE(in.rep.has_value());
    REQUIRE(in.cocycle.has_value());
    Representation builtin = counterexample_representation();
    REQUIRE(in.rep->images == builtin.images);
    REQUIRE(in.rep->presentation.relators == builtin.presentation.relators);
    REQUIRE(in.cocycle->values == counterexample_cocycle().values);
    CohomologySpaces sp = cocycle_space(*in.rep);
    REQUIRE(sp.z_dim() == 4);
    REQUIRE(sp.b_dim() == 2);
    REQUIRE(sp.h1_dim() == 2);
}

TEST_CASE("verify-paper exits zero and reports deterministically") {
    REQUIRE(run_cli("verify-paper") == 0);
    REQUIRE(run_cli("verify-paper --json tmp_iface_vp1.json") == 0);
    REQUIRE(run_cli("verify-paper --json tmp_iface_vp2.json") == 0);
    std::string a = slurp_file("tmp_iface_vp1.json");
    REQUIRE(a == slurp_file("tmp_iface_vp2.json"));
    Json j = Json::parse(a);
    REQUIRE(j["check"] == "counterexample");
    REQUIRE(j["status"] == "pass");
    REQUIRE(j["trials"] == std::to_string(41 * 41 + 7));
}

TEST_CASE("h1 reports the example dimensions and flags relator violations") {
    REQUIRE(run_cli("h1 --input " + data_path() + " --json tmp_iface_h1.json") == 0);
    Json j = Json::parse(slurp_file("tmp_iface_h1.json"));
    REQUIRE(j["dim_z1"] == "4");
    REQUIRE(j["dim_b1"] == "2");
    REQUIRE(j["dim_h1"] == "2");
    REQUIRE(j["cocycle_is_coboundary"] == false);

    Json bad;
    bad["presentation"] = Json{{"generators", "2"},
                               {"relators", Json::array({json_of(FreeWord{
                                                {0, 1}, {1, 1}, {0, -1}, {1, -1}})})}};
    QMat a = QMat::identity(2), b = QMat::identity(2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    bad["representation"] =
        Json{{"images", Json::array({json_of_mat(a), json_of_mat(b)})}};
    write_file("tmp_iface_bad.json", bad.dump());
    REQUIRE(run_cli("h1 --input tmp_iface_bad.json") == 3);
}

TEST_CASE("restrict confirms the vanishing restriction classes") {
    REQUIRE(run_cli("restrict --input " + data_path() + " --json tmp_iface_r.json") == 0);
    Json j = Json::parse(slurp_file("tmp_iface_r.json"));
    REQUIRE(j["status"] == "pass");
    REQUIRE(j["classes"].size() == 5);
    for (const Json& cls : j["classes"]) REQUIRE(cls["vanishes"] == true);
}

TEST_CASE("spsharp distinguishes membership levels over the CLI") {
    Json doc = plane_doc();
    IMat t(2, 2);
    t(0, 0) = 1;
    t(0, 1) = 1;
    t(1, 1) = 1;
    doc["element"] = json_of_mat(t);
    write_file("tmp_iface_sp1.json", doc.dump());
    REQUIRE(run_cli("spsharp --input tmp_iface_sp1.json") == 0);
    doc["level"] = "2";
    write_file("tmp_iface_sp2.json", doc.dump());
    REQUIRE(run_cli("spsharp --input tmp_iface_sp2.json") == 1);
}

TEST_CASE("vanishing and frame commands succeed on the hyperbolic plane") {
    write_file("tmp_iface_pl.json", plane_doc().dump());
    REQUIRE(run_cli("check-vanishing-lattice --input tmp_iface_pl.json --bounds size=60") == 0);
    REQUIRE(run_cli("frame --input tmp_iface_pl.json --bounds size=60 --json "
                    "tmp_iface_fr.json") == 0);
    Json j = Json::parse(slurp_file("tmp_iface_fr.json"));
    REQUIRE(j["status"] == "pass");
    REQUIRE(j["witnesses"].size() == 2);
}

TEST_CASE("certification commands map outcomes to exit codes") {
    Json odd;
    odd["lattice"] = json_of(make_lattice(Symmetry::symmetric, Int(2) * IMat::identity(2)));
    odd["seeds"] = Json::array({json_of(unit_vec(2, 0)), json_of(unit_vec(2, 1))});
    odd["cocycle"] = Json::array({Json::array({"0", "1"}), Json::array({"0", "0"})});
    write_file("tmp_iface_oddflag.json", odd.dump());
    REQUIRE(run_cli("certify-odd --input tmp_iface_oddflag.json") == 1);

    odd["cocycle"] = Json::array({Json::array({"2", "0"}), Json::array({"0", "0"})});
    write_file("tmp_iface_oddw.json", odd.dump());
    REQUIRE(run_cli("certify-odd --input tmp_iface_oddw.json --json tmp_iface_oddw_out.json") == 0);
    Json ow = Json::parse(slurp_file("tmp_iface_oddw_out.json"));
    REQUIRE(ow["outcome"] == "witness");
    REQUIRE(ow["witnesses"].size() == 1);

    Json even = plane_doc();
    BilinearLattice plane = read_lattice(even["lattice"], "lattice");
    std::vector<IVec> seeds = {unit_vec(2, 0), unit_vec(2, 1)};
    EvenInstance inst = make_even_instance(plane, seeds);
    Cocycle cb = coboundary(inst.rep, QVec{make_rat(int_of(1), int_of(2)), 2});
    even["cocycle"] = json_of(cb);
    write_file("tmp_iface_even.json", even.dump());
    REQUIRE(run_cli("certify-even --input tmp_iface_even.json --bounds size=60") == 0);
    REQUIRE(run_cli("certify-even --input tmp_iface_even.json --bounds size=60,exp=1") == 2);
}

TEST_CASE("random-experiment requires a seed and reports deterministically") {
    REQUIRE(run_cli("random-experiment") == 3);
    REQUIRE(run_cli("random-experiment --seed 7 --bounds size=60 --json tmp_iface_re1.json") == 0);
    REQUIRE(run_cli("random-experiment --seed 7 --bounds size=60 --json tmp_iface_re2.json") == 0);
    std::string a = slurp_file("tmp_iface_re1.json");
    REQUIRE(a == slurp_file("tmp_iface_re2.json"));
    Json j = Json::parse(a);
    REQUIRE(j["status"] == "pass");
    REQUIRE(j["trials"].size() == 12);
    for (const Json& t : j["trials"]) REQUIRE(t["verified"] == true);
}

TEST_CASE("input errors exit with status three") {
    REQUIRE(run_cli("h1") == 3);
    REQUIRE(run_cli("h1 --input does_not_exist.json") == 3);
    write_file("tmp_iface_npg.json", "{ not json");
    REQUIRE(run_cli("h1 --input tmp_iface_npg.json") == 3);
    REQUIRE(run_cli("no-such-command") == 3);
    write_file("tmp_iface_empty.json", "{}");
    REQUIRE(run_cli("certify-odd --input tmp_iface_empty.json") == 3);
}
