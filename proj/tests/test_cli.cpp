#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "starlim/cli.hpp"

using namespace starlim;

namespace {

std::filesystem::path tmp_dir() {
    static auto dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("starlim_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string put(const std::string& name, const std::string& content) {
    auto p = tmp_dir() / name;
    std::ofstream out(p);
    out << content;
    return p.string();
}

const std::string kGlimm2 = R"({"sequence": {"type": "O", "period": [[2,0,0]]}})";
const std::string kGlimm4 =
    R"({"sequence": {"type": "O", "prefix": [[4,0,0]], "period": [[4,0,0]]}})";
const std::string kGlimm6 = R"({"sequence": {"type": "O", "period": [[2,0,0],[3,0,0]]}})";
const std::string kPair = R"({"sequence": {"type": "A", "period": [[1,1,0]]}})";

}  // namespace

TEST_CASE("invariants prints the profile of a sequence or echoes a profile") {
    auto path = put("inv_seq.json",
                    R"({"sequence": {"type": "A", "prefix": [[2,1,0]], "period": [[2,0,0]]}})");
    std::ostringstream out;
    CHECK(cmd_invariants(path, out) == kExitOk);
    auto j = Json::parse(out.str());
    CHECK(j["type"] == "A");
    CHECK(j["density"] == "pure");
    CHECK(j["symmetry"] == "one-sided");
    CHECK(j["sigma"] == "1/3");
    CHECK(j["pi_s"] == "2^inf * 3");

    // a profile document comes back in the same wire form
    auto echo = put("inv_prof.json", R"({"profile": )" + j.dump() + "}");
    std::ostringstream out2;
    CHECK(cmd_invariants(echo, out2) == kExitOk);
    CHECK(Json::parse(out2.str()) == j);

    CHECK_THROWS_AS(cmd_invariants((tmp_dir() / "absent.json").string(), out), SchemaError);
    auto twin = put("inv_twin.json", R"({"sequence": {"type": "O", "period": [[2,0,0]]},
                                         "profile": {"type": "O"}})");
    CHECK_THROWS_AS(cmd_invariants(twin, out), SchemaError);
}

TEST_CASE("classify exit codes follow the verdict") {
    auto a = put("cls_a.json", kGlimm2);
    auto b = put("cls_b.json", kGlimm4);
    auto c = put("cls_c.json", kGlimm6);

    std::ostringstream out;
    CHECK(cmd_classify(a, b, false, out) == kExitOk);
    auto j = Json::parse(out.str());
    CHECK(j["isomorphic"] == true);
    CHECK(j["alpha"] == "1");

    std::ostringstream out2;
    CHECK(cmd_classify(a, c, false, out2) == kExitNegative);
    auto j2 = Json::parse(out2.str());
    CHECK(j2["isomorphic"] == false);
    CHECK(j2["failed"] == "A2");

    // opaque sigma symbols are undetermined until declared equal
    std::string s4 = R"({"profile": {"type": "A", "density": "dense", "pi_s": "2^inf",
        "delta": "1/2", "symmetry": "strongly-nonsymmetric",
        "sigma": {"opaque": "NAME"}, "pi_c": "3^inf"}})";
    auto p1 = put("cls_p1.json", s4);
    std::string s4b = s4;
    s4b.replace(s4b.find("NAME"), 4, "other");
    auto p2 = put("cls_p2.json", s4b);
    std::ostringstream out3, out4;
    CHECK(cmd_classify(p1, p2, false, out3) == kExitUndetermined);
    CHECK(Json::parse(out3.str())["isomorphic"] == "undetermined");
    CHECK(cmd_classify(p1, p2, true, out4) == kExitOk);

    // characteristic mismatch is a schema violation, mapped by the guard
    auto d = put("cls_d.json", R"({"sequence": {"type": "O", "period": [[2,0,0]], "char": 3}})");
    std::ostringstream err;
    int code = run_guarded([&] { return cmd_classify(a, d, false, out); }, err);
    CHECK(code == kExitSchema);
    CHECK(err.str().find("characteristic") != std::string::npos);
}

TEST_CASE("intertwine emits a certificate and verifies it on request") {
    auto a = put("zig_a.json", kPair);
    auto b = put("zig_b.json", kGlimm2);
    std::ostringstream out;
    CHECK(cmd_intertwine(a, b, 3, 10, true, out) == kExitOk);
    auto j = Json::parse(out.str());
    CHECK(j.contains("right_bridge"));
    CHECK_FALSE(j.contains("left_bridge"));
    CHECK(j["right_bridge"]["side_type"] == "O");
    CHECK(j["diagram"]["down"].size() == 3);
    CHECK(j["diagram"]["up"].size() == 3);
    CHECK(j["diagram"]["alpha"] == "1");
    CHECK(j["replay"]["checked"].get<int>() + j["replay"]["skipped"].get<int>() > 0);

    // a negative pair reports the verdict and exits 1
    auto c = put("zig_c.json", kGlimm6);
    std::ostringstream out2;
    CHECK(cmd_intertwine(b, c, 3, 10, false, out2) == kExitNegative);
    CHECK(Json::parse(out2.str())["failed"] == "A2");

    // profiles carry no presentation to intertwine
    auto p = put("zig_p.json", R"({"profile": {"type": "O", "density": "pure",
        "pi_s": "2^inf", "delta": "1"}})");
    CHECK_THROWS_AS(cmd_intertwine(p, b, 3, 10, false, out), SchemaError);
}

TEST_CASE("bratteli and k0 expose the diagram machinery") {
    auto a = put("br_a.json", kGlimm2);
    std::ostringstream dot;
    CHECK(cmd_bratteli(a, 2, "dot", dot) == kExitOk);
    CHECK(dot.str().find("L1V1 -- L2V1 [label=\"2\"]") != std::string::npos);

    std::ostringstream js;
    CHECK(cmd_bratteli(a, 2, "json", js) == kExitOk);
    CHECK(Json::parse(js.str())["shape"] == "S-unital");

    std::ostringstream hdr;
    CHECK(cmd_bratteli(a, 0, "dot", hdr) == kExitOk);
    CHECK(hdr.str().find("L1") == std::string::npos);

    std::ostringstream bad;
    CHECK_THROWS_AS(cmd_bratteli(a, 2, "svg", bad), SchemaError);

    auto pair = put("br_pair.json",
                    R"({"sequence": {"type": "A", "period": [[2,1,1]], "first_convention": false}})");
    std::ostringstream k0;
    CHECK(cmd_k0(pair, 1, k0) == kExitOk);
    auto j = Json::parse(k0.str());
    CHECK(j["rank"] == 3);
    CHECK(j["matrices"][0] == Json::parse(R"([["2","1","1"],["1","2","1"],["0","0","1"]])"));
    CHECK(j["order_units"][0] == Json::array({"4", "4", "1"}));
}

TEST_CASE("selftest runs the oracle suites deterministically") {
    std::ostringstream out;
    CHECK(cmd_selftest("2a", 8, out) == 0);
    CHECK(out.str().find("seed: 2a") == 0);
    CHECK(out.str().find("selftest: all suites passed") != std::string::npos);

    std::ostringstream out2;
    CHECK(cmd_selftest("2a", 8, out2) == 0);
    CHECK(out.str() == out2.str());

    CHECK_THROWS_AS(cmd_selftest("xyz", 8, out), SchemaError);
    CHECK_THROWS_AS(cmd_selftest("", 8, out), SchemaError);
    CHECK_THROWS_AS(cmd_selftest("2a", 4, out), SchemaError);
    CHECK(parse_seed_hex("DEADbeef") == 0xdeadbeefULL);
}

TEST_CASE("the guard maps exceptions to the exit-code contract") {
    std::ostringstream err;
    CHECK(run_guarded([] { return 7; }, err) == 7);
    CHECK(run_guarded([]() -> int { throw SchemaError("nope"); }, err) == kExitSchema);
    CHECK(run_guarded([]() -> int { throw DepthExceeded("deep"); }, err) == kExitUndetermined);
    CHECK(run_guarded([]() -> int { throw std::invalid_argument("bad"); }, err) == kExitSchema);
    CHECK(err.str().find("nope") != std::string::npos);
    CHECK(err.str().find("deep") != std::string::npos);
}

TEST_CASE("json documents round-trip through the parsers") {
    // sequence with big entries written as strings
    auto t = parse_sequence(Json::parse(
        R"({"type": "A", "prefix": [["2","1","0"]], "period": [[3,1,2]], "char": 5})"));
    CHECK(t.characteristic == 5);
    CHECK(t.prefix[0] == Triple{2, 1, 0});
    CHECK(parse_sequence(sequence_json(t)).period == t.period);

    // supernatural object form and text form agree
    auto s1 = parse_supernatural(Json::parse(R"({"finite": {"3": 2}, "infinite": [2]})"));
    auto s2 = parse_supernatural(Json("3^2 * 2^inf"));
    CHECK(s1 == s2);
    CHECK_THROWS_AS(parse_supernatural(Json::parse(R"({"finite": {"9": 1}})")), SchemaError);

    // profile constraints
    CHECK_THROWS_AS(parse_profile(Json::parse(
                        R"({"type": "A", "density": "pure", "pi_s": "2^inf", "delta": "1"})")),
                    SchemaError);
    CHECK_THROWS_AS(parse_profile(Json::parse(R"({"type": "O", "density": "sparse",
                        "pi_s": "2^inf", "delta": "1/2"})")),
                    SchemaError);
    CHECK_THROWS_AS(
        parse_profile(Json::parse(R"({"type": "A", "density": "dense", "pi_s": "2^inf",
            "delta": "1/2", "symmetry": "strongly-nonsymmetric", "sigma": "0", "pi_c": "3^inf"})")),
        SchemaError);

    // verdicts carry the pinned keys
    auto v = Verdict::yes(Rat(1, 2), Rat(3));
    auto jv = verdict_json(v);
    CHECK(jv["isomorphic"] == true);
    CHECK(jv["alpha"] == "1/2");
    CHECK(jv["beta"] == "3");
    auto jn = verdict_json(Verdict::no(Condition::CompanionClass));
    CHECK(jn["isomorphic"] == false);
    CHECK(jn["failed"] == "B2");
}
