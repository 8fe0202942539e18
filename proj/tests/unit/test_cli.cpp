#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include <cli.hpp>

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = blochkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct Golden {
    const char *name;
    std::vector<std::string> args;
};

const std::vector<Golden> &goldens()
{
    static const std::vector<Golden> cases = {
        {"cohom_r32", {"cohom", "--N", "3", "--m", "2", "--expect-zero"}},
        {"cohom_dual_ab", {"cohom", "--N", "2", "--param", "a", "--invertible", "b", "--nmax", "2"}},
        {"cohom_jacobian",
         {"cohom", "--N", "6", "--m", "2", "--ideal", "4*t1^3+2*t1*t2^3", "--ideal", "3*t1^2*t2^2+5*t2^4"}},
        {"bloch_example", {"bloch", "--N", "2", "--invertible", "a", "--invertible", "b", "--symbol", "{1+a*b*t, b}"}},
        {"bloch_exp", {"bloch", "--N", "3", "--invertible", "b", "--symbol", "{exp(t*b), b}", "--slot", "last"}},
        {"homotopy_r5", {"verify-homotopy", "--N", "5", "--param", "a", "--nmax", "2"}},
        {"steinberg_2t", {"verify-steinberg", "--N", "3", "--a", "2", "--x", "t"}},
        {"steinberg_random", {"verify-steinberg", "--N", "4", "--m", "2", "--random", "6", "--seed", "5"}},
        {"key_identity_11", {"verify-key-identity", "--i", "1", "--j", "1"}},
        {"key_identity_12", {"verify-key-identity", "--i", "1", "--j", "2"}},
        {"filtration_2_11", {"verify-filtration", "--p", "2", "--i", "1", "--j", "1"}},
        {"sigma_3", {"verify-sigma", "--N", "3"}},
        {"sequence_r4", {"verify-sequence", "--N", "4", "--J", "power:3", "--I", "full"}},
        {"singular_gk", {"singular", "--poly", "t1^4+t1^2*t2^3+t2^5"}},
        {"singular_cusp", {"singular", "--poly", "t1^2+t2^3"}},
    };
    return cases;
}

std::filesystem::path golden_path(const char *name)
{
    return std::filesystem::path(BLOCHKIT_GOLDEN_DIR) / (std::string(name) + ".json");
}

} // namespace

TEST_CASE("exit codes")
{
    CHECK(run({"verify-key-identity", "--i", "1", "--j", "1"}).code == 0);
    CHECK(run({"cohom", "--N", "3", "--m", "2", "--expect-zero"}).code == 0);
    // The jacobian quotient has H^0 of dimension 1.
    CHECK(run({"cohom", "--N", "6", "--m", "2", "--ideal", "4*t1^3+2*t1*t2^3", "--ideal", "3*t1^2*t2^2+5*t2^4",
               "--expect-zero"})
              .code
          == 1);
    CHECK(run({"verify-filtration", "--p", "3", "--i", "1", "--j", "2"}).code == 0);
    // Below the bound the class is expected to be nonzero.
    const auto strict = run({"verify-filtration", "--p", "3", "--i", "1", "--j", "1"});
    CHECK(strict.code == 0);
    CHECK(nlohmann::json::parse(strict.out).at("result").at("expected") == "nonzero");

    for (const std::vector<std::string> &bad :
         {std::vector<std::string>{}, {"bogus"}, {"cohom", "--N", "x"}, {"verify-key-identity", "--i", "0", "--j", "1"},
          {"cohom", "--N", "4", "--ideal", "t1^2"}, {"bloch", "--N", "3", "--symbol", "{t}"},
          {"cohom", "--N", "3", "--rel", "power:9"},
          {"cohom", "--algebra", "/nonexistent/spec.json"}}) {
        const std::string label = bad.empty() ? std::string("<none>") : bad[0];
        INFO(label);
        const auto o = run(bad);
        CHECK(o.code == 2);
        CHECK_FALSE(o.err.empty());
    }
}

TEST_CASE("reports are valid JSON with the common fields")
{
    const auto o = run({"singular", "--poly", "t1^4+t1^2*t2^3+t2^5"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j.at("command").at(0) == "singular");
    CHECK(j.at("ok") == true);
    CHECK(j.contains("timing_seconds"));
    CHECK(j.at("result").at("mu") == 12);
    CHECK(j.at("result").at("tau") == 11);
    CHECK(j.at("result").at("h_dim") == 1);

    const auto quiet = run({"singular", "--poly", "t^3", "--no-timing"});
    CHECK_FALSE(nlohmann::json::parse(quiet.out).contains("timing_seconds"));
}

TEST_CASE("summary goes to the error stream")
{
    const auto o = run({"verify-key-identity", "--i", "1", "--j", "1", "--summary", "--no-timing"});
    CHECK(o.code == 0);
    CHECK_FALSE(o.err.empty());
    CHECK(nlohmann::json::parse(o.out).at("ok") == true);
}

TEST_CASE("algebra files")
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto spec = dir / "blochkit_cli_spec.json";
    std::ofstream(spec) << R"({"nilpotents": 2, "bound": 3, "params": [{"name": "a", "invertible": false}]})";
    const auto o = run({"cohom", "--algebra", spec.string(), "--expect-zero", "--no-timing"});
    CHECK(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j.at("algebra").at("ideal").size() == 4);
    // Flags override the file.
    const auto o4 = run({"cohom", "--algebra", spec.string(), "--N", "4", "--no-timing"});
    CHECK(nlohmann::json::parse(o4.out).at("algebra").at("bound") == 4);
    std::filesystem::remove(spec);
}

TEST_CASE("runs are deterministic")
{
    for (const auto &g : goldens()) {
        auto args = g.args;
        args.push_back("--no-timing");
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("golden reports")
{
    const bool update = std::getenv("BLOCHKIT_UPDATE_GOLDEN") != nullptr;
    for (const auto &g : goldens()) {
        INFO(g.name);
        auto args = g.args;
        args.push_back("--no-timing");
        const Outcome o = run(args);
        CHECK(o.code == 0);
        if (update) {
            std::ofstream(golden_path(g.name)) << o.out;
            continue;
        }
        std::ifstream in(golden_path(g.name));
        REQUIRE(in.good());
        std::stringstream expected;
        expected << in.rdbuf();
        CHECK(o.out == expected.str());
    }
}
