#include <coha/coha.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace coha;
namespace fs = std::filesystem;

namespace
{

struct Result {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("coha_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result run(const std::string &args, const std::string &env = "")
{
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = env + " " + std::string(COHA_CLI) + " " + args + " 2>" + err.string();
    Result r;
    FILE *p = ::popen(cmd.c_str(), "r");
    if (!p) {
        return r;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, n);
    }
    const int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

std::string quiver(const std::string &name)
{
    return std::string(COHA_DATA) + "/quivers/" + name + ".json";
}

fs::path write(const std::string &name, const std::string &text)
{
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::shared_ptr<const Quiver> load(const std::string &name)
{
    return std::make_shared<const Quiver>(parse_quiver(slurp(quiver(name))).quiver);
}

} // namespace

TEST(Cli, DtSeriesMatchesGolden)
{
    const Result r = run("dt-series --quiver " + quiver("q0") + " --truncate 4");
    ASSERT_EQ(r.code, 0) << r.err;
    auto q = load("q0");
    EXPECT_EQ(parse_series(r.out, q, 4), parse_series(slurp(std::string(COHA_TESTDATA) + "/q0_dt_series_n4.json"), q, 4));
}

TEST(Cli, OutputIsDeterministic)
{
    const std::string args = "dt-series --quiver " + quiver("a2") + " --truncate 4";
    const Result a = run(args), b = run(args, "COHA_THREADS=1");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const fs::path out = scratch() / "a2.json";
    ASSERT_EQ(run(args + " --out " + out.string()).code, 0);
    EXPECT_EQ(slurp(out), a.out);
}

TEST(Cli, FactorizePentagon)
{
    const Result r = run("factorize --quiver " + quiver("a2") + " --truncate 6 --charge \"1=1,1;2=-1,1\"");
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    ASSERT_EQ(doc["factors"].size(), 3u);
    EXPECT_EQ(doc["factors"][0]["ray"], json::array({0, 1}));
    EXPECT_EQ(doc["factors"][1]["ray"], json::array({1, 1}));
    EXPECT_EQ(doc["factors"][2]["ray"], json::array({1, 0}));
    EXPECT_TRUE(doc["verdict"]["residual_one"].get<bool>());
    EXPECT_TRUE(doc["verdict"]["laurent_ok"].get<bool>());

    // The emitted factors multiply back to the DT-series.
    auto q = load("a2");
    TorusSeries prod = TorusSeries::one(q, Basis::EHAT, 6);
    for (const auto &f : doc["factors"]) {
        prod = prod * ingest_series(f["series"], q, 6);
    }
    EXPECT_EQ(prod, dt_series_zero_potential(q, 6));
}

TEST(Cli, FactorizeIngestedSeries)
{
    auto q = load("a2");
    const fs::path s = write("a2_series.json", series_to_json(dt_series_zero_potential(q, 5)).dump());
    const Result r = run("factorize --quiver " + quiver("a2") + " --series " + s.string() + " --charge \"1=-1,1;2=1,1\"");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["factors"].size(), 2u);
    EXPECT_EQ(run("factorize --quiver " + quiver("a2") + " --series " + s.string() +
                  " --truncate 4 --charge \"1=-1,1;2=1,1\"")
                  .code,
              2);
}

TEST(Cli, NonGenericChargeIsRejected)
{
    const Result r = run("factorize --quiver " + quiver("a2") + " --truncate 4 --charge \"1=0,1;2=0,2\"");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("non-generic central charge"), std::string::npos) << r.err;
    EXPECT_EQ(run("factorize --quiver " + quiver("a2") + " --truncate 4 --charge \"1=0,1\"").code, 2);
    EXPECT_EQ(run("factorize --quiver " + quiver("a2") + " --truncate 4 --charge \"1=0,1;2=1,-1\"").code, 2);
    EXPECT_EQ(run("factorize --quiver " + quiver("a2") + " --truncate 4 --charge \"1=0,1;3=1,1\"").code, 2);
}

TEST(Cli, InvariantsCertificates)
{
    const Result r = run("invariants --quiver " + quiver("kronecker") + " --truncate 4 --charge \"1=-1,1;2=1,1\"");
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_TRUE(doc["verdict"]["laurent_ok"].get<bool>());
    for (const auto &ray : doc["rays"]) {
        EXPECT_TRUE(ray["admissible"].get<bool>());
        const AdmissibleCertificate c = certificate_from_json(ray["certificate"], 1);
        EXPECT_FALSE(c.f.empty());
    }
}

TEST(Cli, MacMahonSeriesNeedsDocument)
{
    EXPECT_EQ(run("dt-series --quiver " + quiver("q3_macmahon") + " --truncate 3").code, 2);
    const Result r = run("invariants --quiver " + quiver("q3_macmahon") + " --series " + COHA_TESTDATA +
                         "/macmahon_q3.json --charge \"1=0,1\"");
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, CohaProduct)
{
    const fs::path f1 = write("f1.json", R"({"gamma":[1],"terms":[[[0],"1"]]})");
    const fs::path f2 = write("f2.json", R"({"gamma":[1],"terms":[[[1],"1"]]})");
    const Result r = run("coha-product --quiver " + quiver("q0") + " --f1 " + f1.string() + " --f2 " + f2.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const SymPoly got = sympoly_from_json(json::parse(r.out), 1);
    const Quiver q0 = Quiver::loops(0);
    const CohaElement want = shuffle_product(q0, CohaElement(SymPoly::constant({1}, 1)),
                                             CohaElement(SymPoly::monomial_symmetric({1}, {1})));
    EXPECT_EQ(got, want.poly());

    const Result t = run("coha-product --twisted --quiver " + quiver("a2") + " --f1 " +
                         write("x.json", R"({"gamma":[1,0],"terms":[[[0],"1"]]})").string() + " --f2 " +
                         write("y.json", R"({"gamma":[0,1],"terms":[[[0],"1"]]})").string());
    EXPECT_EQ(t.code, 2);
    EXPECT_EQ(run("coha-product --quiver " + quiver("q0") + " --f1 " + f1.string() + " --f2 " +
                  write("bad.json", R"({"gamma":[1],"terms":[[[1,1],"1"]]})").string())
                  .code,
              2);
}

TEST(Cli, Mutate)
{
    const Result r = run("mutate --quiver " + quiver("a2") + " --vertex 2");
    ASSERT_EQ(r.code, 0) << r.err;
    const QuiverDocument d = parse_quiver(r.out);
    EXPECT_TRUE(d.quiver.has_arrow("a*"));
    EXPECT_EQ(d.quiver.arrow_count(0, 1), 1);
    EXPECT_TRUE(d.potential.is_zero());

    const Result t = run("mutate --quiver " + quiver("triangle") + " --vertex 1");
    ASSERT_EQ(t.code, 0) << t.err;
    const QuiverDocument dt = parse_quiver(t.out);
    EXPECT_EQ(dt.quiver.matrix(), (std::vector<std::vector<long>>{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}));
    EXPECT_FALSE(dt.potential.is_zero());

    EXPECT_EQ(run("mutate --quiver " + quiver("q1") + " --vertex " + load("q1")->vertices()[0]).code, 2);
    EXPECT_EQ(run("mutate --quiver " + quiver("a2") + " --vertex 9").code, 2);
}

TEST(Cli, CheckSuites)
{
    for (const std::string s : {"pentagon", "reineke", "macmahon", "dynkin", "theorem6", "theorem9"}) {
        const Result r = run("check " + s + " --seed 3");
        EXPECT_EQ(r.code, 0) << s << "\n" << r.out << r.err;
        EXPECT_EQ(r.out.rfind("PASS " + s, 0), 0u) << r.out;
    }
    EXPECT_EQ(run("check nonsense").code, 2);
    EXPECT_EQ(run("check macmahon --series " + (scratch() / "missing.json").string()).code, 2);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("dt-series --truncate 3").code, 2);
    EXPECT_EQ(run("dt-series --quiver " + quiver("q0")).code, 2);
    EXPECT_EQ(run("dt-series --quiver " + quiver("q0") + " --truncate -1").code, 2);
    EXPECT_EQ(run("dt-series --quiver " + (scratch() / "none.json").string() + " --truncate 2").code, 2);
    const fs::path broken = write("broken.json", R"({"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"2"}]})");
    const Result r = run("dt-series --quiver " + broken.string() + " --truncate 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/arrows/0/to"), std::string::npos) << r.err;
    EXPECT_EQ(run("--help").code, 0);
}
