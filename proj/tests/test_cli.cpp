#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("zak_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    int run(const std::string& args, std::string* out = nullptr) {
        const fs::path log = dir / "stdout.txt";
        const std::string cmd = "cd '" + dir.string() + "' && '" ZAK_CLI "' " + args + " > '" + log.string() + "' 2>&1";
        const int status = std::system(cmd.c_str());
        if (out) *out = slurp(log);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::string first_line(const fs::path& p) {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        return line;
    }

    fs::path dir;
};

} // namespace

TEST_F(Cli, ChiPrintsRealAndImaginary) {
    std::string out;
    ASSERT_EQ(run("chi --convention c --alpha 0.5 --beta 0.25", &out), 0);
    EXPECT_EQ(out, "1,0\n");
}

TEST_F(Cli, KernelTableHeaderAndOrigin) {
    ASSERT_EQ(run("kernel --convention C --gamma-min -25.132741228718345 --gamma-max 25.132741228718345 --samples 1601 --out k.csv"), 0);
    EXPECT_EQ(first_line(dir / "k.csv"), "gamma,lambda,mu");
    EXPECT_NE(slurp(dir / "k.csv").find("\n0,1,1\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "k.json"));
}

TEST_F(Cli, TransformIsDeterministicWithSidecar) {
    const std::string args = "transform --convention c --state gaussian:center=0,width=1,boost=0 --grid 16x8 --out f.csv";
    ASSERT_EQ(run(args), 0);
    const std::string first = slurp(dir / "f.csv"), side = slurp(dir / "f.json");
    ASSERT_EQ(run(args), 0);
    EXPECT_EQ(slurp(dir / "f.csv"), first);
    EXPECT_EQ(slurp(dir / "f.json"), side);
    EXPECT_EQ(first_line(dir / "f.csv"), "alpha,beta,re,im");
    const auto j = nlohmann::json::parse(side);
    EXPECT_EQ(j["convention"], "c");
    EXPECT_EQ(j["grid"]["n_alpha"], 16);
    EXPECT_TRUE(j.contains("truncation_k"));
    EXPECT_TRUE(j.contains("version"));
    EXPECT_TRUE(j["units"].contains("x0"));
}

TEST_F(Cli, CoeffsWindowAndUnits) {
    ASSERT_EQ(run("--units x0=3 coeffs --convention b --state basis:l=0,m=0 --window 3,3 --out c.csv"), 0);
    EXPECT_EQ(first_line(dir / "c.csv"), "l,m,re,im");
    const auto j = nlohmann::json::parse(slurp(dir / "c.json"));
    EXPECT_DOUBLE_EQ(j["units"]["x0"].get<double>(), 3.0);
    EXPECT_NEAR(j["units"]["p0"].get<double>(), 2.0 * M_PI / 3.0, 1e-15);
    EXPECT_NEAR(j["weight"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, WignerWithContours) {
    ASSERT_EQ(run("wigner --convention b --l 0 --m 0 --window -0.75,0.75,-5.25,5.25 --res 21x41 --out map.csv --contours"), 0);
    EXPECT_EQ(first_line(dir / "map.csv"), "x_over_x0,p_over_p0,w");
    ASSERT_TRUE(fs::exists(dir / "map.contours.json"));
    const auto j = nlohmann::json::parse(slurp(dir / "map.contours.json"));
    EXPECT_EQ(j["levels"].size(), 2u);
    EXPECT_EQ(j["levels"][1]["level"], 1.0);
}

TEST_F(Cli, QubitsReportForBellState) {
    ASSERT_EQ(run("qubits --convention a --state super:0.7071*basis:l=0,m=0+0.7071*basis:l=1,m=1 --window 4,4 --out report.json"), 0);
    const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(j["verdict"], "entangled");
    EXPECT_NEAR(j["min_pt_eigenvalue"].get<double>(), -0.5, 1e-9);
    EXPECT_NEAR(j["T"][1][1].get<double>(), -1.0, 1e-9);
    EXPECT_EQ(j["rho"]["re"].size(), 16u);
    EXPECT_TRUE(j.contains("leakage"));
}

TEST_F(Cli, VerifyOperatorsTable) {
    std::string out;
    ASSERT_EQ(run("verify-operators --convention c --window 12", &out), 0);
    EXPECT_NE(out.find("[U,L] = U"), std::string::npos);
    EXPECT_EQ(out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("chi --convention q --alpha 0 --beta 0"), 2);
    EXPECT_EQ(run("coeffs --state blob:1 --out x.csv"), 2);
    EXPECT_EQ(run("coeffs --state basis:l=0,m=0 --out missing/x.csv"), 2);
    EXPECT_EQ(run("--help"), 0);
    std::ofstream(dir / "bad.cfg") << "[run]\noutput_dir = " << (dir / "nope").string() << "\n";
    EXPECT_EQ(run("--config bad.cfg verify"), 2);
}

TEST_F(Cli, ZeroToleranceReportsFailure) {
    std::ofstream(dir / "tight.cfg") << "[tolerances]\nmub.a = 0\n";
    std::string out;
    EXPECT_EQ(run("--config tight.cfg --seed 7 verify", &out), 1);
    EXPECT_NE(out.find("seed 7"), std::string::npos);
    EXPECT_NE(out.find("FAIL"), std::string::npos);
    EXPECT_EQ(first_line(dir / "verify.csv"), "name,identity,max_residual,tolerance,result");
}
