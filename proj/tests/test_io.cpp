#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "zak/io.hpp"

using namespace zak;

namespace {

StateSpecError::Code code_of(const std::string& spec) {
    try {
        parse_state_spec(spec);
    } catch (const StateSpecError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for " << spec;
    return StateSpecError::Code::UnknownForm;
}

} // namespace

TEST(StateSpec, ParsesEachForm) {
    const auto b = parse_state_spec("basis:l=0,m=0");
    const auto* bb = std::get_if<LineState::Basis>(&b.form());
    ASSERT_NE(bb, nullptr);
    EXPECT_EQ(bb->l, 0);
    EXPECT_EQ(bb->convention, Convention::A);
    const auto bc = parse_state_spec("basis:l=2,m=-1,conv=c");
    EXPECT_EQ(std::get<LineState::Basis>(bc.form()).convention, Convention::C);
    const auto g = parse_state_spec("gaussian:center=0,width=1,boost=0");
    EXPECT_NEAR(std::abs(inner_product(g, g) - 1.0), 0.0, 1e-12);
}

TEST(StateSpec, SuperpositionIsRenormalized) {
    const auto s = parse_state_spec("super:0.7071*basis:l=0,m=0+0.7071*basis:l=1,m=1", Convention::A);
    EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0.0, 1e-12);
    const auto a = LineState::basis(Convention::A, 0, 0);
    EXPECT_NEAR(std::abs(inner_product(a, s)), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(StateSpec, DistinctErrorCodes) {
    EXPECT_EQ(code_of("triangle:a=1"), StateSpecError::Code::UnknownForm);
    EXPECT_EQ(code_of("no colon"), StateSpecError::Code::UnknownForm);
    EXPECT_EQ(code_of("gaussian:center=0"), StateSpecError::Code::MalformedParameters);
    EXPECT_EQ(code_of("gaussian:width=abc"), StateSpecError::Code::MalformedParameters);
    EXPECT_EQ(code_of("basis:l=0.5,m=0"), StateSpecError::Code::MalformedParameters);
    EXPECT_EQ(code_of("basis:l=0,m=0,q=1"), StateSpecError::Code::MalformedParameters);
    EXPECT_EQ(code_of("gaussian:width=-1"), StateSpecError::Code::NotNormalizable);
}

TEST(StateSpec, ReadsSampledFile) {
    const auto path = std::filesystem::temp_directory_path() / "zak_io_samples.csv";
    const auto g = LineState::gaussian(0.0, 0.8, 0.0);
    {
        std::ofstream out(path);
        out << "x,re,im\n";
        for (int i = 0; i <= 800; ++i) {
            const double x = -8.0 + 0.02 * i;
            out << fmt(x) << "," << fmt(g.psi_x(x).real()) << "," << fmt(g.psi_x(x).imag()) << "\n";
        }
    }
    const auto s = parse_state_spec("file:" + path.string());
    EXPECT_NEAR(std::abs(s.psi_x(0.31) - g.psi_x(0.31)), 0.0, 1e-6);
    {
        std::ofstream out(path);
        out << "x,re,im\n0,1,0\n0.1,1,0\n0.3,1,0\n0.4,1,0\n";
    }
    EXPECT_EQ(code_of("file:" + path.string()), StateSpecError::Code::MalformedParameters);
    {
        std::ofstream out(path);
        out << "x,re,im\n0,0,0\n0.1,0,0\n0.2,0,0\n0.3,0,0\n";
    }
    EXPECT_EQ(code_of("file:" + path.string()), StateSpecError::Code::NotNormalizable);
    std::filesystem::remove(path);
}

TEST(RunConfig, RoundTripsLosslessly) {
    RunConfig c;
    c.units = UnitsConfig(1.3, 0.7);
    c.convention = Convention::C;
    c.seed = 987654321;
    c.grid_alpha = 32;
    c.grid_beta = 48;
    c.window = 20;
    c.output_dir = "/tmp/out";
    c.tolerances["mub.a"] = 1e-11;
    const RunConfig d = RunConfig::parse(c.serialize());
    EXPECT_EQ(d.serialize(), c.serialize());
    EXPECT_EQ(d.units.x0(), c.units.x0());
    EXPECT_EQ(d.units.hbar(), c.units.hbar());
    EXPECT_EQ(d.tolerances.at("mub.a"), 1e-11);
}

TEST(RunConfig, RejectsBadInput) {
    EXPECT_THROW(RunConfig::parse("[run]\ngrid = 1x4\n"), std::invalid_argument);
    EXPECT_THROW(RunConfig::parse("[run]\ncolour = red\n"), std::invalid_argument);
    EXPECT_THROW(RunConfig::parse("seed = 3\n"), std::invalid_argument);
    EXPECT_THROW(RunConfig::parse("[tolerances]\nx = -1\n"), std::invalid_argument);
    EXPECT_THROW(RunConfig::load("/nonexistent/zak.cfg"), IoError);
}

TEST(Output, FormattingAndSidecars) {
    EXPECT_EQ(std::stod(fmt(0.1)), 0.1);
    EXPECT_EQ(fmt(2.0), "2");
    EXPECT_EQ(sidecar_path("out/map.csv"), "out/map.json");
    EXPECT_EQ(sidecar_path("dir.v2/map"), "dir.v2/map.json");
    EXPECT_THROW(CsvWriter("/nonexistent/x.csv", {"a"}), IoError);
}
